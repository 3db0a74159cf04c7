#include "lk/environment.hpp"
#include "lk/kernel_exception.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace lk {

struct environment::store {
    struct entry {
        std::uint64_t                m_pos;
        std::optional<constant_info> m_info;
    };
    mutable std::shared_mutex       m_mutex;
    std::unordered_map<name, entry> m_map;
    std::vector<name>               m_order;
};

environment::environment() : m_store(std::make_shared<store>()) {}

environment::environment(std::shared_ptr<store> s, std::uint64_t size, bool quot_init)
    : m_store(std::move(s)), m_size(size), m_quot_init(quot_init) {}

constant_info const * environment::find(name const & n) const {
    std::shared_lock lock(m_store->m_mutex);
    auto it = m_store->m_map.find(n);
    if (it == m_store->m_map.end() || it->second.m_pos >= m_size || !it->second.m_info)
        return nullptr;
    return &*it->second.m_info;
}

constant_info const & environment::get(name const & n) const {
    if (constant_info const * c = find(n))
        return *c;
    throw kernel_exception(error_kind::unknown_constant, "unknown constant '" + n.to_string() + "'");
}

lookup_status environment::status(name const & n) const {
    std::shared_lock lock(m_store->m_mutex);
    auto it = m_store->m_map.find(n);
    if (it == m_store->m_map.end() || it->second.m_pos >= m_size)
        return lookup_status::Absent;
    return it->second.m_info ? lookup_status::Present : lookup_status::Blocked;
}

environment environment::extend(std::vector<std::pair<name, std::optional<constant_info>>> const & entries) const {
    for (std::size_t i = 0; i < entries.size(); i++) {
        if (contains(entries[i].first))
            throw kernel_exception(error_kind::duplicate_name,
                                   "already declared: '" + entries[i].first.to_string() + "'");
        for (std::size_t j = 0; j < i; j++)
            if (entries[j].first == entries[i].first)
                throw kernel_exception(error_kind::duplicate_name,
                                       "declared twice: '" + entries[i].first.to_string() + "'");
    }
    std::shared_ptr<store> s = m_store;
    {
        std::unique_lock lock(s->m_mutex);
        if (s->m_order.size() != m_size) {
            // this value is not the newest of its lineage: branch off a private copy of the prefix
            auto copy = std::make_shared<store>();
            for (std::uint64_t i = 0; i < m_size; i++) {
                name const & n = s->m_order[i];
                copy->m_order.push_back(n);
                copy->m_map.emplace(n, s->m_map.at(n));
            }
            lock.unlock();
            s = copy;
        }
    }
    std::unique_lock lock(s->m_mutex);
    std::uint64_t pos = m_size;
    for (auto const & [n, info] : entries) {
        s->m_map.insert_or_assign(n, store::entry{pos++, info});
        s->m_order.push_back(n);
    }
    return environment(s, pos, m_quot_init);
}

environment environment::add(constant_info const & c) const {
    return extend({{c.get_name(), c}});
}

environment environment::add(std::vector<constant_info> const & cs) const {
    std::vector<std::pair<name, std::optional<constant_info>>> entries;
    for (constant_info const & c : cs)
        entries.emplace_back(c.get_name(), c);
    return extend(entries);
}

environment environment::block(name const & n) const {
    return extend({{n, std::nullopt}});
}

environment environment::set_quot_initialized() const {
    environment r = *this;
    r.m_quot_init = true;
    return r;
}

void environment::for_each(std::function<void(constant_info const &)> const & f) const {
    std::vector<constant_info> cs;
    {
        std::shared_lock lock(m_store->m_mutex);
        for (std::uint64_t i = 0; i < m_size; i++) {
            store::entry const & e = m_store->m_map.at(m_store->m_order[i]);
            if (e.m_info)
                cs.push_back(*e.m_info);
        }
    }
    for (constant_info const & c : cs)
        f(c);
}

}
