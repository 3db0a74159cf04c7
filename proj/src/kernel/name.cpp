#include "lk/name.hpp"
#include "lk/hash.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace lk {

struct name::cell {
    name                                     m_prefix;
    std::variant<std::string, std::uint64_t> m_data;
    std::size_t                              m_hash;
};

name::name(char const * s) {
    std::string str(s);
    std::size_t start = 0;
    name r;
    if (str.empty())
        return;
    while (true) {
        std::size_t dot = str.find('.', start);
        std::string part = str.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        r = name(r, part);
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }
    m_ptr = r.m_ptr;
}

name::name(name const & prefix, std::string const & s) {
    std::size_t h = hash_str(s.data(), s.size(), prefix.hash());
    m_ptr = std::make_shared<const cell>(cell{prefix, s, h});
}

name::name(name const & prefix, std::uint64_t n) {
    std::size_t h = hash_mix(prefix.hash(), static_cast<std::size_t>(n) * 31 + 7);
    m_ptr = std::make_shared<const cell>(cell{prefix, n, h});
}

bool name::is_string() const { return m_ptr && std::holds_alternative<std::string>(m_ptr->m_data); }
bool name::is_numeral() const { return m_ptr && std::holds_alternative<std::uint64_t>(m_ptr->m_data); }

name name::get_prefix() const { return m_ptr ? m_ptr->m_prefix : name(); }

std::string const & name::get_string() const {
    assert(is_string());
    return std::get<std::string>(m_ptr->m_data);
}

std::uint64_t name::get_numeral() const {
    assert(is_numeral());
    return std::get<std::uint64_t>(m_ptr->m_data);
}

std::size_t name::hash() const { return m_ptr ? m_ptr->m_hash : 11; }

name name::get_root() const {
    if (is_atomic())
        return *this;
    return get_prefix().get_root();
}

bool name::is_prefix_of(name const & other) const {
    if (is_anonymous())
        return true;
    name it = other;
    while (!it.is_anonymous()) {
        if (it == *this)
            return true;
        it = it.get_prefix();
    }
    return false;
}

static name append_component(name const & p, name const & src) {
    return src.is_string() ? name(p, src.get_string()) : name(p, src.get_numeral());
}

name name::replace_prefix(name const & p, name const & q) const {
    if (*this == p)
        return q;
    if (is_anonymous())
        return *this;
    return append_component(get_prefix().replace_prefix(p, q), *this);
}

name name::append_after(std::string const & suffix) const {
    if (is_string())
        return name(get_prefix(), get_string() + suffix);
    return name(*this, suffix);
}

std::vector<std::string> name::components() const {
    std::vector<std::string> r;
    for (name it = *this; !it.is_anonymous(); it = it.get_prefix())
        r.push_back(it.is_string() ? it.get_string() : std::to_string(it.get_numeral()));
    return {r.rbegin(), r.rend()};
}

std::string name::to_string() const {
    if (is_anonymous())
        return "[anonymous]";
    std::string r;
    for (auto const & c : components()) {
        if (!r.empty())
            r += '.';
        r += c;
    }
    return r;
}

bool operator==(name const & a, name const & b) {
    if (a.m_ptr == b.m_ptr)
        return true;
    if (!a.m_ptr || !b.m_ptr)
        return false;
    if (a.m_ptr->m_hash != b.m_ptr->m_hash)
        return false;
    return a.m_ptr->m_data == b.m_ptr->m_data && a.m_ptr->m_prefix == b.m_ptr->m_prefix;
}

int cmp(name const & a, name const & b) {
    if (a.m_ptr == b.m_ptr)
        return 0;
    if (a.is_anonymous())
        return -1;
    if (b.is_anonymous())
        return 1;
    // compare prefixes first so that "A.b" < "A.c" < "B"
    std::vector<name> as, bs;
    for (name it = a; !it.is_anonymous(); it = it.get_prefix()) as.push_back(it);
    for (name it = b; !it.is_anonymous(); it = it.get_prefix()) bs.push_back(it);
    std::size_t i = as.size(), j = bs.size();
    while (i > 0 && j > 0) {
        name const & x = as[--i];
        name const & y = bs[--j];
        if (x.is_numeral() != y.is_numeral())
            return x.is_numeral() ? -1 : 1;
        if (x.is_numeral()) {
            if (x.get_numeral() != y.get_numeral())
                return x.get_numeral() < y.get_numeral() ? -1 : 1;
        } else {
            int c = x.get_string().compare(y.get_string());
            if (c != 0)
                return c < 0 ? -1 : 1;
        }
    }
    if (i == 0 && j == 0)
        return 0;
    return i == 0 ? -1 : 1;
}

std::ostream & operator<<(std::ostream & out, name const & n) {
    return out << n.to_string();
}

}
