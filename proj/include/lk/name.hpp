#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace lk {

/** \brief Hierarchical name: anonymous, or a prefix extended by a string or numeric component. */
class name {
    struct cell;
    std::shared_ptr<const cell> m_ptr;
    explicit name(std::shared_ptr<const cell> p) : m_ptr(std::move(p)) {}
public:
    name() = default;
    /** \brief Parse a dotted name such as "Nat.succ". Components are always strings. */
    name(char const * s);
    name(std::string const & s) : name(s.c_str()) {}
    name(name const & prefix, std::string const & s);
    name(name const & prefix, std::uint64_t n);

    bool is_anonymous() const { return !m_ptr; }
    bool is_string() const;
    bool is_numeral() const;
    bool is_atomic() const { return is_anonymous() || get_prefix().is_anonymous(); }
    name get_prefix() const;
    std::string const & get_string() const;
    std::uint64_t get_numeral() const;
    std::size_t hash() const;

    /** \brief First component, or anonymous. */
    name get_root() const;
    bool is_prefix_of(name const & other) const;
    /** \brief Replace prefix \c p of this name by \c q. Requires p.is_prefix_of(*this). */
    name replace_prefix(name const & p, name const & q) const;
    name append_after(std::string const & suffix) const;
    std::vector<std::string> components() const;

    std::string to_string() const;

    friend bool operator==(name const & a, name const & b);
    friend bool operator!=(name const & a, name const & b) { return !(a == b); }
    /** \brief Total order: component-wise, anonymous first, numerals before strings. */
    friend int cmp(name const & a, name const & b);
    friend bool operator<(name const & a, name const & b) { return cmp(a, b) < 0; }
};

std::ostream & operator<<(std::ostream & out, name const & n);

using names = std::vector<name>;

struct name_hash {
    std::size_t operator()(name const & n) const { return n.hash(); }
};

}

template<> struct std::hash<lk::name> {
    std::size_t operator()(lk::name const & n) const { return n.hash(); }
};
