#pragma once
#include "lk/declaration.hpp"

#include <functional>
#include <memory>

namespace lk {

enum class lookup_status : std::uint8_t { Absent, Present, Blocked };

/** \brief Persistent map from names to constants. Adding returns a new environment; old values stay valid.

    Entries live in an append-only store shared along a lineage. Extending an environment that is not the
    newest in its lineage copies the relevant prefix of the store first. */
class environment {
    struct store;
    std::shared_ptr<store> m_store;
    std::uint64_t          m_size = 0;
    bool                   m_quot_init = false;
    environment(std::shared_ptr<store> s, std::uint64_t size, bool quot_init);
    environment extend(std::vector<std::pair<name, std::optional<constant_info>>> const & entries) const;
public:
    environment();

    /** \brief The constant named \c n, unless it is absent or blocked. */
    constant_info const * find(name const & n) const;
    /** \brief Throws unknownConstant. */
    constant_info const & get(name const & n) const;
    lookup_status status(name const & n) const;
    bool contains(name const & n) const { return status(n) != lookup_status::Absent; }

    /** \brief Insert constants without any checking. Throws duplicateName if a name is taken. */
    environment add(constant_info const & c) const;
    environment add(std::vector<constant_info> const & cs) const;
    /** \brief Mark \c n as unusable and not redeclarable. */
    environment block(name const & n) const;

    bool is_quot_initialized() const { return m_quot_init; }
    environment set_quot_initialized() const;

    std::uint64_t num_constants() const { return m_size; }
    /** \brief Visit the present constants in insertion order. */
    void for_each(std::function<void(constant_info const &)> const & f) const;
};

/** \brief Check \c d against \c env (when \c check is set) and return the extended environment.
    Throws kernel_exception. Example declarations are checked but add nothing. */
environment add_decl(environment const & env, declaration const & d, bool check = true);

struct check_options {
    unsigned fuel       = 1000;
    bool     use_caches = true;
    /** \brief Evaluate Nat primitives on literals natively. */
    bool     nat_accel  = true;
};

struct check_stats {
    std::uint64_t m_defeq_calls = 0;
    std::uint64_t m_whnf_calls  = 0;
    unsigned      m_max_depth   = 0;
};

environment add_decl(environment const & env, declaration const & d, bool check, check_options const & opts,
                     check_stats * stats);

/** \brief Add the quotient constants. Requires Eq with its expected signature. */
environment add_quot(environment const & env);

}
