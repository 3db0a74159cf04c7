#pragma once
#include "lk/name.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

namespace lk {

enum class level_kind : std::uint8_t { Zero, Succ, Max, IMax, Param };

/** \brief Universe level expression. Immutable, cheap to copy. */
class level {
    struct cell;
    std::shared_ptr<const cell> m_ptr;
    explicit level(std::shared_ptr<const cell> p) : m_ptr(std::move(p)) {}
    friend level mk_succ(level const & l);
    friend level mk_max_core(level const & a, level const & b);
    friend level mk_imax_core(level const & a, level const & b);
    friend level mk_param(name const & n);
public:
    /** \brief Level zero. */
    level();
    level_kind kind() const;
    std::size_t hash() const;
    /** \brief Child of a Succ. */
    level const & succ_of() const;
    /** \brief Left child of Max or IMax. */
    level const & lhs() const;
    /** \brief Right child of Max or IMax. */
    level const & rhs() const;
    name const & param_id() const;
    bool has_param() const;
    void const * raw() const { return m_ptr.get(); }

    friend bool operator==(level const & a, level const & b);
    friend bool operator!=(level const & a, level const & b) { return !(a == b); }
};

using levels = std::vector<level>;

level mk_level_zero();
level mk_level_one();
level mk_succ(level const & l);
/** \brief Builds Max(a, b) without any simplification. */
level mk_max_core(level const & a, level const & b);
level mk_imax_core(level const & a, level const & b);
/** \brief Max with trivial simplifications (zero, equal arguments, explicit constants). */
level mk_max(level const & a, level const & b);
/** \brief IMax with trivial simplifications (imax a 0 = 0, imax a (succ b) = max a (succ b), ...). */
level mk_imax(level const & a, level const & b);
level mk_param(name const & n);
level mk_succ_n(level l, unsigned n);

inline bool is_zero(level const & l) { return l.kind() == level_kind::Zero; }
inline bool is_succ(level const & l) { return l.kind() == level_kind::Succ; }
inline bool is_max(level const & l) { return l.kind() == level_kind::Max; }
inline bool is_imax(level const & l) { return l.kind() == level_kind::IMax; }
inline bool is_param(level const & l) { return l.kind() == level_kind::Param; }

/** \brief True when \c l is nonzero under every assignment (syntactic sufficient test, exact for imax-free levels). */
bool is_not_zero(level const & l);

using level_assignment = std::map<name, std::uint64_t>;

/** \brief Evaluate under an assignment. Throws std::invalid_argument on an unbound parameter. */
std::uint64_t eval(level const & l, level_assignment const & v);

/** \brief Canonical form: max-flattened, sorted, offsets folded, imax pushed inward. */
level normalize(level const & l);

/** \brief Decides forall v. eval(a, v) <= eval(b, v). */
bool is_def_leq(level const & a, level const & b);

/** \brief Decides forall v. eval(a, v) = eval(b, v). */
bool is_equivalent(level const & a, level const & b);
bool is_equivalent(levels const & as, levels const & bs);

/** \brief Substitute \c args for \c params. Throws std::invalid_argument on length mismatch. */
level instantiate(level const & l, names const & params, levels const & args);

/** \brief True iff every parameter of \c l is in \c declared. */
bool params_bounded(level const & l, names const & declared);
std::optional<name> first_unbounded_param(level const & l, names const & declared);

void collect_params(level const & l, std::vector<name> & out);

/** \brief Structural total order, used for canonical forms. */
int cmp(level const & a, level const & b);

std::ostream & operator<<(std::ostream & out, level const & l);

struct level_hash {
    std::size_t operator()(level const & l) const { return l.hash(); }
};

}
