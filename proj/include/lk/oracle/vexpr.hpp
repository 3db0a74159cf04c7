#pragma once
#include "lk/level.hpp"
#include "lk/name.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace lk::oracle {

enum class vlevel_kind : std::uint8_t { Zero, Succ, Max, IMax, Param };

/** \brief Universe level of the abstract theory; parameters are positional. */
class vlevel {
    struct cell;
    std::shared_ptr<const cell> m_ptr;
    explicit vlevel(std::shared_ptr<const cell> p) : m_ptr(std::move(p)) {}
public:
    vlevel();
    static vlevel zero() { return vlevel(); }
    static vlevel succ(vlevel const & l);
    static vlevel max(vlevel const & a, vlevel const & b);
    static vlevel imax(vlevel const & a, vlevel const & b);
    static vlevel param(unsigned i);

    vlevel_kind kind() const;
    vlevel const & arg() const;
    vlevel const & lhs() const;
    vlevel const & rhs() const;
    unsigned idx() const;

    friend bool operator==(vlevel const & a, vlevel const & b);
    friend bool operator!=(vlevel const & a, vlevel const & b) { return !(a == b); }
};
using vlevels = std::vector<vlevel>;

/** \brief <tt>n ⊢ l ok</tt>: every parameter index is below \c n. */
bool level_ok(vlevel const & l, unsigned n);
/** \brief Value under an assignment of naturals to parameter positions. */
std::uint64_t eval(vlevel const & l, std::vector<std::uint64_t> const & v);
/** \brief Extensional equivalence: equal values under every assignment. */
bool is_equiv(vlevel const & a, vlevel const & b);
vlevel inst(vlevel const & l, vlevels const & ls);
/** \brief The kernel level with parameter \c i named \c names[i]. */
level to_level(vlevel const & l, names const & ns);

enum class vexpr_kind : std::uint8_t { BVar, Sort, Const, App, Lam, Pi };

/** \brief Term of the abstract theory: pure de Bruijn, without names, binder annotations, lets or literals. */
class vexpr {
    struct cell;
    std::shared_ptr<const cell> m_ptr;
    explicit vexpr(std::shared_ptr<const cell> p) : m_ptr(std::move(p)) {}
public:
    vexpr();
    static vexpr bvar(std::uint64_t i);
    static vexpr sort(vlevel const & u);
    static vexpr cnst(name const & n, vlevels const & us = {});
    static vexpr app(vexpr const & f, vexpr const & a);
    static vexpr lam(vexpr const & ty, vexpr const & body);
    static vexpr pi(vexpr const & ty, vexpr const & body);

    vexpr_kind kind() const;
    std::uint64_t idx() const;
    vlevel const & level() const;
    name const & const_name() const;
    vlevels const & const_levels() const;
    vexpr const & fn() const;
    vexpr const & arg() const;
    vexpr const & domain() const;
    vexpr const & body() const;
    /** \brief One more than the largest loose bound variable, 0 when closed. */
    std::uint64_t loose_range() const;

    friend bool operator==(vexpr const & a, vexpr const & b);
    friend bool operator!=(vexpr const & a, vexpr const & b) { return !(a == b); }
};
using vexprs = std::vector<vexpr>;

vexpr mk_vapp(vexpr f, vexprs const & args);
vexpr get_vapp_args(vexpr const & e, vexprs & args);

/** \brief Every BVar(i) with i >= k becomes BVar(i + n). */
vexpr vlift(vexpr const & e, std::uint64_t n, std::uint64_t k = 0);
/** \brief Replace BVar(k) by \c a and lower the variables above it. \c a lives in the context outside the
    removed variable, so it is lifted past the \c k inner variables and any binders crossed. */
vexpr vinst(vexpr const & e, vexpr const & a, std::uint64_t k = 0);
/** \brief Replace every universe parameter \c i by <tt>ls[i]</tt>. */
vexpr vinstL(vexpr const & e, vlevels const & ls);
/** \brief All loose bound variables are below \c n. */
bool closedN(vexpr const & e, std::uint64_t n);
/** \brief Every universe parameter index is below \c n. */
bool levels_ok(vexpr const & e, unsigned n);
/** \brief Does the term mention BVar(k) (at binder depth 0)? */
bool has_bvar(vexpr const & e, std::uint64_t k);
std::uint64_t size(vexpr const & e);

std::ostream & operator<<(std::ostream & out, vlevel const & l);
std::ostream & operator<<(std::ostream & out, vexpr const & e);
std::string to_string(vexpr const & e);

}
