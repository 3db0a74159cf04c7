#pragma once
#include "lk/expr.hpp"

#include <functional>

namespace lk {

/** \brief Rebuild \c e bottom-up. \c f receives each subterm with its binder depth; returning a value
    replaces the subterm, returning nullopt descends into it. Shared subterms are visited once per depth. */
expr replace(expr const & e, std::function<std::optional<expr>(expr const &, unsigned)> const & f);

/** \brief Every loose BVar(i) with i >= k becomes BVar(i + n). */
expr lift_loose_bvars(expr const & e, std::uint64_t n, std::uint64_t k = 0);
/** \brief Every loose BVar(i) with i >= s becomes BVar(i - d). Requires no loose BVar in [s-d, s). */
expr lower_loose_bvars(expr const & e, std::uint64_t s, std::uint64_t d);
bool has_loose_bvar(expr const & e, std::uint64_t i);

/** \brief Replace BVar(i) (at binder depth 0) by subst[i] for i < n, and lower the remaining loose bvars by n. */
expr instantiate(expr const & e, std::size_t n, expr const * subst);
expr instantiate(expr const & e, expr const & s);
/** \brief Like instantiate, but the last element of subst replaces BVar(0). */
expr instantiate_rev(expr const & e, std::size_t n, expr const * subst);
inline expr instantiate_rev(expr const & e, exprs const & subst) { return instantiate_rev(e, subst.size(), subst.data()); }

/** \brief Replace each free variable subst[i] by BVar(n - 1 - i), so that the last one becomes BVar(0). */
expr abstract(expr const & e, std::size_t n, expr const * subst);
inline expr abstract(expr const & e, exprs const & subst) { return abstract(e, subst.size(), subst.data()); }
expr abstract_fvars(expr const & e, std::vector<fvar_id> const & fvars);

expr instantiate_lparams(expr const & e, names const & ps, levels const & ls);

bool is_head_beta(expr const & e);
/** \brief Beta-reduce the head of an application spine as far as arguments allow. */
expr head_beta(expr const & e);
/** \brief Beta-reduce when it needs no traversal of the lambda body. */
expr cheap_beta_reduce(expr const & e);

/** \brief Does \c e contain a constant satisfying \c p? */
bool find_const(expr const & e, std::function<bool(name const &)> const & p);
void collect_consts(expr const & e, std::vector<name> & out);

}
