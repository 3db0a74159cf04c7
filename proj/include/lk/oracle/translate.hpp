#pragma once
#include "lk/environment.hpp"
#include "lk/oracle/checker.hpp"

namespace lk::oracle {

/** \brief Entry of a translation context: a lambda-bound variable or a let-bound one with its value. */
struct vlocal_decl {
    vexpr                m_type;
    std::optional<vexpr> m_value;
};

/** \brief Translation context, innermost entry first. Entries without an identifier stand for loose bound
    variables of the term being translated; entries with one stand for free variables.

    Types and values are stored already translated, relative to the lambda entries further out. */
using vlctx = std::vector<std::pair<std::optional<fvar_id>, vlocal_decl>>;

/** \brief The typing context seen by the abstract theory: lets are dropped. */
vctx to_ctx(vlctx const & ctx);

struct translate_options {
    /** \brief Nat literals are unfolded to unary numerals; larger ones are not translated. */
    unsigned max_nat_literal = 256;
};

/** \brief Translate a kernel term. Lets are expanded, metadata dropped, literals unfolded, universe parameter
    names mapped to positions in \c lparams. Absent on metavariables, projections, unknown universe
    parameters or variables, and literals above the bound. */
std::optional<vexpr> tr_expr(names const & lparams, vlctx const & ctx, expr const & e,
                             translate_options const & opts = {});
std::optional<vlevel> tr_level(names const & lparams, level const & l);

/** \brief Translate the constants of a kernel environment with the definitional equalities they induce:
    unfolding of definitions, iota for recursors (K-like included), and the quotient computation rules.
    Theorems and opaque constants contribute no equalities. Constants that cannot be translated are blocked. */
venv tr_env(environment const & env, translate_options const & opts = {});

}
