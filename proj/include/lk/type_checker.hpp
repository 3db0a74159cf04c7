#pragma once
#include "lk/environment.hpp"
#include "lk/kernel_exception.hpp"
#include "lk/local_ctx.hpp"

#include <unordered_map>
#include <unordered_set>

namespace lk {

/** \brief Three-valued result of a partial decision step. */
enum class lbool : std::int8_t { False = -1, Undef = 0, True = 1 };
inline lbool to_lbool(bool b) { return b ? lbool::True : lbool::False; }

/** \brief Type inference, weak head normalization and definitional equality for one declaration.

    Recursion through infer_type, whnf, whnf_core and is_def_eq_core is bounded by the fuel: the
    nesting depth of these calls may not exceed it, otherwise deepRecursion is thrown. */
class type_checker {
    struct expr_pair_hash {
        std::size_t operator()(std::pair<expr, expr> const & p) const;
    };

    environment                 m_env;
    check_options               m_opts;
    std::optional<names>        m_lparams;
    local_ctx                   m_lctx;
    std::uint64_t               m_next_fvar = 0;
    unsigned                    m_depth = 0;
    check_stats                 m_stats;

    std::unordered_map<expr, expr, expr_hash>  m_infer_cache[2];
    std::unordered_map<expr, expr, expr_hash>  m_whnf_cache;
    std::unordered_map<expr, expr, expr_hash>  m_whnf_core_cache;
    std::unordered_map<std::pair<expr, expr>, bool, expr_pair_hash> m_defeq_cache;
    std::unordered_set<std::pair<expr, expr>, expr_pair_hash>       m_failure_cache;

    class depth_guard;

    expr infer_type_core(expr const & e, bool infer_only);
    expr infer_fvar(expr const & e);
    expr infer_constant(expr const & e, bool infer_only);
    expr infer_sort(expr const & e, bool infer_only);
    expr infer_lambda(expr const & e, bool infer_only);
    expr infer_pi(expr const & e, bool infer_only);
    expr infer_app(expr const & e, bool infer_only);
    expr infer_let(expr const & e, bool infer_only);
    expr infer_proj(expr const & e, bool infer_only);
    expr infer_lit(expr const & e);
    void check_level(level const & l);

    std::optional<expr> reduce_recursor(expr const & e, bool cheap_rec, bool cheap_proj);
    std::optional<expr> inductive_reduce_rec(expr const & e, bool cheap_rec, bool cheap_proj);
    std::optional<expr> quot_reduce_rec(expr const & e);
    std::optional<expr> proj_reduce(expr const & s, std::uint64_t idx);
    expr to_ctor_when_k(recursor_val const & rec, name const & induct, expr const & e);
    expr to_ctor_when_structure(name const & induct, expr const & e);
    std::optional<expr> mk_nullary_ctor(expr const & type, unsigned nparams);
    bool is_ctor_app(expr const & e) const;

    std::optional<expr> reduce_nat(expr const & e);
    std::optional<nat> nat_value(expr const & e);

    constant_info const * is_delta(expr const & e) const;
    std::optional<expr> unfold_definition_core(expr const & e) const;

    lbool quick_is_def_eq(expr const & t, expr const & s, bool use_hash = true);
    bool is_def_eq_core(expr const & t, expr const & s);
    bool is_def_eq_binding(expr t, expr s);
    bool is_def_eq(levels const & a, levels const & b);
    lbool is_def_eq_proof_irrel(expr const & t, expr const & s);
    lbool is_def_eq_offset(expr const & t, expr const & s);
    lbool lazy_delta_reduction(expr & t_n, expr & s_n);
    lbool lazy_delta_reduction_step(expr & t_n, expr & s_n);
    bool is_def_eq_args(expr t, expr s);
    bool is_def_eq_app(expr const & t, expr const & s);
    bool try_eta_expansion_core(expr const & t, expr const & s);
    bool try_eta_struct_core(expr const & t, expr const & s);
    lbool try_string_lit_expansion_core(expr const & t, expr const & s);
    bool is_def_eq_unit_like(expr const & t, expr const & s);

    [[noreturn]] void throw_mismatch(char const * what, expr const & expected, expr const & given);

public:
    /** \brief \c lparams are the universe parameters in scope; when absent, level parameters are not checked. */
    explicit type_checker(environment const & env, check_options const & opts = {},
                          std::optional<names> lparams = std::nullopt);

    environment const & env() const { return m_env; }
    /** \brief Continue with an extension of the current environment. Caches are dropped; the local context is kept. */
    void update_env(environment const & env);
    local_ctx const & lctx() const { return m_lctx; }
    check_stats const & stats() const { return m_stats; }
    /** \brief Next free-variable identifier; every identifier handed out so far is below it. */
    std::uint64_t fvar_counter() const { return m_next_fvar; }

    /** \brief Declare a fresh free variable and return it as an expression. */
    expr mk_local_decl(name const & n, expr const & type, binder_info bi = binder_info::Default,
                       std::optional<expr> value = std::nullopt);

    expr infer_type(expr const & e, bool infer_only);
    /** \brief Infer without redundant checks. Only meaningful for well-typed input. */
    expr infer(expr const & e) { return infer_type(e, true); }
    /** \brief Infer with full checking. */
    expr check(expr const & e) { return infer_type(e, false); }

    expr whnf(expr const & e);
    expr whnf_core(expr const & e, bool cheap_rec = false, bool cheap_proj = false);
    bool is_def_eq(expr const & a, expr const & b);

    bool is_prop(expr const & type);
    /** \brief \c e reduced to a Sort, or typeExpected. \c ctx names the term whose type \c e is. */
    expr ensure_sort(expr const & e, expr const & ctx);
    expr ensure_pi(expr const & e, expr const & ctx);
    /** \brief The universe level of a type. */
    level ensure_type(expr const & e);

    std::optional<expr> unfold_definition(expr const & e) const;
};

/** \brief Is \c n a structure-like inductive: one constructor, no indices, not recursive? */
bool is_structure_like(environment const & env, name const & n);

/** \brief The Nat primitives evaluated natively on literals. */
names const & accelerated_nat_ops();

}
