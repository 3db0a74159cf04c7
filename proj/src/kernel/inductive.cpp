#include "lk/inductive.hpp"
#include "lk/instantiate.hpp"
#include "lk/printer.hpp"
#include "lk/type_checker.hpp"

#include <algorithm>

namespace lk {

char const * nested_aux_root() { return "_nested"; }

namespace {

levels params_to_levels(names const & ps) {
    levels ls;
    for (name const & p : ps)
        ls.push_back(mk_param(p));
    return ls;
}

/** \brief Mark explicit binders implicit when a later binder domain depends on them. */
expr infer_implicit(expr const & t) {
    if (!is_pi(t))
        return t;
    expr body = infer_implicit(t.binding_body());
    binder_info bi = t.binding_info();
    if (bi == binder_info::Default) {
        expr b = body;
        std::uint64_t idx = 0;
        while (is_pi(b)) {
            if (has_loose_bvar(b.binding_domain(), idx)) {
                bi = binder_info::Implicit;
                break;
            }
            b = b.binding_body();
            idx++;
        }
    }
    return mk_pi(t.binding_name(), t.binding_domain(), body, bi);
}

/** \brief Replace the first \c n Pi binders of \c type by \c args. */
std::optional<expr> instantiate_pi_params(expr type, std::size_t n, expr const * args) {
    for (std::size_t i = 0; i < n; i++) {
        if (!is_pi(type))
            return std::nullopt;
        type = type.binding_body();
    }
    return instantiate_rev(type, n, args);
}

/* ---------------------------------------------------------------------------
   Checking a (mutual) block and generating its recursors
   ------------------------------------------------------------------------- */

class add_inductive_fn {
    struct rec_info {
        expr  m_C;
        exprs m_minors;
        exprs m_indices;
        expr  m_major;
    };

    environment                 m_env;
    check_options               m_opts;
    names                       m_lparams;
    levels                      m_levels;
    unsigned                    m_nparams;
    std::vector<inductive_type> m_types;
    names                       m_all;
    unsigned                    m_nnested;
    names                       m_rec_names;
    type_checker                m_tc;

    exprs                 m_params;
    std::vector<unsigned> m_nindices;
    level                 m_result_level;
    bool                  m_is_not_zero = false;
    exprs                 m_ind_cnsts;
    level                 m_elim_level;
    bool                  m_K_target = false;
    std::vector<rec_info> m_rec_infos;

    std::vector<constant_info> m_out;

    [[noreturn]] void fail(error_kind k, std::string const & msg) const { throw kernel_exception(k, msg); }

    local_ctx const & lctx() const { return m_tc.lctx(); }
    expr mk_local_decl_for(expr const & t) {
        return m_tc.mk_local_decl(t.binding_name(), t.binding_domain(), t.binding_info());
    }
    expr const & param_type(unsigned i) const { return lctx().get(m_params[i].fvar()).get_type(); }
    expr fvar_type(expr const & x) const { return lctx().get(x.fvar()).get_type(); }
    void add_to_env(std::vector<constant_info> const & cs) {
        m_env = m_env.add(cs);
        m_tc.update_env(m_env);
        m_out.insert(m_out.end(), cs.begin(), cs.end());
    }

    bool is_block_name(name const & n) const {
        for (inductive_type const & t : m_types)
            if (t.m_name == n)
                return true;
        return false;
    }
    bool has_ind_occ(expr const & e) const {
        return find_const(e, [&](name const & n) { return is_block_name(n); });
    }

    void check_inductive_types() {
        bool first = true;
        for (inductive_type const & ind : m_types) {
            expr type = ind.m_type;
            m_tc.ensure_type(type);
            m_nindices.push_back(0);
            unsigned i = 0;
            type = m_tc.whnf(type);
            while (is_pi(type)) {
                if (i < m_nparams) {
                    if (first) {
                        expr param = mk_local_decl_for(type);
                        m_params.push_back(param);
                    } else if (!m_tc.is_def_eq(type.binding_domain(), param_type(i))) {
                        fail(error_kind::param_mismatch, "parameters of all inductive types in '" +
                                                             m_types[0].m_name.to_string() + "' must match");
                    }
                    type = instantiate(type.binding_body(), m_params[i]);
                } else {
                    expr idx = mk_local_decl_for(type);
                    type = instantiate(type.binding_body(), idx);
                    m_nindices.back()++;
                }
                i++;
                type = m_tc.whnf(type);
            }
            if (i < m_nparams)
                fail(error_kind::invalid_inductive, "type of '" + ind.m_name.to_string() + "' has fewer than " +
                                                        std::to_string(m_nparams) + " parameters");
            type = m_tc.ensure_sort(type, ind.m_type);
            level result = type.sort_level();
            if (first) {
                m_result_level = result;
                m_is_not_zero  = is_not_zero(result);
            } else if (!is_equivalent(result, m_result_level)) {
                fail(error_kind::invalid_inductive, "mutually inductive types must live in the same universe");
            }
            m_ind_cnsts.push_back(mk_const(ind.m_name, m_levels));
            first = false;
        }
    }

    /** \brief Syntactic scan of the constructor fields for recursive and reflexive occurrences. */
    void scan_recursion(bool & is_rec, bool & is_reflexive) const {
        is_rec = is_reflexive = false;
        for (inductive_type const & ind : m_types) {
            for (constructor_decl const & c : ind.m_ctors) {
                expr t = c.m_type;
                unsigned i = 0;
                while (is_pi(t)) {
                    if (i >= m_nparams) {
                        expr d = t.binding_domain();
                        bool under_pi = false;
                        while (is_pi(d)) {
                            d = d.binding_body();
                            under_pi = true;
                        }
                        expr const & h = get_app_fn(d);
                        if (is_constant(h) && is_block_name(h.const_name())) {
                            is_rec = true;
                            is_reflexive = is_reflexive || under_pi;
                        }
                    }
                    t = t.binding_body();
                    i++;
                }
            }
        }
    }

    void declare_inductive_types() {
        bool is_rec, is_reflexive;
        scan_recursion(is_rec, is_reflexive);
        std::vector<constant_info> cs;
        for (std::size_t idx = 0; idx < m_types.size(); idx++) {
            inductive_type const & ind = m_types[idx];
            inductive_val v;
            v.m_nparams  = m_nparams;
            v.m_nindices = m_nindices[idx];
            v.m_all      = m_all;
            for (constructor_decl const & c : ind.m_ctors)
                v.m_ctors.push_back(c.m_name);
            v.m_nnested      = m_nnested;
            v.m_is_rec       = is_rec;
            v.m_is_reflexive = is_reflexive;
            v.m_is_prop      = is_zero(m_result_level);
            cs.emplace_back(ind.m_name, m_lparams, ind.m_type, v);
        }
        add_to_env(cs);
    }

    /** \brief Is \c t the type being declared at position \c idx, applied to the parameters and to indices
        that do not mention the block? */
    bool is_valid_ind_app(expr const & t, unsigned idx) const {
        exprs args;
        expr const & I = get_app_args(t, args);
        if (I != m_ind_cnsts[idx] || args.size() != m_nparams + m_nindices[idx])
            return false;
        for (unsigned i = 0; i < m_nparams; i++)
            if (m_params[i] != args[i])
                return false;
        for (std::size_t i = m_nparams; i < args.size(); i++)
            if (has_ind_occ(args[i]))
                return false;
        return true;
    }

    std::optional<unsigned> is_valid_ind_app(expr const & t) const {
        for (unsigned idx = 0; idx < m_types.size(); idx++)
            if (is_valid_ind_app(t, idx))
                return idx;
        return std::nullopt;
    }

    /** \brief The position of the block type that ends the telescope \c t, if any. */
    std::optional<unsigned> is_rec_argument(expr t) {
        t = m_tc.whnf(t);
        while (is_pi(t)) {
            expr x = mk_local_decl_for(t);
            t = m_tc.whnf(instantiate(t.binding_body(), x));
        }
        return is_valid_ind_app(t);
    }

    void check_positivity(expr t, name const & ctor, unsigned arg_idx) {
        t = m_tc.whnf(t);
        if (!has_ind_occ(t))
            return;
        if (is_pi(t)) {
            if (has_ind_occ(t.binding_domain()))
                fail(error_kind::non_positive_occurrence, "argument #" + std::to_string(arg_idx + 1) + " of '" +
                                                              ctor.to_string() + "' has a non-positive occurrence "
                                                              "of the types being declared");
            expr x = mk_local_decl_for(t);
            check_positivity(instantiate(t.binding_body(), x), ctor, arg_idx);
        } else if (!is_valid_ind_app(t)) {
            fail(error_kind::non_positive_occurrence, "argument #" + std::to_string(arg_idx + 1) + " of '" +
                                                          ctor.to_string() + "' has an invalid occurrence of the "
                                                          "types being declared");
        }
    }

    void check_constructors() {
        for (unsigned idx = 0; idx < m_types.size(); idx++) {
            for (constructor_decl const & c : m_types[idx].m_ctors) {
                expr t = c.m_type;
                m_tc.ensure_type(t);
                unsigned i = 0;
                while (is_pi(t)) {
                    if (i < m_nparams) {
                        if (!m_tc.is_def_eq(t.binding_domain(), param_type(i)))
                            fail(error_kind::param_mismatch, "argument #" + std::to_string(i + 1) + " of '" +
                                                                 c.m_name.to_string() +
                                                                 "' does not match the inductive parameters");
                        t = instantiate(t.binding_body(), m_params[i]);
                    } else {
                        level s = m_tc.ensure_type(t.binding_domain());
                        if (!(is_def_leq(s, m_result_level) || is_zero(m_result_level)))
                            fail(error_kind::universe_too_large,
                                 "universe level of argument #" + std::to_string(i + 1) + " of '" +
                                     c.m_name.to_string() + "' is too big for the inductive type");
                        check_positivity(t.binding_domain(), c.m_name, i);
                        expr x = mk_local_decl_for(t);
                        t = instantiate(t.binding_body(), x);
                    }
                    i++;
                }
                if (i < m_nparams)
                    fail(error_kind::param_mismatch, "'" + c.m_name.to_string() + "' takes fewer arguments than "
                                                                                   "the inductive parameters");
                if (!is_valid_ind_app(t, idx))
                    fail(error_kind::bad_ctor_target, "invalid return type for '" + c.m_name.to_string() + "': " +
                                                          to_string(t, &lctx()));
            }
        }
    }

    void declare_constructors() {
        std::vector<constant_info> cs;
        for (unsigned idx = 0; idx < m_types.size(); idx++) {
            unsigned cidx = 0;
            for (constructor_decl const & c : m_types[idx].m_ctors) {
                unsigned arity = 0;
                for (expr t = c.m_type; is_pi(t); t = t.binding_body())
                    arity++;
                constructor_val v{m_types[idx].m_name, cidx++, m_nparams, arity - m_nparams};
                cs.emplace_back(c.m_name, m_lparams, c.m_type, v);
            }
        }
        add_to_env(cs);
    }

    /** \brief Can the block only eliminate into Prop? */
    bool elim_only_at_universe_zero() {
        if (m_is_not_zero)
            return false;
        if (m_types.size() > 1)
            return true;
        auto const & ctors = m_types[0].m_ctors;
        if (ctors.empty())
            return false;
        if (ctors.size() > 1)
            return true;
        expr t = ctors[0].m_type;
        unsigned i = 0;
        exprs to_check;
        while (is_pi(t)) {
            expr x = mk_local_decl_for(t);
            if (i >= m_nparams) {
                level s = m_tc.ensure_type(t.binding_domain());
                if (!is_zero(s))
                    to_check.push_back(x);
            }
            t = instantiate(t.binding_body(), x);
            i++;
        }
        exprs result_args;
        get_app_args(t, result_args);
        for (expr const & x : to_check)
            if (std::find(result_args.begin(), result_args.end(), x) == result_args.end())
                return true;
        return false;
    }

    void init_elim_level() {
        if (elim_only_at_universe_zero()) {
            m_elim_level = mk_level_zero();
            return;
        }
        name u("u");
        unsigned i = 1;
        while (std::find(m_lparams.begin(), m_lparams.end(), u) != m_lparams.end())
            u = name("u").append_after("_" + std::to_string(i++));
        m_elim_level = mk_param(u);
    }

    void init_K_target() {
        m_K_target = m_types.size() == 1 && is_zero(m_result_level) && m_types[0].m_ctors.size() == 1;
        if (!m_K_target)
            return;
        unsigned arity = 0;
        for (expr t = m_types[0].m_ctors[0].m_type; is_pi(t); t = t.binding_body())
            arity++;
        m_K_target = arity == m_nparams;
    }

    /** \brief Position of the block type heading \c t, with its indices. */
    unsigned get_I_indices(expr const & t, exprs & indices) const {
        std::optional<unsigned> r = is_valid_ind_app(t);
        if (!r)
            fail(error_kind::invalid_inductive, "unexpected occurrence of the types being declared");
        exprs args;
        get_app_args(t, args);
        indices.assign(args.begin() + m_nparams, args.end());
        return *r;
    }

    name minor_name(name const & ctor, name const & induct) const {
        if (induct.is_prefix_of(ctor) && ctor != induct)
            return ctor.replace_prefix(induct, name());
        return ctor;
    }

    void mk_rec_infos() {
        for (unsigned idx = 0; idx < m_types.size(); idx++) {
            rec_info info;
            expr t = m_tc.whnf(m_types[idx].m_type);
            unsigned i = 0;
            while (is_pi(t)) {
                if (i < m_nparams) {
                    t = instantiate(t.binding_body(), m_params[i]);
                } else {
                    expr x = mk_local_decl_for(t);
                    info.m_indices.push_back(x);
                    t = instantiate(t.binding_body(), x);
                }
                i++;
                t = m_tc.whnf(t);
            }
            expr major_type = mk_app(mk_app(m_ind_cnsts[idx], m_params), info.m_indices);
            info.m_major    = m_tc.mk_local_decl(name("t"), major_type, binder_info::Default);
            expr C_ty       = mk_sort(m_elim_level);
            C_ty            = lctx().mk_pi(exprs{info.m_major}, C_ty);
            C_ty            = lctx().mk_pi(info.m_indices, C_ty);
            name C_name     = m_types.size() > 1 ? name("motive").append_after("_" + std::to_string(idx + 1))
                                                 : name("motive");
            info.m_C = m_tc.mk_local_decl(C_name, C_ty, binder_info::Default);
            m_rec_infos.push_back(info);
        }
        for (unsigned idx = 0; idx < m_types.size(); idx++) {
            for (constructor_decl const & c : m_types[idx].m_ctors) {
                exprs b_u, u;
                expr t = c.m_type;
                unsigned i = 0;
                while (is_pi(t)) {
                    if (i < m_nparams) {
                        t = instantiate(t.binding_body(), m_params[i]);
                    } else {
                        expr x = mk_local_decl_for(t);
                        b_u.push_back(x);
                        if (is_rec_argument(t.binding_domain()))
                            u.push_back(x);
                        t = instantiate(t.binding_body(), x);
                    }
                    i++;
                }
                exprs it_indices;
                unsigned it_idx = get_I_indices(t, it_indices);
                expr C_app = mk_app(m_rec_infos[it_idx].m_C, it_indices);
                C_app = mk_app(C_app, mk_app(mk_app(mk_const(c.m_name, m_levels), m_params), b_u));
                exprs v;
                for (expr const & u_i : u) {
                    expr u_i_ty = m_tc.whnf(fvar_type(u_i));
                    exprs xs;
                    while (is_pi(u_i_ty)) {
                        expr x = mk_local_decl_for(u_i_ty);
                        xs.push_back(x);
                        u_i_ty = m_tc.whnf(instantiate(u_i_ty.binding_body(), x));
                    }
                    exprs ih_indices;
                    unsigned ih_idx = get_I_indices(u_i_ty, ih_indices);
                    expr ih_ty = mk_app(mk_app(m_rec_infos[ih_idx].m_C, ih_indices), mk_app(u_i, xs));
                    ih_ty      = lctx().mk_pi(xs, ih_ty);
                    name ih_name = lctx().get(u_i.fvar()).get_user_name().append_after("_ih");
                    v.push_back(m_tc.mk_local_decl(ih_name, ih_ty, binder_info::Default));
                }
                expr minor_ty = lctx().mk_pi(b_u, lctx().mk_pi(v, C_app));
                expr minor    = m_tc.mk_local_decl(minor_name(c.m_name, m_types[idx].m_name), minor_ty,
                                                   binder_info::Default);
                m_rec_infos[idx].m_minors.push_back(minor);
            }
        }
    }

    levels rec_levels() const {
        levels ls;
        if (is_param(m_elim_level))
            ls.push_back(m_elim_level);
        ls.insert(ls.end(), m_levels.begin(), m_levels.end());
        return ls;
    }

    names rec_lparams() const {
        names ps;
        if (is_param(m_elim_level))
            ps.push_back(m_elim_level.param_id());
        ps.insert(ps.end(), m_lparams.begin(), m_lparams.end());
        return ps;
    }

    void declare_recursors() {
        exprs Cs, minors;
        for (rec_info const & info : m_rec_infos) {
            Cs.push_back(info.m_C);
            minors.insert(minors.end(), info.m_minors.begin(), info.m_minors.end());
        }
        levels rec_lvls = rec_levels();
        std::vector<constant_info> cs;
        for (unsigned idx = 0; idx < m_types.size(); idx++) {
            rec_info const & info = m_rec_infos[idx];
            expr C_app  = mk_app(mk_app(info.m_C, info.m_indices), info.m_major);
            expr rec_ty = lctx().mk_pi(exprs{info.m_major}, C_app);
            rec_ty      = lctx().mk_pi(info.m_indices, rec_ty);
            rec_ty      = lctx().mk_pi(minors, rec_ty);
            rec_ty      = lctx().mk_pi(Cs, rec_ty);
            rec_ty      = lctx().mk_pi(m_params, rec_ty);
            rec_ty      = infer_implicit(rec_ty);

            std::vector<recursor_rule> rules;
            unsigned minor_idx = 0;
            for (constructor_decl const & c : m_types[idx].m_ctors) {
                exprs b_u, u;
                expr t = c.m_type;
                unsigned i = 0;
                while (is_pi(t)) {
                    if (i < m_nparams) {
                        t = instantiate(t.binding_body(), m_params[i]);
                    } else {
                        expr x = mk_local_decl_for(t);
                        b_u.push_back(x);
                        if (is_rec_argument(t.binding_domain()))
                            u.push_back(x);
                        t = instantiate(t.binding_body(), x);
                    }
                    i++;
                }
                exprs v;
                for (expr const & u_i : u) {
                    expr u_i_ty = m_tc.whnf(fvar_type(u_i));
                    exprs xs;
                    while (is_pi(u_i_ty)) {
                        expr x = mk_local_decl_for(u_i_ty);
                        xs.push_back(x);
                        u_i_ty = m_tc.whnf(instantiate(u_i_ty.binding_body(), x));
                    }
                    exprs ih_indices;
                    unsigned ih_idx = get_I_indices(u_i_ty, ih_indices);
                    expr rec_app = mk_const(m_rec_names[ih_idx], rec_lvls);
                    rec_app      = mk_app(mk_app(mk_app(mk_app(rec_app, m_params), Cs), minors), ih_indices);
                    rec_app      = mk_app(rec_app, mk_app(u_i, xs));
                    v.push_back(lctx().mk_lambda(xs, rec_app));
                }
                expr e_app = mk_app(mk_app(info.m_minors[minor_idx], b_u), v);
                exprs binders = m_params;
                binders.insert(binders.end(), Cs.begin(), Cs.end());
                binders.insert(binders.end(), minors.begin(), minors.end());
                binders.insert(binders.end(), b_u.begin(), b_u.end());
                expr rhs = lctx().mk_lambda(binders, e_app);
                rules.push_back(recursor_rule{c.m_name, static_cast<unsigned>(b_u.size()), rhs});
                minor_idx++;
            }

            recursor_val rv;
            rv.m_all      = m_all;
            rv.m_nparams  = m_nparams;
            rv.m_nindices = m_nindices[idx];
            rv.m_nmotives = static_cast<unsigned>(Cs.size());
            rv.m_nminors  = static_cast<unsigned>(minors.size());
            rv.m_rules    = std::move(rules);
            rv.m_k        = m_K_target;
            cs.emplace_back(m_rec_names[idx], rec_lparams(), rec_ty, rv);
        }
        add_to_env(cs);
    }

public:
    add_inductive_fn(environment const & env, check_options const & opts, names const & lparams, unsigned nparams,
                     std::vector<inductive_type> const & types, names const & all, unsigned nnested,
                     names const & rec_names)
        : m_env(env), m_opts(opts), m_lparams(lparams), m_levels(params_to_levels(lparams)), m_nparams(nparams),
          m_types(types), m_all(all), m_nnested(nnested), m_rec_names(rec_names), m_tc(env, opts, lparams) {}

    std::vector<constant_info> operator()(check_stats * stats) {
        if (m_types.empty())
            fail(error_kind::invalid_inductive, "empty inductive declaration");
        check_inductive_types();
        declare_inductive_types();
        check_constructors();
        declare_constructors();
        init_elim_level();
        init_K_target();
        mk_rec_infos();
        declare_recursors();
        if (stats) {
            stats->m_defeq_calls += m_tc.stats().m_defeq_calls;
            stats->m_whnf_calls += m_tc.stats().m_whnf_calls;
            stats->m_max_depth = std::max(stats->m_max_depth, m_tc.stats().m_max_depth);
        }
        return m_out;
    }
};

/* ---------------------------------------------------------------------------
   Nested inductives
   ------------------------------------------------------------------------- */

struct aux_type_info {
    name m_aux_name;
    /** \brief The nested occurrence <tt>I As</tt>, with the block parameters abstracted as loose bvars. */
    expr m_nested;
};

class elim_nested_fn {
    environment              m_env;
    inductive_decl           m_decl;
    type_checker             m_tc;
    levels                   m_levels;
    exprs                    m_params;
    std::vector<aux_type_info> m_aux;
    std::vector<expr>        m_aux_occ;

    bool is_block_name(name const & n) const {
        for (inductive_type const & t : m_decl.m_types)
            if (t.m_name == n)
                return true;
        return false;
    }

    /** \brief The inductive applied to parameters that mention the block, if \c e is one. */
    constant_info const * is_nested_inductive_app(expr const & e) const {
        if (!is_app(e))
            return nullptr;
        expr const & fn = get_app_fn(e);
        if (!is_constant(fn))
            return nullptr;
        constant_info const * info = m_env.find(fn.const_name());
        if (!info || !info->is_inductive())
            return nullptr;
        exprs args;
        get_app_args(e, args);
        unsigned np = info->to_inductive().m_nparams;
        if (args.size() < np)
            return nullptr;
        bool nested = false;
        for (unsigned i = 0; i < np; i++) {
            if (find_const(args[i], [&](name const & n) { return is_block_name(n); })) {
                nested = true;
                if (args[i].has_loose_bvars())
                    throw kernel_exception(error_kind::invalid_inductive,
                                           "invalid nested inductive occurrence " + to_string(e, &m_tc.lctx()) +
                                               ": its parameters may not depend on constructor fields");
            }
        }
        return nested ? info : nullptr;
    }

    name mk_aux_name(name const & I) {
        std::string base;
        for (std::string const & s : I.components())
            base += (base.empty() ? "" : "_") + s;
        return name(name(nested_aux_root()), base + "_" + std::to_string(m_aux.size() + 1));
    }

    expr replace_if_nested(expr const & e, constant_info const & I_info) {
        exprs args;
        expr const & fn = get_app_args(e, args);
        unsigned I_nparams = I_info.to_inductive().m_nparams;
        expr IAs = mk_app(fn, I_nparams, args.data());
        auto mk_result = [&](name const & aux) {
            expr r = mk_app(mk_const(aux, m_levels), m_params);
            return mk_app(r, args.size() - I_nparams, args.data() + I_nparams);
        };
        for (std::size_t i = 0; i < m_aux_occ.size(); i++)
            if (m_aux_occ[i] == IAs)
                return mk_result(m_aux[i].m_aux_name);
        name aux_name = mk_aux_name(fn.const_name());
        auto specialize = [&](expr const & type) {
            expr t = instantiate_lparams(type, I_info.get_lparams(), fn.const_levels());
            std::optional<expr> r = instantiate_pi_params(t, I_nparams, args.data());
            if (!r)
                throw kernel_exception(error_kind::invalid_inductive,
                                       "ill-formed type in nested inductive '" + fn.const_name().to_string() + "'");
            return m_tc.lctx().mk_pi(m_params, *r);
        };
        inductive_type aux{aux_name, specialize(I_info.get_type()), {}};
        for (name const & J : I_info.to_inductive().m_ctors) {
            constant_info const & J_info = m_env.get(J);
            aux.m_ctors.push_back(constructor_decl{J.replace_prefix(fn.const_name(), aux_name),
                                                   specialize(J_info.get_type())});
        }
        m_decl.m_types.push_back(aux);
        m_aux.push_back(aux_type_info{aux_name, abstract(IAs, m_params)});
        m_aux_occ.push_back(IAs);
        return mk_result(aux_name);
    }

    /** \brief Do the leading binders of \c type have exactly the parameter types? */
    bool has_param_prefix(expr type) const {
        for (std::size_t i = 0; i < m_params.size(); i++) {
            if (!is_pi(type))
                return false;
            expr dom = instantiate_rev(type.binding_domain(), i, m_params.data());
            if (dom != m_tc.lctx().get(m_params[i].fvar()).get_type())
                return false;
            type = type.binding_body();
        }
        return true;
    }

    expr replace_all_nested(expr const & type) {
        // constructors whose parameters differ are left alone and rejected by the main check
        if (!has_param_prefix(type))
            return type;
        std::optional<expr> body = instantiate_pi_params(type, m_params.size(), m_params.data());
        if (!body)
            return type;
        bool changed = false;
        expr r = replace(*body, [&](expr const & e, unsigned) -> std::optional<expr> {
            if (constant_info const * I = is_nested_inductive_app(e)) {
                changed = true;
                return replace_if_nested(e, *I);
            }
            return std::nullopt;
        });
        return changed ? m_tc.lctx().mk_pi(m_params, r) : type;
    }

public:
    elim_nested_fn(environment const & env, inductive_decl const & d)
        : m_env(env), m_decl(d), m_tc(env), m_levels(params_to_levels(d.m_lparams)) {}

    /** \brief The block extended with auxiliary types; empty aux list when nothing is nested. */
    inductive_decl operator()(std::vector<aux_type_info> & aux) {
        expr t = m_decl.m_types[0].m_type;
        for (unsigned i = 0; i < m_decl.m_nparams; i++) {
            if (!is_pi(t))
                return m_decl;
            expr x = m_tc.mk_local_decl(t.binding_name(), instantiate_rev(t.binding_domain(), m_params),
                                        t.binding_info());
            m_params.push_back(x);
            t = t.binding_body();
        }
        for (std::size_t i = 0; i < m_decl.m_types.size(); i++) {
            for (std::size_t j = 0; j < m_decl.m_types[i].m_ctors.size(); j++) {
                expr new_type = replace_all_nested(m_decl.m_types[i].m_ctors[j].m_type);
                m_decl.m_types[i].m_ctors[j].m_type = new_type;
            }
        }
        aux = m_aux;
        return m_decl;
    }
};

/** \brief Replace auxiliary types and constructors by the nested occurrences they stand for. */
class restore_nested_fn {
    environment const &               m_aux_env;
    std::vector<aux_type_info> const & m_aux;
    unsigned                          m_nparams;

    aux_type_info const * find_aux(name const & n) const {
        for (aux_type_info const & a : m_aux)
            if (a.m_aux_name == n)
                return &a;
        return nullptr;
    }

public:
    restore_nested_fn(environment const & aux_env, std::vector<aux_type_info> const & aux, unsigned nparams)
        : m_aux_env(aux_env), m_aux(aux), m_nparams(nparams) {}

    std::optional<name> restore_ctor_name(name const & n) const {
        constant_info const * c = m_aux_env.find(n);
        if (!c || !c->is_constructor())
            return std::nullopt;
        aux_type_info const * a = find_aux(c->to_constructor().m_induct);
        if (!a)
            return std::nullopt;
        return n.replace_prefix(a->m_aux_name, get_app_fn(a->m_nested).const_name());
    }

    expr operator()(expr e) const {
        type_checker tc(m_aux_env);
        exprs As;
        bool pi = is_pi(e);
        for (unsigned i = 0; i < m_nparams; i++) {
            As.push_back(tc.mk_local_decl(e.binding_name(), instantiate_rev(e.binding_domain(), As),
                                          e.binding_info()));
            e = e.binding_body();
        }
        e = instantiate_rev(e, As);
        e = replace(e, [&](expr const & t, unsigned) -> std::optional<expr> {
            expr const & fn = get_app_fn(t);
            if (!is_constant(fn))
                return std::nullopt;
            exprs args;
            get_app_args(t, args);
            if (aux_type_info const * a = find_aux(fn.const_name())) {
                if (args.size() < m_nparams)
                    return std::nullopt;
                expr r = instantiate_rev(a->m_nested, As);
                return mk_app(r, args.size() - m_nparams, args.data() + m_nparams);
            }
            if (std::optional<name> J = restore_ctor_name(fn.const_name())) {
                if (args.size() < m_nparams)
                    return std::nullopt;
                aux_type_info const * a = find_aux(m_aux_env.get(fn.const_name()).to_constructor().m_induct);
                expr I_As = instantiate_rev(a->m_nested, As);
                exprs I_args;
                expr const & I = get_app_args(I_As, I_args);
                expr r = mk_app(mk_const(*J, I.const_levels()), I_args);
                return mk_app(r, args.size() - m_nparams, args.data() + m_nparams);
            }
            return std::nullopt;
        });
        return pi ? tc.lctx().mk_pi(As, e) : tc.lctx().mk_lambda(As, e);
    }
};

void check_new_name(environment const & env, name const & n, names & seen) {
    if (n.is_anonymous())
        throw kernel_exception(error_kind::invalid_inductive, "anonymous name in inductive declaration");
    if (n.get_root() == name(nested_aux_root()))
        throw kernel_exception(error_kind::invalid_inductive, "'" + n.to_string() + "' uses a reserved name prefix");
    if (env.contains(n) || std::find(seen.begin(), seen.end(), n) != seen.end())
        throw kernel_exception(error_kind::duplicate_name, "'" + n.to_string() + "' has already been declared");
    seen.push_back(n);
}

}

environment add_inductive(environment const & env, inductive_decl const & d, check_options const & opts,
                          check_stats * stats) {
    names seen;
    names all;
    for (inductive_type const & t : d.m_types) {
        check_new_name(env, t.m_name, seen);
        check_new_name(env, name(t.m_name, "rec"), seen);
        all.push_back(t.m_name);
    }
    for (inductive_type const & t : d.m_types)
        for (constructor_decl const & c : t.m_ctors)
            check_new_name(env, c.m_name, seen);
    if (d.m_types.empty())
        throw kernel_exception(error_kind::invalid_inductive, "empty inductive declaration");

    std::vector<aux_type_info> aux;
    inductive_decl aux_decl = elim_nested_fn(env, d)(aux);
    names rec_names;
    for (std::size_t i = 0; i < aux_decl.m_types.size(); i++) {
        if (i < d.m_types.size())
            rec_names.push_back(name(d.m_types[i].m_name, "rec"));
        else
            rec_names.push_back(name(d.m_types[0].m_name, "rec").append_after("_" + std::to_string(i - d.m_types.size() + 1)));
    }
    for (std::size_t i = d.m_types.size(); i < rec_names.size(); i++)
        check_new_name(env, rec_names[i], seen);

    add_inductive_fn fn(env, opts, d.m_lparams, d.m_nparams, aux_decl.m_types, all,
                        static_cast<unsigned>(aux.size()), rec_names);
    std::vector<constant_info> cs = fn(stats);
    if (aux.empty())
        return env.add(cs);

    environment aux_env = env.add(cs);
    restore_nested_fn restore(aux_env, aux, d.m_nparams);
    std::vector<constant_info> out;
    for (constant_info const & c : cs) {
        if (c.is_inductive()) {
            if (std::find(all.begin(), all.end(), c.get_name()) != all.end())
                out.push_back(c);
        } else if (c.is_constructor()) {
            if (std::find(all.begin(), all.end(), c.to_constructor().m_induct) != all.end())
                out.emplace_back(c.get_name(), c.get_lparams(), restore(c.get_type()), c.get_payload());
        } else if (c.is_recursor()) {
            recursor_val rv = c.to_recursor();
            for (recursor_rule & r : rv.m_rules) {
                r.m_rhs = restore(r.m_rhs);
                if (std::optional<name> J = restore.restore_ctor_name(r.m_ctor))
                    r.m_ctor = *J;
            }
            out.emplace_back(c.get_name(), c.get_lparams(), restore(c.get_type()), rv);
        }
    }
    return env.add(out);
}

}
