#include "lk/type_checker.hpp"
#include "lk/hash.hpp"
#include "lk/instantiate.hpp"
#include "lk/literals.hpp"
#include "lk/printer.hpp"

#include <boost/integer/common_factor.hpp>

namespace lk {

std::size_t type_checker::expr_pair_hash::operator()(std::pair<expr, expr> const & p) const {
    return hash_mix(p.first.hash(), p.second.hash());
}

class type_checker::depth_guard {
    type_checker & m_tc;
public:
    explicit depth_guard(type_checker & tc) : m_tc(tc) {
        if (m_tc.m_depth >= m_tc.m_opts.fuel)
            throw kernel_exception(error_kind::deep_recursion,
                                   "maximum recursion depth exceeded (fuel " + std::to_string(m_tc.m_opts.fuel) + ")");
        m_tc.m_depth++;
        if (m_tc.m_depth > m_tc.m_stats.m_max_depth)
            m_tc.m_stats.m_max_depth = m_tc.m_depth;
    }
    ~depth_guard() { m_tc.m_depth--; }
    depth_guard(depth_guard const &) = delete;
    depth_guard & operator=(depth_guard const &) = delete;
};

type_checker::type_checker(environment const & env, check_options const & opts, std::optional<names> lparams)
    : m_env(env), m_opts(opts), m_lparams(std::move(lparams)) {}

void type_checker::update_env(environment const & env) {
    m_env = env;
    m_infer_cache[0].clear();
    m_infer_cache[1].clear();
    m_whnf_cache.clear();
    m_whnf_core_cache.clear();
    m_defeq_cache.clear();
    m_failure_cache.clear();
}

expr type_checker::mk_local_decl(name const & n, expr const & type, binder_info bi, std::optional<expr> value) {
    fvar_id id{m_next_fvar++};
    m_lctx.add(local_decl(id, n, type, bi, std::move(value)));
    return mk_fvar(id);
}

void type_checker::throw_mismatch(char const * what, expr const & expected, expr const & given) {
    throw kernel_exception(error_kind::defeq_failure,
                           std::string(what) + ": expected\n    " + to_string(expected, &m_lctx) + "\n  got\n    " +
                               to_string(given, &m_lctx),
                           expected, given);
}

/* ---------------------------------------------------------------------------
   Type inference
   ------------------------------------------------------------------------- */

void type_checker::check_level(level const & l) {
    if (!m_lparams)
        return;
    if (auto p = first_unbounded_param(l, *m_lparams))
        throw kernel_exception(error_kind::undeclared_level_param,
                               "undeclared universe parameter '" + p->to_string() + "'");
}

expr type_checker::infer_fvar(expr const & e) {
    if (local_decl const * d = m_lctx.find(e.fvar()))
        return d->get_type();
    throw kernel_exception(error_kind::unknown_fvar, "unknown free variable #" + std::to_string(e.fvar().m_idx));
}

expr type_checker::infer_constant(expr const & e, bool infer_only) {
    constant_info const & info = m_env.get(e.const_name());
    levels const & ls = e.const_levels();
    if (ls.size() != info.get_num_lparams())
        throw kernel_exception(error_kind::level_arity_mismatch,
                               "constant '" + e.const_name().to_string() + "' expects " +
                                   std::to_string(info.get_num_lparams()) + " universe levels, got " +
                                   std::to_string(ls.size()));
    if (!infer_only)
        for (level const & l : ls)
            check_level(l);
    return instantiate_lparams(info.get_type(), info.get_lparams(), ls);
}

expr type_checker::infer_sort(expr const & e, bool infer_only) {
    if (!infer_only)
        check_level(e.sort_level());
    return mk_sort(mk_succ(e.sort_level()));
}

expr type_checker::infer_lambda(expr const & e0, bool infer_only) {
    exprs fvars;
    expr e = e0;
    while (is_lambda(e)) {
        expr d = instantiate_rev(e.binding_domain(), fvars);
        if (!infer_only)
            ensure_sort(infer_type_core(d, infer_only), d);
        fvars.push_back(mk_local_decl(e.binding_name(), d, e.binding_info()));
        e = e.binding_body();
    }
    expr r = infer_type_core(instantiate_rev(e, fvars), infer_only);
    r = cheap_beta_reduce(r);
    return m_lctx.mk_pi(fvars, r);
}

expr type_checker::infer_pi(expr const & e0, bool infer_only) {
    exprs fvars;
    levels us;
    expr e = e0;
    while (is_pi(e)) {
        expr d = instantiate_rev(e.binding_domain(), fvars);
        expr s = ensure_sort(infer_type_core(d, infer_only), d);
        us.push_back(s.sort_level());
        fvars.push_back(mk_local_decl(e.binding_name(), d, e.binding_info()));
        e = e.binding_body();
    }
    e = instantiate_rev(e, fvars);
    expr s = ensure_sort(infer_type_core(e, infer_only), e);
    level r = s.sort_level();
    for (std::size_t i = us.size(); i-- > 0;)
        r = mk_imax(us[i], r);
    return mk_sort(r);
}

expr type_checker::infer_app(expr const & e, bool infer_only) {
    if (!infer_only) {
        expr f_type = ensure_pi(infer_type_core(e.app_fn(), infer_only), e.app_fn());
        expr a_type = infer_type_core(e.app_arg(), infer_only);
        expr d = f_type.binding_domain();
        if (!is_def_eq(a_type, d))
            throw_mismatch(("application type mismatch in argument of " + to_string(e.app_fn(), &m_lctx)).c_str(),
                           d, a_type);
        return instantiate(f_type.binding_body(), e.app_arg());
    }
    exprs args;
    expr const & f = get_app_args(e, args);
    expr f_type = infer_type_core(f, true);
    std::size_t j = 0;
    for (std::size_t i = 0; i < args.size(); i++) {
        if (is_pi(f_type)) {
            f_type = f_type.binding_body();
        } else {
            f_type = instantiate_rev(f_type, i - j, args.data() + j);
            f_type = ensure_pi(f_type, e);
            f_type = f_type.binding_body();
            j = i;
        }
    }
    return instantiate_rev(f_type, args.size() - j, args.data() + j);
}

expr type_checker::infer_let(expr const & e0, bool infer_only) {
    exprs fvars;
    expr e = e0;
    while (is_let(e)) {
        expr type = instantiate_rev(e.let_type(), fvars);
        expr val  = instantiate_rev(e.let_value(), fvars);
        if (!infer_only) {
            ensure_sort(infer_type_core(type, infer_only), type);
            expr val_type = infer_type_core(val, infer_only);
            if (!is_def_eq(val_type, type))
                throw_mismatch(("let value type mismatch for '" + e.let_name().to_string() + "'").c_str(), type,
                               val_type);
        }
        fvars.push_back(mk_local_decl(e.let_name(), type, binder_info::Default, val));
        e = e.let_body();
    }
    expr r = infer_type_core(instantiate_rev(e, fvars), infer_only);
    r = cheap_beta_reduce(r);
    // keep only the let-variables the result (transitively) depends on
    std::vector<bool> used(fvars.size(), false);
    auto mark = [&](expr const & x, std::size_t limit) {
        if (!x.has_fvar())
            return;
        replace(x, [&](expr const & y, unsigned) -> std::optional<expr> {
            if (!y.has_fvar())
                return y;
            if (is_fvar(y)) {
                for (std::size_t i = 0; i < limit; i++)
                    if (fvars[i].fvar() == y.fvar())
                        used[i] = true;
                return y;
            }
            return std::nullopt;
        });
    };
    mark(r, fvars.size());
    for (std::size_t i = fvars.size(); i-- > 0;) {
        if (used[i]) {
            local_decl const & d = m_lctx.get(fvars[i].fvar());
            mark(d.get_type(), i);
            mark(*d.get_value(), i);
        }
    }
    exprs used_fvars;
    for (std::size_t i = 0; i < fvars.size(); i++)
        if (used[i])
            used_fvars.push_back(fvars[i]);
    return m_lctx.mk_pi(used_fvars, r);
}

expr type_checker::infer_proj(expr const & e, bool infer_only) {
    expr type = whnf(infer_type_core(e.proj_struct(), infer_only));
    exprs args;
    expr const & I = get_app_args(type, args);
    auto fail = [&](std::string const & why) -> kernel_exception {
        return kernel_exception(error_kind::invalid_projection,
                                "invalid projection " + to_string(e, &m_lctx) + ": " + why);
    };
    if (!is_constant(I))
        throw fail("structure expected, got " + to_string(type, &m_lctx));
    name const & I_name = I.const_name();
    if (I_name != e.proj_sname())
        throw fail("type of struct is " + I_name.to_string());
    if (!is_structure_like(m_env, I_name))
        throw fail("'" + I_name.to_string() + "' is not structure-like");
    inductive_val const & I_val = m_env.get(I_name).to_inductive();
    if (args.size() != I_val.m_nparams)
        throw fail("wrong number of parameters");
    constant_info const & c_info = m_env.get(I_val.m_ctors[0]);
    if (e.proj_idx() >= c_info.to_constructor().m_nfields)
        throw fail("field index " + std::to_string(e.proj_idx()) + " out of range");
    if (I.const_levels().size() != c_info.get_num_lparams())
        throw fail("universe level mismatch");
    expr r = instantiate_lparams(c_info.get_type(), c_info.get_lparams(), I.const_levels());
    for (expr const & a : args) {
        r = whnf(r);
        if (!is_pi(r))
            throw fail("ill-formed constructor type");
        r = instantiate(r.binding_body(), a);
    }
    bool is_prop_type = is_prop(type);
    for (std::uint64_t i = 0; i < e.proj_idx(); i++) {
        r = whnf(r);
        if (!is_pi(r))
            throw fail("ill-formed constructor type");
        if (has_loose_bvar(r.binding_body(), 0)) {
            if (is_prop_type && !is_prop(r.binding_domain()))
                throw fail("cannot project data out of a proposition");
            r = instantiate(r.binding_body(), mk_proj(I_name, i, e.proj_struct()));
        } else {
            r = r.binding_body();
        }
    }
    r = whnf(r);
    if (!is_pi(r))
        throw fail("ill-formed constructor type");
    r = r.binding_domain();
    if (is_prop_type && !is_prop(r))
        throw fail("cannot project data out of a proposition");
    return r;
}

expr type_checker::infer_lit(expr const & e) {
    return mk_const(e.lit().is_nat() ? name("Nat") : name("String"));
}

expr type_checker::infer_type_core(expr const & e, bool infer_only) {
    if (e.has_loose_bvars())
        throw kernel_exception(error_kind::has_loose_bvars,
                               "type inference on a term with loose bound variables: " + to_string(e, &m_lctx));
    depth_guard guard(*this);
    auto & cache = m_infer_cache[infer_only ? 1 : 0];
    if (m_opts.use_caches) {
        auto it = cache.find(e);
        if (it != cache.end())
            return it->second;
    }
    expr r;
    switch (e.kind()) {
    case expr_kind::BVar:
        throw kernel_exception(error_kind::has_loose_bvars, "unexpected bound variable");
    case expr_kind::MVar:
        throw kernel_exception(error_kind::has_mvars, "unexpected metavariable ?" + e.mvar_name().to_string());
    case expr_kind::FVar:   r = infer_fvar(e); break;
    case expr_kind::Sort:   r = infer_sort(e, infer_only); break;
    case expr_kind::Const:  r = infer_constant(e, infer_only); break;
    case expr_kind::Lambda: r = infer_lambda(e, infer_only); break;
    case expr_kind::Pi:     r = infer_pi(e, infer_only); break;
    case expr_kind::App:    r = infer_app(e, infer_only); break;
    case expr_kind::Let:    r = infer_let(e, infer_only); break;
    case expr_kind::Lit:    r = infer_lit(e); break;
    case expr_kind::MData:  r = infer_type_core(e.mdata_expr(), infer_only); break;
    case expr_kind::Proj:   r = infer_proj(e, infer_only); break;
    }
    if (m_opts.use_caches)
        cache.insert_or_assign(e, r);
    return r;
}

expr type_checker::infer_type(expr const & e, bool infer_only) {
    return infer_type_core(e, infer_only);
}

bool type_checker::is_prop(expr const & type) {
    expr t = whnf(infer_type(type, true));
    return is_sort(t) && is_zero(t.sort_level());
}

expr type_checker::ensure_sort(expr const & e, expr const & ctx) {
    if (is_sort(e))
        return e;
    expr r = whnf(e);
    if (is_sort(r))
        return r;
    throw kernel_exception(error_kind::type_expected,
                           "type expected: " + to_string(ctx, &m_lctx) + " has type " + to_string(e, &m_lctx));
}

expr type_checker::ensure_pi(expr const & e, expr const & ctx) {
    if (is_pi(e))
        return e;
    expr r = whnf(e);
    if (is_pi(r))
        return r;
    throw kernel_exception(error_kind::function_expected,
                           "function expected: " + to_string(ctx, &m_lctx) + " has type " + to_string(e, &m_lctx));
}

level type_checker::ensure_type(expr const & e) {
    return ensure_sort(infer_type(e, false), e).sort_level();
}

/* ---------------------------------------------------------------------------
   Reduction
   ------------------------------------------------------------------------- */

bool is_structure_like(environment const & env, name const & n) {
    constant_info const * c = env.find(n);
    if (!c || !c->is_inductive())
        return false;
    inductive_val const & v = c->to_inductive();
    return v.m_ctors.size() == 1 && v.m_nindices == 0 && !v.m_is_rec;
}

bool type_checker::is_ctor_app(expr const & e) const {
    expr const & f = get_app_fn(e);
    if (!is_constant(f))
        return false;
    constant_info const * c = m_env.find(f.const_name());
    return c && c->is_constructor();
}

std::optional<expr> type_checker::proj_reduce(expr const & s0, std::uint64_t idx) {
    expr s = s0;
    if (is_string_lit(s))
        s = str_lit_view(s);
    exprs args;
    expr const & f = get_app_args(s, args);
    if (!is_constant(f))
        return std::nullopt;
    constant_info const * c = m_env.find(f.const_name());
    if (!c || !c->is_constructor())
        return std::nullopt;
    unsigned nparams = c->to_constructor().m_nparams;
    if (nparams + idx < args.size())
        return args[nparams + idx];
    return std::nullopt;
}

std::optional<expr> type_checker::mk_nullary_ctor(expr const & type, unsigned nparams) {
    exprs args;
    expr const & d = get_app_args(type, args);
    if (!is_constant(d))
        return std::nullopt;
    constant_info const * I = m_env.find(d.const_name());
    if (!I || !I->is_inductive() || I->to_inductive().m_ctors.empty() || args.size() < nparams)
        return std::nullopt;
    return mk_app(mk_const(I->to_inductive().m_ctors[0], d.const_levels()), nparams, args.data());
}

expr type_checker::to_ctor_when_k(recursor_val const & rec, name const & induct, expr const & e) {
    expr app_type = whnf(infer_type(e, true));
    expr const & I = get_app_fn(app_type);
    if (!is_constant(I) || I.const_name() != induct)
        return e;
    std::optional<expr> new_ctor_app = mk_nullary_ctor(app_type, rec.m_nparams);
    if (!new_ctor_app)
        return e;
    expr new_type = infer_type(*new_ctor_app, true);
    if (!is_def_eq(app_type, new_type))
        return e;
    return *new_ctor_app;
}

expr type_checker::to_ctor_when_structure(name const & induct, expr const & e) {
    if (!is_structure_like(m_env, induct) || is_ctor_app(e))
        return e;
    expr e_type = whnf(infer_type(e, true));
    if (!is_app_of(e_type, induct) && !is_constant(e_type, induct))
        return e;
    if (is_prop(e_type))
        return e;
    exprs args;
    expr const & I = get_app_args(e_type, args);
    inductive_val const & I_val = m_env.get(induct).to_inductive();
    constant_info const & c = m_env.get(I_val.m_ctors[0]);
    expr r = mk_app(mk_const(c.get_name(), I.const_levels()), I_val.m_nparams, args.data());
    for (unsigned i = 0; i < c.to_constructor().m_nfields; i++)
        r = mk_app(r, mk_proj(induct, i, e));
    return r;
}

std::optional<expr> type_checker::inductive_reduce_rec(expr const & e, bool cheap_rec, bool cheap_proj) {
    expr const & rec_fn = get_app_fn(e);
    if (!is_constant(rec_fn))
        return std::nullopt;
    constant_info const * rec_info = m_env.find(rec_fn.const_name());
    if (!rec_info || !rec_info->is_recursor())
        return std::nullopt;
    recursor_val const & rec = rec_info->to_recursor();
    exprs rec_args;
    get_app_args(e, rec_args);
    unsigned major_idx = rec.major_idx();
    if (major_idx >= rec_args.size() || rec.m_rules.empty())
        return std::nullopt;
    name induct = m_env.get(rec.m_rules[0].m_ctor).to_constructor().m_induct;
    expr major = rec_args[major_idx];
    if (rec.m_k)
        major = to_ctor_when_k(rec, induct, major);
    major = cheap_rec ? whnf_core(major, cheap_rec, cheap_proj) : whnf(major);
    if (is_nat_lit(major))
        major = nat_lit_ctor_view(major);
    else if (is_string_lit(major))
        major = str_lit_view(major);
    else if (!is_ctor_app(major))
        major = to_ctor_when_structure(induct, major);
    expr const & major_fn = get_app_fn(major);
    if (!is_constant(major_fn))
        return std::nullopt;
    recursor_rule const * rule = nullptr;
    for (recursor_rule const & r : rec.m_rules)
        if (r.m_ctor == major_fn.const_name())
            rule = &r;
    if (!rule)
        return std::nullopt;
    exprs major_args;
    get_app_args(major, major_args);
    if (rule->m_nfields > major_args.size())
        return std::nullopt;
    if (rec_fn.const_levels().size() != rec_info->get_num_lparams())
        return std::nullopt;
    expr rhs = instantiate_lparams(rule->m_rhs, rec_info->get_lparams(), rec_fn.const_levels());
    rhs = mk_app(rhs, rec.m_nparams + rec.m_nmotives + rec.m_nminors, rec_args.data());
    std::size_t nparams_major = major_args.size() - rule->m_nfields;
    rhs = mk_app(rhs, rule->m_nfields, major_args.data() + nparams_major);
    if (rec_args.size() > major_idx + 1)
        rhs = mk_app(rhs, rec_args.size() - major_idx - 1, rec_args.data() + major_idx + 1);
    return rhs;
}

std::optional<expr> type_checker::quot_reduce_rec(expr const & e) {
    expr const & fn = get_app_fn(e);
    if (!is_constant(fn))
        return std::nullopt;
    unsigned mk_pos, arg_pos;
    if (fn.const_name() == name("Quot.lift")) {
        mk_pos  = 5;
        arg_pos = 3;
    } else if (fn.const_name() == name("Quot.ind")) {
        mk_pos  = 4;
        arg_pos = 3;
    } else {
        return std::nullopt;
    }
    exprs args;
    get_app_args(e, args);
    if (args.size() <= mk_pos)
        return std::nullopt;
    expr mk = whnf(args[mk_pos]);
    expr const & mk_fn = get_app_fn(mk);
    if (!is_constant(mk_fn) || mk_fn.const_name() != name("Quot.mk") || get_app_num_args(mk) != 3)
        return std::nullopt;
    expr r = mk_app(args[arg_pos], mk.app_arg());
    unsigned elim_arity = mk_pos + 1;
    if (args.size() > elim_arity)
        r = mk_app(r, args.size() - elim_arity, args.data() + elim_arity);
    return r;
}

std::optional<expr> type_checker::reduce_recursor(expr const & e, bool cheap_rec, bool cheap_proj) {
    if (m_env.is_quot_initialized())
        if (auto r = quot_reduce_rec(e))
            return r;
    return inductive_reduce_rec(e, cheap_rec, cheap_proj);
}

expr type_checker::whnf_core(expr const & e, bool cheap_rec, bool cheap_proj) {
    switch (e.kind()) {
    case expr_kind::BVar: case expr_kind::Sort: case expr_kind::MVar: case expr_kind::Pi:
    case expr_kind::Const: case expr_kind::Lambda: case expr_kind::Lit:
        return e;
    case expr_kind::MData:
        return whnf_core(e.mdata_expr(), cheap_rec, cheap_proj);
    case expr_kind::FVar: {
        local_decl const * d = m_lctx.find(e.fvar());
        if (d && d->get_value())
            return whnf_core(*d->get_value(), cheap_rec, cheap_proj);
        return e;
    }
    default:
        break;
    }
    depth_guard guard(*this);
    bool use_cache = m_opts.use_caches && !cheap_rec && !cheap_proj;
    if (use_cache) {
        auto it = m_whnf_core_cache.find(e);
        if (it != m_whnf_core_cache.end())
            return it->second;
    }
    expr r = e;
    switch (e.kind()) {
    case expr_kind::App: {
        exprs args;
        expr const & f0 = get_app_args(e, args);
        expr f = whnf_core(f0, cheap_rec, cheap_proj);
        if (is_lambda(f)) {
            std::size_t m = 0;
            expr b = f;
            while (is_lambda(b) && m < args.size()) {
                b = b.binding_body();
                m++;
            }
            r = whnf_core(mk_app(instantiate_rev(b, m, args.data()), args.size() - m, args.data() + m), cheap_rec,
                          cheap_proj);
        } else if (f.is_eqp(f0)) {
            if (auto red = reduce_recursor(e, cheap_rec, cheap_proj))
                r = whnf_core(*red, cheap_rec, cheap_proj);
            else
                r = e;
        } else {
            r = whnf_core(mk_app(f, args), cheap_rec, cheap_proj);
        }
        break;
    }
    case expr_kind::Let:
        r = whnf_core(instantiate(e.let_body(), e.let_value()), cheap_rec, cheap_proj);
        break;
    case expr_kind::Proj: {
        expr c = cheap_proj ? whnf_core(e.proj_struct(), cheap_rec, cheap_proj) : whnf(e.proj_struct());
        if (auto m = proj_reduce(c, e.proj_idx()))
            r = whnf_core(*m, cheap_rec, cheap_proj);
        else
            r = e;
        break;
    }
    default:
        break;
    }
    if (use_cache)
        m_whnf_core_cache.insert_or_assign(e, r);
    return r;
}

constant_info const * type_checker::is_delta(expr const & e) const {
    expr const & f = get_app_fn(e);
    if (!is_constant(f))
        return nullptr;
    constant_info const * c = m_env.find(f.const_name());
    if (c && c->is_definition())
        return c;
    return nullptr;
}

std::optional<expr> type_checker::unfold_definition_core(expr const & e) const {
    if (!is_constant(e))
        return std::nullopt;
    constant_info const * c = is_delta(e);
    if (!c || c->get_num_lparams() != e.const_levels().size())
        return std::nullopt;
    return instantiate_lparams(c->get_value(), c->get_lparams(), e.const_levels());
}

std::optional<expr> type_checker::unfold_definition(expr const & e) const {
    if (is_app(e)) {
        exprs args;
        expr const & f0 = get_app_args(e, args);
        if (auto f = unfold_definition_core(f0))
            return mk_app(*f, args);
        return std::nullopt;
    }
    return unfold_definition_core(e);
}

names const & accelerated_nat_ops() {
    static names const ops = {
        name("Nat.add"), name("Nat.sub"), name("Nat.mul"), name("Nat.div"), name("Nat.mod"),
        name("Nat.pow"), name("Nat.gcd"), name("Nat.beq"), name("Nat.ble"), name("Nat.land"),
        name("Nat.lor"), name("Nat.xor"), name("Nat.shiftLeft"), name("Nat.shiftRight"),
    };
    return ops;
}

std::optional<nat> type_checker::nat_value(expr const & e) {
    if (is_nat_lit(e))
        return e.lit().get_nat();
    if (is_constant(e, name("Nat.zero")))
        return nat(0);
    return std::nullopt;
}

std::optional<expr> type_checker::reduce_nat(expr const & e) {
    if (!m_opts.nat_accel || e.has_fvar() || !is_app(e))
        return std::nullopt;
    unsigned nargs = get_app_num_args(e);
    if (nargs == 1) {
        expr const & f = e.app_fn();
        if (!is_constant(f, name("Nat.succ")) || !m_env.find(name("Nat.succ")))
            return std::nullopt;
        auto v = nat_value(whnf(e.app_arg()));
        if (!v)
            return std::nullopt;
        return mk_nat_lit(*v + 1);
    }
    if (nargs != 2)
        return std::nullopt;
    expr const & f = e.app_fn().app_fn();
    if (!is_constant(f))
        return std::nullopt;
    name const & op = f.const_name();
    names const & ops = accelerated_nat_ops();
    if (std::find(ops.begin(), ops.end(), op) == ops.end() || !m_env.find(op))
        return std::nullopt;
    auto a = nat_value(whnf(e.app_fn().app_arg()));
    if (!a)
        return std::nullopt;
    auto b = nat_value(whnf(e.app_arg()));
    if (!b)
        return std::nullopt;
    nat const & x = *a;
    nat const & y = *b;
    auto mk_bool = [&](bool v) -> std::optional<expr> {
        name n = v ? name("Bool.true") : name("Bool.false");
        if (!m_env.find(n))
            return std::nullopt;
        return mk_const(n);
    };
    if (op == name("Nat.add")) return mk_nat_lit(x + y);
    if (op == name("Nat.sub")) return mk_nat_lit(x > y ? nat(x - y) : nat(0));
    if (op == name("Nat.mul")) return mk_nat_lit(x * y);
    if (op == name("Nat.div")) return mk_nat_lit(y == 0 ? nat(0) : nat(x / y));
    if (op == name("Nat.mod")) return mk_nat_lit(y == 0 ? x : nat(x % y));
    if (op == name("Nat.gcd")) return mk_nat_lit(boost::multiprecision::gcd(x, y));
    if (op == name("Nat.beq")) return mk_bool(x == y);
    if (op == name("Nat.ble")) return mk_bool(x <= y);
    if (op == name("Nat.land")) return mk_nat_lit(x & y);
    if (op == name("Nat.lor")) return mk_nat_lit(x | y);
    if (op == name("Nat.xor")) return mk_nat_lit(x ^ y);
    if (op == name("Nat.pow")) {
        if (y > (1u << 24))
            return std::nullopt;
        return mk_nat_lit(boost::multiprecision::pow(x, static_cast<unsigned>(y)));
    }
    if (op == name("Nat.shiftLeft")) {
        if (y > (1u << 24))
            return std::nullopt;
        return mk_nat_lit(x << static_cast<unsigned>(y));
    }
    if (op == name("Nat.shiftRight")) {
        if (y > (1u << 24))
            return mk_nat_lit(nat(0));
        return mk_nat_lit(x >> static_cast<unsigned>(y));
    }
    return std::nullopt;
}

expr type_checker::whnf(expr const & e) {
    switch (e.kind()) {
    case expr_kind::BVar: case expr_kind::Sort: case expr_kind::MVar: case expr_kind::Pi: case expr_kind::Lit:
        return e;
    case expr_kind::MData:
        return whnf(e.mdata_expr());
    case expr_kind::FVar: {
        local_decl const * d = m_lctx.find(e.fvar());
        if (!d || !d->get_value())
            return e;
        break;
    }
    default:
        break;
    }
    depth_guard guard(*this);
    m_stats.m_whnf_calls++;
    if (m_opts.use_caches) {
        auto it = m_whnf_cache.find(e);
        if (it != m_whnf_cache.end())
            return it->second;
    }
    expr t = whnf_core(e);
    expr r = t;
    if (auto v = reduce_nat(t))
        r = *v;
    else if (auto next = unfold_definition(t))
        r = whnf(*next);
    if (m_opts.use_caches)
        m_whnf_cache.insert_or_assign(e, r);
    return r;
}

/* ---------------------------------------------------------------------------
   Definitional equality
   ------------------------------------------------------------------------- */

bool type_checker::is_def_eq(levels const & a, levels const & b) {
    return is_equivalent(a, b);
}

bool type_checker::is_def_eq_binding(expr t, expr s) {
    expr_kind k = t.kind();
    exprs subst;
    while (t.kind() == k && s.kind() == k) {
        std::optional<expr> var_s_type;
        if (t.binding_domain() != s.binding_domain()) {
            var_s_type = instantiate_rev(s.binding_domain(), subst);
            expr var_t_type = instantiate_rev(t.binding_domain(), subst);
            if (!is_def_eq(var_t_type, *var_s_type))
                return false;
        }
        if (t.binding_body().has_loose_bvars() || s.binding_body().has_loose_bvars()) {
            if (!var_s_type)
                var_s_type = instantiate_rev(s.binding_domain(), subst);
            subst.push_back(mk_local_decl(s.binding_name(), *var_s_type, s.binding_info()));
        } else {
            // no body refers to this binder; any closed placeholder will do
            subst.push_back(mk_Prop());
        }
        t = t.binding_body();
        s = s.binding_body();
    }
    return is_def_eq(instantiate_rev(t, subst), instantiate_rev(s, subst));
}

lbool type_checker::quick_is_def_eq(expr const & t, expr const & s, bool use_hash) {
    if (t.is_eqp(s) || (use_hash && t.hash() == s.hash() && t == s))
        return lbool::True;
    if (is_mdata(t) || is_mdata(s))
        return to_lbool(is_def_eq_core(consume_mdata(t), consume_mdata(s)));
    if (t.kind() == s.kind()) {
        switch (t.kind()) {
        case expr_kind::Lambda:
        case expr_kind::Pi:
            return to_lbool(is_def_eq_binding(t, s));
        case expr_kind::Sort:
            return to_lbool(is_equivalent(t.sort_level(), s.sort_level()));
        case expr_kind::Lit:
            return to_lbool(t.lit() == s.lit());
        default:
            break;
        }
    }
    return lbool::Undef;
}

lbool type_checker::is_def_eq_proof_irrel(expr const & t, expr const & s) {
    expr t_type = infer_type(t, true);
    if (!is_prop(t_type))
        return lbool::Undef;
    expr s_type = infer_type(s, true);
    return to_lbool(is_def_eq(t_type, s_type));
}

lbool type_checker::is_def_eq_offset(expr const & t, expr const & s) {
    auto tv = nat_value(t);
    auto sv = nat_value(s);
    if (tv && sv)
        return to_lbool(*tv == *sv);
    auto pred = [&](expr const & e) -> std::optional<expr> {
        if (is_nat_lit(e) && e.lit().get_nat() > 0)
            return mk_nat_lit(e.lit().get_nat() - 1);
        if (is_app(e) && is_constant(e.app_fn(), name("Nat.succ")))
            return e.app_arg();
        return std::nullopt;
    };
    auto pt = pred(t);
    auto ps = pred(s);
    if (pt && ps)
        return to_lbool(is_def_eq_core(*pt, *ps));
    return lbool::Undef;
}

bool type_checker::is_def_eq_args(expr t, expr s) {
    while (is_app(t) && is_app(s)) {
        if (!is_def_eq(t.app_arg(), s.app_arg()))
            return false;
        t = t.app_fn();
        s = s.app_fn();
    }
    return !is_app(t) && !is_app(s);
}

lbool type_checker::lazy_delta_reduction_step(expr & t_n, expr & s_n) {
    constant_info const * d_t = is_delta(t_n);
    constant_info const * d_s = is_delta(s_n);
    if (!d_t && !d_s)
        return lbool::Undef;
    auto unfold = [&](expr const & e) { return whnf_core(*unfold_definition(e), false, true); };
    if (d_t && !d_s) {
        t_n = unfold(t_n);
    } else if (!d_t && d_s) {
        s_n = unfold(s_n);
    } else {
        int c = compare(d_t->get_hints(), d_s->get_hints());
        if (c < 0) {
            t_n = unfold(t_n);
        } else if (c > 0) {
            s_n = unfold(s_n);
        } else {
            if (is_app(t_n) && is_app(s_n) && d_t->get_name() == d_s->get_name() && d_t->get_hints().is_regular()) {
                auto key = std::make_pair(t_n, s_n);
                if (!m_failure_cache.count(key)) {
                    if (is_def_eq(get_app_fn(t_n).const_levels(), get_app_fn(s_n).const_levels()) &&
                        is_def_eq_args(t_n, s_n))
                        return lbool::True;
                    m_failure_cache.insert(key);
                }
            }
            t_n = unfold(t_n);
            s_n = unfold(s_n);
        }
    }
    return quick_is_def_eq(t_n, s_n);
}

lbool type_checker::lazy_delta_reduction(expr & t_n, expr & s_n) {
    // each round unfolds at least one definition; the number of rounds is bounded by the fuel
    for (unsigned round = 0;; round++) {
        if (round >= m_opts.fuel)
            throw kernel_exception(error_kind::deep_recursion,
                                   "maximum number of lazy delta steps exceeded (fuel " +
                                       std::to_string(m_opts.fuel) + ")");
        lbool r = is_def_eq_offset(t_n, s_n);
        if (r != lbool::Undef)
            return r;
        if (!t_n.has_fvar() && !s_n.has_fvar()) {
            if (auto t_v = reduce_nat(t_n))
                return to_lbool(is_def_eq_core(*t_v, s_n));
            if (auto s_v = reduce_nat(s_n))
                return to_lbool(is_def_eq_core(t_n, *s_v));
        }
        if (!is_delta(t_n) && !is_delta(s_n))
            return lbool::Undef;
        r = lazy_delta_reduction_step(t_n, s_n);
        if (r != lbool::Undef)
            return r;
    }
}

bool type_checker::is_def_eq_app(expr const & t, expr const & s) {
    if (!is_app(t) || !is_app(s))
        return false;
    exprs t_args, s_args;
    expr const & t_fn = get_app_args(t, t_args);
    expr const & s_fn = get_app_args(s, s_args);
    if (t_args.size() != s_args.size() || !is_def_eq(t_fn, s_fn))
        return false;
    for (std::size_t i = 0; i < t_args.size(); i++)
        if (!is_def_eq(t_args[i], s_args[i]))
            return false;
    return true;
}

bool type_checker::try_eta_expansion_core(expr const & t, expr const & s) {
    if (!is_lambda(t) || is_lambda(s))
        return false;
    expr s_type = whnf(infer_type(s, true));
    if (!is_pi(s_type))
        return false;
    expr new_s = mk_lambda(s_type.binding_name(), s_type.binding_domain(), mk_app(s, mk_bvar(0)),
                           s_type.binding_info());
    return is_def_eq(t, new_s);
}

bool type_checker::try_eta_struct_core(expr const & t, expr const & s) {
    exprs args;
    expr const & f = get_app_args(s, args);
    if (!is_constant(f))
        return false;
    constant_info const * c = m_env.find(f.const_name());
    if (!c || !c->is_constructor())
        return false;
    constructor_val const & cv = c->to_constructor();
    if (args.size() != cv.m_nparams + cv.m_nfields)
        return false;
    if (!is_structure_like(m_env, cv.m_induct))
        return false;
    if (!is_def_eq(infer_type(t, true), infer_type(s, true)))
        return false;
    for (unsigned i = cv.m_nparams; i < args.size(); i++)
        if (!is_def_eq(mk_proj(cv.m_induct, i - cv.m_nparams, t), args[i]))
            return false;
    return true;
}

lbool type_checker::try_string_lit_expansion_core(expr const & t, expr const & s) {
    if (is_string_lit(t) && is_app_of(s, name("String.mk")))
        return to_lbool(is_def_eq_core(str_lit_view(t), s));
    return lbool::Undef;
}

bool type_checker::is_def_eq_unit_like(expr const & t, expr const & s) {
    expr t_type = whnf(infer_type(t, true));
    expr const & I = get_app_fn(t_type);
    if (!is_constant(I))
        return false;
    constant_info const * info = m_env.find(I.const_name());
    if (!info || !info->is_inductive())
        return false;
    inductive_val const & v = info->to_inductive();
    if (v.m_is_rec || v.m_nindices != 0 || v.m_ctors.size() != 1)
        return false;
    if (m_env.get(v.m_ctors[0]).to_constructor().m_nfields != 0)
        return false;
    return is_def_eq(t_type, infer_type(s, true));
}

bool type_checker::is_def_eq_core(expr const & t, expr const & s) {
    depth_guard guard(*this);
    lbool r = quick_is_def_eq(t, s);
    if (r != lbool::Undef)
        return r == lbool::True;

    r = is_def_eq_proof_irrel(t, s);
    if (r != lbool::Undef)
        return r == lbool::True;

    expr t_n = whnf_core(t, false, true);
    expr s_n = whnf_core(s, false, true);
    if (!t_n.is_eqp(t) || !s_n.is_eqp(s)) {
        r = quick_is_def_eq(t_n, s_n);
        if (r != lbool::Undef)
            return r == lbool::True;
    }

    r = lazy_delta_reduction(t_n, s_n);
    if (r != lbool::Undef)
        return r == lbool::True;

    if (is_constant(t_n) && is_constant(s_n) && t_n.const_name() == s_n.const_name() &&
        is_def_eq(t_n.const_levels(), s_n.const_levels()))
        return true;
    if (is_fvar(t_n) && is_fvar(s_n) && t_n.fvar() == s_n.fvar())
        return true;
    if (is_proj(t_n) && is_proj(s_n) && t_n.proj_idx() == s_n.proj_idx() &&
        is_def_eq(t_n.proj_struct(), s_n.proj_struct()))
        return true;

    // reduce projections fully now that lazy delta made no progress
    expr t_nn = whnf_core(t_n);
    expr s_nn = whnf_core(s_n);
    if (!t_nn.is_eqp(t_n) || !s_nn.is_eqp(s_n))
        return is_def_eq_core(t_nn, s_nn);

    if (is_def_eq_app(t_n, s_n))
        return true;
    if (try_eta_expansion_core(t_n, s_n) || try_eta_expansion_core(s_n, t_n))
        return true;
    if (try_eta_struct_core(t_n, s_n) || try_eta_struct_core(s_n, t_n))
        return true;
    r = try_string_lit_expansion_core(t_n, s_n);
    if (r == lbool::Undef)
        r = try_string_lit_expansion_core(s_n, t_n);
    if (r != lbool::Undef)
        return r == lbool::True;
    if (is_def_eq_unit_like(t_n, s_n))
        return true;
    return false;
}

bool type_checker::is_def_eq(expr const & a, expr const & b) {
    m_stats.m_defeq_calls++;
    if (a.is_eqp(b))
        return true;
    if (m_opts.use_caches) {
        auto it = m_defeq_cache.find({a, b});
        if (it != m_defeq_cache.end())
            return it->second;
    }
    bool r = is_def_eq_core(a, b);
    if (m_opts.use_caches)
        m_defeq_cache.insert_or_assign({a, b}, r);
    return r;
}

}
