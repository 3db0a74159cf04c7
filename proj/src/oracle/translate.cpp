#include "lk/oracle/translate.hpp"
#include "lk/literals.hpp"

#include <algorithm>
#include <functional>

namespace lk::oracle {

vctx to_ctx(vlctx const & ctx) {
    vctx r;
    for (auto const & [id, d] : ctx)
        if (!d.m_value)
            r.push_back(d.m_type);
    return r;
}

std::optional<vlevel> tr_level(names const & lparams, level const & l) {
    switch (l.kind()) {
    case level_kind::Zero:
        return vlevel::zero();
    case level_kind::Succ:
        if (auto a = tr_level(lparams, l.succ_of()))
            return vlevel::succ(*a);
        return std::nullopt;
    case level_kind::Max:
    case level_kind::IMax: {
        auto a = tr_level(lparams, l.lhs());
        auto b = tr_level(lparams, l.rhs());
        if (!a || !b)
            return std::nullopt;
        return is_max(l) ? vlevel::max(*a, *b) : vlevel::imax(*a, *b);
    }
    case level_kind::Param: {
        auto it = std::find(lparams.begin(), lparams.end(), l.param_id());
        if (it == lparams.end())
            return std::nullopt;
        return vlevel::param(static_cast<unsigned>(it - lparams.begin()));
    }
    }
    return std::nullopt;
}

namespace {

vexpr unary(unsigned n) {
    vexpr r = vexpr::cnst("Nat.zero");
    for (unsigned i = 0; i < n; i++)
        r = vexpr::app(vexpr::cnst("Nat.succ"), r);
    return r;
}

class translator {
    names const &             m_lparams;
    translate_options const & m_opts;

    /** \brief Resolve a context entry; \c is_target sees each entry's identifier and its bvar position. */
    static std::optional<vexpr> lookup(vlctx const & ctx,
                                       std::function<bool(std::optional<fvar_id> const &, unsigned)> const & is_target) {
        unsigned lams = 0;
        unsigned bvars = 0;
        for (auto const & [id, d] : ctx) {
            if (is_target(id, bvars)) {
                if (d.m_value)
                    return vlift(*d.m_value, lams, 0);
                return vexpr::bvar(lams);
            }
            if (!id)
                bvars++;
            if (!d.m_value)
                lams++;
        }
        return std::nullopt;
    }

    static vlctx push(vlctx const & ctx, vlocal_decl const & d) {
        vlctx r;
        r.reserve(ctx.size() + 1);
        r.emplace_back(std::nullopt, d);
        r.insert(r.end(), ctx.begin(), ctx.end());
        return r;
    }

    std::optional<vexpr> nat_lit(nat const & n) {
        if (n > m_opts.max_nat_literal)
            return std::nullopt;
        return unary(static_cast<unsigned>(n));
    }

public:
    translator(names const & lparams, translate_options const & opts) : m_lparams(lparams), m_opts(opts) {}

    std::optional<vexpr> operator()(vlctx const & ctx, expr const & e) {
        switch (e.kind()) {
        case expr_kind::BVar: {
            std::uint64_t i = e.bvar_idx();
            return lookup(ctx, [&](std::optional<fvar_id> const & id, unsigned pos) { return !id && pos == i; });
        }
        case expr_kind::FVar: {
            fvar_id x = e.fvar();
            return lookup(ctx, [&](std::optional<fvar_id> const & id, unsigned) { return id && *id == x; });
        }
        case expr_kind::MVar:
        case expr_kind::Proj:
            return std::nullopt;
        case expr_kind::Sort:
            if (auto l = tr_level(m_lparams, e.sort_level()))
                return vexpr::sort(*l);
            return std::nullopt;
        case expr_kind::Const: {
            vlevels us;
            for (level const & l : e.const_levels()) {
                auto v = tr_level(m_lparams, l);
                if (!v)
                    return std::nullopt;
                us.push_back(*v);
            }
            return vexpr::cnst(e.const_name(), us);
        }
        case expr_kind::App: {
            auto f = (*this)(ctx, e.app_fn());
            auto a = f ? (*this)(ctx, e.app_arg()) : std::nullopt;
            if (!a)
                return std::nullopt;
            return vexpr::app(*f, *a);
        }
        case expr_kind::Lambda:
        case expr_kind::Pi: {
            auto dom = (*this)(ctx, e.binding_domain());
            if (!dom)
                return std::nullopt;
            auto body = (*this)(push(ctx, vlocal_decl{*dom, std::nullopt}), e.binding_body());
            if (!body)
                return std::nullopt;
            return is_lambda(e) ? vexpr::lam(*dom, *body) : vexpr::pi(*dom, *body);
        }
        case expr_kind::Let: {
            auto ty = (*this)(ctx, e.let_type());
            auto val = ty ? (*this)(ctx, e.let_value()) : std::nullopt;
            if (!val)
                return std::nullopt;
            return (*this)(push(ctx, vlocal_decl{*ty, *val}), e.let_body());
        }
        case expr_kind::Lit:
            if (e.lit().is_nat())
                return nat_lit(e.lit().get_nat());
            return (*this)(ctx, str_lit_view(e));
        case expr_kind::MData:
            return (*this)(ctx, e.mdata_expr());
        }
        return std::nullopt;
    }
};

vlevels params(unsigned first, unsigned n) {
    vlevels r;
    for (unsigned i = 0; i < n; i++)
        r.push_back(vlevel::param(first + i));
    return r;
}

vexprs vars(unsigned first, unsigned n) {
    vexprs r;
    for (unsigned i = 0; i < n; i++)
        r.push_back(vexpr::bvar(first + i));
    return r;
}

/** \brief Replace each loose BVar(i) by f(i), keeping bound occurrences. */
vexpr rename_loose(vexpr const & e, std::function<vexpr(std::uint64_t)> const & f, std::uint64_t depth = 0) {
    if (e.loose_range() <= depth)
        return e;
    switch (e.kind()) {
    case vexpr_kind::BVar: return vlift(f(e.idx() - depth), depth, 0);
    case vexpr_kind::App:  return vexpr::app(rename_loose(e.fn(), f, depth), rename_loose(e.arg(), f, depth));
    case vexpr_kind::Lam:  return vexpr::lam(rename_loose(e.domain(), f, depth), rename_loose(e.body(), f, depth + 1));
    case vexpr_kind::Pi:   return vexpr::pi(rename_loose(e.domain(), f, depth), rename_loose(e.body(), f, depth + 1));
    default:               return e;
    }
}

void add_recursor_rules(environment const & env, venv & out, constant_info const & rec, translate_options const & opts) {
    recursor_val const & rv = rec.to_recursor();
    unsigned nrec = rv.m_nparams + rv.m_nmotives + rv.m_nminors + rv.m_nindices;
    unsigned k = rec.get_num_lparams();
    for (recursor_rule const & rule : rv.m_rules) {
        constant_info const & ctor = env.get(rule.m_ctor);
        constructor_val const & cv = ctor.to_constructor();
        auto rhs = translator(rec.get_lparams(), opts)({}, rule.m_rhs);
        if (!rhs)
            continue;
        unsigned kc = ctor.get_num_lparams();
        vexpr major = mk_vapp(vexpr::cnst(rule.m_ctor, params(k, kc)), vars(nrec, cv.m_nparams + rule.m_nfields));
        vexprs lhs_args = vars(0, nrec);
        lhs_args.push_back(major);
        vexprs rhs_args = vars(0, rv.m_nparams + rv.m_nmotives + rv.m_nminors);
        for (vexpr const & f : vars(nrec + cv.m_nparams, rule.m_nfields))
            rhs_args.push_back(f);
        out.add_defeq(vdefeq{k + kc, nrec + cv.m_nparams + rule.m_nfields,
                             mk_vapp(vexpr::cnst(rec.get_name(), params(0, k)), lhs_args), mk_vapp(*rhs, rhs_args)});

        if (!rv.m_k)
            continue;
        // K-like: any major premise whose indices agree with the constructor's reduces to the minor premise
        auto ctor_type = translator(rec.get_lparams(), opts)({}, ctor.get_type());
        if (!ctor_type)
            continue;
        vexpr t = *ctor_type;
        for (unsigned i = 0; i < cv.m_nparams && t.kind() == vexpr_kind::Pi; i++)
            t = t.body();
        vexprs target_args;
        get_vapp_args(t, target_args);
        if (target_args.size() != rv.m_nparams + rv.m_nindices)
            continue;
        unsigned np = cv.m_nparams;
        vexprs k_args = vars(0, rv.m_nparams + rv.m_nmotives + rv.m_nminors);
        for (unsigned i = 0; i < rv.m_nindices; i++)
            k_args.push_back(rename_loose(target_args[rv.m_nparams + i],
                                          [&](std::uint64_t j) { return vexpr::bvar(np - 1 - j); }));
        k_args.push_back(vexpr::bvar(nrec));
        vexpr lhs = mk_vapp(vexpr::cnst(rec.get_name(), params(0, k)), k_args);
        out.add_defeq(vdefeq{k, nrec + 1, lhs, mk_vapp(*rhs, vars(0, rv.m_nparams + rv.m_nmotives + rv.m_nminors))});
    }
}

void add_quot_rules(venv & out) {
    // Quot.lift α r β f h (Quot.mk α' r' a) ≡ f a
    vexpr mk = mk_vapp(vexpr::cnst("Quot.mk", {vlevel::param(2)}), vars(5, 3));
    vexprs lift_args = vars(0, 5);
    lift_args.push_back(mk);
    out.add_defeq(vdefeq{3, 8, mk_vapp(vexpr::cnst("Quot.lift", params(0, 2)), lift_args),
                         vexpr::app(vexpr::bvar(3), vexpr::bvar(7))});
    // Quot.ind α r β h (Quot.mk α' r' a) ≡ h a
    vexpr mk2 = mk_vapp(vexpr::cnst("Quot.mk", {vlevel::param(1)}), vars(4, 3));
    vexprs ind_args = vars(0, 4);
    ind_args.push_back(mk2);
    out.add_defeq(vdefeq{2, 7, mk_vapp(vexpr::cnst("Quot.ind", params(0, 1)), ind_args),
                         vexpr::app(vexpr::bvar(3), vexpr::bvar(6))});
}

}

std::optional<vexpr> tr_expr(names const & lparams, vlctx const & ctx, expr const & e, translate_options const & opts) {
    return translator(lparams, opts)(ctx, e);
}

venv tr_env(environment const & env, translate_options const & opts) {
    venv out;
    env.for_each([&](constant_info const & c) {
        auto type = tr_expr(c.get_lparams(), {}, c.get_type(), opts);
        if (!type) {
            out.block(c.get_name());
            return;
        }
        out.add_constant(c.get_name(), vconstant{c.get_num_lparams(), *type});
        if (c.is_definition()) {
            if (auto v = tr_expr(c.get_lparams(), {}, c.get_value(), opts))
                out.add_defeq(vdefeq{c.get_num_lparams(), 0,
                                     vexpr::cnst(c.get_name(), params(0, c.get_num_lparams())), *v});
        } else if (c.is_recursor()) {
            add_recursor_rules(env, out, c, opts);
        } else if (c.is_quot() && c.to_quot().m_kind == quot_kind::Lift) {
            add_quot_rules(out);
        }
    });
    return out;
}

}
