#include "lk/oracle/checker.hpp"

#include <functional>

namespace lk::oracle {

bool venv::add_constant(name const & n, vconstant const & c) {
    return m_constants.emplace(n, c).second;
}

bool venv::block(name const & n) {
    return m_constants.emplace(n, std::nullopt).second;
}

void venv::add_defeq(vdefeq const & d) {
    vexprs args;
    vexpr head = get_vapp_args(d.m_lhs, args);
    if (head.kind() == vexpr_kind::Const)
        m_defeqs[head.const_name()].push_back(d);
}

vconstant const * venv::find(name const & n) const {
    auto it = m_constants.find(n);
    return it != m_constants.end() && it->second ? &*it->second : nullptr;
}

bool venv::is_blocked(name const & n) const {
    auto it = m_constants.find(n);
    return it != m_constants.end() && !it->second;
}

std::vector<vdefeq> const * venv::defeqs(name const & n) const {
    auto it = m_defeqs.find(n);
    return it != m_defeqs.end() ? &it->second : nullptr;
}

std::size_t venv::num_defeqs() const {
    std::size_t r = 0;
    for (auto const & [n, ds] : m_defeqs)
        r += ds.size();
    return r;
}

namespace {

struct out_of_fuel {};

/** \brief Replace pattern variable BVar(j) by subst[j] and universe parameter i by lsubst[i]. */
vexpr instantiate_rule(vexpr const & e, std::vector<std::optional<vexpr>> const & subst, vlevels const & lsubst) {
    std::function<vexpr(vexpr const &, std::uint64_t)> go = [&](vexpr const & x, std::uint64_t depth) -> vexpr {
        switch (x.kind()) {
        case vexpr_kind::BVar:
            if (x.idx() >= depth && x.idx() - depth < subst.size() && subst[x.idx() - depth])
                return vlift(*subst[x.idx() - depth], depth, 0);
            return x;
        case vexpr_kind::Sort:
        case vexpr_kind::Const: return vinstL(x, lsubst);
        case vexpr_kind::App:   return vexpr::app(go(x.fn(), depth), go(x.arg(), depth));
        case vexpr_kind::Lam:   return vexpr::lam(go(x.domain(), depth), go(x.body(), depth + 1));
        case vexpr_kind::Pi:    return vexpr::pi(go(x.domain(), depth), go(x.body(), depth + 1));
        }
        return x;
    };
    return go(e, 0);
}

class checker {
    venv const &   m_env;
    unsigned       m_n;
    oracle_options m_opts;
    unsigned       m_depth = 0;

    struct guard {
        checker & m_c;
        explicit guard(checker & c) : m_c(c) {
            if (++m_c.m_depth > m_c.m_opts.fuel)
                throw out_of_fuel();
        }
        ~guard() { m_c.m_depth--; }
    };

    static vctx push(vctx const & ctx, vexpr const & ty) {
        vctx r;
        r.reserve(ctx.size() + 1);
        r.push_back(ty);
        r.insert(r.end(), ctx.begin(), ctx.end());
        return r;
    }

    bool match_level(vlevel const & pat, vlevel const & l, vlevels & lsubst, std::vector<bool> & lset) {
        if (pat.kind() == vlevel_kind::Param && pat.idx() < lsubst.size()) {
            if (lset[pat.idx()])
                return is_equiv(lsubst[pat.idx()], l);
            lsubst[pat.idx()] = l;
            lset[pat.idx()] = true;
            return true;
        }
        return is_equiv(pat, l);
    }

    bool match(vctx const & ctx, vexpr const & pat, vexpr const & e, std::vector<std::optional<vexpr>> & subst,
               vlevels & lsubst, std::vector<bool> & lset) {
        guard g(*this);
        if (pat.kind() == vexpr_kind::BVar && pat.idx() < subst.size()) {
            if (subst[pat.idx()])
                return is_defeq(ctx, *subst[pat.idx()], e);
            subst[pat.idx()] = e;
            return true;
        }
        if (pat.kind() != vexpr_kind::Const && pat.kind() != vexpr_kind::App)
            return is_defeq(ctx, pat, e);
        vexprs pargs, eargs;
        vexpr phead = get_vapp_args(pat, pargs);
        vexpr ehead = get_vapp_args(whnf(ctx, e), eargs);
        if (phead.kind() != vexpr_kind::Const || ehead.kind() != vexpr_kind::Const ||
            phead.const_name() != ehead.const_name() || pargs.size() != eargs.size() ||
            phead.const_levels().size() != ehead.const_levels().size())
            return false;
        for (std::size_t i = 0; i < phead.const_levels().size(); i++)
            if (!match_level(phead.const_levels()[i], ehead.const_levels()[i], lsubst, lset))
                return false;
        for (std::size_t i = 0; i < pargs.size(); i++)
            if (!match(ctx, pargs[i], eargs[i], subst, lsubst, lset))
                return false;
        return true;
    }

    /** \brief One rewrite at the head with a rule of the environment. */
    std::optional<vexpr> rewrite_head(vctx const & ctx, vexpr const & head, vexprs const & args) {
        std::vector<vdefeq> const * rules = m_env.defeqs(head.const_name());
        if (!rules)
            return std::nullopt;
        for (vdefeq const & r : *rules) {
            vexprs pargs;
            vexpr phead = get_vapp_args(r.m_lhs, pargs);
            if (pargs.size() > args.size() || phead.const_levels().size() != head.const_levels().size())
                continue;
            std::vector<std::optional<vexpr>> subst(r.m_nvars);
            vlevels lsubst(r.m_uvars);
            std::vector<bool> lset(r.m_uvars, false);
            bool ok = true;
            for (std::size_t i = 0; ok && i < head.const_levels().size(); i++)
                ok = match_level(phead.const_levels()[i], head.const_levels()[i], lsubst, lset);
            for (std::size_t i = 0; ok && i < pargs.size(); i++)
                ok = match(ctx, pargs[i], args[i], subst, lsubst, lset);
            if (!ok)
                continue;
            vexpr rhs = instantiate_rule(r.m_rhs, subst, lsubst);
            return mk_vapp(rhs, vexprs(args.begin() + pargs.size(), args.end()));
        }
        return std::nullopt;
    }

public:
    checker(venv const & env, unsigned n, oracle_options const & opts) : m_env(env), m_n(n), m_opts(opts) {}

    vexpr whnf(vctx const & ctx, vexpr const & e0) {
        guard g(*this);
        vexpr e = e0;
        while (true) {
            vexprs args;
            vexpr head = get_vapp_args(e, args);
            if (head.kind() == vexpr_kind::Lam && !args.empty()) {
                vexpr r = vinst(head.body(), args[0]);
                e = mk_vapp(r, vexprs(args.begin() + 1, args.end()));
                continue;
            }
            if (head.kind() == vexpr_kind::Const) {
                if (auto r = rewrite_head(ctx, head, args)) {
                    e = *r;
                    continue;
                }
            }
            return e;
        }
    }

    std::optional<vlevel> infer_sort(vctx const & ctx, vexpr const & ty) {
        auto s = infer(ctx, ty);
        if (!s)
            return std::nullopt;
        vexpr w = whnf(ctx, *s);
        if (w.kind() != vexpr_kind::Sort)
            return std::nullopt;
        return w.level();
    }

    std::optional<vexpr> infer(vctx const & ctx, vexpr const & e) {
        guard g(*this);
        switch (e.kind()) {
        case vexpr_kind::BVar:
            if (e.idx() >= ctx.size())
                return std::nullopt;
            return vlift(ctx[e.idx()], e.idx() + 1, 0);
        case vexpr_kind::Sort:
            if (!level_ok(e.level(), m_n))
                return std::nullopt;
            return vexpr::sort(vlevel::succ(e.level()));
        case vexpr_kind::Const: {
            vconstant const * c = m_env.find(e.const_name());
            if (!c || c->m_uvars != e.const_levels().size())
                return std::nullopt;
            for (vlevel const & u : e.const_levels())
                if (!level_ok(u, m_n))
                    return std::nullopt;
            return vinstL(c->m_type, e.const_levels());
        }
        case vexpr_kind::App: {
            auto tf = infer(ctx, e.fn());
            if (!tf)
                return std::nullopt;
            vexpr pf = whnf(ctx, *tf);
            if (pf.kind() != vexpr_kind::Pi)
                return std::nullopt;
            auto ta = infer(ctx, e.arg());
            if (!ta || !is_defeq(ctx, *ta, pf.domain()))
                return std::nullopt;
            return vinst(pf.body(), e.arg());
        }
        case vexpr_kind::Lam: {
            if (!infer_sort(ctx, e.domain()))
                return std::nullopt;
            auto tb = infer(push(ctx, e.domain()), e.body());
            if (!tb)
                return std::nullopt;
            return vexpr::pi(e.domain(), *tb);
        }
        case vexpr_kind::Pi: {
            auto u = infer_sort(ctx, e.domain());
            if (!u)
                return std::nullopt;
            auto v = infer_sort(push(ctx, e.domain()), e.body());
            if (!v)
                return std::nullopt;
            return vexpr::sort(vlevel::imax(*u, *v));
        }
        }
        return std::nullopt;
    }

    bool is_prop(vctx const & ctx, vexpr const & ty) {
        auto s = infer_sort(ctx, ty);
        return s && is_equiv(*s, vlevel::zero());
    }

    bool is_proof_irrel(vctx const & ctx, vexpr const & a, vexpr const & b) {
        auto ta = infer(ctx, a);
        if (!ta || !is_prop(ctx, *ta))
            return false;
        auto tb = infer(ctx, b);
        return tb && is_defeq(ctx, *ta, *tb);
    }

    bool is_defeq(vctx const & ctx, vexpr const & a0, vexpr const & b0) {
        guard g(*this);
        if (a0 == b0)
            return true;
        vexpr a = whnf(ctx, a0);
        vexpr b = whnf(ctx, b0);
        if (a == b)
            return true;
        if (a.kind() == b.kind()) {
            switch (a.kind()) {
            case vexpr_kind::Sort:
                if (is_equiv(a.level(), b.level()))
                    return true;
                break;
            case vexpr_kind::BVar:
                break;
            case vexpr_kind::Const:
                if (a.const_name() == b.const_name() && a.const_levels().size() == b.const_levels().size()) {
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < a.const_levels().size(); i++)
                        ok = is_equiv(a.const_levels()[i], b.const_levels()[i]);
                    if (ok)
                        return true;
                }
                break;
            case vexpr_kind::Lam:
            case vexpr_kind::Pi:
                if (is_defeq(ctx, a.domain(), b.domain()) && is_defeq(push(ctx, a.domain()), a.body(), b.body()))
                    return true;
                break;
            case vexpr_kind::App: {
                vexprs as, bs;
                vexpr ha = get_vapp_args(a, as);
                vexpr hb = get_vapp_args(b, bs);
                if (as.size() == bs.size() && is_defeq(ctx, ha, hb)) {
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < as.size(); i++)
                        ok = is_defeq(ctx, as[i], bs[i]);
                    if (ok)
                        return true;
                }
                break;
            }
            }
        }
        if (a.kind() == vexpr_kind::Lam && b.kind() != vexpr_kind::Lam)
            return is_eta(ctx, a, b) || is_proof_irrel(ctx, a, b);
        if (b.kind() == vexpr_kind::Lam && a.kind() != vexpr_kind::Lam)
            return is_eta(ctx, b, a) || is_proof_irrel(ctx, a, b);
        return is_proof_irrel(ctx, a, b);
    }

    /** \brief <tt>λ x : A. f x ≡ f</tt>, comparing the body with the expanded \c f. */
    bool is_eta(vctx const & ctx, vexpr const & lam, vexpr const & f) {
        return is_defeq(push(ctx, lam.domain()), lam.body(), vexpr::app(vlift(f, 1, 0), vexpr::bvar(0)));
    }
};

}

std::optional<vexpr> check_judgment(venv const & env, unsigned n, vctx const & ctx, vexpr const & e,
                                    oracle_options const & opts) {
    checker c(env, n, opts);
    try {
        return c.infer(ctx, e);
    } catch (out_of_fuel &) {
        return std::nullopt;
    }
}

bool check_defeq(venv const & env, unsigned n, vctx const & ctx, vexpr const & a, vexpr const & b,
                 oracle_options const & opts) {
    checker c(env, n, opts);
    try {
        return c.is_defeq(ctx, a, b);
    } catch (out_of_fuel &) {
        return false;
    }
}

std::optional<vexpr> vwhnf(venv const & env, vctx const & ctx, vexpr const & e, oracle_options const & opts) {
    checker c(env, 0, opts);
    try {
        return c.whnf(ctx, e);
    } catch (out_of_fuel &) {
        return std::nullopt;
    }
}

}
