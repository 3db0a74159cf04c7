#include "lk/instantiate.hpp"
#include "lk/hash.hpp"

#include <unordered_map>
#include <unordered_set>

namespace lk {

namespace {
struct key_hash {
    std::size_t operator()(std::pair<void const *, unsigned> const & k) const {
        return hash_mix(std::hash<void const *>()(k.first), k.second);
    }
};

class replace_fn {
    std::function<std::optional<expr>(expr const &, unsigned)> const & m_f;
    std::unordered_map<std::pair<void const *, unsigned>, expr, key_hash> m_cache;

    expr save(expr const & e, unsigned offset, expr r) {
        if (e.is_shared())
            m_cache.emplace(std::make_pair(e.raw(), offset), r);
        return r;
    }

public:
    explicit replace_fn(std::function<std::optional<expr>(expr const &, unsigned)> const & f) : m_f(f) {}

    expr apply(expr const & e, unsigned offset) {
        if (e.is_shared()) {
            auto it = m_cache.find({e.raw(), offset});
            if (it != m_cache.end())
                return it->second;
        }
        if (std::optional<expr> r = m_f(e, offset))
            return save(e, offset, *r);
        switch (e.kind()) {
        case expr_kind::BVar: case expr_kind::FVar: case expr_kind::MVar:
        case expr_kind::Sort: case expr_kind::Const: case expr_kind::Lit:
            return e;
        case expr_kind::App: {
            expr f = apply(e.app_fn(), offset);
            expr a = apply(e.app_arg(), offset);
            if (f.is_eqp(e.app_fn()) && a.is_eqp(e.app_arg()))
                return save(e, offset, e);
            return save(e, offset, mk_app(f, a));
        }
        case expr_kind::Lambda:
        case expr_kind::Pi: {
            expr d = apply(e.binding_domain(), offset);
            expr b = apply(e.binding_body(), offset + 1);
            if (d.is_eqp(e.binding_domain()) && b.is_eqp(e.binding_body()))
                return save(e, offset, e);
            expr r = is_lambda(e) ? mk_lambda(e.binding_name(), d, b, e.binding_info())
                                  : mk_pi(e.binding_name(), d, b, e.binding_info());
            return save(e, offset, r);
        }
        case expr_kind::Let: {
            expr t = apply(e.let_type(), offset);
            expr v = apply(e.let_value(), offset);
            expr b = apply(e.let_body(), offset + 1);
            if (t.is_eqp(e.let_type()) && v.is_eqp(e.let_value()) && b.is_eqp(e.let_body()))
                return save(e, offset, e);
            return save(e, offset, mk_let(e.let_name(), t, v, b, e.let_nondep()));
        }
        case expr_kind::MData: {
            expr x = apply(e.mdata_expr(), offset);
            if (x.is_eqp(e.mdata_expr()))
                return save(e, offset, e);
            return save(e, offset, mk_mdata(e.mdata_payload(), x));
        }
        case expr_kind::Proj: {
            expr x = apply(e.proj_struct(), offset);
            if (x.is_eqp(e.proj_struct()))
                return save(e, offset, e);
            return save(e, offset, mk_proj(e.proj_sname(), e.proj_idx(), x));
        }
        }
        return e;
    }
};
}

expr replace(expr const & e, std::function<std::optional<expr>(expr const &, unsigned)> const & f) {
    return replace_fn(f).apply(e, 0);
}

expr lift_loose_bvars(expr const & e, std::uint64_t n, std::uint64_t k) {
    if (n == 0 || e.loose_bvar_range() <= k)
        return e;
    return replace(e, [&](expr const & x, unsigned offset) -> std::optional<expr> {
        if (x.loose_bvar_range() <= k + offset)
            return x;
        if (is_bvar(x))
            return mk_bvar(x.bvar_idx() + n);
        return std::nullopt;
    });
}

expr lower_loose_bvars(expr const & e, std::uint64_t s, std::uint64_t d) {
    if (d == 0 || e.loose_bvar_range() <= s)
        return e;
    return replace(e, [&](expr const & x, unsigned offset) -> std::optional<expr> {
        if (x.loose_bvar_range() <= s + offset)
            return x;
        if (is_bvar(x))
            return mk_bvar(x.bvar_idx() - d);
        return std::nullopt;
    });
}

bool has_loose_bvar(expr const & e, std::uint64_t i) {
    if (e.loose_bvar_range() <= i)
        return false;
    switch (e.kind()) {
    case expr_kind::BVar:   return e.bvar_idx() == i;
    case expr_kind::App:    return has_loose_bvar(e.app_fn(), i) || has_loose_bvar(e.app_arg(), i);
    case expr_kind::Lambda:
    case expr_kind::Pi:     return has_loose_bvar(e.binding_domain(), i) || has_loose_bvar(e.binding_body(), i + 1);
    case expr_kind::Let:
        return has_loose_bvar(e.let_type(), i) || has_loose_bvar(e.let_value(), i) || has_loose_bvar(e.let_body(), i + 1);
    case expr_kind::MData:  return has_loose_bvar(e.mdata_expr(), i);
    case expr_kind::Proj:   return has_loose_bvar(e.proj_struct(), i);
    default:                return false;
    }
}

expr instantiate(expr const & e, std::size_t n, expr const * subst) {
    if (n == 0 || !e.has_loose_bvars())
        return e;
    return replace(e, [&](expr const & x, unsigned offset) -> std::optional<expr> {
        if (x.loose_bvar_range() <= offset)
            return x;
        if (is_bvar(x)) {
            std::uint64_t idx = x.bvar_idx();
            if (idx - offset < n)
                return lift_loose_bvars(subst[idx - offset], offset);
            return mk_bvar(idx - n);
        }
        return std::nullopt;
    });
}

expr instantiate(expr const & e, expr const & s) {
    return instantiate(e, 1, &s);
}

expr instantiate_rev(expr const & e, std::size_t n, expr const * subst) {
    if (n == 0 || !e.has_loose_bvars())
        return e;
    return replace(e, [&](expr const & x, unsigned offset) -> std::optional<expr> {
        if (x.loose_bvar_range() <= offset)
            return x;
        if (is_bvar(x)) {
            std::uint64_t idx = x.bvar_idx();
            if (idx - offset < n)
                return lift_loose_bvars(subst[n - (idx - offset) - 1], offset);
            return mk_bvar(idx - n);
        }
        return std::nullopt;
    });
}

expr abstract(expr const & e, std::size_t n, expr const * subst) {
    if (n == 0 || !e.has_fvar())
        return e;
    return replace(e, [&](expr const & x, unsigned offset) -> std::optional<expr> {
        if (!x.has_fvar())
            return x;
        if (is_fvar(x)) {
            for (std::size_t i = n; i-- > 0;)
                if (is_fvar(subst[i]) && subst[i].fvar() == x.fvar())
                    return mk_bvar(offset + n - i - 1);
            return x;
        }
        return std::nullopt;
    });
}

expr abstract_fvars(expr const & e, std::vector<fvar_id> const & fvars) {
    exprs fs;
    for (fvar_id id : fvars)
        fs.push_back(mk_fvar(id));
    return abstract(e, fs);
}

expr instantiate_lparams(expr const & e, names const & ps, levels const & ls) {
    if (ps.empty() || !e.has_lparam())
        return e;
    return replace(e, [&](expr const & x, unsigned) -> std::optional<expr> {
        if (!x.has_lparam())
            return x;
        if (is_constant(x)) {
            levels nls;
            for (level const & l : x.const_levels())
                nls.push_back(instantiate(l, ps, ls));
            return mk_const(x.const_name(), nls);
        }
        if (is_sort(x))
            return mk_sort(instantiate(x.sort_level(), ps, ls));
        return std::nullopt;
    });
}

bool is_head_beta(expr const & e) {
    return is_app(e) && is_lambda(get_app_fn(e));
}

expr head_beta(expr const & e) {
    if (!is_head_beta(e))
        return e;
    exprs args;
    expr f = get_app_args(e, args);
    std::size_t i = 0;
    while (true) {
        std::size_t m = 0;
        expr b = f;
        while (is_lambda(b) && i + m < args.size()) {
            b = b.binding_body();
            m++;
        }
        // substitute args[i .. i+m) into b: the last of them is BVar 0
        b = instantiate_rev(b, m, args.data() + i);
        i += m;
        if (i == args.size() || !is_lambda(b)) {
            return mk_app(b, args.size() - i, args.data() + i);
        }
        f = b;
    }
}

expr cheap_beta_reduce(expr const & e) {
    if (!is_app(e))
        return e;
    expr const & fn = get_app_fn(e);
    if (!is_lambda(fn))
        return e;
    exprs args;
    get_app_args(e, args);
    expr b = fn;
    std::size_t i = 0;
    while (is_lambda(b) && i < args.size()) {
        b = b.binding_body();
        i++;
    }
    if (!b.has_loose_bvars())
        return mk_app(b, args.size() - i, args.data() + i);
    if (is_bvar(b) && b.bvar_idx() < i)
        return mk_app(args[i - b.bvar_idx() - 1], args.size() - i, args.data() + i);
    return e;
}

expr mk_arrow(expr const & dom, expr const & body) {
    return mk_pi(name("a"), dom, lift_loose_bvars(body, 1, 0));
}

bool find_const(expr const & e, std::function<bool(name const &)> const & p) {
    std::unordered_set<void const *> visited;
    std::vector<expr const *> todo{&e};
    while (!todo.empty()) {
        expr const * x = todo.back();
        todo.pop_back();
        if (x->is_shared() && !visited.insert(x->raw()).second)
            continue;
        switch (x->kind()) {
        case expr_kind::Const:  if (p(x->const_name())) return true; break;
        case expr_kind::App:    todo.push_back(&x->app_fn()); todo.push_back(&x->app_arg()); break;
        case expr_kind::Lambda:
        case expr_kind::Pi:     todo.push_back(&x->binding_domain()); todo.push_back(&x->binding_body()); break;
        case expr_kind::Let:    todo.push_back(&x->let_type()); todo.push_back(&x->let_value()); todo.push_back(&x->let_body()); break;
        case expr_kind::MData:  todo.push_back(&x->mdata_expr()); break;
        case expr_kind::Proj:   todo.push_back(&x->proj_struct()); break;
        default: break;
        }
    }
    return false;
}

void collect_consts(expr const & e, std::vector<name> & out) {
    std::unordered_set<name> seen(out.begin(), out.end());
    find_const(e, [&](name const & n) {
        if (seen.insert(n).second)
            out.push_back(n);
        return false;
    });
}

}
