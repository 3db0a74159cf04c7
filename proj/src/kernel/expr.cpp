#include "lk/expr.hpp"
#include "lk/hash.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace lk {

std::size_t literal::hash() const {
    if (is_nat()) {
        std::uint64_t low = static_cast<std::uint64_t>(m_nat & nat(UINT64_MAX));
        return hash_mix(static_cast<std::size_t>(low), 41);
    }
    return hash_str(m_str.data(), m_str.size(), 43);
}

bool operator==(literal const & a, literal const & b) {
    if (a.m_kind != b.m_kind)
        return false;
    return a.is_nat() ? a.m_nat == b.m_nat : a.m_str == b.m_str;
}

struct expr::cell {
    expr_kind     m_kind;
    binder_info   m_bi = binder_info::Default;
    bool          m_has_fvar = false;
    bool          m_has_mvar = false;
    bool          m_has_lparam = false;
    bool          m_nondep = false;
    std::uint32_t m_range = 0;
    std::size_t   m_hash = 0;
    std::uint64_t m_idx = 0;
    name          m_name;
    level         m_level;
    levels        m_levels;
    expr          m_a{nullptr};
    expr          m_b{nullptr};
    expr          m_c{nullptr};
    std::shared_ptr<const literal> m_lit;
    std::string   m_payload;
};

struct expr_builder {
    static expr wrap(std::shared_ptr<const expr::cell> p) { return expr(std::move(p)); }
};

expr::expr() {
    static expr const prop = mk_Prop();
    m_ptr = prop.m_ptr;
}

expr_kind expr::kind() const { return m_ptr->m_kind; }
std::size_t expr::hash() const { return m_ptr->m_hash; }
bool expr::has_fvar() const { return m_ptr->m_has_fvar; }
bool expr::has_mvar() const { return m_ptr->m_has_mvar; }
bool expr::has_lparam() const { return m_ptr->m_has_lparam; }
std::uint32_t expr::loose_bvar_range() const { return m_ptr->m_range; }

std::uint64_t expr::bvar_idx() const { assert(is_bvar(*this)); return m_ptr->m_idx; }
fvar_id expr::fvar() const { assert(is_fvar(*this)); return fvar_id{m_ptr->m_idx}; }
name const & expr::mvar_name() const { assert(is_mvar(*this)); return m_ptr->m_name; }
level const & expr::sort_level() const { assert(is_sort(*this)); return m_ptr->m_level; }
name const & expr::const_name() const { assert(is_constant(*this)); return m_ptr->m_name; }
levels const & expr::const_levels() const { assert(is_constant(*this)); return m_ptr->m_levels; }
expr const & expr::app_fn() const { assert(is_app(*this)); return m_ptr->m_a; }
expr const & expr::app_arg() const { assert(is_app(*this)); return m_ptr->m_b; }
name const & expr::binding_name() const { assert(is_binding(*this)); return m_ptr->m_name; }
expr const & expr::binding_domain() const { assert(is_binding(*this)); return m_ptr->m_a; }
expr const & expr::binding_body() const { assert(is_binding(*this)); return m_ptr->m_b; }
binder_info expr::binding_info() const { assert(is_binding(*this)); return m_ptr->m_bi; }
name const & expr::let_name() const { assert(is_let(*this)); return m_ptr->m_name; }
expr const & expr::let_type() const { assert(is_let(*this)); return m_ptr->m_a; }
expr const & expr::let_value() const { assert(is_let(*this)); return m_ptr->m_b; }
expr const & expr::let_body() const { assert(is_let(*this)); return m_ptr->m_c; }
bool expr::let_nondep() const { assert(is_let(*this)); return m_ptr->m_nondep; }
literal const & expr::lit() const { assert(is_lit(*this)); return *m_ptr->m_lit; }
std::string const & expr::mdata_payload() const { assert(is_mdata(*this)); return m_ptr->m_payload; }
expr const & expr::mdata_expr() const { assert(is_mdata(*this)); return m_ptr->m_a; }
name const & expr::proj_sname() const { assert(is_proj(*this)); return m_ptr->m_name; }
std::uint64_t expr::proj_idx() const { assert(is_proj(*this)); return m_ptr->m_idx; }
expr const & expr::proj_struct() const { assert(is_proj(*this)); return m_ptr->m_c; }

static std::uint32_t bump(std::uint32_t r) { return r == 0 ? 0 : r - 1; }

static expr finish(std::shared_ptr<expr::cell> c) {
    return expr_builder::wrap(std::move(c));
}

static void absorb(expr::cell & c, expr const & child) {
    c.m_has_fvar   = c.m_has_fvar || child.has_fvar();
    c.m_has_mvar   = c.m_has_mvar || child.has_mvar();
    c.m_has_lparam = c.m_has_lparam || child.has_lparam();
}

expr mk_bvar(std::uint64_t idx) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind  = expr_kind::BVar;
    c->m_idx   = idx;
    c->m_range = idx >= UINT32_MAX - 1 ? UINT32_MAX : static_cast<std::uint32_t>(idx + 1);
    c->m_hash  = hash_mix(static_cast<std::size_t>(idx), 101);
    return finish(std::move(c));
}

expr mk_fvar(fvar_id id) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind     = expr_kind::FVar;
    c->m_idx      = id.m_idx;
    c->m_has_fvar = true;
    c->m_hash     = hash_mix(static_cast<std::size_t>(id.m_idx), 103);
    return finish(std::move(c));
}

expr mk_mvar(name const & n) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind     = expr_kind::MVar;
    c->m_name     = n;
    c->m_has_mvar = true;
    c->m_hash     = hash_mix(n.hash(), 107);
    return finish(std::move(c));
}

expr mk_sort(level const & l) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind       = expr_kind::Sort;
    c->m_level      = l;
    c->m_has_lparam = l.has_param();
    c->m_hash       = hash_mix(l.hash(), 109);
    return finish(std::move(c));
}

expr mk_const(name const & n, levels const & ls) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind   = expr_kind::Const;
    c->m_name   = n;
    c->m_levels = ls;
    std::size_t h = hash_mix(n.hash(), 113);
    for (level const & l : ls) {
        h = hash_mix(h, l.hash());
        c->m_has_lparam = c->m_has_lparam || l.has_param();
    }
    c->m_hash = h;
    return finish(std::move(c));
}

expr mk_app(expr const & f, expr const & a) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind = expr_kind::App;
    c->m_a    = f;
    c->m_b    = a;
    absorb(*c, f);
    absorb(*c, a);
    c->m_range = std::max(f.loose_bvar_range(), a.loose_bvar_range());
    c->m_hash  = hash_mix(hash_mix(f.hash(), a.hash()), 127);
    return finish(std::move(c));
}

expr mk_app(expr const & f, exprs const & args) {
    return mk_app(f, args.size(), args.data());
}

expr mk_app(expr const & f, std::size_t n, expr const * args) {
    expr r = f;
    for (std::size_t i = 0; i < n; i++)
        r = mk_app(r, args[i]);
    return r;
}

expr mk_rev_app(expr const & f, std::size_t n, expr const * args) {
    expr r = f;
    for (std::size_t i = n; i-- > 0;)
        r = mk_app(r, args[i]);
    return r;
}

static expr mk_binding(expr_kind k, name const & n, expr const & dom, expr const & body, binder_info bi) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind = k;
    c->m_name = n;
    c->m_bi   = bi;
    c->m_a    = dom;
    c->m_b    = body;
    absorb(*c, dom);
    absorb(*c, body);
    c->m_range = std::max(dom.loose_bvar_range(), bump(body.loose_bvar_range()));
    c->m_hash  = hash_mix(hash_mix(dom.hash(), body.hash()), k == expr_kind::Lambda ? 131 : 137);
    return finish(std::move(c));
}

expr mk_lambda(name const & n, expr const & dom, expr const & body, binder_info bi) {
    return mk_binding(expr_kind::Lambda, n, dom, body, bi);
}

expr mk_pi(name const & n, expr const & dom, expr const & body, binder_info bi) {
    return mk_binding(expr_kind::Pi, n, dom, body, bi);
}

expr mk_let(name const & n, expr const & type, expr const & value, expr const & body, bool nondep) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind   = expr_kind::Let;
    c->m_name   = n;
    c->m_nondep = nondep;
    c->m_a      = type;
    c->m_b      = value;
    c->m_c      = body;
    absorb(*c, type);
    absorb(*c, value);
    absorb(*c, body);
    c->m_range = std::max({type.loose_bvar_range(), value.loose_bvar_range(), bump(body.loose_bvar_range())});
    c->m_hash  = hash_mix(hash_mix(hash_mix(type.hash(), value.hash()), body.hash()), 139);
    return finish(std::move(c));
}

expr mk_lit(literal const & l) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind = expr_kind::Lit;
    c->m_lit  = std::make_shared<const literal>(l);
    c->m_hash = hash_mix(l.hash(), 149);
    return finish(std::move(c));
}

expr mk_nat_lit(nat const & v) { return mk_lit(literal(v)); }
expr mk_str_lit(std::string const & s) { return mk_lit(literal(s)); }

expr mk_mdata(std::string const & payload, expr const & e) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind    = expr_kind::MData;
    c->m_payload = payload;
    c->m_a       = e;
    absorb(*c, e);
    c->m_range = e.loose_bvar_range();
    c->m_hash  = hash_mix(e.hash(), 151);
    return finish(std::move(c));
}

expr mk_proj(name const & s, std::uint64_t idx, expr const & e) {
    auto c = std::make_shared<expr::cell>();
    c->m_kind = expr_kind::Proj;
    c->m_name = s;
    c->m_idx  = idx;
    c->m_c    = e;
    absorb(*c, e);
    c->m_range = e.loose_bvar_range();
    c->m_hash  = hash_mix(hash_mix(hash_mix(s.hash(), static_cast<std::size_t>(idx)), e.hash()), 157);
    return finish(std::move(c));
}

expr mk_Prop() {
    static expr const * p = new expr(mk_sort(mk_level_zero()));
    return *p;
}

expr mk_Type() {
    static expr const * t = new expr(mk_sort(mk_level_one()));
    return *t;
}

namespace {
struct pair_hash {
    std::size_t operator()(std::pair<void const *, void const *> const & p) const {
        return hash_mix(std::hash<void const *>()(p.first), std::hash<void const *>()(p.second));
    }
};

class eq_fn {
    std::unordered_set<std::pair<void const *, void const *>, pair_hash> m_cache;
    unsigned m_steps = 0;

    bool check_cache(expr const & a, expr const & b) {
        // only shared subterms benefit; start caching once the comparison grows
        if (++m_steps < 256)
            return false;
        return !m_cache.insert({a.raw(), b.raw()}).second;
    }

public:
    bool apply(expr const & a, expr const & b) {
        if (a.is_eqp(b))
            return true;
        if (a.hash() != b.hash() || a.kind() != b.kind())
            return false;
        switch (a.kind()) {
        case expr_kind::BVar:  return a.bvar_idx() == b.bvar_idx();
        case expr_kind::FVar:  return a.fvar() == b.fvar();
        case expr_kind::MVar:  return a.mvar_name() == b.mvar_name();
        case expr_kind::Sort:  return a.sort_level() == b.sort_level();
        case expr_kind::Const: return a.const_name() == b.const_name() && a.const_levels() == b.const_levels();
        case expr_kind::Lit:   return a.lit() == b.lit();
        default: break;
        }
        if (check_cache(a, b))
            return true;
        switch (a.kind()) {
        case expr_kind::App: {
            expr const * x = &a;
            expr const * y = &b;
            while (is_app(*x) && is_app(*y)) {
                if (x->is_eqp(*y))
                    return true;
                if (!apply(x->app_arg(), y->app_arg()))
                    return false;
                x = &x->app_fn();
                y = &y->app_fn();
            }
            return apply(*x, *y);
        }
        case expr_kind::Lambda:
        case expr_kind::Pi:
            return apply(a.binding_domain(), b.binding_domain()) && apply(a.binding_body(), b.binding_body());
        case expr_kind::Let:
            return apply(a.let_type(), b.let_type()) && apply(a.let_value(), b.let_value()) &&
                   apply(a.let_body(), b.let_body());
        case expr_kind::MData:
            return apply(a.mdata_expr(), b.mdata_expr());
        case expr_kind::Proj:
            return a.proj_idx() == b.proj_idx() && a.proj_sname() == b.proj_sname() &&
                   apply(a.proj_struct(), b.proj_struct());
        default:
            return false;
        }
    }
};
}

bool operator==(expr const & a, expr const & b) {
    if (a.is_eqp(b))
        return true;
    if (a.hash() != b.hash())
        return false;
    return eq_fn().apply(a, b);
}

expr const & get_app_fn(expr const & e) {
    expr const * it = &e;
    while (is_app(*it))
        it = &it->app_fn();
    return *it;
}

expr const & get_app_args(expr const & e, exprs & args) {
    std::size_t start = args.size();
    expr const * it = &e;
    while (is_app(*it)) {
        args.push_back(it->app_arg());
        it = &it->app_fn();
    }
    std::reverse(args.begin() + static_cast<std::ptrdiff_t>(start), args.end());
    return *it;
}

exprs get_app_args(expr const & e) {
    exprs r;
    get_app_args(e, r);
    return r;
}

unsigned get_app_num_args(expr const & e) {
    unsigned n = 0;
    expr const * it = &e;
    while (is_app(*it)) {
        it = &it->app_fn();
        n++;
    }
    return n;
}

expr const & get_app_arg(expr const & e, unsigned i) {
    unsigned n = get_app_num_args(e);
    assert(i < n);
    expr const * it = &e;
    for (unsigned k = n - 1; k > i; k--)
        it = &it->app_fn();
    return it->app_arg();
}

bool is_app_of(expr const & e, name const & n) {
    expr const & f = get_app_fn(e);
    return is_constant(f) && f.const_name() == n;
}

bool is_app_of(expr const & e, name const & n, unsigned nargs) {
    return is_app_of(e, n) && get_app_num_args(e) == nargs;
}

expr const & consume_mdata(expr const & e) {
    expr const * it = &e;
    while (is_mdata(*it))
        it = &it->mdata_expr();
    return *it;
}

std::uint32_t naive_loose_bvar_range(expr const & e) {
    switch (e.kind()) {
    case expr_kind::BVar: return static_cast<std::uint32_t>(e.bvar_idx() + 1);
    case expr_kind::FVar: case expr_kind::MVar: case expr_kind::Sort:
    case expr_kind::Const: case expr_kind::Lit:
        return 0;
    case expr_kind::App:
        return std::max(naive_loose_bvar_range(e.app_fn()), naive_loose_bvar_range(e.app_arg()));
    case expr_kind::Lambda: case expr_kind::Pi:
        return std::max(naive_loose_bvar_range(e.binding_domain()), bump(naive_loose_bvar_range(e.binding_body())));
    case expr_kind::Let:
        return std::max({naive_loose_bvar_range(e.let_type()), naive_loose_bvar_range(e.let_value()),
                         bump(naive_loose_bvar_range(e.let_body()))});
    case expr_kind::MData: return naive_loose_bvar_range(e.mdata_expr());
    case expr_kind::Proj:  return naive_loose_bvar_range(e.proj_struct());
    }
    return 0;
}

template<typename P>
static bool naive_any(expr const & e, P const & p) {
    if (p(e))
        return true;
    switch (e.kind()) {
    case expr_kind::App:    return naive_any(e.app_fn(), p) || naive_any(e.app_arg(), p);
    case expr_kind::Lambda:
    case expr_kind::Pi:     return naive_any(e.binding_domain(), p) || naive_any(e.binding_body(), p);
    case expr_kind::Let:    return naive_any(e.let_type(), p) || naive_any(e.let_value(), p) || naive_any(e.let_body(), p);
    case expr_kind::MData:  return naive_any(e.mdata_expr(), p);
    case expr_kind::Proj:   return naive_any(e.proj_struct(), p);
    default:                return false;
    }
}

bool naive_has_fvar(expr const & e) { return naive_any(e, [](expr const & x) { return is_fvar(x); }); }
bool naive_has_mvar(expr const & e) { return naive_any(e, [](expr const & x) { return is_mvar(x); }); }

std::uint64_t tree_size(expr const & e, std::uint64_t limit) {
    std::uint64_t n = 0;
    std::vector<expr const *> todo{&e};
    while (!todo.empty() && n < limit) {
        expr const * x = todo.back();
        todo.pop_back();
        n++;
        switch (x->kind()) {
        case expr_kind::App:    todo.push_back(&x->app_fn()); todo.push_back(&x->app_arg()); break;
        case expr_kind::Lambda:
        case expr_kind::Pi:     todo.push_back(&x->binding_domain()); todo.push_back(&x->binding_body()); break;
        case expr_kind::Let:    todo.push_back(&x->let_type()); todo.push_back(&x->let_value()); todo.push_back(&x->let_body()); break;
        case expr_kind::MData:  todo.push_back(&x->mdata_expr()); break;
        case expr_kind::Proj:   todo.push_back(&x->proj_struct()); break;
        default: break;
        }
    }
    return n;
}

std::ostream & operator<<(std::ostream & out, binder_info bi) {
    switch (bi) {
    case binder_info::Default:        return out << "default";
    case binder_info::Implicit:       return out << "implicit";
    case binder_info::StrictImplicit: return out << "strictImplicit";
    case binder_info::InstImplicit:   return out << "instImplicit";
    }
    return out;
}

}
