#include "lk/oracle/vexpr.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <ostream>
#include <sstream>

namespace lk::oracle {

struct vlevel::cell {
    vlevel_kind m_kind;
    vlevel      m_a;
    vlevel      m_b;
    unsigned    m_idx = 0;
};

vlevel::vlevel() {}
vlevel vlevel::succ(vlevel const & l) { return vlevel(std::make_shared<cell>(cell{vlevel_kind::Succ, l, {}, 0})); }
vlevel vlevel::max(vlevel const & a, vlevel const & b) { return vlevel(std::make_shared<cell>(cell{vlevel_kind::Max, a, b, 0})); }
vlevel vlevel::imax(vlevel const & a, vlevel const & b) { return vlevel(std::make_shared<cell>(cell{vlevel_kind::IMax, a, b, 0})); }
vlevel vlevel::param(unsigned i) { return vlevel(std::make_shared<cell>(cell{vlevel_kind::Param, {}, {}, i})); }

vlevel_kind vlevel::kind() const { return m_ptr ? m_ptr->m_kind : vlevel_kind::Zero; }
vlevel const & vlevel::arg() const { assert(kind() == vlevel_kind::Succ); return m_ptr->m_a; }
vlevel const & vlevel::lhs() const { return m_ptr->m_a; }
vlevel const & vlevel::rhs() const { return m_ptr->m_b; }
unsigned vlevel::idx() const { return m_ptr->m_idx; }

bool operator==(vlevel const & a, vlevel const & b) {
    if (a.m_ptr == b.m_ptr)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case vlevel_kind::Zero:  return true;
    case vlevel_kind::Succ:  return a.arg() == b.arg();
    case vlevel_kind::Max:
    case vlevel_kind::IMax:  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case vlevel_kind::Param: return a.idx() == b.idx();
    }
    return false;
}

bool level_ok(vlevel const & l, unsigned n) {
    switch (l.kind()) {
    case vlevel_kind::Zero:  return true;
    case vlevel_kind::Succ:  return level_ok(l.arg(), n);
    case vlevel_kind::Max:
    case vlevel_kind::IMax:  return level_ok(l.lhs(), n) && level_ok(l.rhs(), n);
    case vlevel_kind::Param: return l.idx() < n;
    }
    return false;
}

std::uint64_t eval(vlevel const & l, std::vector<std::uint64_t> const & v) {
    switch (l.kind()) {
    case vlevel_kind::Zero:  return 0;
    case vlevel_kind::Succ:  return eval(l.arg(), v) + 1;
    case vlevel_kind::Max:   return std::max(eval(l.lhs(), v), eval(l.rhs(), v));
    case vlevel_kind::IMax: {
        std::uint64_t b = eval(l.rhs(), v);
        return b == 0 ? 0 : std::max(eval(l.lhs(), v), b);
    }
    case vlevel_kind::Param: return l.idx() < v.size() ? v[l.idx()] : 0;
    }
    return 0;
}

level to_level(vlevel const & l, names const & ns) {
    switch (l.kind()) {
    case vlevel_kind::Zero:  return mk_level_zero();
    case vlevel_kind::Succ:  return mk_succ(to_level(l.arg(), ns));
    case vlevel_kind::Max:   return mk_max_core(to_level(l.lhs(), ns), to_level(l.rhs(), ns));
    case vlevel_kind::IMax:  return mk_imax_core(to_level(l.lhs(), ns), to_level(l.rhs(), ns));
    case vlevel_kind::Param:
        return mk_param(l.idx() < ns.size() ? ns[l.idx()] : name(name(), l.idx()));
    }
    return mk_level_zero();
}

bool is_equiv(vlevel const & a, vlevel const & b) {
    if (a == b)
        return true;
    // positional parameters become numeric names; the kernel procedure is complete for this semantics
    return is_equivalent(to_level(a, {}), to_level(b, {}));
}

vlevel inst(vlevel const & l, vlevels const & ls) {
    switch (l.kind()) {
    case vlevel_kind::Zero:  return l;
    case vlevel_kind::Succ:  return vlevel::succ(inst(l.arg(), ls));
    case vlevel_kind::Max:   return vlevel::max(inst(l.lhs(), ls), inst(l.rhs(), ls));
    case vlevel_kind::IMax:  return vlevel::imax(inst(l.lhs(), ls), inst(l.rhs(), ls));
    case vlevel_kind::Param: return l.idx() < ls.size() ? ls[l.idx()] : l;
    }
    return l;
}

struct vexpr::cell {
    vexpr_kind    m_kind;

    explicit cell(vexpr_kind k) : m_kind(k) {}
    std::uint64_t m_idx = 0;
    std::uint64_t m_range = 0;
    vlevel        m_level;
    name          m_name;
    vlevels       m_levels;
    vexpr         m_a;
    vexpr         m_b;
};

// a null cell stands for Sort 0, so that the default value needs no allocation
vexpr::vexpr() {}

vexpr vexpr::bvar(std::uint64_t i) {
    cell c(vexpr_kind::BVar);
    c.m_idx = i;
    c.m_range = i + 1;
    return vexpr(std::make_shared<cell>(std::move(c)));
}
vexpr vexpr::sort(vlevel const & u) {
    cell c(vexpr_kind::Sort);
    c.m_level = u;
    return vexpr(std::make_shared<cell>(std::move(c)));
}
vexpr vexpr::cnst(name const & n, vlevels const & us) {
    cell c(vexpr_kind::Const);
    c.m_name = n;
    c.m_levels = us;
    return vexpr(std::make_shared<cell>(std::move(c)));
}
vexpr vexpr::app(vexpr const & f, vexpr const & a) {
    cell c(vexpr_kind::App);
    c.m_range = std::max(f.loose_range(), a.loose_range());
    c.m_a = f;
    c.m_b = a;
    return vexpr(std::make_shared<cell>(std::move(c)));
}
vexpr vexpr::lam(vexpr const & ty, vexpr const & body) {
    cell c(vexpr_kind::Lam);
    c.m_range = std::max(ty.loose_range(), body.loose_range() > 0 ? body.loose_range() - 1 : 0);
    c.m_a = ty;
    c.m_b = body;
    return vexpr(std::make_shared<cell>(std::move(c)));
}
vexpr vexpr::pi(vexpr const & ty, vexpr const & body) {
    cell c(vexpr_kind::Pi);
    c.m_range = std::max(ty.loose_range(), body.loose_range() > 0 ? body.loose_range() - 1 : 0);
    c.m_a = ty;
    c.m_b = body;
    return vexpr(std::make_shared<cell>(std::move(c)));
}

vexpr_kind vexpr::kind() const { return m_ptr ? m_ptr->m_kind : vexpr_kind::Sort; }
std::uint64_t vexpr::idx() const { return m_ptr->m_idx; }
vlevel const & vexpr::level() const {
    static vlevel const zero;
    return m_ptr ? m_ptr->m_level : zero;
}
name const & vexpr::const_name() const { return m_ptr->m_name; }
vlevels const & vexpr::const_levels() const { return m_ptr->m_levels; }
vexpr const & vexpr::fn() const { return m_ptr->m_a; }
vexpr const & vexpr::arg() const { return m_ptr->m_b; }
vexpr const & vexpr::domain() const { return m_ptr->m_a; }
vexpr const & vexpr::body() const { return m_ptr->m_b; }
std::uint64_t vexpr::loose_range() const { return m_ptr ? m_ptr->m_range : 0; }

bool operator==(vexpr const & a, vexpr const & b) {
    if (a.m_ptr == b.m_ptr)
        return true;
    if (a.kind() != b.kind() || a.loose_range() != b.loose_range())
        return false;
    switch (a.kind()) {
    case vexpr_kind::BVar:  return a.idx() == b.idx();
    case vexpr_kind::Sort:  return a.level() == b.level();
    case vexpr_kind::Const: return a.const_name() == b.const_name() && a.const_levels() == b.const_levels();
    case vexpr_kind::App:   return a.fn() == b.fn() && a.arg() == b.arg();
    case vexpr_kind::Lam:
    case vexpr_kind::Pi:    return a.domain() == b.domain() && a.body() == b.body();
    }
    return false;
}

vexpr mk_vapp(vexpr f, vexprs const & args) {
    for (vexpr const & a : args)
        f = vexpr::app(f, a);
    return f;
}

vexpr get_vapp_args(vexpr const & e, vexprs & args) {
    vexpr f = e;
    while (f.kind() == vexpr_kind::App) {
        args.push_back(f.arg());
        f = vexpr(f.fn());
    }
    std::reverse(args.begin(), args.end());
    return f;
}

namespace {

/** \brief Rebuild \c e bottom-up; \c f sees each BVar with the current binder depth. */
vexpr map_bvars(vexpr const & e, std::uint64_t depth, std::function<vexpr(std::uint64_t, std::uint64_t)> const & f) {
    if (e.loose_range() <= depth)
        return e;
    switch (e.kind()) {
    case vexpr_kind::BVar:  return f(e.idx(), depth);
    case vexpr_kind::App:   return vexpr::app(map_bvars(e.fn(), depth, f), map_bvars(e.arg(), depth, f));
    case vexpr_kind::Lam:   return vexpr::lam(map_bvars(e.domain(), depth, f), map_bvars(e.body(), depth + 1, f));
    case vexpr_kind::Pi:    return vexpr::pi(map_bvars(e.domain(), depth, f), map_bvars(e.body(), depth + 1, f));
    default:                return e;
    }
}

}

vexpr vlift(vexpr const & e, std::uint64_t n, std::uint64_t k) {
    if (n == 0)
        return e;
    return map_bvars(e, k, [&](std::uint64_t i, std::uint64_t) { return vexpr::bvar(i + n); });
}

vexpr vinst(vexpr const & e, vexpr const & a, std::uint64_t k) {
    return map_bvars(e, k, [&](std::uint64_t i, std::uint64_t depth) {
        if (i == depth)
            return vlift(a, depth, 0);
        return i > depth ? vexpr::bvar(i - 1) : vexpr::bvar(i);
    });
}

vexpr vinstL(vexpr const & e, vlevels const & ls) {
    switch (e.kind()) {
    case vexpr_kind::BVar:  return e;
    case vexpr_kind::Sort:  return vexpr::sort(inst(e.level(), ls));
    case vexpr_kind::Const: {
        vlevels us;
        for (vlevel const & u : e.const_levels())
            us.push_back(inst(u, ls));
        return vexpr::cnst(e.const_name(), us);
    }
    case vexpr_kind::App:   return vexpr::app(vinstL(e.fn(), ls), vinstL(e.arg(), ls));
    case vexpr_kind::Lam:   return vexpr::lam(vinstL(e.domain(), ls), vinstL(e.body(), ls));
    case vexpr_kind::Pi:    return vexpr::pi(vinstL(e.domain(), ls), vinstL(e.body(), ls));
    }
    return e;
}

bool closedN(vexpr const & e, std::uint64_t n) { return e.loose_range() <= n; }

bool levels_ok(vexpr const & e, unsigned n) {
    switch (e.kind()) {
    case vexpr_kind::BVar:  return true;
    case vexpr_kind::Sort:  return level_ok(e.level(), n);
    case vexpr_kind::Const:
        return std::all_of(e.const_levels().begin(), e.const_levels().end(),
                           [&](vlevel const & u) { return level_ok(u, n); });
    case vexpr_kind::App:   return levels_ok(e.fn(), n) && levels_ok(e.arg(), n);
    case vexpr_kind::Lam:
    case vexpr_kind::Pi:    return levels_ok(e.domain(), n) && levels_ok(e.body(), n);
    }
    return true;
}

bool has_bvar(vexpr const & e, std::uint64_t k) {
    if (e.loose_range() <= k)
        return false;
    switch (e.kind()) {
    case vexpr_kind::BVar:  return e.idx() == k;
    case vexpr_kind::App:   return has_bvar(e.fn(), k) || has_bvar(e.arg(), k);
    case vexpr_kind::Lam:
    case vexpr_kind::Pi:    return has_bvar(e.domain(), k) || has_bvar(e.body(), k + 1);
    default:                return false;
    }
}

std::uint64_t size(vexpr const & e) {
    switch (e.kind()) {
    case vexpr_kind::App:   return 1 + size(e.fn()) + size(e.arg());
    case vexpr_kind::Lam:
    case vexpr_kind::Pi:    return 1 + size(e.domain()) + size(e.body());
    default:                return 1;
    }
}

std::ostream & operator<<(std::ostream & out, vlevel const & l) {
    switch (l.kind()) {
    case vlevel_kind::Zero:  return out << "0";
    case vlevel_kind::Succ:  return out << "(succ " << l.arg() << ")";
    case vlevel_kind::Max:   return out << "(max " << l.lhs() << " " << l.rhs() << ")";
    case vlevel_kind::IMax:  return out << "(imax " << l.lhs() << " " << l.rhs() << ")";
    case vlevel_kind::Param: return out << "u" << l.idx();
    }
    return out;
}

std::ostream & operator<<(std::ostream & out, vexpr const & e) {
    switch (e.kind()) {
    case vexpr_kind::BVar:  return out << "#" << e.idx();
    case vexpr_kind::Sort:  return out << "Sort " << e.level();
    case vexpr_kind::Const:
        out << e.const_name();
        if (!e.const_levels().empty()) {
            out << ".{";
            for (std::size_t i = 0; i < e.const_levels().size(); i++)
                out << (i ? ", " : "") << e.const_levels()[i];
            out << "}";
        }
        return out;
    case vexpr_kind::App:   return out << "(" << e.fn() << " " << e.arg() << ")";
    case vexpr_kind::Lam:   return out << "(λ " << e.domain() << ", " << e.body() << ")";
    case vexpr_kind::Pi:    return out << "(Π " << e.domain() << ", " << e.body() << ")";
    }
    return out;
}

std::string to_string(vexpr const & e) {
    std::ostringstream ss;
    ss << e;
    return ss.str();
}

}
