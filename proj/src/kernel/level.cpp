#include "lk/level.hpp"
#include "lk/hash.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lk {

struct level::cell {
    level_kind  m_kind;
    std::size_t m_hash;
    bool        m_has_param;
    level       m_a;
    level       m_b;
    name        m_param;
};

static level const & g_zero() {
    static level z;
    return z;
}

level::level() {}

level_kind level::kind() const { return m_ptr ? m_ptr->m_kind : level_kind::Zero; }
std::size_t level::hash() const { return m_ptr ? m_ptr->m_hash : 2221; }
level const & level::succ_of() const { assert(is_succ(*this)); return m_ptr->m_a; }
level const & level::lhs() const { assert(is_max(*this) || is_imax(*this)); return m_ptr->m_a; }
level const & level::rhs() const { assert(is_max(*this) || is_imax(*this)); return m_ptr->m_b; }
name const & level::param_id() const { assert(is_param(*this)); return m_ptr->m_param; }
bool level::has_param() const { return m_ptr && m_ptr->m_has_param; }

bool operator==(level const & a, level const & b) {
    if (a.m_ptr == b.m_ptr)
        return true;
    if (a.kind() != b.kind() || a.hash() != b.hash())
        return false;
    switch (a.kind()) {
    case level_kind::Zero:  return true;
    case level_kind::Succ:  return a.succ_of() == b.succ_of();
    case level_kind::Max:
    case level_kind::IMax:  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case level_kind::Param: return a.param_id() == b.param_id();
    }
    return false;
}

level mk_level_zero() { return g_zero(); }
level mk_level_one() { return mk_succ(g_zero()); }

level mk_succ(level const & l) {
    return level(std::make_shared<const level::cell>(
        level::cell{level_kind::Succ, hash_mix(l.hash(), 17), l.has_param(), l, {}, {}}));
}

level mk_max_core(level const & a, level const & b) {
    std::size_t h = hash_mix(hash_mix(a.hash(), b.hash()), 23);
    return level(std::make_shared<const level::cell>(
        level::cell{level_kind::Max, h, a.has_param() || b.has_param(), a, b, {}}));
}

level mk_imax_core(level const & a, level const & b) {
    std::size_t h = hash_mix(hash_mix(a.hash(), b.hash()), 29);
    return level(std::make_shared<const level::cell>(
        level::cell{level_kind::IMax, h, a.has_param() || b.has_param(), a, b, {}}));
}

level mk_param(name const & n) {
    return level(std::make_shared<const level::cell>(
        level::cell{level_kind::Param, hash_mix(n.hash(), 31), true, {}, {}, n}));
}

level mk_succ_n(level l, unsigned n) {
    for (unsigned i = 0; i < n; i++)
        l = mk_succ(l);
    return l;
}

static std::pair<level, unsigned> to_offset(level l) {
    unsigned k = 0;
    while (is_succ(l)) {
        l = l.succ_of();
        k++;
    }
    return {l, k};
}

static bool is_explicit(level const & l) { return is_zero(to_offset(l).first); }

level mk_max(level const & a, level const & b) {
    if (is_explicit(a) && is_explicit(b))
        return to_offset(a).second >= to_offset(b).second ? a : b;
    if (a == b || is_zero(b))
        return a;
    if (is_zero(a))
        return b;
    if (is_max(b) && (b.lhs() == a || b.rhs() == a))
        return b;
    auto [ba, ka] = to_offset(a);
    auto [bb, kb] = to_offset(b);
    if (ba == bb)
        return ka >= kb ? a : b;
    return mk_max_core(a, b);
}

level mk_imax(level const & a, level const & b) {
    if (is_not_zero(b))
        return mk_max(a, b);
    if (is_zero(b))
        return b;
    if (is_zero(a) || a == b)
        return b;
    return mk_imax_core(a, b);
}

bool is_not_zero(level const & l) {
    switch (l.kind()) {
    case level_kind::Zero:
    case level_kind::Param: return false;
    case level_kind::Succ:  return true;
    case level_kind::Max:   return is_not_zero(l.lhs()) || is_not_zero(l.rhs());
    case level_kind::IMax:  return is_not_zero(l.rhs());
    }
    return false;
}

std::uint64_t eval(level const & l, level_assignment const & v) {
    switch (l.kind()) {
    case level_kind::Zero: return 0;
    case level_kind::Succ: return eval(l.succ_of(), v) + 1;
    case level_kind::Max:  return std::max(eval(l.lhs(), v), eval(l.rhs(), v));
    case level_kind::IMax: {
        std::uint64_t b = eval(l.rhs(), v);
        return b == 0 ? 0 : std::max(eval(l.lhs(), v), b);
    }
    case level_kind::Param: {
        auto it = v.find(l.param_id());
        if (it == v.end())
            throw std::invalid_argument("unbound universe parameter '" + l.param_id().to_string() + "'");
        return it->second;
    }
    }
    return 0;
}

int cmp(level const & a, level const & b) {
    if (a.raw() == b.raw())
        return 0;
    if (a.kind() != b.kind())
        return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
    case level_kind::Zero:  return 0;
    case level_kind::Succ:  return cmp(a.succ_of(), b.succ_of());
    case level_kind::Max:
    case level_kind::IMax: {
        int c = cmp(a.lhs(), b.lhs());
        return c != 0 ? c : cmp(a.rhs(), b.rhs());
    }
    case level_kind::Param: return cmp(a.param_id(), b.param_id());
    }
    return 0;
}

/* ---------------------------------------------------------------------------
   Normalization

   A normalized level is a right-nested Max over terms `succ^k base`, where base
   is a Param, an irreducible `IMax t p` (p a Param), or Zero (the constant
   term, listed last). Terms are sorted by base and each base occurs once.
   ------------------------------------------------------------------------- */
namespace {
struct term {
    level    m_base;
    unsigned m_offset;
};

int base_rank(level const & b) {
    switch (b.kind()) {
    case level_kind::Param: return 0;
    case level_kind::IMax:  return 1;
    default:                return 2;
    }
}

bool term_lt(term const & a, term const & b) {
    int ra = base_rank(a.m_base), rb = base_rank(b.m_base);
    if (ra != rb)
        return ra < rb;
    return cmp(a.m_base, b.m_base) < 0;
}

void push_terms(level const & l, unsigned k, std::vector<term> & out);

/** imax(t, b) where t is a single normalized term and b is normalized. */
void push_imax_terms(term const & t, level const & b, unsigned k, std::vector<term> & out) {
    if (is_max(b)) {
        push_imax_terms(t, b.lhs(), k, out);
        push_imax_terms(t, b.rhs(), k, out);
        return;
    }
    auto [bb, bk] = to_offset(b);
    if (bk > 0 || is_zero(bb)) {
        // b is either a positive constant/term (imax = max) or zero (imax = 0)
        if (bk > 0) {
            out.push_back({t.m_base, t.m_offset + k});
            out.push_back({bb, bk + k});
        } else {
            out.push_back({mk_level_zero(), k});
        }
        return;
    }
    if (is_imax(bb)) {
        // imax(t, imax(c, p)) = max(imax(t, p), imax(c, p))
        level c = bb.lhs();
        level p = bb.rhs();
        push_imax_terms(t, p, k, out);
        auto [cb, ck] = to_offset(c);
        push_imax_terms(term{cb, ck}, p, k, out);
        return;
    }
    // bb is a Param
    if (is_zero(t.m_base) && t.m_offset == 0) {
        out.push_back({bb, k});
        return;
    }
    if (t.m_offset == 0 && t.m_base == bb) {
        out.push_back({bb, k});
        return;
    }
    out.push_back({mk_imax_core(mk_succ_n(t.m_base, t.m_offset), bb), k});
}

void push_terms(level const & l, unsigned k, std::vector<term> & out) {
    switch (l.kind()) {
    case level_kind::Zero:
    case level_kind::Param:
        out.push_back({l, k});
        return;
    case level_kind::Succ:
        push_terms(l.succ_of(), k + 1, out);
        return;
    case level_kind::Max:
        push_terms(l.lhs(), k, out);
        push_terms(l.rhs(), k, out);
        return;
    case level_kind::IMax: {
        level b = normalize(l.rhs());
        std::vector<term> as;
        push_terms(normalize(l.lhs()), 0, as);
        for (term const & t : as)
            push_imax_terms(t, b, k, out);
        return;
    }
    }
}
}

level normalize(level const & l) {
    std::vector<term> ts;
    push_terms(l, 0, ts);
    std::sort(ts.begin(), ts.end(), [](term const & a, term const & b) {
        if (term_lt(a, b)) return true;
        if (term_lt(b, a)) return false;
        return a.m_offset > b.m_offset;
    });
    std::vector<term> uniq;
    for (term const & t : ts)
        if (uniq.empty() || term_lt(uniq.back(), t))
            uniq.push_back(t);
    // a constant term is subsumed by any other term with at least the same offset
    if (!uniq.empty() && is_zero(uniq.back().m_base)) {
        unsigned c = uniq.back().m_offset;
        bool subsumed = false;
        for (std::size_t i = 0; i + 1 < uniq.size(); i++)
            if (uniq[i].m_offset >= c)
                subsumed = true;
        if ((subsumed || c == 0) && uniq.size() > 1)
            uniq.pop_back();
    }
    level r = mk_succ_n(uniq.back().m_base, uniq.back().m_offset);
    for (std::size_t i = uniq.size() - 1; i-- > 0;)
        r = mk_max_core(mk_succ_n(uniq[i].m_base, uniq[i].m_offset), r);
    return r;
}

/* ---------------------------------------------------------------------------
   Decision procedure for a <= b.

   Parameters that occur under the second argument of an imax are split into
   the cases p = 0 and p = p' + 1. In each case every imax becomes either 0 or
   a max, leaving max-plus expressions max(c, x_i + a_i) which are compared
   term by term:
     - a constant c on the left needs c <= max of the right side at all-zero;
     - a term x + a on the left needs some x + b on the right with b >= a.
   ------------------------------------------------------------------------- */
namespace {
void collect_imax_rhs_params(level const & l, bool under, std::set<name> & out) {
    switch (l.kind()) {
    case level_kind::Zero:  return;
    case level_kind::Param: if (under) out.insert(l.param_id()); return;
    case level_kind::Succ:  collect_imax_rhs_params(l.succ_of(), under, out); return;
    case level_kind::Max:
        collect_imax_rhs_params(l.lhs(), under, out);
        collect_imax_rhs_params(l.rhs(), under, out);
        return;
    case level_kind::IMax:
        collect_imax_rhs_params(l.lhs(), under, out);
        collect_imax_rhs_params(l.rhs(), true, out);
        return;
    }
}

using case_map = std::map<name, bool>; // true: param is a successor

bool has_succ(level const & l) {
    switch (l.kind()) {
    case level_kind::Zero:  return false;
    case level_kind::Param: return false;
    case level_kind::Succ:  return true;
    case level_kind::Max:   return has_succ(l.lhs()) || has_succ(l.rhs());
    case level_kind::IMax:  return has_succ(l.rhs());
    }
    return false;
}

/** Substitute split params and eliminate every imax. */
level specialize(level const & l, case_map const & cases) {
    switch (l.kind()) {
    case level_kind::Zero: return l;
    case level_kind::Param: {
        auto it = cases.find(l.param_id());
        if (it == cases.end())
            return l;
        return it->second ? mk_succ(l) : mk_level_zero();
    }
    case level_kind::Succ: return mk_succ(specialize(l.succ_of(), cases));
    case level_kind::Max:  return mk_max_core(specialize(l.lhs(), cases), specialize(l.rhs(), cases));
    case level_kind::IMax: {
        level b = specialize(l.rhs(), cases);
        // every param left in b is wrapped in succ, so b is zero iff it has no succ at all
        if (!has_succ(b))
            return mk_level_zero();
        return mk_max_core(specialize(l.lhs(), cases), b);
    }
    }
    return l;
}

struct mp_term {
    std::optional<name> m_var;
    unsigned            m_offset;
};

void flatten(level const & l, unsigned k, std::vector<mp_term> & out) {
    switch (l.kind()) {
    case level_kind::Zero:  out.push_back({std::nullopt, k}); return;
    case level_kind::Param: out.push_back({l.param_id(), k}); return;
    case level_kind::Succ:  flatten(l.succ_of(), k + 1, out); return;
    case level_kind::Max:   flatten(l.lhs(), k, out); flatten(l.rhs(), k, out); return;
    case level_kind::IMax:  assert(false); return;
    }
}

bool max_plus_leq(std::vector<mp_term> const & as, std::vector<mp_term> const & bs) {
    unsigned b_min = 0;
    for (mp_term const & t : bs)
        b_min = std::max(b_min, t.m_offset);
    for (mp_term const & t : as) {
        if (!t.m_var) {
            if (t.m_offset > b_min)
                return false;
        } else {
            bool ok = false;
            for (mp_term const & s : bs)
                if (s.m_var && *s.m_var == *t.m_var && s.m_offset >= t.m_offset) {
                    ok = true;
                    break;
                }
            if (!ok)
                return false;
        }
    }
    return true;
}

bool leq_cases(level const & a, level const & b, std::vector<name> const & split, std::size_t i, case_map & cases) {
    if (i == split.size()) {
        std::vector<mp_term> as, bs;
        flatten(specialize(a, cases), 0, as);
        flatten(specialize(b, cases), 0, bs);
        return max_plus_leq(as, bs);
    }
    for (bool succ : {false, true}) {
        cases[split[i]] = succ;
        if (!leq_cases(a, b, split, i + 1, cases))
            return false;
    }
    cases.erase(split[i]);
    return true;
}
}

bool is_def_leq(level const & a, level const & b) {
    if (a == b || is_zero(a))
        return true;
    std::set<name> split_set;
    collect_imax_rhs_params(a, false, split_set);
    collect_imax_rhs_params(b, false, split_set);
    std::vector<name> split(split_set.begin(), split_set.end());
    case_map cases;
    return leq_cases(a, b, split, 0, cases);
}

bool is_equivalent(level const & a, level const & b) {
    if (a == b)
        return true;
    return is_def_leq(a, b) && is_def_leq(b, a);
}

bool is_equivalent(levels const & as, levels const & bs) {
    if (as.size() != bs.size())
        return false;
    for (std::size_t i = 0; i < as.size(); i++)
        if (!is_equivalent(as[i], bs[i]))
            return false;
    return true;
}

static level instantiate_core(level const & l, names const & params, levels const & args) {
    if (!l.has_param())
        return l;
    switch (l.kind()) {
    case level_kind::Zero: return l;
    case level_kind::Succ: return mk_succ(instantiate_core(l.succ_of(), params, args));
    case level_kind::Max:  return mk_max_core(instantiate_core(l.lhs(), params, args), instantiate_core(l.rhs(), params, args));
    case level_kind::IMax: return mk_imax_core(instantiate_core(l.lhs(), params, args), instantiate_core(l.rhs(), params, args));
    case level_kind::Param:
        for (std::size_t i = 0; i < params.size(); i++)
            if (params[i] == l.param_id())
                return args[i];
        return l;
    }
    return l;
}

level instantiate(level const & l, names const & params, levels const & args) {
    if (params.size() != args.size())
        throw std::invalid_argument("universe instantiation: expected " + std::to_string(params.size()) +
                                    " levels, got " + std::to_string(args.size()));
    return instantiate_core(l, params, args);
}

std::optional<name> first_unbounded_param(level const & l, names const & declared) {
    if (!l.has_param())
        return std::nullopt;
    switch (l.kind()) {
    case level_kind::Zero: return std::nullopt;
    case level_kind::Succ: return first_unbounded_param(l.succ_of(), declared);
    case level_kind::Max:
    case level_kind::IMax:
        if (auto r = first_unbounded_param(l.lhs(), declared))
            return r;
        return first_unbounded_param(l.rhs(), declared);
    case level_kind::Param:
        if (std::find(declared.begin(), declared.end(), l.param_id()) == declared.end())
            return l.param_id();
        return std::nullopt;
    }
    return std::nullopt;
}

bool params_bounded(level const & l, names const & declared) {
    return !first_unbounded_param(l, declared);
}

void collect_params(level const & l, std::vector<name> & out) {
    if (!l.has_param())
        return;
    switch (l.kind()) {
    case level_kind::Zero: return;
    case level_kind::Succ: collect_params(l.succ_of(), out); return;
    case level_kind::Max:
    case level_kind::IMax: collect_params(l.lhs(), out); collect_params(l.rhs(), out); return;
    case level_kind::Param:
        if (std::find(out.begin(), out.end(), l.param_id()) == out.end())
            out.push_back(l.param_id());
        return;
    }
}

std::ostream & operator<<(std::ostream & out, level const & l) {
    auto [b, k] = to_offset(l);
    if (is_zero(b)) {
        out << k;
        return out;
    }
    auto atom = [&](level const & x) {
        if (is_max(x) || is_imax(x) || (is_succ(x) && !is_explicit(x)))
            out << "(" << x << ")";
        else
            out << x;
    };
    switch (b.kind()) {
    case level_kind::Param: out << b.param_id(); break;
    case level_kind::Max:
    case level_kind::IMax:
        if (k > 0) out << "(";
        out << (is_max(b) ? "max " : "imax ");
        atom(b.lhs());
        out << " ";
        atom(b.rhs());
        if (k > 0) out << ")";
        break;
    default: break;
    }
    if (k > 0)
        out << "+" << k;
    return out;
}

}
