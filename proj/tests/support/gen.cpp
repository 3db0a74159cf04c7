#include "gen.hpp"

namespace lk::gen {

using oracle::vexpr;
using oracle::vlevel;

namespace {

expr cnst(char const * n) { return mk_const(n); }
expr nat() { return cnst("Nat"); }
expr id_at(unsigned u) {
    level l = mk_level_zero();
    for (unsigned i = 0; i < u; i++)
        l = mk_succ(l);
    return mk_const("id", {l});
}

}

expr term_gen::type_of(goal g) {
    switch (g) {
    case goal::Nat:     return nat();
    case goal::Bool:    return cnst("Bool");
    case goal::Prop:    return mk_Prop();
    case goal::Type:    return mk_Type();
    case goal::Proof:   return cnst("P");
    case goal::NatFun:  return mk_arrow(nat(), nat());
    case goal::NatPred: return mk_arrow(nat(), mk_Prop());
    }
    return nat();
}

term_gen::goal term_gen::random_goal() {
    static goal const all[] = {goal::Nat, goal::Nat, goal::Bool, goal::Prop, goal::Type, goal::Proof, goal::NatFun, goal::NatPred};
    return all[pick(std::size(all))];
}

std::optional<expr> term_gen::local_of(goal g) {
    std::vector<unsigned> idxs;
    for (std::size_t i = 0; i < m_locals.size(); i++)
        if (m_locals[m_locals.size() - 1 - i] == g)
            idxs.push_back(static_cast<unsigned>(i));
    if (idxs.empty())
        return std::nullopt;
    return mk_bvar(idxs[pick(idxs.size())]);
}

/** \brief A body of goal \c body_goal with a new local of goal \c dom in scope. */
expr term_gen::under(goal dom, unsigned depth, goal body_goal) {
    m_locals.push_back(dom);
    expr b = gen(body_goal, depth);
    m_locals.pop_back();
    return b;
}

expr term_gen::gen_binders(unsigned k, unsigned depth) {
    std::vector<goal> doms;
    for (unsigned i = 0; i < k; i++) {
        doms.push_back(random_goal());
        m_locals.push_back(doms.back());
    }
    expr r = gen(random_goal(), depth);
    m_locals.resize(m_locals.size() - k);
    for (unsigned i = k; i-- > 0;)
        r = mk_lambda("x", type_of(doms[i]), r);
    return r;
}

expr term_gen::gen(goal g, unsigned depth) {
    if (depth > 0 && chance(m_noise))
        return gen_core(random_goal(), depth - 1);
    return gen_core(g, depth);
}

expr term_gen::gen_core(goal g, unsigned depth) {
    if (depth == 0 || chance(0.15)) {
        if (chance(0.5))
            if (auto l = local_of(g))
                return *l;
        switch (g) {
        case goal::Nat:     return chance(0.5) ? cnst("Nat.zero") : mk_nat_lit(lk::nat(pick(4)));
        case goal::Bool:    return chance(0.5) ? cnst("Bool.true") : cnst("Bool.false");
        case goal::Prop:    return cnst("P");
        case goal::Type:    return chance(0.5) ? nat() : cnst("Bool");
        case goal::Proof:   return cnst("p");
        case goal::NatFun:  return cnst("Nat.succ");
        case goal::NatPred: return mk_app(mk_const("Eq", {mk_level_one()}), nat(), cnst("Nat.zero"));
        }
    }
    unsigned d = depth - 1;
    // forms available for every goal
    switch (pick(12)) {
    case 0: {
        goal h = random_goal();
        expr v = gen(h, d);
        return mk_let("x", type_of(h), v, under(h, d, g));
    }
    case 1:
        return mk_mdata("gen", gen(g, d));
    case 2: {
        goal h = random_goal();
        return mk_app(mk_lambda("x", type_of(h), under(h, d, g)), gen(h, d));
    }
    case 3: {
        unsigned u = g == goal::Proof ? 0 : g == goal::Type ? 2 : 1;
        return mk_app(id_at(u), type_of(g), gen(g, d));
    }
    default:
        break;
    }
    switch (g) {
    case goal::Nat:
        switch (pick(8)) {
        case 0: return mk_app(cnst("Nat.succ"), gen(g, d));
        case 1: return mk_app(cnst("Nat.add"), gen(g, d), gen(g, d));
        case 2: return mk_app(cnst("Nat.mul"), gen(g, d), gen(g, d));
        case 3: return mk_app(cnst("Nat.pred"), gen(g, d));
        case 4: return mk_app(gen(goal::NatFun, d), gen(g, d));
        case 5: return mk_app(cnst("twice"), gen(goal::NatFun, d), gen(g, d));
        case 6: {
            m_locals.push_back(goal::Nat);
            expr step = mk_lambda("k", nat(), mk_lambda("ih", nat(), under(goal::Nat, d, goal::Nat)));
            m_locals.pop_back();
            return mk_app(mk_app(mk_const("Nat.rec", {mk_level_one()}), mk_lambda("_", nat(), nat())), gen(g, d), step,
                          gen(g, d));
        }
        default: return mk_nat_lit(lk::nat(pick(6)));
        }
    case goal::Bool:
        if (chance(0.5))
            return chance(0.5) ? cnst("Bool.true") : cnst("Bool.false");
        return mk_app(mk_app(mk_const("Nat.rec", {mk_level_one()}), mk_lambda("_", nat(), cnst("Bool"))),
                      gen(g, d), mk_lambda("k", nat(), mk_lambda("ih", cnst("Bool"), mk_bvar(0))), gen(goal::Nat, d));
    case goal::Prop:
        switch (pick(5)) {
        case 0: return mk_app(mk_const("Eq", {mk_level_one()}), nat(), gen(goal::Nat, d), gen(goal::Nat, d));
        case 1: return mk_pi("x", nat(), under(goal::Nat, d, goal::Prop));
        case 2: return mk_pi("h", cnst("P"), under(goal::Proof, d, goal::Prop));
        case 3: return mk_app(gen(goal::NatPred, d), gen(goal::Nat, d));
        default: return cnst("P");
        }
    case goal::Type:
        switch (pick(4)) {
        case 0: return mk_Prop();
        case 1: return mk_pi("x", gen(goal::Type, d), gen(goal::Type, d));
        case 2: return cnst("Bool");
        default: return nat();
        }
    case goal::Proof:
        switch (pick(3)) {
        case 0: return mk_app(mk_lambda("h", cnst("P"), under(goal::Proof, d, goal::Proof)), gen(goal::Proof, d));
        case 1: {
            // a proof of P under a binder, applied to a Nat
            return mk_app(mk_lambda("n", nat(), under(goal::Nat, d, goal::Proof)), gen(goal::Nat, d));
        }
        default: return cnst("p");
        }
    case goal::NatFun:
        switch (pick(4)) {
        case 0: return mk_lambda("x", nat(), under(goal::Nat, d, goal::Nat));
        case 1: return mk_app(cnst("Nat.add"), gen(goal::Nat, d));
        case 2: return mk_app(cnst("twice"), gen(goal::NatFun, d));
        default: return cnst("Nat.pred");
        }
    case goal::NatPred:
        if (chance(0.5))
            return mk_lambda("x", nat(), under(goal::Nat, d, goal::Prop));
        return mk_app(mk_const("Eq", {mk_level_one()}), nat(), gen(goal::Nat, d));
    }
    return nat();
}

vlevel random_vlevel(std::mt19937_64 & rng, unsigned nparams, unsigned depth) {
    unsigned k = depth == 0 ? static_cast<unsigned>(rng() % 2) : static_cast<unsigned>(rng() % 5);
    switch (k) {
    case 0: return vlevel::zero();
    case 1: return nparams ? vlevel::param(static_cast<unsigned>(rng() % nparams)) : vlevel::zero();
    case 2: return vlevel::succ(random_vlevel(rng, nparams, depth - 1));
    case 3: return vlevel::max(random_vlevel(rng, nparams, depth - 1), random_vlevel(rng, nparams, depth - 1));
    default: return vlevel::imax(random_vlevel(rng, nparams, depth - 1), random_vlevel(rng, nparams, depth - 1));
    }
}

vexpr random_poly_vexpr(std::mt19937_64 & rng, unsigned nparams, unsigned depth) {
    vlevel l = random_vlevel(rng, nparams, 2);
    vexpr s = vexpr::sort(l);
    switch (depth == 0 ? 0 : rng() % 6) {
    case 0: return s;
    case 1:  // λ (α : Sort l) (a : α). a
        return vexpr::lam(s, vexpr::lam(vexpr::bvar(0), vexpr::bvar(0)));
    case 2:  // Π (α : Sort l). α → α
        return vexpr::pi(s, vexpr::pi(vexpr::bvar(0), vexpr::bvar(1)));
    case 3: {  // id.{l'+2} (Sort (l'+1)) (Sort l')
        vexpr t = vexpr::sort(random_vlevel(rng, nparams, 1));
        vexpr ty = vexpr::sort(vlevel::succ(t.level()));
        return mk_vapp(vexpr::cnst("id", {vlevel::succ(vlevel::succ(t.level()))}), {ty, t});
    }
    case 4:  // (λ (x : Sort (l+1)). b) (Sort l) with b closed
        return vexpr::app(vexpr::lam(vexpr::sort(vlevel::succ(l)), random_poly_vexpr(rng, nparams, depth - 1)), s);
    default: {  // (λ (α : Sort l). α) applied to a type of that sort
        vexpr t = vexpr::pi(s, vexpr::bvar(0));
        return vexpr::app(vexpr::lam(vexpr::sort(vlevel::imax(vlevel::succ(l), l)), vexpr::bvar(0)), t);
    }
    }
}

}
