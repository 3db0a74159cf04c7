#include "doctest.h"
#include "props.hpp"
#include "test_util.hpp"

#include "lk/oracle/translate.hpp"

using namespace lk;
using namespace lk::oracle;
using namespace lk::test;

namespace {

vexpr S(vlevel const & l) { return vexpr::sort(l); }
vexpr C(char const * n, vlevels const & us = {}) { return vexpr::cnst(n, us); }
vexpr B(std::uint64_t i) { return vexpr::bvar(i); }
vlevel one() { return vlevel::succ(vlevel::zero()); }

environment const & micro_env() {
    static environment const env = mk_env("import micro");
    return env;
}

venv const & micro_venv() {
    static venv const env = tr_env(micro_env());
    return env;
}

std::optional<vexpr> tr(std::string const & s, vlctx const & ctx = {}, names const & us = {}) {
    return tr_expr(us, ctx, E(s));
}

/** \brief Independent substitution: replace BVar(k) with \c a, where \c a is relative to the outer context. */
vexpr naive_inst(vexpr const & e, vexpr const & a, std::uint64_t k) {
    switch (e.kind()) {
    case vexpr_kind::BVar:
        if (e.idx() == k) {
            vexpr r = a;
            for (std::uint64_t i = 0; i < k; i++)
                r = vlift(r, 1, 0);
            return r;
        }
        return e.idx() > k ? B(e.idx() - 1) : e;
    case vexpr_kind::App: return vexpr::app(naive_inst(e.fn(), a, k), naive_inst(e.arg(), a, k));
    case vexpr_kind::Lam: return vexpr::lam(naive_inst(e.domain(), a, k), naive_inst(e.body(), a, k + 1));
    case vexpr_kind::Pi:  return vexpr::pi(naive_inst(e.domain(), a, k), naive_inst(e.body(), a, k + 1));
    default:              return e;
    }
}

}

TEST_CASE("vlevel basics") {
    vlevel u = vlevel::param(0);
    CHECK(level_ok(u, 1));
    CHECK_FALSE(level_ok(u, 0));
    CHECK(eval(vlevel::imax(one(), vlevel::zero()), {}) == 0);
    CHECK(eval(vlevel::max(vlevel::succ(u), one()), {3}) == 4);
    CHECK(is_equiv(vlevel::max(u, u), u));
    CHECK(is_equiv(vlevel::imax(u, u), u));
    CHECK_FALSE(is_equiv(vlevel::succ(u), u));
    CHECK(inst(vlevel::succ(u), {one()}) == vlevel::succ(one()));
}

TEST_CASE("vlift and vinst") {
    vexpr a = C("a");
    vexpr u = S(vlevel::param(0));
    CHECK(vinst(B(0), a) == a);
    CHECK(vlift(u, 5, 0) == u);
    CHECK(vlift(B(0), 2, 1) == B(0));
    CHECK(vlift(B(1), 2, 1) == B(3));

    // ForallE(A, App(BVar 1, BVar 0))[0 := x] with x open: the body copy is lifted past the binder
    vexpr A = C("A");
    vexpr x = B(3);
    CHECK(vinst(vexpr::pi(A, vexpr::app(B(1), B(0))), x) == vexpr::pi(A, vexpr::app(B(4), B(0))));
    CHECK(vinst(vexpr::pi(B(0), B(0)), x) == vexpr::pi(x, B(0)));
    CHECK(vinst(B(2), x) == B(1));

    SUBCASE("agrees with a naive substitution") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 300; i++) {
            vexpr e = vexpr::lam(B(rng() % 3), vexpr::app(B(rng() % 4), vexpr::pi(B(rng() % 5), B(rng() % 2))));
            vexpr e2 = vexpr::app(e, B(rng() % 3));
            vexpr v = vexpr::app(B(rng() % 2), C("c"));
            std::uint64_t k = rng() % 3;
            CHECK(vinst(e2, v, k) == naive_inst(e2, v, k));
        }
    }
}

TEST_CASE("closedN") {
    CHECK_FALSE(closedN(B(0), 0));
    CHECK(closedN(vexpr::lam(S(vlevel::zero()), B(0)), 0));
    CHECK_FALSE(closedN(vexpr::app(B(2), B(0)), 2));
    CHECK(closedN(vexpr::app(B(2), B(0)), 3));
    CHECK(B(4).loose_range() == 5);
}

TEST_CASE("vinstL") {
    vexpr e = vexpr::pi(S(vlevel::param(0)), C("c", {vlevel::param(1)}));
    vexpr r = vinstL(e, {one(), vlevel::zero()});
    CHECK(r == vexpr::pi(S(one()), C("c", {vlevel::zero()})));
    CHECK(levels_ok(e, 2));
    CHECK_FALSE(levels_ok(e, 1));
}

TEST_CASE("check_judgment basics") {
    venv env;
    CHECK(check_judgment(env, 0, {}, S(vlevel::zero())) == S(one()));
    CHECK(check_judgment(env, 0, {S(vlevel::zero())}, B(0)) == S(vlevel::zero()));
    CHECK(check_judgment(env, 1, {}, S(vlevel::param(0))) == S(vlevel::succ(vlevel::param(0))));
    CHECK_FALSE(check_judgment(env, 0, {}, S(vlevel::param(0))));
    CHECK_FALSE(check_judgment(env, 0, {}, B(0)));
    CHECK_FALSE(check_judgment(env, 0, {}, C("missing")));

    // Π (α : Sort 0). α : Sort (imax 1 0)
    auto t = check_judgment(env, 0, {}, vexpr::pi(S(vlevel::zero()), B(0)));
    REQUIRE(t);
    CHECK(check_defeq(env, 0, {}, *t, S(vlevel::zero())));
    // λ (α : Sort 1) (a : α). a : Π (α : Sort 1). α → α
    auto t2 = check_judgment(env, 0, {}, vexpr::lam(S(one()), vexpr::lam(B(0), B(0))));
    REQUIRE(t2);
    CHECK(*t2 == vexpr::pi(S(one()), vexpr::pi(B(0), B(1))));
    // applying it to a non-type is rejected
    CHECK_FALSE(check_judgment(env, 0, {}, vexpr::app(vexpr::lam(S(one()), vexpr::lam(B(0), B(0))), S(one()))));
}

TEST_CASE("oracle defeq") {
    venv const & env = micro_venv();
    vexpr nat = C("Nat");
    vexpr id_nat = vexpr::lam(nat, B(0));
    SUBCASE("beta") { CHECK(check_defeq(env, 0, {}, vexpr::app(id_nat, C("Nat.zero")), C("Nat.zero"))); }
    SUBCASE("eta") { CHECK(check_defeq(env, 0, {}, vexpr::lam(nat, vexpr::app(C("Nat.succ"), B(0))), C("Nat.succ"))); }
    SUBCASE("proof irrelevance") {
        vctx ctx{C("P"), C("P")};
        CHECK(check_defeq(env, 0, ctx, B(0), B(1)));
        CHECK_FALSE(check_defeq(env, 0, {nat, nat}, B(0), B(1)));
    }
    SUBCASE("delta") {
        vexpr twice_succ = mk_vapp(C("twice"), {C("Nat.succ"), C("Nat.zero")});
        CHECK(check_defeq(env, 0, {}, twice_succ, *tr("2")));
        CHECK_FALSE(check_defeq(env, 0, {}, twice_succ, *tr("3")));
    }
    SUBCASE("iota") {
        CHECK(check_defeq(env, 0, {}, *tr("Nat.add 2 2"), *tr("4")));
        CHECK(check_defeq(env, 0, {}, *tr("Nat.mul 2 3"), *tr("6")));
    }
    SUBCASE("sorts up to level equivalence") {
        CHECK(check_defeq(env, 1, {}, S(vlevel::max(vlevel::param(0), vlevel::param(0))), S(vlevel::param(0))));
        CHECK_FALSE(check_defeq(env, 1, {}, S(vlevel::param(0)), S(vlevel::zero())));
    }
    SUBCASE("whnf") {
        auto r = vwhnf(env, {}, vexpr::app(id_nat, C("Nat.zero")));
        REQUIRE(r);
        CHECK(*r == C("Nat.zero"));
    }
}

TEST_CASE("oracle fuel") {
    venv const & env = micro_venv();
    vexpr big = *tr("Nat.add 100 100");
    oracle_options opts;
    opts.fuel = 5;
    CHECK_FALSE(check_defeq(env, 0, {}, big, *tr("200"), opts));
    CHECK(check_defeq(env, 0, {}, big, *tr("200")));
}

TEST_CASE("translation") {
    CHECK(tr("2") == vexpr::app(C("Nat.succ"), vexpr::app(C("Nat.succ"), C("Nat.zero"))));
    translate_options small;
    small.max_nat_literal = 3;
    CHECK_FALSE(tr_expr({}, {}, E("4"), small));

    expr inner = E("Nat.succ 0");
    CHECK(tr_expr({}, {}, mk_mdata("k", inner)) == tr_expr({}, {}, inner));

    SUBCASE("let expansion") {
        auto r = tr("let x : Nat := 1; Nat.add x x");
        auto expected = tr("Nat.add 1 1");
        CHECK(r == expected);
        // the value is moved past the binders it crosses
        auto r2 = tr("fun (y : Nat) => let x : Nat := y; fun (z : Nat) => Nat.add x z");
        CHECK(r2 == tr("fun (y : Nat) (z : Nat) => Nat.add y z"));
    }
    SUBCASE("bound variables across lets") {
        // BVar 0 is a let whose value mentions the lambda outside it
        vlctx ctx;
        ctx.emplace_back(std::nullopt, vlocal_decl{C("Nat"), std::nullopt});
        ctx.insert(ctx.begin(), {std::nullopt, vlocal_decl{C("Nat"), vexpr::app(C("Nat.succ"), B(0))}});
        CHECK(tr_expr({}, ctx, mk_bvar(0)) == vexpr::app(C("Nat.succ"), B(0)));
        CHECK(tr_expr({}, ctx, mk_bvar(1)) == B(0));
        CHECK_FALSE(tr_expr({}, ctx, mk_bvar(2)));
        CHECK(to_ctx(ctx).size() == 1);
    }
    SUBCASE("free variables") {
        fvar_id x{7};
        vlctx ctx;
        ctx.emplace_back(x, vlocal_decl{C("Nat"), std::nullopt});
        CHECK(tr_expr({}, ctx, mk_fvar(x)) == B(0));
        CHECK_FALSE(tr_expr({}, ctx, mk_fvar(fvar_id{8})));
    }
    SUBCASE("levels") {
        names us{name("u"), name("v")};
        CHECK(tr("Sort (max u (v+1))", {}, us) == S(vlevel::max(vlevel::param(0), vlevel::succ(vlevel::param(1)))));
        CHECK_FALSE(tr("Sort w", {}, us));
    }
    SUBCASE("strings") {
        environment env = mk_env("import strings");
        auto r = tr_expr({}, {}, mk_str_lit("a"));
        REQUIRE(r);
        venv v = tr_env(env);
        auto t = check_judgment(v, 0, {}, *r);
        REQUIRE(t);
        CHECK(*t == C("String"));
    }
    SUBCASE("untranslatable") {
        CHECK_FALSE(tr_expr({}, {}, mk_proj("Prod", 0, mk_const("x"))));
        CHECK_FALSE(tr_expr({}, {}, mk_mvar(name("m"))));
    }
}

TEST_CASE("translated environment") {
    venv const & env = micro_venv();
    CHECK(env.find("Nat"));
    CHECK(env.find("Eq.rec"));
    CHECK(env.defeqs("Nat.rec"));
    CHECK(env.defeqs("twice"));
    CHECK_FALSE(env.find("nope"));

    SUBCASE("K rule for Eq") {
        // Eq.rec with a major premise that is a variable, not Eq.refl, still reduces
        auto e = tr("fun (h : Eq.{1} Nat 0 0) => Eq.rec.{1, 1} Nat 0 (fun (b : Nat) (_ : Eq.{1} Nat 0 b) => Nat) 5 0 h");
        REQUIRE(e);
        vexpr body = e->body();
        CHECK(check_defeq(env, 0, {*tr("Eq.{1} Nat 0 0")}, body, *tr("5")));
    }
    SUBCASE("theorems do not unfold") {
        environment env2 = mk_env("theorem t : P := p", micro_env());
        venv v = tr_env(env2);
        CHECK_FALSE(v.defeqs("t"));
    }
    SUBCASE("quotients") {
        environment env2 = mk_env(R"(
init_quot
axiom r : Nat → Nat → Prop
axiom h : ∀ (a b : Nat), r a b → Eq.{1} Nat (Nat.succ a) (Nat.succ b)
)", micro_env());
        venv v = tr_env(env2);
        auto lhs = tr("Quot.lift.{1, 1} Nat r Nat Nat.succ h (Quot.mk.{1} Nat r 3)");
        REQUIRE(lhs);
        CHECK(check_judgment(v, 0, {}, *lhs) == C("Nat"));
        CHECK(check_defeq(v, 0, {}, *lhs, *tr("4")));
    }
}

TEST_CASE("differential against the kernel") {
    auto r = props::run_differential(micro_env(), micro_venv(), 300, 1);
    for (auto const & s : r.examples)
        MESSAGE(s);
    MESSAGE("accepted " << r.kernel_accepted << " of " << r.generated);
    CHECK(r.kernel_accepted > 150);
    CHECK(r.kernel_accepted < r.generated);
    CHECK(r.disagreements == 0);
}

TEST_CASE("closure properties") {
    auto r = props::run_closure(micro_venv(), 200, 2);
    for (auto const & s : r.examples)
        MESSAGE(s);
    MESSAGE("judgments " << r.judgments << " weak " << r.weakening << " subst " << r.substitution << " univ " << r.universe << " str " << r.strengthening << " uniq " << r.unique_typing);
    CHECK(r.judgments >= 200);
    CHECK(r.weakening > 80);
    CHECK(r.substitution > 20);
    CHECK(r.universe >= 200);
    CHECK(r.strengthening > 20);
    CHECK(r.unique_typing > 20);
    CHECK(r.violations() == 0);
}
