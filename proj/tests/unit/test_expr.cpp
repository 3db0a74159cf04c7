#include "doctest.h"
#include "test_util.hpp"

#include "lk/instantiate.hpp"
#include "lk/literals.hpp"
#include "lk/printer.hpp"

#include <random>

using namespace lk;
using namespace lk::test;

namespace {

expr random_expr(std::mt19937_64 & rng, unsigned depth, unsigned binders) {
    std::uniform_int_distribution<int> pick(0, depth == 0 ? 2 : 6);
    switch (pick(rng)) {
    case 0: return mk_bvar(rng() % (binders + 2));
    case 1: return mk_const(rng() % 2 ? "A" : "B");
    case 2: return mk_fvar(fvar_id{rng() % 3});
    case 3:
    case 4: return mk_app(random_expr(rng, depth - 1, binders), random_expr(rng, depth - 1, binders));
    case 5: return mk_lambda("x", random_expr(rng, depth - 1, binders), random_expr(rng, depth - 1, binders + 1));
    default: return mk_pi("x", random_expr(rng, depth - 1, binders), random_expr(rng, depth - 1, binders + 1));
    }
}

}

TEST_CASE("name: structure and order") {
    name n("Nat.succ");
    CHECK(n.get_prefix() == name("Nat"));
    CHECK(n.get_string() == "succ");
    CHECK(n.to_string() == "Nat.succ");
    CHECK(name(name("T"), 3).to_string() == "T.3");
    CHECK(name("A.B.c").get_root() == name("A"));
    CHECK(name("A").is_prefix_of(name("A.B")));
    CHECK(name("A.B.c").replace_prefix("A.B", "X").to_string() == "X.c");
    CHECK(cmp(name(), name("A")) < 0);
    CHECK(name("A") < name("A.b"));
    CHECK(name("A.b") < name("A.c"));
}

TEST_CASE("expr: structural equality and cached data") {
    CHECK(E("fun (x : Nat) => x") == E("fun (y : Nat) => y"));
    CHECK(E("fun (x : Nat) => x") != E("fun (x : Bool) => x"));
    CHECK(mk_bvar(3).loose_bvar_range() == 4);
    CHECK(mk_lambda("x", mk_Prop(), mk_bvar(1)).loose_bvar_range() == 1);
    CHECK(mk_app(mk_fvar(fvar_id{1}), mk_Prop()).has_fvar());
    CHECK(E("Sort u").has_lparam());
    CHECK(mk_mvar("m").has_mvar());
    CHECK(E("Nat").hash() == E("Nat").hash());
}

TEST_CASE("expr: cached flags agree with a naive traversal (random)") {
    std::mt19937_64 rng(7);
    for (unsigned i = 0; i < 1000; i++) {
        expr e = random_expr(rng, 5, 0);
        CHECK(e.loose_bvar_range() == naive_loose_bvar_range(e));
        CHECK(e.has_fvar() == naive_has_fvar(e));
        CHECK(e.has_mvar() == naive_has_mvar(e));
    }
}

TEST_CASE("instantiate and abstract") {
    expr body = mk_app(mk_bvar(0), mk_bvar(1));
    expr a = mk_const("a"), b = mk_const("b");
    CHECK(instantiate(body, a) == mk_app(a, mk_bvar(0)));
    expr subst[2] = {a, b};
    CHECK(instantiate(body, 2, subst) == mk_app(a, b));
    CHECK(instantiate_rev(body, 2, subst) == mk_app(b, a));
    expr x = mk_fvar(fvar_id{10}), y = mk_fvar(fvar_id{11});
    expr xy[2] = {x, y};
    CHECK(abstract(mk_app(x, y), 2, xy) == mk_app(mk_bvar(1), mk_bvar(0)));
    CHECK(lift_loose_bvars(mk_lambda("z", mk_Prop(), mk_app(mk_bvar(0), mk_bvar(1))), 2) ==
          mk_lambda("z", mk_Prop(), mk_app(mk_bvar(0), mk_bvar(3))));
    CHECK(head_beta(E("(fun (x y : Nat) => y) Nat.zero")) == E("fun (y : Nat) => y"));
    CHECK(instantiate_lparams(E("Sort (max u 1)"), names{"u"}, levels{L("0")}) == E("Sort (max 0 1)"));
}

TEST_CASE("instantiate_rev inverts abstract (random)") {
    std::mt19937_64 rng(11);
    exprs fvars{mk_fvar(fvar_id{0}), mk_fvar(fvar_id{1}), mk_fvar(fvar_id{2})};
    for (unsigned i = 0; i < 500; i++) {
        expr e = random_expr(rng, 5, 0);
        if (e.has_loose_bvars())
            continue;
        CHECK(instantiate_rev(abstract(e, fvars), fvars) == e);
    }
}

TEST_CASE("literals: views") {
    CHECK(nat_lit_ctor_view(mk_nat_lit(nat(0))) == E("Nat.zero"));
    CHECK(nat_lit_ctor_view(mk_nat_lit(nat(3))) == mk_app(E("Nat.succ"), mk_nat_lit(nat(2))));
    CHECK(nat_lit_unary(mk_nat_lit(nat(2))) == E("Nat.succ (Nat.succ Nat.zero)"));
    expr s = mk_str_lit("h\xc3\xa9");
    expr v = str_lit_view(s);
    CHECK(fold_str_lit(v) == s);
    CHECK(utf8_decode("h\xc3\xa9") == std::vector<std::uint32_t>{0x68, 0xe9});
    CHECK(utf8_encode({0x1f600}) == "\xf0\x9f\x98\x80");
}

TEST_CASE("printer: round trip through the surface parser") {
    for (char const * s : {"fun (x : Nat) => Nat.succ x", "(n : Nat) → Eq.{1} Nat n n", "Sort (max u (v+1))",
                           "let x : Nat := Nat.zero; x", "Nat.add 2 3"}) {
        expr e = E(s);
        CHECK_MESSAGE(E(to_string(e)) == e, to_string(e));
    }
}

TEST_CASE("tree_size counts nodes up to a limit") {
    expr e = E("Nat.add Nat.zero Nat.zero");
    CHECK(tree_size(e) == 5);
    CHECK(tree_size(e, 2) <= 3);
}
