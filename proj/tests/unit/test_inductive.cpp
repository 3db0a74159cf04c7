#include "doctest.h"
#include "test_util.hpp"

#include "lk/inductive.hpp"
#include "lk/printer.hpp"
#include "lk/type_checker.hpp"

using namespace lk;
using namespace lk::test;

namespace {

error_kind add_failure(std::string const & src, environment const & env = prelude_env()) {
    try {
        mk_env(src, env);
    } catch (kernel_exception const & ex) {
        return ex.kind();
    }
    FAIL("expected a kernel exception for: " << src);
    return error_kind::unsupported_expr;
}

void check_type(environment const & env, char const * c, std::string const & expected) {
    constant_info const & ci = env.get(c);
    type_checker tc(env, {}, ci.get_lparams());
    expr want = E(expected);
    CHECK_MESSAGE(ci.get_type() == want, c, " : ", to_string(ci.get_type()), "\nexpected ", to_string(want));
}

environment lists_env() {
    static environment const env = mk_env(R"(
import prelude
inductive List.{u} (α : Type u) : Type u where
  | nil : List.{u} α
  | cons : (head : α) → (tail : List.{u} α) → List.{u} α
)");
    return env;
}

}

TEST_CASE("inductive: Nat") {
    environment env = prelude_env();
    inductive_val const & v = env.get("Nat").to_inductive();
    CHECK(v.m_nparams == 0);
    CHECK(v.m_nindices == 0);
    CHECK(v.m_is_rec);
    CHECK_FALSE(v.m_is_reflexive);
    CHECK(v.m_ctors == names{"Nat.zero", "Nat.succ"});
    CHECK(env.get("Nat.succ").to_constructor().m_cidx == 1);
    CHECK(env.get("Nat.succ").to_constructor().m_nfields == 1);
    check_type(env, "Nat.rec",
               "{motive : Nat → Sort u} → (zero : motive Nat.zero) → "
               "(succ : (n : Nat) → (n_ih : motive n) → motive (Nat.succ n)) → (t : Nat) → motive t");
    CHECK(env.get("Nat.rec").get_lparams() == names{"u"});
    recursor_val const & r = env.get("Nat.rec").to_recursor();
    CHECK(r.m_nmotives == 1);
    CHECK(r.m_nminors == 2);
    CHECK(r.major_idx() == 3);
    CHECK_FALSE(r.m_k);
    REQUIRE(r.m_rules.size() == 2);
    CHECK(r.m_rules[1].m_nfields == 1);
    CHECK(r.m_rules[1].m_rhs ==
          E("fun (motive : Nat → Sort u) (zero : motive Nat.zero) "
            "(succ : (n : Nat) → motive n → motive (Nat.succ n)) (n : Nat) => "
            "succ n (Nat.rec.{u} motive zero succ n)"));
}

TEST_CASE("inductive: List with a parameter") {
    environment env = lists_env();
    check_type(env, "List.rec",
               "{α : Type u} → {motive : List.{u} α → Sort u_1} → (nil : motive (List.nil.{u} α)) → "
               "(cons : (head : α) → (tail : List.{u} α) → motive tail → motive (List.cons.{u} α head tail)) → "
               "(t : List.{u} α) → motive t");
    CHECK(env.get("List.rec").get_lparams() == names{"u_1", "u"});
    check_type(env, "List.cons", "{α : Type u} → (head : α) → (tail : List.{u} α) → List.{u} α");
}

TEST_CASE("inductive: Eq has K-like elimination into any sort") {
    environment env = prelude_env();
    recursor_val const & r = env.get("Eq.rec").to_recursor();
    CHECK(r.m_k);
    CHECK(r.m_nindices == 1);
    CHECK(env.get("Eq.rec").get_lparams() == names{"u_1", "u"});
    check_type(env, "Eq.rec",
               "{α : Sort u} → {a : α} → {motive : (a_1 : α) → Eq.{u} α a a_1 → Sort u_1} → "
               "(refl : motive a (Eq.refl.{u} α a)) → {a_2 : α} → (t : Eq.{u} α a a_2) → motive a_2 t");
}

TEST_CASE("inductive: propositions with data fields only eliminate into Prop") {
    environment env = mk_env(R"(
import prelude
inductive Exists.{u} {α : Sort u} (p : α → Prop) : Prop where
  | intro : (w : α) → (h : p w) → Exists.{u} α p
inductive False : Prop where
inductive And (a b : Prop) : Prop where
  | intro : (left : a) → (right : b) → And a b
)");
    CHECK(env.get("Exists.rec").get_lparams() == names{"u"});
    CHECK(env.get("False.rec").get_lparams() == names{"u"});
    CHECK(env.get("And.rec").get_lparams() == names{"u"});
    check_type(env, "False.rec", "(motive : False → Sort u) → (t : False) → motive t");
    CHECK(env.get("False.rec").get_type().binding_info() == binder_info::Default);
    check_type(env, "Exists.rec",
               "{α : Sort u} → {p : α → Prop} → {motive : Exists.{u} α p → Prop} → "
               "(intro : (w : α) → (h : p w) → motive (Exists.intro.{u} α p w h)) → "
               "(t : Exists.{u} α p) → motive t");
}

TEST_CASE("inductive: mutual Even and Odd") {
    environment env = mk_env(R"(
import prelude
mutual
inductive Even : Nat → Type where
  | zero : Even Nat.zero
  | succ : (n : Nat) → Odd n → Even (Nat.succ n)
inductive Odd : Nat → Type where
  | succ : (n : Nat) → Even n → Odd (Nat.succ n)
end
)");
    CHECK(env.get("Even").to_inductive().m_all == names{"Even", "Odd"});
    check_type(env, "Even.rec",
               "{motive_1 : (a : Nat) → Even a → Sort u} → {motive_2 : (a : Nat) → Odd a → Sort u} → "
               "(zero : motive_1 Nat.zero Even.zero) → "
               "(succ : (n : Nat) → (a : Odd n) → motive_2 n a → motive_1 (Nat.succ n) (Even.succ n a)) → "
               "(succ : (n : Nat) → (a : Even n) → motive_1 n a → motive_2 (Nat.succ n) (Odd.succ n a)) → "
               "{a : Nat} → (t : Even a) → motive_1 a t");
    CHECK(env.get("Odd.rec").to_recursor().m_nmotives == 2);
}

TEST_CASE("inductive: nested occurrence through List") {
    environment env = mk_env(R"(
inductive T : Type where
  | mk : List.{0} T → T
)", lists_env());
    CHECK(env.get("T").to_inductive().m_nnested == 1);
    CHECK(env.get("T").to_inductive().m_all == names{"T"});
    CHECK(env.contains("T.rec_1"));
    CHECK_FALSE(env.contains("_nested.List_1"));
    check_type(env, "T.rec",
               "{motive_1 : T → Sort u} → {motive_2 : List.{0} T → Sort u} → "
               "(mk : (a : List.{0} T) → motive_2 a → motive_1 (T.mk a)) → "
               "(nil : motive_2 (List.nil.{0} T)) → "
               "(cons : (head : T) → (tail : List.{0} T) → motive_1 head → motive_2 tail → "
               "motive_2 (List.cons.{0} T head tail)) → "
               "(t : T) → motive_1 t");
    check_type(env, "T.rec_1",
               "{motive_1 : T → Sort u} → {motive_2 : List.{0} T → Sort u} → "
               "(mk : (a : List.{0} T) → motive_2 a → motive_1 (T.mk a)) → "
               "(nil : motive_2 (List.nil.{0} T)) → "
               "(cons : (head : T) → (tail : List.{0} T) → motive_1 head → motive_2 tail → "
               "motive_2 (List.cons.{0} T head tail)) → "
               "(t : List.{0} T) → motive_2 t");
    recursor_val const & r1 = env.get("T.rec_1").to_recursor();
    REQUIRE(r1.m_rules.size() == 2);
    CHECK(r1.m_rules[0].m_ctor == name("List.nil"));
    CHECK(r1.m_rules[1].m_ctor == name("List.cons"));
}

TEST_CASE("inductive: iota reduction") {
    environment env = mk_env(R"(
def len.{u} (α : Type u) (l : List.{u} α) : Nat :=
  List.rec.{1, u} α (fun (_ : List.{u} α) => Nat) Nat.zero (fun (h : α) (t : List.{u} α) (ih : Nat) => Nat.succ ih) l
)", lists_env());
    type_checker tc(env);
    CHECK(tc.is_def_eq(E("len.{0} Nat (List.cons.{0} Nat 1 (List.cons.{0} Nat 2 (List.nil.{0} Nat)))"), E("2")));
    CHECK(tc.whnf(E("len.{0} Nat (List.nil.{0} Nat)")) == E("Nat.zero"));
}

TEST_CASE("inductive: structure eta feeds recursor reduction") {
    environment env = mk_env(R"(
import prelude
inductive Prod.{u, v} (α : Type u) (β : Type v) : Type (max u v) where
  | mk : (fst : α) → (snd : β) → Prod.{u, v} α β
axiom p : Prod.{0, 0} Nat Nat
)");
    type_checker tc(env);
    expr e = E("Prod.rec.{1, 0, 0} Nat Nat (fun (_ : Prod.{0, 0} Nat Nat) => Nat) (fun (a b : Nat) => a) p");
    CHECK(tc.whnf(e) == E("proj Prod 0 p"));
}

TEST_CASE("inductive: reflexive types") {
    environment env = mk_env(R"(
import prelude
inductive W (α : Type) (β : α → Type) : Type where
  | sup : (a : α) → (f : β a → W α β) → W α β
)");
    CHECK(env.get("W").to_inductive().m_is_reflexive);
    CHECK(env.get("W").to_inductive().m_is_rec);
    check_type(env, "W.rec",
               "{α : Type} → {β : α → Type} → {motive : W α β → Sort u} → "
               "(sup : (a : α) → (f : β a → W α β) → (f_ih : (a_1 : β a) → motive (f a_1)) → "
               "motive (W.sup α β a f)) → (t : W α β) → motive t");
}

TEST_CASE("inductive: rejected declarations") {
    CHECK(add_failure("inductive Bad : Type where | mk : (Bad → Nat) → Bad") == error_kind::non_positive_occurrence);
    CHECK(add_failure("inductive Big : Type where | mk : Type → Big") == error_kind::universe_too_large);
    CHECK(add_failure("inductive B : Type where | mk : Nat") == error_kind::bad_ctor_target);
    CHECK(add_failure("inductive P (α : Type) : Type where | mk : P Nat") == error_kind::bad_ctor_target);
    CHECK(add_failure("inductive I : Type → Type where | mk : I (I Nat)") == error_kind::bad_ctor_target);
    CHECK(add_failure("inductive Nat : Type where | z : Nat") == error_kind::duplicate_name);
    CHECK(add_failure("inductive D : Type where | a : D | a : D") == error_kind::duplicate_name);
    CHECK(add_failure("inductive S : Nat where | a : S") == error_kind::type_expected);
    CHECK(add_failure(R"(
mutual
inductive A (α : Type) : Type where | a : A α
inductive B (α : Nat → Type) : Type where | b : B α
end
)") == error_kind::param_mismatch);
    CHECK(add_failure(R"(
mutual
inductive A : Type where | a : A
inductive B : Prop where | b : B
end
)") == error_kind::invalid_inductive);
}

TEST_CASE("inductive: constructor parameters must match the type's") {
    // P (b : Bool) : Type with mk : (n : Nat) → P Bool.true, built directly since the surface syntax shares binders
    inductive_decl d;
    d.m_nparams = 1;
    expr p_type = mk_pi("b", E("Bool"), mk_Type());
    expr mk_type = mk_pi("n", E("Nat"), mk_app(mk_const("P"), E("Bool.true")));
    d.m_types.push_back(inductive_type{"P", p_type, {constructor_decl{"P.mk", mk_type}}});
    try {
        add_decl(prelude_env(), d);
        FAIL("expected a kernel exception");
    } catch (kernel_exception const & ex) {
        CHECK(ex.kind() == error_kind::param_mismatch);
    }
}

TEST_CASE("inductive: universe level of the eliminator") {
    environment env = mk_env(R"(
import prelude
inductive Or (a b : Prop) : Prop where
  | inl : (h : a) → Or a b
  | inr : (h : b) → Or a b
inductive True : Prop where
  | intro : True
)");
    CHECK(env.get("Or.rec").get_lparams().empty());
    CHECK(env.get("True.rec").get_lparams() == names{"u"});
}
