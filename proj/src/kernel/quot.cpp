#include "lk/environment.hpp"
#include "lk/instantiate.hpp"
#include "lk/kernel_exception.hpp"
#include "lk/printer.hpp"

namespace lk {

namespace {

[[noreturn]] void quot_fail(std::string const & msg) {
    throw kernel_exception(error_kind::quot_error, msg);
}

expr mk_eq_type(level const & u) {
    // {α : Sort u} → α → α → Prop
    return mk_pi("α", mk_sort(u), mk_arrow(mk_bvar(0), mk_arrow(mk_bvar(0), mk_Prop())), binder_info::Implicit);
}

expr mk_eq_refl_type(level const & u) {
    // {α : Sort u} → (a : α) → @Eq α a a
    expr eq = mk_const("Eq", {u});
    return mk_pi("α", mk_sort(u), mk_pi("a", mk_bvar(0), mk_app(eq, mk_bvar(1), mk_bvar(0), mk_bvar(0))),
                 binder_info::Implicit);
}

void check_eq(environment const & env) {
    constant_info const * eq = env.find(name("Eq"));
    if (!eq || !eq->is_inductive())
        quot_fail("the quotient constants require the inductive type 'Eq'");
    if (eq->get_num_lparams() != 1)
        quot_fail("'Eq' must have exactly one universe parameter");
    level u = mk_param(eq->get_lparams()[0]);
    if (eq->get_type() != mk_eq_type(u))
        quot_fail("'Eq' has an unexpected type: " + to_string(eq->get_type()));
    inductive_val const & v = eq->to_inductive();
    if (v.m_ctors.size() != 1)
        quot_fail("'Eq' must have exactly one constructor");
    constant_info const * refl = env.find(v.m_ctors[0]);
    if (!refl || refl->get_type() != mk_eq_refl_type(u))
        quot_fail("the constructor of 'Eq' has an unexpected type");
}

}

environment add_quot(environment const & env) {
    if (env.is_quot_initialized())
        quot_fail("the quotient constants have already been added");
    check_eq(env);
    for (char const * n : {"Quot", "Quot.mk", "Quot.lift", "Quot.ind"})
        if (env.contains(name(n)))
            throw kernel_exception(error_kind::duplicate_name, "'" + std::string(n) + "' has already been declared");

    level u = mk_param("u");
    level v = mk_param("v");
    expr sort_u = mk_sort(u);
    auto rel = [](expr const & alpha) { return mk_arrow(alpha, mk_arrow(alpha, mk_Prop())); };

    // Quot.{u} : {α : Sort u} → (α → α → Prop) → Sort u
    expr quot_type = mk_pi("α", sort_u, mk_pi("r", rel(mk_bvar(0)), sort_u), binder_info::Implicit);
    auto quot_app = [&](expr const & alpha, expr const & r) { return mk_app(mk_const("Quot", {u}), alpha, r); };

    // Quot.mk.{u} : {α : Sort u} → (r : α → α → Prop) → α → @Quot α r
    expr mk_type = mk_pi("α", sort_u,
                         mk_pi("r", rel(mk_bvar(0)), mk_pi("a", mk_bvar(1), quot_app(mk_bvar(2), mk_bvar(1)))),
                         binder_info::Implicit);

    // Quot.lift.{u, v} : {α : Sort u} → {r : α → α → Prop} → {β : Sort v} → (f : α → β) →
    //   (∀ a b, r a b → @Eq β (f a) (f b)) → @Quot α r → β
    // de Bruijn indices below are relative to the binders α r β f
    expr eq_v = mk_const("Eq", {v});
    expr sound = mk_pi("a", mk_bvar(3),
                       mk_pi("b", mk_bvar(4),
                             mk_arrow(mk_app(mk_bvar(4), mk_bvar(1), mk_bvar(0)),
                                      mk_app(eq_v, mk_bvar(3), mk_app(mk_bvar(2), mk_bvar(1)),
                                             mk_app(mk_bvar(2), mk_bvar(0))))));
    expr lift_type =
        mk_pi("α", sort_u,
              mk_pi("r", rel(mk_bvar(0)),
                    mk_pi("β", mk_sort(v),
                          mk_pi("f", mk_arrow(mk_bvar(2), mk_bvar(0)),
                                mk_arrow(sound, mk_arrow(quot_app(mk_bvar(3), mk_bvar(2)), mk_bvar(1)))),
                          binder_info::Implicit),
                    binder_info::Implicit),
              binder_info::Implicit);

    // Quot.ind.{u} : {α : Sort u} → {r : α → α → Prop} → {β : @Quot α r → Prop} →
    //   (mk : ∀ a, β (@Quot.mk α r a)) → ∀ q, β q
    expr mk_app_a = mk_app(mk_const("Quot.mk", {u}), mk_bvar(3), mk_bvar(2), mk_bvar(0));
    expr ind_type =
        mk_pi("α", sort_u,
              mk_pi("r", rel(mk_bvar(0)),
                    mk_pi("β", mk_arrow(quot_app(mk_bvar(1), mk_bvar(0)), mk_Prop()),
                          mk_pi("mk", mk_pi("a", mk_bvar(2), mk_app(mk_bvar(1), mk_app_a)),
                                mk_pi("q", quot_app(mk_bvar(3), mk_bvar(2)), mk_app(mk_bvar(2), mk_bvar(0)))),
                          binder_info::Implicit),
                    binder_info::Implicit),
              binder_info::Implicit);

    std::vector<constant_info> cs;
    cs.emplace_back(name("Quot"), names{"u"}, quot_type, quot_val{quot_kind::Type});
    cs.emplace_back(name("Quot.mk"), names{"u"}, mk_type, quot_val{quot_kind::Ctor});
    cs.emplace_back(name("Quot.lift"), names{"u", "v"}, lift_type, quot_val{quot_kind::Lift});
    cs.emplace_back(name("Quot.ind"), names{"u"}, ind_type, quot_val{quot_kind::Ind});
    return env.add(cs).set_quot_initialized();
}

}
