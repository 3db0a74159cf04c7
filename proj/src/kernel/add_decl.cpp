#include "lk/environment.hpp"
#include "lk/inductive.hpp"
#include "lk/printer.hpp"
#include "lk/type_checker.hpp"

#include <algorithm>
#include <unordered_set>

namespace lk {

namespace {

void check_closed(expr const & e, char const * what) {
    if (e.has_loose_bvars())
        throw kernel_exception(error_kind::has_loose_bvars, std::string(what) + " has loose bound variables");
    if (e.has_fvar())
        throw kernel_exception(error_kind::has_fvars, std::string(what) + " has free variables");
    if (e.has_mvar())
        throw kernel_exception(error_kind::has_mvars, std::string(what) + " has metavariables");
}

std::optional<name> first_undeclared_lparam(expr const & e, names const & lparams) {
    std::optional<name> r;
    std::unordered_set<void const *> visited;
    std::vector<expr const *> todo{&e};
    while (!todo.empty() && !r) {
        expr const * x = todo.back();
        todo.pop_back();
        if (!x->has_lparam() || !visited.insert(x->raw()).second)
            continue;
        switch (x->kind()) {
        case expr_kind::Sort:   r = first_unbounded_param(x->sort_level(), lparams); break;
        case expr_kind::Const:
            for (level const & l : x->const_levels())
                if (!r)
                    r = first_unbounded_param(l, lparams);
            break;
        case expr_kind::App:    todo.push_back(&x->app_fn()); todo.push_back(&x->app_arg()); break;
        case expr_kind::Lambda:
        case expr_kind::Pi:     todo.push_back(&x->binding_domain()); todo.push_back(&x->binding_body()); break;
        case expr_kind::Let:    todo.push_back(&x->let_type()); todo.push_back(&x->let_value()); todo.push_back(&x->let_body()); break;
        case expr_kind::MData:  todo.push_back(&x->mdata_expr()); break;
        case expr_kind::Proj:   todo.push_back(&x->proj_struct()); break;
        default: break;
        }
    }
    return r;
}

void check_lparams(names const & lparams) {
    for (std::size_t i = 0; i < lparams.size(); i++)
        for (std::size_t j = 0; j < i; j++)
            if (lparams[i] == lparams[j])
                throw kernel_exception(error_kind::duplicate_level_params,
                                       "duplicate universe parameter '" + lparams[i].to_string() + "'");
}

void check_scoped(expr const & e, names const & lparams) {
    if (auto p = first_undeclared_lparam(e, lparams))
        throw kernel_exception(error_kind::undeclared_level_param,
                               "undeclared universe parameter '" + p->to_string() + "'");
}

bool is_rec_suffix(std::string const & s) {
    if (s == "rec")
        return true;
    if (s.rfind("rec_", 0) != 0 || s.size() == 4)
        return false;
    return std::all_of(s.begin() + 4, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void check_name(environment const & env, name const & n) {
    if (n.is_anonymous())
        throw kernel_exception(error_kind::invalid_inductive, "declarations must be named");
    if (n.get_root() == name(nested_aux_root()))
        throw kernel_exception(error_kind::duplicate_name, "'" + n.to_string() + "' uses a reserved name prefix");
    if (env.contains(n))
        throw kernel_exception(error_kind::duplicate_name, "'" + n.to_string() + "' has already been declared");
    if (n.is_string() && is_rec_suffix(n.get_string()) && !n.get_prefix().is_anonymous()) {
        constant_info const * p = env.find(n.get_prefix());
        if (p && p->is_inductive())
            throw kernel_exception(error_kind::duplicate_name,
                                   "'" + n.to_string() + "' is reserved for the recursor of '" +
                                       n.get_prefix().to_string() + "'");
    }
}

void merge_stats(check_stats * stats, type_checker const & tc) {
    if (!stats)
        return;
    stats->m_defeq_calls += tc.stats().m_defeq_calls;
    stats->m_whnf_calls += tc.stats().m_whnf_calls;
    stats->m_max_depth = std::max(stats->m_max_depth, tc.stats().m_max_depth);
}

/** \brief Check \c type (and \c value when given) of a non-inductive declaration. */
void check_typed(environment const & env, names const & lparams, expr const & type, expr const * value,
                 bool must_be_prop, check_options const & opts, check_stats * stats) {
    type_checker tc(env, opts, lparams);
    tc.ensure_type(type);
    if (must_be_prop && !tc.is_prop(type))
        throw kernel_exception(error_kind::theorem_not_prop,
                               "theorem type is not a proposition: " + to_string(type));
    if (value) {
        expr value_type = tc.check(*value);
        if (!tc.is_def_eq(value_type, type))
            throw kernel_exception(error_kind::defeq_failure,
                                   "declared type and value type differ:\n    " + to_string(type) + "\n  vs\n    " +
                                       to_string(value_type),
                                   type, value_type);
    }
    merge_stats(stats, tc);
}

struct add_decl_visitor {
    environment const & m_env;
    bool                m_check;
    check_options const & m_opts;
    check_stats *       m_stats;

    void prepare(name const * n, names const & lparams, expr const & type, expr const * value) {
        if (n)
            check_name(m_env, *n);
        check_lparams(lparams);
        check_closed(type, "type");
        check_scoped(type, lparams);
        if (value) {
            check_closed(*value, "value");
            check_scoped(*value, lparams);
        }
    }

    environment operator()(axiom_decl const & d) {
        prepare(&d.m_name, d.m_lparams, d.m_type, nullptr);
        if (m_check)
            check_typed(m_env, d.m_lparams, d.m_type, nullptr, false, m_opts, m_stats);
        return m_env.add(constant_info(d.m_name, d.m_lparams, d.m_type, axiom_val{}));
    }
    environment operator()(definition_decl const & d) {
        prepare(&d.m_name, d.m_lparams, d.m_type, &d.m_value);
        if (m_check)
            check_typed(m_env, d.m_lparams, d.m_type, &d.m_value, false, m_opts, m_stats);
        return m_env.add(constant_info(d.m_name, d.m_lparams, d.m_type, definition_val{d.m_value, d.m_hints}));
    }
    environment operator()(theorem_decl const & d) {
        prepare(&d.m_name, d.m_lparams, d.m_type, &d.m_value);
        if (m_check)
            check_typed(m_env, d.m_lparams, d.m_type, &d.m_value, true, m_opts, m_stats);
        return m_env.add(constant_info(d.m_name, d.m_lparams, d.m_type, theorem_val{d.m_value}));
    }
    environment operator()(opaque_decl const & d) {
        prepare(&d.m_name, d.m_lparams, d.m_type, &d.m_value);
        if (m_check)
            check_typed(m_env, d.m_lparams, d.m_type, &d.m_value, false, m_opts, m_stats);
        return m_env.add(constant_info(d.m_name, d.m_lparams, d.m_type, opaque_val{d.m_value}));
    }
    environment operator()(example_decl const & d) {
        prepare(nullptr, d.m_lparams, d.m_type, &d.m_value);
        if (m_check)
            check_typed(m_env, d.m_lparams, d.m_type, &d.m_value, false, m_opts, m_stats);
        return m_env;
    }
    environment operator()(quot_decl const &) { return add_quot(m_env); }
    environment operator()(inductive_decl const & d) {
        check_lparams(d.m_lparams);
        for (inductive_type const & t : d.m_types) {
            check_closed(t.m_type, "type");
            check_scoped(t.m_type, d.m_lparams);
            for (constructor_decl const & c : t.m_ctors) {
                check_closed(c.m_type, "constructor type");
                check_scoped(c.m_type, d.m_lparams);
            }
        }
        // generating recursors requires the full analysis, so inductives are always checked
        return add_inductive(m_env, d, m_opts, m_stats);
    }
};

}

environment add_decl(environment const & env, declaration const & d, bool check, check_options const & opts,
                     check_stats * stats) {
    try {
        return std::visit(add_decl_visitor{env, check, opts, stats}, d);
    } catch (kernel_exception & ex) {
        ex.add_context("while checking " + describe(d));
        throw;
    }
}

environment add_decl(environment const & env, declaration const & d, bool check) {
    return add_decl(env, d, check, check_options{}, nullptr);
}

}
