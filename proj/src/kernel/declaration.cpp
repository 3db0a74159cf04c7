#include "lk/declaration.hpp"
#include "lk/instantiate.hpp"

#include <cassert>

namespace lk {

int compare(reducibility_hints const & a, reducibility_hints const & b) {
    if (a.kind() == b.kind()) {
        if (a.is_regular()) {
            if (a.height() == b.height())
                return 0;
            return a.height() > b.height() ? -1 : 1;
        }
        return 0;
    }
    if (a.is_opaque())
        return 1;
    if (b.is_opaque())
        return -1;
    if (a.is_abbrev())
        return -1;
    return 1;
}

constant_info::constant_info(name const & n, names const & lparams, expr const & type, payload p)
    : m_ptr(std::make_shared<const data>(data{n, lparams, type, std::move(p)})) {}

expr const & constant_info::get_value() const {
    switch (kind()) {
    case constant_kind::Definition: return std::get<definition_val>(m_ptr->m_payload).m_value;
    case constant_kind::Theorem:    return std::get<theorem_val>(m_ptr->m_payload).m_value;
    case constant_kind::Opaque:     return std::get<opaque_val>(m_ptr->m_payload).m_value;
    default: break;
    }
    assert(false);
    static expr dummy;
    return dummy;
}

reducibility_hints constant_info::get_hints() const {
    if (is_definition())
        return to_definition().m_hints;
    return reducibility_hints::mk_opaque();
}

char const * to_string(constant_kind k) {
    switch (k) {
    case constant_kind::Axiom:       return "axiom";
    case constant_kind::Definition:  return "def";
    case constant_kind::Theorem:     return "theorem";
    case constant_kind::Opaque:      return "opaque";
    case constant_kind::Quot:        return "quot";
    case constant_kind::Inductive:   return "inductive";
    case constant_kind::Constructor: return "constructor";
    case constant_kind::Recursor:    return "recursor";
    }
    return "?";
}

names declared_names(declaration const & d) {
    return std::visit([](auto const & x) -> names {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, quot_decl>) {
            return {name("Quot"), name("Quot.mk"), name("Quot.lift"), name("Quot.ind")};
        } else if constexpr (std::is_same_v<T, inductive_decl>) {
            names r;
            for (inductive_type const & t : x.m_types) {
                r.push_back(t.m_name);
                for (constructor_decl const & c : t.m_ctors)
                    r.push_back(c.m_name);
                r.push_back(name(t.m_name, "rec"));
            }
            return r;
        } else if constexpr (std::is_same_v<T, example_decl>) {
            return {};
        } else {
            return {x.m_name};
        }
    }, d);
}

std::string describe(declaration const & d) {
    return std::visit([](auto const & x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, axiom_decl>) {
            return "axiom " + x.m_name.to_string();
        } else if constexpr (std::is_same_v<T, definition_decl>) {
            return "def " + x.m_name.to_string();
        } else if constexpr (std::is_same_v<T, theorem_decl>) {
            return "theorem " + x.m_name.to_string();
        } else if constexpr (std::is_same_v<T, opaque_decl>) {
            return "opaque " + x.m_name.to_string();
        } else if constexpr (std::is_same_v<T, quot_decl>) {
            return "quot";
        } else if constexpr (std::is_same_v<T, inductive_decl>) {
            std::string r = "inductive ";
            for (std::size_t i = 0; i < x.m_types.size(); i++) {
                if (i > 0)
                    r += ", ";
                r += x.m_types[i].m_name.to_string();
            }
            return r;
        } else {
            return "example";
        }
    }, d);
}

names referenced_constants(declaration const & d) {
    names r;
    std::visit([&](auto const & x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, axiom_decl>) {
            collect_consts(x.m_type, r);
        } else if constexpr (std::is_same_v<T, quot_decl>) {
            r.push_back(name("Eq"));
            r.push_back(name("Eq.refl"));
        } else if constexpr (std::is_same_v<T, inductive_decl>) {
            for (inductive_type const & t : x.m_types) {
                collect_consts(t.m_type, r);
                for (constructor_decl const & c : t.m_ctors)
                    collect_consts(c.m_type, r);
            }
        } else {
            collect_consts(x.m_type, r);
            collect_consts(x.m_value, r);
        }
    }, d);
    return r;
}

}
