#pragma once
#include "lk/expr.hpp"

#include <memory>
#include <variant>

namespace lk {

enum class reducibility_hints_kind : std::uint8_t { Opaque, Abbrev, Regular };

class reducibility_hints {
    reducibility_hints_kind m_kind;
    std::uint32_t           m_height;
    reducibility_hints(reducibility_hints_kind k, std::uint32_t h) : m_kind(k), m_height(h) {}
public:
    static reducibility_hints mk_opaque() { return {reducibility_hints_kind::Opaque, 0}; }
    static reducibility_hints mk_abbrev() { return {reducibility_hints_kind::Abbrev, 0}; }
    static reducibility_hints mk_regular(std::uint32_t h) { return {reducibility_hints_kind::Regular, h}; }
    reducibility_hints_kind kind() const { return m_kind; }
    bool is_regular() const { return m_kind == reducibility_hints_kind::Regular; }
    bool is_abbrev() const { return m_kind == reducibility_hints_kind::Abbrev; }
    bool is_opaque() const { return m_kind == reducibility_hints_kind::Opaque; }
    std::uint32_t height() const { return m_height; }
    friend bool operator==(reducibility_hints const & a, reducibility_hints const & b) {
        return a.m_kind == b.m_kind && a.m_height == b.m_height;
    }
};

/** \brief Negative when the constant with hints \c a should be unfolded first, positive for \c b, zero for both. */
int compare(reducibility_hints const & a, reducibility_hints const & b);

enum class quot_kind : std::uint8_t { Type, Ctor, Lift, Ind };

enum class constant_kind : std::uint8_t { Axiom, Definition, Theorem, Opaque, Quot, Inductive, Constructor, Recursor };

struct axiom_val {};

struct definition_val {
    expr               m_value;
    reducibility_hints m_hints;
};

struct theorem_val {
    expr m_value;
};

struct opaque_val {
    expr m_value;
};

struct quot_val {
    quot_kind m_kind;
};

struct inductive_val {
    unsigned m_nparams = 0;
    unsigned m_nindices = 0;
    /** \brief Types of the mutual block as declared by the user (auxiliary nested types excluded). */
    names    m_all;
    names    m_ctors;
    /** \brief Number of auxiliary types created for nested occurrences. */
    unsigned m_nnested = 0;
    bool     m_is_rec = false;
    bool     m_is_reflexive = false;
    bool     m_is_prop = false;
};

struct constructor_val {
    name     m_induct;
    unsigned m_cidx = 0;
    unsigned m_nparams = 0;
    unsigned m_nfields = 0;
};

struct recursor_rule {
    name     m_ctor;
    unsigned m_nfields = 0;
    expr     m_rhs;
};

struct recursor_val {
    names    m_all;
    unsigned m_nparams = 0;
    unsigned m_nindices = 0;
    unsigned m_nmotives = 0;
    unsigned m_nminors = 0;
    std::vector<recursor_rule> m_rules;
    bool     m_k = false;

    unsigned major_idx() const { return m_nparams + m_nmotives + m_nminors + m_nindices; }
    unsigned first_index_idx() const { return m_nparams + m_nmotives + m_nminors; }
};

/** \brief A typed global constant. Cheap to copy. */
class constant_info {
public:
    using payload = std::variant<axiom_val, definition_val, theorem_val, opaque_val, quot_val,
                                 inductive_val, constructor_val, recursor_val>;
private:
    struct data {
        name    m_name;
        names   m_lparams;
        expr    m_type;
        payload m_payload;
    };
    std::shared_ptr<const data> m_ptr;
public:
    constant_info(name const & n, names const & lparams, expr const & type, payload p);

    name const & get_name() const { return m_ptr->m_name; }
    names const & get_lparams() const { return m_ptr->m_lparams; }
    unsigned get_num_lparams() const { return static_cast<unsigned>(m_ptr->m_lparams.size()); }
    expr const & get_type() const { return m_ptr->m_type; }
    constant_kind kind() const { return static_cast<constant_kind>(m_ptr->m_payload.index()); }
    payload const & get_payload() const { return m_ptr->m_payload; }

    bool is_axiom() const { return kind() == constant_kind::Axiom; }
    bool is_definition() const { return kind() == constant_kind::Definition; }
    bool is_theorem() const { return kind() == constant_kind::Theorem; }
    bool is_opaque() const { return kind() == constant_kind::Opaque; }
    bool is_quot() const { return kind() == constant_kind::Quot; }
    bool is_inductive() const { return kind() == constant_kind::Inductive; }
    bool is_constructor() const { return kind() == constant_kind::Constructor; }
    bool is_recursor() const { return kind() == constant_kind::Recursor; }

    /** \brief Value of a definition, theorem or opaque constant. */
    bool has_value() const { return is_definition() || is_theorem() || is_opaque(); }
    expr const & get_value() const;
    /** \brief Hints of a definition; other constants are treated as opaque. */
    reducibility_hints get_hints() const;

    definition_val const & to_definition() const { return std::get<definition_val>(m_ptr->m_payload); }
    quot_val const & to_quot() const { return std::get<quot_val>(m_ptr->m_payload); }
    inductive_val const & to_inductive() const { return std::get<inductive_val>(m_ptr->m_payload); }
    constructor_val const & to_constructor() const { return std::get<constructor_val>(m_ptr->m_payload); }
    recursor_val const & to_recursor() const { return std::get<recursor_val>(m_ptr->m_payload); }
};

char const * to_string(constant_kind k);

/* Declarations: requests to extend an environment. */

struct axiom_decl {
    name  m_name;
    names m_lparams;
    expr  m_type;
};

struct definition_decl {
    name               m_name;
    names              m_lparams;
    expr               m_type;
    expr               m_value;
    reducibility_hints m_hints = reducibility_hints::mk_opaque();
};

struct theorem_decl {
    name  m_name;
    names m_lparams;
    expr  m_type;
    expr  m_value;
};

struct opaque_decl {
    name  m_name;
    names m_lparams;
    expr  m_type;
    expr  m_value;
};

struct quot_decl {};

struct constructor_decl {
    name m_name;
    expr m_type;
};

struct inductive_type {
    name m_name;
    expr m_type;
    std::vector<constructor_decl> m_ctors;
};

struct inductive_decl {
    names    m_lparams;
    unsigned m_nparams = 0;
    std::vector<inductive_type> m_types;
};

struct example_decl {
    names m_lparams;
    expr  m_type;
    expr  m_value;
};

using declaration = std::variant<axiom_decl, definition_decl, theorem_decl, opaque_decl, quot_decl,
                                 inductive_decl, example_decl>;

/** \brief Names of the constants a declaration introduces, including generated ones (ctors, recursors, Quot.*). */
names declared_names(declaration const & d);
/** \brief A short human-readable label, e.g. "def Nat.add" or "inductive Even, Odd". */
std::string describe(declaration const & d);
/** \brief Constants referenced by the declaration's types and values. */
names referenced_constants(declaration const & d);

}
