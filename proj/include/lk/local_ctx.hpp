#pragma once
#include "lk/expr.hpp"

#include <map>

namespace lk {

class local_decl {
    fvar_id             m_id;
    name                m_user_name;
    expr                m_type;
    binder_info         m_bi;
    std::optional<expr> m_value;
public:
    local_decl(fvar_id id, name const & n, expr const & type, binder_info bi, std::optional<expr> value)
        : m_id(id), m_user_name(n), m_type(type), m_bi(bi), m_value(std::move(value)) {}
    fvar_id get_id() const { return m_id; }
    name const & get_user_name() const { return m_user_name; }
    expr const & get_type() const { return m_type; }
    binder_info get_info() const { return m_bi; }
    std::optional<expr> const & get_value() const { return m_value; }
    bool is_let() const { return m_value.has_value(); }
};

/** \brief Free-variable declarations, ordered by identifier (which is creation order). */
class local_ctx {
    std::map<std::uint64_t, local_decl> m_decls;
public:
    void add(local_decl const & d);
    local_decl const * find(fvar_id id) const;
    /** \brief Throws kernel_exception when \c id is not declared. */
    local_decl const & get(fvar_id id) const;
    bool contains(fvar_id id) const { return find(id) != nullptr; }
    std::size_t size() const { return m_decls.size(); }
    bool empty() const { return m_decls.empty(); }

    /** \brief Pi telescope over \c fvars (innermost last). Let-declared fvars become Let binders. */
    expr mk_pi(exprs const & fvars, expr const & body) const;
    expr mk_lambda(exprs const & fvars, expr const & body) const;
};

}
