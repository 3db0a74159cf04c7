#include "lk/local_ctx.hpp"
#include "lk/instantiate.hpp"
#include "lk/kernel_exception.hpp"

namespace lk {

void local_ctx::add(local_decl const & d) {
    m_decls.insert_or_assign(d.get_id().m_idx, d);
}

local_decl const * local_ctx::find(fvar_id id) const {
    auto it = m_decls.find(id.m_idx);
    return it == m_decls.end() ? nullptr : &it->second;
}

local_decl const & local_ctx::get(fvar_id id) const {
    if (local_decl const * d = find(id))
        return *d;
    throw kernel_exception(error_kind::unknown_fvar, "unknown free variable #" + std::to_string(id.m_idx));
}

static expr mk_binding(local_ctx const & lctx, exprs const & fvars, expr const & body, bool is_pi) {
    expr r = abstract(body, fvars);
    for (std::size_t i = fvars.size(); i-- > 0;) {
        local_decl const & d = lctx.get(fvars[i].fvar());
        expr type = abstract(d.get_type(), i, fvars.data());
        if (d.is_let()) {
            expr value = abstract(*d.get_value(), i, fvars.data());
            r = mk_let(d.get_user_name(), type, value, r);
        } else if (is_pi) {
            r = lk::mk_pi(d.get_user_name(), type, r, d.get_info());
        } else {
            r = lk::mk_lambda(d.get_user_name(), type, r, d.get_info());
        }
    }
    return r;
}

expr local_ctx::mk_pi(exprs const & fvars, expr const & body) const {
    return mk_binding(*this, fvars, body, true);
}

expr local_ctx::mk_lambda(exprs const & fvars, expr const & body) const {
    return mk_binding(*this, fvars, body, false);
}

}
