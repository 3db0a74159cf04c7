#pragma once
#include "lk/expr.hpp"
#include "lk/local_ctx.hpp"

#include <ostream>
#include <string>

namespace lk {

/** \brief Print in a Lean-like surface syntax. Free variables are named from \c lctx when given. */
void print_expr(std::ostream & out, expr const & e, local_ctx const * lctx = nullptr);
std::string to_string(expr const & e, local_ctx const * lctx = nullptr);
std::ostream & operator<<(std::ostream & out, expr const & e);

}
