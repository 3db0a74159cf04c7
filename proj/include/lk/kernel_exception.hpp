#pragma once
#include "lk/expr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace lk {

enum class error_kind {
    deep_recursion,
    unknown_constant,
    unknown_fvar,
    type_expected,
    function_expected,
    defeq_failure,
    duplicate_name,
    invalid_projection,
    level_arity_mismatch,
    non_positive_occurrence,
    universe_too_large,
    param_mismatch,
    bad_ctor_target,
    invalid_inductive,
    has_fvars,
    has_mvars,
    has_loose_bvars,
    undeclared_level_param,
    duplicate_level_params,
    theorem_not_prop,
    quot_error,
    unsupported_expr,
};

/** \brief Stable camelCase name of an error kind, as printed in reports. */
char const * to_string(error_kind k);

class kernel_exception : public std::exception {
    error_kind               m_kind;
    std::string              m_msg;
    std::vector<std::string> m_trace;
    std::optional<std::pair<expr, expr>> m_pair;
    mutable std::string      m_what;
public:
    kernel_exception(error_kind k, std::string msg) : m_kind(k), m_msg(std::move(msg)) {}
    kernel_exception(error_kind k, std::string msg, expr const & a, expr const & b)
        : m_kind(k), m_msg(std::move(msg)), m_pair(std::make_pair(a, b)) {}

    error_kind kind() const { return m_kind; }
    std::string const & message() const { return m_msg; }
    /** \brief Context lines, innermost first. */
    std::vector<std::string> const & trace() const { return m_trace; }
    /** \brief The offending pair of a defeq failure. */
    std::optional<std::pair<expr, expr>> const & pair() const { return m_pair; }
    void add_context(std::string ctx) { m_trace.push_back(std::move(ctx)); m_what.clear(); }
    char const * what() const noexcept override;
};

[[noreturn]] void throw_kernel_exception(error_kind k, std::string msg);

}
