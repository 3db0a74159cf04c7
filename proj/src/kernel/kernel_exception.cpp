#include "lk/kernel_exception.hpp"

namespace lk {

char const * to_string(error_kind k) {
    switch (k) {
    case error_kind::deep_recursion:          return "deepRecursion";
    case error_kind::unknown_constant:        return "unknownConstant";
    case error_kind::unknown_fvar:            return "unknownFVar";
    case error_kind::type_expected:           return "typeExpected";
    case error_kind::function_expected:       return "functionExpected";
    case error_kind::defeq_failure:           return "defeqFailure";
    case error_kind::duplicate_name:          return "duplicateName";
    case error_kind::invalid_projection:      return "invalidProjection";
    case error_kind::level_arity_mismatch:    return "levelArityMismatch";
    case error_kind::non_positive_occurrence: return "nonPositiveOccurrence";
    case error_kind::universe_too_large:      return "universeTooLarge";
    case error_kind::param_mismatch:          return "paramMismatch";
    case error_kind::bad_ctor_target:         return "badCtorTarget";
    case error_kind::invalid_inductive:       return "invalidInductive";
    case error_kind::has_fvars:               return "hasFVars";
    case error_kind::has_mvars:               return "hasMVars";
    case error_kind::has_loose_bvars:         return "hasLooseBVars";
    case error_kind::undeclared_level_param:  return "undeclaredLevelParam";
    case error_kind::duplicate_level_params:  return "duplicateLevelParams";
    case error_kind::theorem_not_prop:        return "theoremTypeNotProp";
    case error_kind::quot_error:              return "quotError";
    case error_kind::unsupported_expr:        return "unsupportedExpr";
    }
    return "unknown";
}

char const * kernel_exception::what() const noexcept {
    if (m_what.empty()) {
        m_what = std::string(to_string(m_kind)) + ": " + m_msg;
        for (std::string const & c : m_trace)
            m_what += "\n  " + c;
    }
    return m_what.c_str();
}

void throw_kernel_exception(error_kind k, std::string msg) {
    throw kernel_exception(k, std::move(msg));
}

}
