#pragma once
#include "lk/expr.hpp"

#include <string>
#include <vector>

namespace lk {

/** \brief One constructor step of a Nat literal: 0 is Nat.zero, n+1 is Nat.succ applied to the literal n.
    Throws std::invalid_argument on other input. */
expr nat_lit_ctor_view(expr const & e);
/** \brief Full unary expansion Nat.succ (... (Nat.succ Nat.zero)). Exponential in the bit size; tiny inputs only. */
expr nat_lit_unary(expr const & e);
/** \brief String.mk applied to the List Char of the literal's code points.
    Throws std::invalid_argument on other input. */
expr str_lit_view(expr const & e);
/** \brief Inverse of str_lit_view: a String.mk/List.cons/Char.ofNat term back to a literal. */
std::optional<expr> fold_str_lit(expr const & e);

/** \brief Decode UTF-8; invalid bytes are mapped to U+FFFD. */
std::vector<std::uint32_t> utf8_decode(std::string const & s);
std::string utf8_encode(std::vector<std::uint32_t> const & cps);

}
