#ifndef FPT_PARSE_HPP
#define FPT_PARSE_HPP

#include <memory>
#include <string_view>

#include "fpt/poly.hpp"

namespace fpt {

/// Parses a polynomial expression over the given ring.
///
/// Grammar (whitespace allowed between tokens, '^' binds tightest, then '*',
/// then '+'/'-'; no implicit multiplication):
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' natural)?
///   base   := integer | variable | '(' expr ')'
///
/// Integer literals may be arbitrarily long; they are reduced mod p.
/// Errors: SyntaxError (position-annotated), UnknownVariableError for an
/// undeclared identifier, NegativeExponentError for '^-'.
SparsePoly parse_poly(std::string_view text, std::shared_ptr<const Ring> ring);

}  // namespace fpt

#endif  // FPT_PARSE_HPP
