#pragma once

// Shared reader for the textual expression grammar:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)* ('/' scalar)*
//   factor := rational | 'q' ['^' qexp] | 'X[' ints ']'
//           | 'D(' ints ')' [pow] | name [pow] | '(' expr ')'
//           | '[' factor+ ']'
//   qexp   := int | '{' int ['/' 2] '}'
//   pow    := '^' (int | '{' int '}')
//
// The reader only tokenizes and expands parentheses; each consumer decides
// which factor kinds it accepts. A bracket is a bar-normalized ordered
// product; it is kept unexpanded because the normalization needs the
// consumer's commutation data.

#include <string>
#include <string_view>
#include <vector>

#include "qcluster/qcoeff.hpp"

namespace qcluster::text {

struct Factor {
  enum class Kind { Torus, Plucker, Name, Bracket };
  Kind kind = Kind::Name;
  std::vector<int> ints;  // X[...] exponents or D(...) subset
  std::string name;
  int exp = 1;
  std::vector<Factor> inner;  // bracket contents
};

struct Term {
  QCoeff scalar = QCoeff(1);
  std::vector<Factor> factors;  // in the order written
};

using Expr = std::vector<Term>;

Expr parse_expression(std::string_view text);

/// Renders a scalar prefix for a term: "" for 1, "-" for -1, "3*q^{1/2}*" ...
/// Multi-term scalars are parenthesized.
std::string scalar_prefix(const QCoeff& c, bool has_factors);

}  // namespace qcluster::text
