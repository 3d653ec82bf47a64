#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "logred/exact/tower.hpp"

namespace logred {

// Polynomial expression language shared by the input files and the CLI:
//
//   input  := expr [ "/" expr ]        division only at top level
//   expr   := term { ("+" | "-") term }
//   term   := unary { "*" unary }
//   unary  := ("+" | "-") unary | power
//   power  := atom [ "^" integer ]
//   atom   := integer | "t" | "pi" | "u" | "(" expr ")"
//
// `u` is only available over Fp(p)(u). The denominator must be a nonzero
// element of K (no t).

/// Where an expression sits inside a larger document, for error positions.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

template <class k>
PolyK<k> parse_polynomial(std::string_view text, const k& one, SourcePos at = {});

/// Canonical rendering. Coefficients are cleared to integers; a common
/// denominator in pi and u is emitted as a top-level "/", so the output is
/// accepted by parse_polynomial and evaluates to the same value.
template <class k>
std::string to_string(const PolyK<k>& f, std::string_view var = "t");

template <class k>
std::string to_string(const KField<k>& a);

/// Polynomials over the residue field k (residual polynomials).
template <class k>
std::string to_string(const Poly<k>& f, std::string_view var);

std::string to_string(const Rational& a);
std::string to_string(const Fp& a);
std::string to_string(const FpUField& a);

/// Parses "Q", "Fp(p)" or "Fp(p)(u)".
FieldDescriptor parse_field_descriptor(std::string_view text, SourcePos at = {});

}  // namespace logred
