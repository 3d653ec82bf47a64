#pragma once

#include <string>

#include "logred/exact/expr.hpp"
#include "logred/exact/tower.hpp"

namespace th {

using namespace logred;

inline Rational q_one() { return Rational(1); }
inline Fp fp_one(std::int64_t p) { return Fp(1, p); }
inline FpUField fu_one(std::int64_t p) {
  return unit_of<FpUField>(FieldDescriptor::rational_function_field(p));
}

inline PolyK<Rational> Q(const std::string& s) { return parse_polynomial<Rational>(s, q_one()); }
inline PolyK<Fp> F(std::int64_t p, const std::string& s) {
  return parse_polynomial<Fp>(s, fp_one(p));
}
inline PolyK<FpUField> FU(std::int64_t p, const std::string& s) {
  return parse_polynomial<FpUField>(s, fu_one(p));
}

template <class k>
std::string str(const PolyK<k>& f) {
  return to_string<k>(f);
}

}  // namespace th
