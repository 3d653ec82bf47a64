#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "logred/errors.hpp"
#include "logred/exact/frac.hpp"
#include "logred/exact/kgcd.hpp"
#include "logred/exact/poly.hpp"
#include "logred/exact/scalars.hpp"

namespace logred {

// Residue fields k of the base DVR.
using QField = Rational;
using FpField = Fp;
using FpUField = Frac<Fp, VarU>;

/// K = k(pi), the discretely valued field.
template <class k>
using KField = Frac<k, VarPi>;

/// K[t], coordinate ring of the affine chart of P^1_K.
template <class k>
using PolyK = Poly<KField<k>>;

/// Which residue field k the tower is built on.
class FieldDescriptor {
 public:
  enum class Kind { Rationals, PrimeField, RationalFunctionOverPrimeField };

  static FieldDescriptor rationals() { return FieldDescriptor(Kind::Rationals, 0); }
  static FieldDescriptor prime_field(std::int64_t p) {
    return FieldDescriptor(Kind::PrimeField, p);
  }
  static FieldDescriptor rational_function_field(std::int64_t p) {
    return FieldDescriptor(Kind::RationalFunctionOverPrimeField, p);
  }

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }

  /// Input-syntax spelling: Q, Fp(5), Fp(5)(u).
  std::string str() const {
    switch (kind_) {
      case Kind::Rationals: return "Q";
      case Kind::PrimeField: return "Fp(" + std::to_string(p_) + ")";
      case Kind::RationalFunctionOverPrimeField:
        return "Fp(" + std::to_string(p_) + ")(u)";
    }
    return {};
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  FieldDescriptor(Kind kind, std::int64_t p) : kind_(kind), p_(p) {
    if (kind != Kind::Rationals) validate_prime(p);
  }

  static void validate_prime(std::int64_t p) {
    if (p == 2 || p == 3)
      throw FieldError("characteristic " + std::to_string(p) +
                       " is excluded: the residue characteristic must not be 2 or 3");
    if (p < 2 || p >= (std::int64_t{1} << 31))
      throw FieldError("characteristic " + std::to_string(p) + " is out of range");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw FieldError(std::to_string(p) + " is not prime");
  }

  Kind kind_;
  std::int64_t p_;
};

/// The unit element of k, which carries p for the prime-field cases.
template <class k>
k unit_of(const FieldDescriptor& fd);

template <>
inline Rational unit_of<Rational>(const FieldDescriptor&) {
  return Rational(1);
}
template <>
inline Fp unit_of<Fp>(const FieldDescriptor& fd) {
  return Fp(1, fd.characteristic());
}
template <>
inline FpUField unit_of<FpUField>(const FieldDescriptor& fd) {
  return FpUField::constant(Fp(1, fd.characteristic()));
}

template <class k>
KField<k> k_to_K(const k& a) {
  return KField<k>::constant(a);
}

template <class k>
KField<k> pi_element(const k& one) {
  return KField<k>::variable(one);
}

/// Calls fn with a default-constructed tag of the residue field type.
template <class Fn>
decltype(auto) dispatch_field(const FieldDescriptor& fd, Fn&& fn) {
  switch (fd.kind()) {
    case FieldDescriptor::Kind::Rationals: return fn(Rational{});
    case FieldDescriptor::Kind::PrimeField: return fn(Fp{});
    case FieldDescriptor::Kind::RationalFunctionOverPrimeField: return fn(FpUField(Fp(0, fd.characteristic())));
  }
  return fn(Rational{});
}

}  // namespace logred
