#pragma once

#include <optional>
#include <utility>

#include "logred/exact/poly.hpp"
#include "logred/exact/valuation.hpp"

namespace logred {

struct VarU {
  static constexpr const char* name = "u";
};
struct VarPi {
  static constexpr const char* name = "pi";
};

/// Rational function field F(z) in one named variable z (the tag). Stored as
/// num/den with den monic and gcd(num, den) = 1.
template <class F, class Var>
class Frac {
 public:
  using Base = F;
  using Ring = Poly<F>;

  explicit Frac(const F& zero) : num_(zero), den_(Ring::constant(zero.one())) {}
  explicit Frac(Ring num) : num_(std::move(num)), den_(num_.one()) {}
  Frac(Ring num, Ring den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  /// The variable z itself.
  static Frac variable(const F& one) { return Frac(Ring::x(one)); }
  static Frac constant(const F& c) { return Frac(Ring::constant(c)); }

  Frac zero() const { return Frac(num_.coeff_zero()); }
  Frac one() const { return constant(num_.coeff_zero().one()); }
  Frac from_int(long n) const { return constant(num_.coeff_zero().from_int(n)); }
  Frac from_mpz(const mpz_class& n) const {
    return constant(num_.coeff_zero().from_mpz(n));
  }
  const F& coeff_zero() const { return num_.coeff_zero(); }
  std::int64_t characteristic() const { return num_.characteristic(); }

  const Ring& num() const { return num_; }
  const Ring& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// True when the element lies in the coefficient field F.
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  F constant_value() const { return num_[0]; }

  Frac operator-() const { return Frac(-num_, den_, Normalized{}); }

  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  Frac& operator/=(const Frac& o) { return *this = *this / o; }

  friend Frac operator+(const Frac& a, const Frac& b) {
    if (a.den_.is_one() && b.den_.is_one())
      return Frac(a.num_ + b.num_, a.den_, Normalized{});
    if (a.den_ == b.den_) return Frac(a.num_ + b.num_, a.den_);
    return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return a.zero();
    if (a.den_.is_one() && b.den_.is_one())
      return Frac(a.num_ * b.num_, a.den_, Normalized{});
    // Cross-cancel before multiplying to keep sizes down.
    Ring g1 = gcd(a.num_, b.den_);
    Ring g2 = gcd(b.num_, a.den_);
    Ring n = (a.num_ / g1) * (b.num_ / g2);
    Ring d = (a.den_ / g2) * (b.den_ / g1);
    return Frac(std::move(n), std::move(d), Monicize{});
  }
  friend Frac operator/(const Frac& a, const Frac& b) { return a * b.inverse(); }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Frac inverse() const {
    if (is_zero()) throw DivisionByZero("division by zero in rational function field");
    return Frac(den_, num_, Monicize{});
  }

  /// ord_z(num) - ord_z(den).
  Valuation valuation() const {
    if (is_zero()) return Valuation::infinity();
    return Valuation::finite(num_.low_degree() - den_.low_degree());
  }

  /// Value at z = 0 of an element of nonnegative valuation.
  F value_at_zero() const {
    const F d0 = den_[0];
    if (d0.is_zero()) throw DivisionByZero("element has a pole at zero");
    return num_[0] / d0;
  }

  /// Residue of z^{-v} * x where v is the valuation of x (x nonzero).
  F leading_residue() const {
    const F n = num_[num_.low_degree()];
    const F d = den_[den_.low_degree()];
    return n / d;
  }

  int cmp(const Frac& o) const {
    int c = num_.cmp(o.num_);
    return c ? c : den_.cmp(o.den_);
  }

 private:
  struct Normalized {};
  struct Monicize {};
  Frac(Ring num, Ring den, Normalized)
      : num_(std::move(num)), den_(std::move(den)) {}
  // num, den already coprime.
  Frac(Ring num, Ring den, Monicize) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    if (!den_.is_monic()) {
      F inv = den_.lead().inverse();
      num_ *= inv;
      den_ *= inv;
    }
    if (num_.is_zero()) den_ = num_.one();
  }

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    if (num_.is_zero()) {
      den_ = num_.one();
      return;
    }
    if (!den_.is_constant()) {
      Ring g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    if (!den_.is_monic()) {
      F inv = den_.lead().inverse();
      num_ *= inv;
      den_ *= inv;
    }
  }

  Ring num_;
  Ring den_;
};

template <class F, class V>
int derivation_count(const Frac<F, V>& x) {
  return 1 + derivation_count(x.coeff_zero());
}

/// Derivation 0 is d/dz; derivation i > 0 lifts derivation i-1 of F.
template <class F, class V>
Frac<F, V> derive(const Frac<F, V>& x, int i) {
  using Ring = Poly<F>;
  Ring dn = i == 0 ? x.num().derivative() : derive_coefficients(x.num(), i - 1);
  Ring dd = i == 0 ? x.den().derivative() : derive_coefficients(x.den(), i - 1);
  if (dd.is_zero()) return Frac<F, V>(dn, x.den());
  return Frac<F, V>(dn * x.den() - x.num() * dd, x.den() * x.den());
}

template <class F, class V>
std::optional<Frac<F, V>> pth_root(const Frac<F, V>& x) {
  auto n = pth_root(x.num());
  if (!n) return std::nullopt;
  auto d = pth_root(x.den());
  if (!d) return std::nullopt;
  return Frac<F, V>(*n, *d);
}

}  // namespace logred
