#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "logred/errors.hpp"
#include "logred/exact/scalars.hpp"

namespace logred {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/// Dense univariate polynomial over a field F. Coefficient i multiplies x^i;
/// the top coefficient is nonzero unless the polynomial is zero. A zero
/// element of F is kept alongside so that every polynomial, including 0,
/// knows its coefficient field.
template <class F>
class Poly {
 public:
  using Coeff = F;

  explicit Poly(F zero) : zero_(zero.zero()) {}
  Poly(std::vector<F> coeffs, F zero)
      : c_(std::move(coeffs)), zero_(zero.zero()) {
    trim();
  }

  static Poly constant(const F& c) { return Poly({c}, c); }
  static Poly monomial(const F& c, int degree) {
    std::vector<F> v(static_cast<std::size_t>(degree) + 1, c.zero());
    v.back() = c;
    return Poly(std::move(v), c);
  }
  /// The indeterminate x.
  static Poly x(const F& one) { return monomial(one.one(), 1); }

  Poly zero() const { return Poly(zero_); }
  Poly one() const { return constant(zero_.one()); }
  Poly from_int(long n) const { return constant(zero_.from_int(n)); }
  const F& coeff_zero() const { return zero_; }
  std::int64_t characteristic() const { return zero_.characteristic(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  const F& operator[](int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_;
  }
  const F& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const std::vector<F>& coeffs() const { return c_; }

  /// Lowest index with a nonzero coefficient; kZeroDegree for 0.
  int low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return kZeroDegree;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const F& s) {
    if (s.is_zero()) { c_.clear(); return *this; }
    for (auto& a : c_) a *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return a.zero();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(r), a.zero_);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws DivisionByZero when d = 0.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly r = *this;
    if (degree() < d.degree()) return {zero(), r};
    std::vector<F> q(static_cast<std::size_t>(degree() - d.degree()) + 1, zero_);
    const F inv = d.lead().inverse();
    const int dd = d.degree();
    for (int k = r.degree(); k >= dd; --k) {
      const F coef = r.c_[k] * inv;
      q[k - dd] = coef;
      if (coef.is_zero()) continue;
      for (int j = 0; j <= dd; ++j) r.c_[k - dd + j] -= coef * d.c_[j];
    }
    r.trim();
    return {Poly(std::move(q), zero_), std::move(r)};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  bool divides(const Poly& f) const { return (f % *this).is_zero(); }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inverse();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<F> r(c_.size() - 1, zero_);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r[i - 1] = c_[i] * zero_.from_int(static_cast<long>(i));
    return Poly(std::move(r), zero_);
  }

  F eval(const F& x) const {
    F acc = zero_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// f(g(x)).
  Poly compose(const Poly& g) const {
    Poly acc = zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * g + constant(*it);
    return acc;
  }

  Poly pow(unsigned n) const {
    Poly result = one(), base = *this;
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  /// x^n * f(1/x) for n >= degree.
  Poly reversed(int n) const {
    std::vector<F> r(static_cast<std::size_t>(n) + 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
    return Poly(std::move(r), zero_);
  }

  /// f(x^e).
  Poly inflate(int e) const {
    if (is_zero()) return *this;
    std::vector<F> r(static_cast<std::size_t>(degree()) * e + 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * e] = c_[i];
    return Poly(std::move(r), zero_);
  }

  /// Coefficientwise map into another coefficient type.
  template <class G, class Fn>
  Poly<G> map_coeffs_to(const G& zero, Fn&& fn) const {
    std::vector<G> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(fn(a));
    return Poly<G>(std::move(r), zero);
  }

  template <class Fn>
  Poly map_coeffs(Fn&& fn) const {
    std::vector<F> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(fn(a));
    return Poly(std::move(r), zero_);
  }

  /// Degree first, then coefficients from the top down.
  int cmp(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree() ? -1 : 1;
    for (int i = degree(); i >= 0; --i) {
      int c = c_[i].cmp(o.c_[i]);
      if (c) return c;
    }
    return 0;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<F> c_;
  F zero_;
};

/// Monic gcd by Euclid; gcd(0, 0) = 0.
template <class F>
Poly<F> euclid_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  return euclid_gcd(std::move(a), std::move(b));
}

/// Returns (g, s, t) with s*a + t*b = g monic.
template <class F>
struct ExtendedGcd {
  Poly<F> g, s, t;
};

template <class F>
ExtendedGcd<F> extended_gcd(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = a.one(), s1 = a.zero();
  Poly<F> t0 = a.zero(), t1 = a.one();
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1); r1 = std::move(r);
    Poly<F> s2 = s0 - q * s1; s0 = std::move(s1); s1 = std::move(s2);
    Poly<F> t2 = t0 - q * t1; t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const F inv = r0.lead().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return a.zero();
  return (a / gcd(a, b) * b).monic();
}

/// Coefficientwise application of the i-th derivation of F.
template <class F>
Poly<F> derive_coefficients(const Poly<F>& f, int i) {
  return f.map_coeffs([i](const F& a) { return derive(a, i); });
}

/// p-th root in F[x] when f is a p-th power: every exponent divisible by p
/// and every coefficient a p-th power in F.
template <class F>
std::optional<Poly<F>> pth_root(const Poly<F>& f) {
  const std::int64_t p = f.characteristic();
  if (p == 0) return std::nullopt;
  if (f.is_zero()) return f;
  std::vector<F> r(static_cast<std::size_t>(f.degree() / p) + 1, f.coeff_zero());
  for (int i = 0; i <= f.degree(); ++i) {
    if (f[i].is_zero()) continue;
    if (i % p != 0) return std::nullopt;
    auto root = pth_root(f[i]);
    if (!root) return std::nullopt;
    r[i / p] = *root;
  }
  return Poly<F>(std::move(r), f.coeff_zero());
}

}  // namespace logred
