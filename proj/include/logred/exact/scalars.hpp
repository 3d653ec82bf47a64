#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "logred/errors.hpp"

namespace logred {

/// Element of Q backed by GMP.
class Rational {
 public:
  Rational() = default;
  explicit Rational(long n) : q_(n) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    q_.canonicalize();
  }

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_int(long n) const { return Rational(n); }
  Rational from_mpz(const mpz_class& n) const { return Rational(mpq_class(n)); }
  std::int64_t characteristic() const { return 0; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }

  const mpq_class& value() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero in Q");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }

  Rational inverse() const { return one() / *this; }

  int cmp(const Rational& o) const {
    int c = ::cmp(q_, o.q_);
    return (c > 0) - (c < 0);
  }

  std::string str() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

/// Element of F_p for a runtime prime p < 2^31.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::int64_t p) : v_(reduce(value, p)), p_(p) {}

  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }
  Fp from_int(long n) const { return Fp(n, p_); }
  Fp from_mpz(const mpz_class& n) const {
    mpz_class r = n % p_;
    return Fp(r.get_si(), p_);
  }
  std::int64_t characteristic() const { return p_; }
  std::int64_t modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::int64_t value() const { return v_; }
  /// Representative in (-p/2, p/2].
  std::int64_t symmetric() const { return v_ > p_ / 2 ? v_ - p_ : v_; }

  Fp operator-() const { return Fp(p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { v_ = (v_ + o.v_) % p_; return *this; }
  Fp& operator-=(const Fp& o) { v_ = (v_ - o.v_ + p_) % p_; return *this; }
  Fp& operator*=(const Fp& o) { v_ = (v_ * o.v_) % p_; return *this; }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    return a.v_ == b.v_ && a.p_ == b.p_;
  }

  Fp inverse() const {
    if (v_ == 0) throw DivisionByZero("division by zero in F_p");
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return Fp(x0, p_);
  }

  int cmp(const Fp& o) const { return (v_ > o.v_) - (v_ < o.v_); }

  std::string str() const { return std::to_string(symmetric()); }

 private:
  static std::int64_t reduce(std::int64_t value, std::int64_t p) {
    std::int64_t r = value % p;
    return r < 0 ? r + p : r;
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 1;
};

// Tower hooks. Prime fields carry no derivations; the Frobenius is the
// identity on F_p.
inline int derivation_count(const Rational&) { return 0; }
inline int derivation_count(const Fp&) { return 0; }
inline Rational derive(const Rational& x, int) { return x.zero(); }
inline Fp derive(const Fp& x, int) { return x.zero(); }
inline std::optional<Rational> pth_root(const Rational&) { return std::nullopt; }
inline std::optional<Fp> pth_root(const Fp& x) { return x; }

}  // namespace logred
