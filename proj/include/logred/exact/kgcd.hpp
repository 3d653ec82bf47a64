#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "logred/exact/frac.hpp"
#include "logred/exact/poly.hpp"
#include "logred/exact/scalars.hpp"

namespace logred {

// gcd in K[t], K = k(pi), by specializing pi at points of k. Euclid over
// k(pi) inflates coefficients badly; specializations bound the degree of
// the gcd, and a candidate whose degree meets that bound and which divides
// both inputs is the gcd. Euclid remains the fallback.

namespace kgcd {

/// The i-th sample point of k; nullopt once k is exhausted.
inline std::optional<Rational> sample_point(const Rational&, std::int64_t i) {
  const std::int64_t v = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
  return Rational(v);
}

inline std::optional<Fp> sample_point(const Fp& one, std::int64_t i) {
  if (i >= one.modulus()) return std::nullopt;
  return one.from_int(i);
}

inline std::optional<Frac<Fp, VarU>> sample_point(const Frac<Fp, VarU>& one, std::int64_t i) {
  const Fp unit = one.coeff_zero().one();
  const std::int64_t p = unit.modulus();
  std::vector<Fp> digits;
  do {
    digits.push_back(unit.from_int(i % p));
    i /= p;
  } while (i > 0);
  return Frac<Fp, VarU>(Poly<Fp>(std::move(digits), unit));
}

/// Coefficients of a nonzero f in K[t] times the lcm of their denominators.
template <class k>
std::vector<Poly<k>> clear_denominators(const Poly<Frac<k, VarPi>>& f) {
  Poly<k> L = f.lead().den();
  for (const auto& c : f.coeffs()) L = lcm(L, c.den());
  std::vector<Poly<k>> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(c.num() * (L / c.den()));
  return out;
}

template <class k>
Poly<k> specialize(const std::vector<Poly<k>>& f, const k& c) {
  std::vector<k> v;
  v.reserve(f.size());
  for (const auto& a : f) v.push_back(a.eval(c));
  return Poly<k>(std::move(v), c.zero());
}

/// r/s with deg r < n/2 and r = s * values mod prod(pi - points), or nullopt.
template <class k>
std::optional<Frac<k, VarPi>> reconstruct(const std::vector<k>& points,
                                          const std::vector<k>& values) {
  const std::size_t n = points.size();
  const k one = points.front().one();
  // Newton interpolation.
  Poly<k> interp = Poly<k>::constant(one.zero()), basis = Poly<k>::constant(one);
  for (std::size_t i = 0; i < n; ++i) {
    const k gap = values[i] - interp.eval(points[i]);
    const k b = basis.eval(points[i]);
    interp += basis * (gap / b);
    basis *= Poly<k>({-points[i], one}, one);
  }
  Poly<k> r0 = basis, r1 = interp, t0 = Poly<k>::constant(one.zero()), t1 = Poly<k>::constant(one);
  while (!r1.is_zero() && 2 * static_cast<std::size_t>(r1.degree()) >= n) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<k> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r1.is_zero()) return Frac<k, VarPi>(one.zero());
  for (const auto& c : points)
    if (t1.eval(c).is_zero()) return std::nullopt;
  return Frac<k, VarPi>(r1, t1);
}

template <class k>
bool divides(const Poly<Frac<k, VarPi>>& h, const Poly<Frac<k, VarPi>>& f) {
  return (f % h).is_zero();
}

}  // namespace kgcd

template <class k>
Poly<Frac<k, VarPi>> gcd(Poly<Frac<k, VarPi>> a, Poly<Frac<k, VarPi>> b) {
  using K = Frac<k, VarPi>;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return a.one();
  if (a.degree() < b.degree()) std::swap(a, b);

  const auto A = kgcd::clear_denominators(a), B = kgcd::clear_denominators(b);
  const k one = a.lead().coeff_zero().one();

  // Specializations of minimal degree so far.
  int best = b.degree() + 1;
  std::vector<k> points;
  std::vector<Poly<k>> images;
  auto sample = [&](std::int64_t i) {
    const auto c = kgcd::sample_point(one, i);
    if (!c) return false;
    if (A.back().eval(*c).is_zero() || B.back().eval(*c).is_zero()) return true;
    const Poly<k> g = gcd(kgcd::specialize(A, *c), kgcd::specialize(B, *c));
    if (g.degree() < best) {
      best = g.degree();
      points.clear();
      images.clear();
    }
    if (g.degree() == best) {
      points.push_back(*c);
      images.push_back(g);
    }
    return true;
  };

  std::int64_t next = 0;
  const std::size_t max_points = 64;
  for (; points.size() < 3 && next < 16; ++next)
    if (!sample(next)) break;
  if (best == 0) return a.one();

  if (!points.empty()) {
    // A pi-free candidate.
    Poly<K> h = images.front().map_coeffs_to(K::constant(one.zero()), [](const k& x) {
      return K::constant(x);
    });
    if (kgcd::divides(h, a) && kgcd::divides(h, b)) return h;

    // Coefficientwise rational reconstruction with a growing number of points.
    for (std::size_t want = 6; want <= max_points; want *= 2) {
      while (points.size() < want && next < 8 * static_cast<std::int64_t>(max_points) &&
             sample(next))
        ++next;
      if (best == 0) return a.one();
      if (points.size() < 2) break;
      std::vector<K> coeffs;
      bool ok = true;
      for (int j = 0; j <= best && ok; ++j) {
        std::vector<k> values;
        for (const auto& g : images) values.push_back(g[j]);
        auto r = kgcd::reconstruct(points, values);
        if (!r) ok = false;
        else coeffs.push_back(*r);
      }
      if (ok) {
        Poly<K> cand(std::move(coeffs), K::constant(one.zero()));
        if (cand.degree() == best && kgcd::divides(cand, a) && kgcd::divides(cand, b))
          return cand;
      }
      if (!kgcd::sample_point(one, next)) break;
    }
  }
  return euclid_gcd(std::move(a), std::move(b));
}

}  // namespace logred
