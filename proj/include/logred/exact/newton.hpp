#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "logred/errors.hpp"
#include "logred/exact/frac.hpp"
#include "logred/exact/poly.hpp"

namespace logred {

/// Reduced fraction num/den with den > 0.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t n, std::int64_t d) {
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  Fraction operator-() const { return {-num, den}; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

struct NewtonSegment {
  int start_index;
  std::int64_t start_valuation;
  int end_index;
  std::int64_t end_valuation;
  Fraction slope;           // change in valuation per unit index
  Fraction root_valuation;  // -slope; valuation of the roots on this segment
  int length;               // horizontal length = number of roots
  /// Ramification index forced on the roots: denominator of the slope.
  std::int64_t denominator() const { return slope.den; }
};

struct NewtonPolygon {
  std::vector<std::pair<int, std::int64_t>> vertices;
  std::vector<NewtonSegment> segments;
};

/// pi-adic Newton polygon of g in K[t], K = k(pi): the lower convex hull of
/// (i, v_pi(g_i)). Slopes strictly increase along the segments.
template <class k>
NewtonPolygon newton_polygon(const Poly<Frac<k, VarPi>>& g) {
  std::vector<std::pair<int, std::int64_t>> pts;
  for (int i = 0; i <= g.degree(); ++i) {
    auto v = g[i].valuation();
    if (v.is_finite()) pts.emplace_back(i, v.value());
  }
  if (pts.size() < 2)
    throw DegenerateInput("Newton polygon needs at least two nonzero coefficients");

  // Andrew's monotone chain, lower hull, collinear points dropped.
  std::vector<std::pair<int, std::int64_t>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // cross((b - a), (pt - a)) <= 0 means b is not strictly below.
      const __int128 cross =
          static_cast<__int128>(b.first - a.first) * (pt.second - a.second) -
          static_cast<__int128>(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }

  NewtonPolygon np;
  np.vertices = hull;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const auto& a = hull[s];
    const auto& b = hull[s + 1];
    NewtonSegment seg;
    seg.start_index = a.first;
    seg.start_valuation = a.second;
    seg.end_index = b.first;
    seg.end_valuation = b.second;
    seg.slope = Fraction::make(b.second - a.second, b.first - a.first);
    seg.root_valuation = -seg.slope;
    seg.length = b.first - a.first;
    np.segments.push_back(seg);
  }
  return np;
}

/// Residual polynomial of a segment: sum over lattice points
/// (start + j*e, start_val + j*h) on the segment of the residue of
/// g_i / pi^{val} times y^j; coefficients off the segment contribute 0.
template <class k>
Poly<k> residual_polynomial(const Poly<Frac<k, VarPi>>& g, const NewtonSegment& seg) {
  const std::int64_t e = seg.slope.den;
  const std::int64_t h = seg.slope.num;
  const k zero = g.coeff_zero().coeff_zero();
  const std::int64_t steps = seg.length / e;
  std::vector<k> coeffs(static_cast<std::size_t>(steps) + 1, zero);
  for (std::int64_t j = 0; j <= steps; ++j) {
    const int idx = static_cast<int>(seg.start_index + j * e);
    const auto& a = g[idx];
    const auto v = a.valuation();
    if (v.is_finite() && v.value() == seg.start_valuation + j * h)
      coeffs[j] = a.leading_residue();
  }
  return Poly<k>(std::move(coeffs), zero);
}

/// True iff the residual polynomial of the segment is separable over k.
template <class k>
bool residual_separability(const Poly<Frac<k, VarPi>>& g, const NewtonSegment& seg) {
  const Poly<k> r = residual_polynomial(g, seg);
  const Poly<k> dr = r.derivative();
  if (dr.is_zero()) return r.degree() <= 0;
  return gcd(r, dr).is_one();
}

}  // namespace logred
