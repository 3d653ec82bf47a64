#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "logred/errors.hpp"
#include "logred/exact/poly.hpp"
#include "logred/exact/valuation.hpp"

namespace logred {

template <class F>
struct SqfFactor {
  Poly<F> factor;  // monic, squarefree
  int multiplicity;
  // Zero derivative in the main variable (irreducible factors are
  // inseparable over F).
  bool inseparable = false;
};

template <class F>
struct SqfDecomposition {
  F unit;  // leading coefficient of the input
  std::vector<SqfFactor<F>> factors;  // sorted by multiplicity
};

/// Largest e with g^e | f; infinity for f = 0. g must be monic and
/// nonconstant.
template <class F>
Valuation ord_at(const Poly<F>& f, const Poly<F>& g) {
  if (g.is_constant()) throw InvalidPlace("place polynomial is constant");
  if (!g.is_monic()) throw InvalidPlace("place polynomial is not monic");
  if (f.is_zero()) return Valuation::infinity();
  std::int64_t e = 0;
  Poly<F> cur = f;
  while (true) {
    auto [q, r] = cur.divmod(g);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++e;
  }
  return Valuation::finite(e);
}

namespace detail {

// gcd of f with every derivation of the tower K[t]: d/dt and the lifted
// derivations of the coefficient field. Their common kernel is the subring
// of p-th powers, which makes the Musser-Yun iteration exact over
// imperfect fields such as F_p(u)(pi).
template <class F>
Poly<F> gcd_with_derivations(const Poly<F>& f) {
  Poly<F> g = gcd(f, f.derivative());
  const int n = derivation_count(f.coeff_zero());
  for (int i = 0; i < n && !g.is_one(); ++i)
    g = gcd(g, derive_coefficients(f, i));
  return g;
}

template <class F>
void sqf_monic(const Poly<F>& f, int scale, std::vector<SqfFactor<F>>& out) {
  if (f.degree() <= 0) return;
  const std::int64_t p = f.characteristic();
  Poly<F> c = p == 0 ? gcd(f, f.derivative()) : gcd_with_derivations(f);
  Poly<F> w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly<F> y = gcd(w, c);
    Poly<F> z = w / y;
    if (z.degree() > 0) {
      // For squarefree z, gcd(z, z') collects the inseparable factors.
      Poly<F> insep = p == 0 ? z.one() : gcd(z, z.derivative());
      Poly<F> sep = z / insep;
      if (sep.degree() > 0) out.push_back({sep.monic(), i * scale, false});
      if (insep.degree() > 0) out.push_back({insep.monic(), i * scale, true});
    }
    w = std::move(y);
    c = c / w;
    ++i;
  }
  if (c.degree() > 0) {
    // Remaining part is a p-th power.
    auto root = pth_root(c.monic());
    if (!root)
      throw InvariantViolation("squarefree decomposition: residual part is not a p-th power");
    sqf_monic(*root, scale * static_cast<int>(p), out);
  }
}

}  // namespace detail

/// Squarefree decomposition that also handles inseparable factors:
/// f = unit * prod S_j^j with S_j pairwise coprime, monic and squarefree.
/// Factors with zero derivative are flagged inseparable.
template <class F>
SqfDecomposition<F> squarefree_decomposition_general(const Poly<F>& f) {
  if (f.is_zero()) throw DegenerateInput("squarefree decomposition of zero");
  SqfDecomposition<F> result{f.lead(), {}};
  std::vector<SqfFactor<F>> raw;
  detail::sqf_monic(f.monic(), 1, raw);
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    return a.multiplicity < b.multiplicity;
  });
  result.factors = std::move(raw);
  return result;
}

/// Squarefree decomposition in the strict sense: throws PurePower when an
/// inseparable factor occurs (characteristic p, zero derivative, not a
/// p-th power). `describe` renders the offending factor for the message.
template <class F>
SqfDecomposition<F> squarefree_decomposition(
    const Poly<F>& f,
    const std::function<std::string(const Poly<F>&)>& describe = {}) {
  auto d = squarefree_decomposition_general(f);
  for (const auto& fac : d.factors)
    if (fac.inseparable)
      throw PurePower(describe ? describe(fac.factor) : std::string("<factor>"));
  return d;
}

/// Splits a squarefree monic s into parts on which ord(f) is constant.
/// Returns (part, ord) pairs in increasing ord, with infinity last.
template <class F>
std::vector<std::pair<Poly<F>, Valuation>> split_by_order(const Poly<F>& s,
                                                          const Poly<F>& f) {
  std::vector<std::pair<Poly<F>, Valuation>> out;
  if (f.is_zero()) {
    if (s.degree() > 0) out.emplace_back(s, Valuation::infinity());
    return out;
  }
  Poly<F> rest = s;
  Poly<F> cur = f;
  std::int64_t k = 0;
  while (rest.degree() > 0) {
    Poly<F> d = gcd(rest, cur);
    Poly<F> part = rest / d;
    if (part.degree() > 0) out.emplace_back(part.monic(), Valuation::finite(k));
    rest = d;
    if (rest.degree() > 0) cur = cur / rest;
    ++k;
  }
  return out;
}

}  // namespace logred
