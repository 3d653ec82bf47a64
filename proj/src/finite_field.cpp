#include "logred/finite_field.hpp"

#include <algorithm>
#include <optional>

#include "logred/errors.hpp"

namespace logred {

namespace {

using Digits = std::vector<std::int64_t>;

void trim(Digits& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// Remainder of a by a monic b over F_p.
Digits poly_mod(Digits a, const Digits& b, std::int64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::int64_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Digits decode(std::int64_t n, std::int64_t p, int len) {
  Digits d(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < len; ++i) {
    d[static_cast<std::size_t>(i)] = n % p;
    n /= p;
  }
  return d;
}

bool irreducible(const Digits& f, std::int64_t p) {
  const int r = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= r; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t n = 0; n < count; ++n) {
      Digits g = decode(n, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(std::int64_t q, std::int64_t max_q) {
  if (q < 2) throw FieldError("field size " + std::to_string(q) + " is not a prime power");
  if (q > max_q)
    throw FieldError("field size " + std::to_string(q) + " exceeds the bound " +
                     std::to_string(max_q));
  std::int64_t p = 2;
  while (q % p != 0) ++p;
  std::int64_t rest = q;
  int r = 0;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) throw FieldError("field size " + std::to_string(q) + " is not a prime power");
  if (p < 5)
    throw FieldError("characteristic " + std::to_string(p) +
                     " is excluded: the residue characteristic must not be 2 or 3");
  p_ = p;
  r_ = r;
  q_ = q;

  for (std::int64_t n = 0;; ++n) {
    Digits f = decode(n, p, r);
    f.push_back(1);
    if (irreducible(f, p)) {
      modulus_ = f;
      break;
    }
  }

  log_.assign(static_cast<std::size_t>(q), -1);
  for (Elem g = 1; g < static_cast<Elem>(q); ++g) {
    std::vector<Elem> powers{1};
    Elem x = g;
    while (x != 1) {
      powers.push_back(x);
      x = slow_mul(x, g);
    }
    if (static_cast<std::int64_t>(powers.size()) == q - 1) {
      exp_ = std::move(powers);
      break;
    }
  }
  for (std::size_t i = 0; i < exp_.size(); ++i) log_[exp_[i]] = static_cast<std::int64_t>(i);
}

std::vector<std::int64_t> FiniteField::digits(Elem a) const { return decode(a, p_, r_); }

FiniteField::Elem FiniteField::pack(const std::vector<std::int64_t>& d) const {
  std::int64_t n = 0;
  for (std::size_t i = d.size(); i-- > 0;) n = n * p_ + d[i];
  return static_cast<Elem>(n);
}

FiniteField::Elem FiniteField::slow_mul(Elem a, Elem b) const {
  const Digits x = digits(a), y = digits(b);
  Digits prod(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
  Digits m = poly_mod(prod, modulus_, p_);
  m.resize(static_cast<std::size_t>(r_), 0);
  return pack(m);
}

FiniteField::Elem FiniteField::from_int(std::int64_t n) const {
  return static_cast<Elem>(((n % p_) + p_) % p_);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  Digits x = digits(a);
  const Digits y = digits(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p_;
  return pack(x);
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const {
  Digits x = digits(a);
  const Digits y = digits(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] - y[i] + p_) % p_;
  return pack(x);
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  const std::int64_t e = (log_[a] + log_[b]) % (q_ - 1);
  return exp_[static_cast<std::size_t>(e)];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
  return exp_[static_cast<std::size_t>((q_ - 1 - log_[a]) % (q_ - 1))];
}

bool FiniteField::is_square(Elem a) const { return a == 0 || log_[a] % 2 == 0; }

FiniteField::Elem FiniteField::sqrt(Elem a) const {
  if (a == 0) return 0;
  if (!is_square(a)) throw DegenerateInput(str(a) + " is not a square");
  return exp_[static_cast<std::size_t>(log_[a] / 2)];
}

FiniteField::Elem FiniteField::nonsquare() const {
  for (Elem a = 1; a < static_cast<Elem>(q_); ++a)
    if (!is_square(a)) return a;
  return 0;
}

std::string FiniteField::str(Elem a) const {
  if (a == 0) return "0";
  const Digits d = digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
    if (mono.empty()) out += std::to_string(d[i]);
    else if (d[i] == 1) out += mono;
    else out += std::to_string(d[i]) + "*" + mono;
  }
  return out;
}

namespace {

// GF(q^2) = GF(q)[w], w^2 = d.
struct Quad {
  FiniteField::Elem re, im;
  friend bool operator==(const Quad&, const Quad&) = default;
};

struct QuadArith {
  const FiniteField& F;
  FiniteField::Elem d;

  Quad add(Quad a, Quad b) const { return {F.add(a.re, b.re), F.add(a.im, b.im)}; }
  Quad sub(Quad a, Quad b) const { return {F.sub(a.re, b.re), F.sub(a.im, b.im)}; }
  Quad mul(Quad a, Quad b) const {
    return {F.add(F.mul(a.re, b.re), F.mul(d, F.mul(a.im, b.im))),
            F.add(F.mul(a.re, b.im), F.mul(a.im, b.re))};
  }
  Quad inv(Quad a) const {
    // (re - im w) / (re^2 - d im^2)
    const auto norm = F.sub(F.mul(a.re, a.re), F.mul(d, F.mul(a.im, a.im)));
    const auto ni = F.inv(norm);
    return {F.mul(a.re, ni), F.mul(F.neg(a.im), ni)};
  }
  Quad lift(FiniteField::Elem a) const { return {a, 0}; }
};

struct Point {
  bool infinity = false;
  Quad x{0, 0}, y{0, 0};
};

Point add_points(const QuadArith& Q, FiniteField::Elem A, const Point& P, const Point& R) {
  if (P.infinity) return R;
  if (R.infinity) return P;
  const Quad zero{0, 0};
  Quad lambda;
  if (P.x == R.x) {
    if (Q.add(P.y, R.y) == zero) return Point{true};
    const Quad three = Q.lift(Q.F.from_int(3));
    const Quad num = Q.add(Q.mul(three, Q.mul(P.x, P.x)), Q.lift(A));
    lambda = Q.mul(num, Q.inv(Q.add(P.y, P.y)));
  } else {
    lambda = Q.mul(Q.sub(R.y, P.y), Q.inv(Q.sub(R.x, P.x)));
  }
  Point S;
  S.x = Q.sub(Q.sub(Q.mul(lambda, lambda), P.x), R.x);
  S.y = Q.sub(Q.mul(lambda, Q.sub(P.x, S.x)), P.y);
  return S;
}

}  // namespace

std::vector<FiniteField::Elem> three_torsion_oracle(const FiniteField& F, FiniteField::Elem A,
                                                    FiniteField::Elem B) {
  const auto A3 = F.mul(A, F.mul(A, A));
  const auto disc = F.add(F.mul(F.from_int(4), A3), F.mul(F.from_int(27), F.mul(B, B)));
  if (disc == 0) throw SingularCurve("y^2 = x^3 + Ax + B is singular over GF(" +
                                     std::to_string(F.q()) + ")");
  const QuadArith Q{F, F.nonsquare()};
  std::vector<FiniteField::Elem> xs;
  for (FiniteField::Elem x = 0; x < static_cast<FiniteField::Elem>(F.q()); ++x) {
    const auto rhs = F.add(F.add(F.mul(x, F.mul(x, x)), F.mul(A, x)), B);
    Point P;
    P.x = Q.lift(x);
    if (F.is_square(rhs)) P.y = Q.lift(F.sqrt(rhs));
    else P.y = {0, F.sqrt(F.mul(rhs, F.inv(Q.d)))};
    const Point P2 = add_points(Q, A, P, P);
    if (P2.infinity) continue;  // 2-torsion
    if (add_points(Q, A, P2, P).infinity) xs.push_back(x);
  }
  return xs;
}

std::vector<FiniteField::Elem> psi3_roots(const FiniteField& F, FiniteField::Elem A,
                                          FiniteField::Elem B) {
  std::vector<FiniteField::Elem> roots;
  for (FiniteField::Elem x = 0; x < static_cast<FiniteField::Elem>(F.q()); ++x) {
    const auto x2 = F.mul(x, x);
    auto v = F.mul(F.from_int(3), F.mul(x2, x2));
    v = F.add(v, F.mul(F.from_int(6), F.mul(A, x2)));
    v = F.add(v, F.mul(F.from_int(12), F.mul(B, x)));
    v = F.sub(v, F.mul(A, A));
    if (v == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace logred
