#include "logred/exact/expr.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <type_traits>
#include <vector>

namespace logred {
namespace {

// ---------------------------------------------------------------------------
// Printing: clear every denominator to get integer polynomials in
// (main variable, pi, u).

using Exps = std::array<int, 3>;

struct MPoly {
  std::map<Exps, mpz_class, std::greater<Exps>> terms;

  void add(const Exps& e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  bool is_one() const {
    return terms.size() == 1 && terms.begin()->first == Exps{0, 0, 0} &&
           terms.begin()->second == 1;
  }
  MPoly shifted(int main, int pi) const {
    MPoly r;
    for (const auto& [e, c] : terms) r.add({e[0] + main, e[1] + pi, e[2]}, c);
    return r;
  }
};

std::string render(const MPoly& m, std::string_view var) {
  if (m.terms.empty()) return "0";
  const std::array<std::string, 3> names{std::string(var), "pi", "u"};
  std::string out;
  bool first = true;
  for (const auto& [e, c] : m.terms) {
    const bool neg = sgn(c) < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    mpz_class a = abs(c);
    std::string mono;
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string render_fraction(const MPoly& num, const MPoly& den, std::string_view var) {
  if (den.is_one()) return render(num, var);
  auto wrap = [&](const MPoly& m, bool products) {
    std::string s = render(m, var);
    bool paren = m.terms.size() > 1 || (products && s.find('*') != std::string::npos);
    return paren ? "(" + s + ")" : s;
  };
  return wrap(num, false) + "/" + wrap(den, true);
}

struct ClearedK {
  std::vector<MPoly> nums;  // in the u slot only
  MPoly den;
};

ClearedK clear_k(const std::vector<Rational>& xs) {
  mpz_class l = 1;
  for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.value().get_den_mpz_t());
  ClearedK r;
  for (const auto& x : xs) {
    MPoly m;
    m.add({0, 0, 0}, x.value().get_num() * (l / x.value().get_den()));
    r.nums.push_back(std::move(m));
  }
  r.den.add({0, 0, 0}, l);
  return r;
}

ClearedK clear_k(const std::vector<Fp>& xs) {
  ClearedK r;
  for (const auto& x : xs) {
    MPoly m;
    m.add({0, 0, 0}, mpz_class(static_cast<long>(x.symmetric())));
    r.nums.push_back(std::move(m));
  }
  r.den.add({0, 0, 0}, 1);
  return r;
}

MPoly u_poly(const Poly<Fp>& f) {
  MPoly m;
  for (int i = 0; i <= f.degree(); ++i)
    m.add({0, 0, i}, mpz_class(static_cast<long>(f[i].symmetric())));
  return m;
}

ClearedK clear_k(const std::vector<FpUField>& xs) {
  if (xs.empty()) return {};
  Poly<Fp> l = xs.front().num().one();
  for (const auto& x : xs) l = lcm(l, x.den());
  ClearedK r;
  for (const auto& x : xs) r.nums.push_back(u_poly(x.num() * (l / x.den())));
  r.den = u_poly(l);
  return r;
}

// Coefficients of K[var] (or a single K element) cleared to (num, den).
template <class k>
std::pair<MPoly, MPoly> clear_K(const std::vector<KField<k>>& coeffs, const k& kzero) {
  Poly<k> lpi = Poly<k>::constant(kzero.one());
  for (const auto& c : coeffs) lpi = lcm(lpi, c.den());
  std::vector<Poly<k>> nums;
  for (const auto& c : coeffs) nums.push_back(c.num() * (lpi / c.den()));
  std::vector<k> flat;
  for (const auto& n : nums)
    for (int j = 0; j <= n.degree(); ++j) flat.push_back(n[j]);
  for (int j = 0; j <= lpi.degree(); ++j) flat.push_back(lpi[j]);
  ClearedK ck = clear_k(flat);
  MPoly num, den;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < nums.size(); ++i)
    for (int j = 0; j <= nums[i].degree(); ++j)
      for (const auto& [e, c] : ck.nums[idx++].shifted(static_cast<int>(i), j).terms)
        num.add(e, c);
  for (int j = 0; j <= lpi.degree(); ++j)
    for (const auto& [e, c] : ck.nums[idx++].shifted(0, j).terms) den.add(e, c);
  return {num, den};
}

// ---------------------------------------------------------------------------
// Parsing.

template <class k>
class ExprParser {
 public:
  ExprParser(std::string_view text, const k& one, SourcePos at)
      : text_(text), one_(one), at_(at) {}

  PolyK<k> parse_input() {
    PolyK<k> num = parse_expr();
    skip_ws();
    if (peek() == '/') {
      const std::size_t slash = pos_;
      ++pos_;
      PolyK<k> den = parse_expr();
      if (den.degree() > 0) fail(slash, "denominator must not involve t");
      if (den.is_zero()) fail(slash, "denominator is zero");
      num = num * den.lead().inverse();
    }
    skip_ws();
    if (pos_ < text_.size())
      fail(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'",
           {"+", "-", "*", "^", "/", "end of expression"});
    return num;
  }

 private:
  using K = KField<k>;

  [[noreturn]] void fail(std::size_t at, const std::string& msg,
                         std::vector<std::string> expected = {}) const {
    throw ParseError(at_.line, at_.column + at, msg, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  PolyK<k> constant(const K& c) const { return PolyK<k>::constant(c); }

  PolyK<k> parse_expr() {
    PolyK<k> acc = parse_term();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '+') { ++pos_; acc += parse_term(); }
      else if (c == '-') { ++pos_; acc -= parse_term(); }
      else return acc;
    }
  }

  PolyK<k> parse_term() {
    PolyK<k> acc = parse_unary();
    while (true) {
      skip_ws();
      if (peek() != '*') return acc;
      ++pos_;
      acc *= parse_unary();
    }
  }

  PolyK<k> parse_unary() {
    skip_ws();
    if (peek() == '-') { ++pos_; return -parse_unary(); }
    if (peek() == '+') { ++pos_; return parse_unary(); }
    return parse_power();
  }

  PolyK<k> parse_power() {
    PolyK<k> base = parse_atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail(pos_, "exponent must be a nonnegative integer literal", {"integer"});
    const mpz_class e = read_integer();
    if (e > 100000) fail(start, "exponent too large");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  mpz_class read_integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  PolyK<k> parse_atom() {
    skip_ws();
    const std::size_t start = pos_;
    const char c = peek();
    const K zeroK = k_to_K(one_.zero());
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return constant(zeroK.from_mpz(read_integer()));
    }
    if (c == '(') {
      ++pos_;
      PolyK<k> inner = parse_expr();
      skip_ws();
      if (peek() != ')') fail(pos_, "unbalanced parenthesis", {")"});
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "t") return PolyK<k>::x(k_to_K(one_));
      if (name == "pi") return constant(pi_element(one_));
      if (name == "u") {
        if constexpr (std::is_same_v<k, FpUField>) {
          return constant(k_to_K(FpUField::variable(one_.coeff_zero().one())));
        } else {
          fail(start, "variable u requires base Fp(p)(u)");
        }
      }
      fail(start, "unknown variable '" + std::string(name) + "'", {"t", "pi", "u"});
    }
    if (c == '\0') fail(pos_, "unexpected end of expression", {"integer", "variable", "("});
    fail(pos_, "unexpected character '" + std::string(1, c) + "'",
         {"integer", "variable", "("});
  }

  std::string_view text_;
  k one_;
  SourcePos at_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class k>
PolyK<k> parse_polynomial(std::string_view text, const k& one, SourcePos at) {
  return ExprParser<k>(text, one, at).parse_input();
}

template <class k>
std::string to_string(const PolyK<k>& f, std::string_view var) {
  const k kzero = f.coeff_zero().coeff_zero();
  auto [num, den] = clear_K<k>(f.coeffs(), kzero);
  return render_fraction(num, den, var);
}

template <class k>
std::string to_string(const KField<k>& a) {
  auto [num, den] = clear_K<k>({a}, a.coeff_zero());
  return render_fraction(num, den, "t");
}

template <class k>
std::string to_string(const Poly<k>& f, std::string_view var) {
  if (f.is_zero()) return "0";
  ClearedK ck = clear_k(f.coeffs());
  MPoly num;
  for (std::size_t i = 0; i < ck.nums.size(); ++i)
    for (const auto& [e, c] : ck.nums[i].shifted(static_cast<int>(i), 0).terms)
      num.add(e, c);
  return render_fraction(num, ck.den, var);
}

std::string to_string(const Rational& a) {
  ClearedK ck = clear_k(std::vector<Rational>{a});
  return render_fraction(ck.nums[0], ck.den, "t");
}
std::string to_string(const Fp& a) { return std::to_string(a.symmetric()); }
std::string to_string(const FpUField& a) {
  ClearedK ck = clear_k(std::vector<FpUField>{a});
  return render_fraction(ck.nums[0], ck.den, "t");
}

FieldDescriptor parse_field_descriptor(std::string_view text, SourcePos at) {
  std::string s;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s += text[i];
      cols.push_back(i);
    }
  }
  auto col = [&](std::size_t i) {
    return at.column + (i < cols.size() ? cols[i] : text.size());
  };
  if (s == "Q") return FieldDescriptor::rationals();
  if (s.rfind("Fp(", 0) != 0)
    throw ParseError(at.line, col(0), "unknown base field '" + s + "'",
                     {"Q", "Fp(p)", "Fp(p)(u)"});
  std::size_t i = 3;
  std::size_t digits = i;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits == i) throw ParseError(at.line, col(i), "expected characteristic", {"integer"});
  if (digits - i > 10) throw FieldError("characteristic out of range");
  const std::int64_t p = std::stoll(s.substr(i, digits - i));
  if (digits >= s.size() || s[digits] != ')')
    throw ParseError(at.line, col(digits), "expected ')'", {")"});
  const std::string rest = s.substr(digits + 1);
  if (rest.empty()) return FieldDescriptor::prime_field(p);
  if (rest == "(u)") return FieldDescriptor::rational_function_field(p);
  throw ParseError(at.line, col(digits + 1), "unexpected text after base field", {"(u)", "end of line"});
}

#define LOGRED_INSTANTIATE(K)                                                      \
  template PolyK<K> parse_polynomial<K>(std::string_view, const K&, SourcePos);   \
  template std::string to_string<K>(const PolyK<K>&, std::string_view);           \
  template std::string to_string<K>(const KField<K>&);                            \
  template std::string to_string<K>(const Poly<K>&, std::string_view);

LOGRED_INSTANTIATE(Rational)
LOGRED_INSTANTIATE(Fp)
LOGRED_INSTANTIATE(FpUField)

#undef LOGRED_INSTANTIATE

}  // namespace logred
