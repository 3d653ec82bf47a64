#include "logred/charts.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "logred/errors.hpp"

namespace logred {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& r : rows) {
    if (r.size() != cols_) throw MalformedChart("ragged matrix literal");
    for (long v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw MalformedChart("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const mpz_class& c) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const mpz_class& c) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t i) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

std::string IntMatrix::str() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ' ';
      out += (*this)(i, j).get_str();
    }
    out += '\n';
  }
  return out;
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw MalformedChart("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Keeps M = U S V and V_inv = V^{-1} while S is reduced.
struct SnfState {
  IntMatrix U, S, V, Vi;

  void row_add(std::size_t i, std::size_t j, const mpz_class& c) {
    S.add_row(i, j, c);
    U.add_col(j, i, -c);
  }
  void row_swap(std::size_t i, std::size_t j) {
    S.swap_rows(i, j);
    U.swap_cols(i, j);
  }
  void row_negate(std::size_t i) {
    S.negate_row(i);
    U.negate_col(i);
  }
  void col_add(std::size_t i, std::size_t j, const mpz_class& c) {
    S.add_col(i, j, c);
    V.add_row(j, i, -c);
    Vi.add_col(i, j, c);
  }
  void col_swap(std::size_t i, std::size_t j) {
    S.swap_cols(i, j);
    V.swap_rows(i, j);
    Vi.swap_cols(i, j);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SnfState st{IntMatrix::identity(R), m, IntMatrix::identity(C), IntMatrix::identity(C)};
  IntMatrix& S = st.S;
  const std::size_t n = std::min(R, C);
  std::size_t t = 0;
  for (; t < n; ++t) {
    for (;;) {
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (S(i, j) != 0 && (pi == R || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == R) goto done;
      st.row_swap(t, pi);
      st.col_swap(t, pj);

      bool clear = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (S(i, t) == 0) continue;
        mpz_class q = S(i, t) / S(t, t);
        if (q != 0) st.row_add(i, t, -q);
        if (S(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (S(t, j) == 0) continue;
        mpz_class q = S(t, j) / S(t, t);
        if (q != 0) st.col_add(j, t, -q);
        if (S(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (S(i, j) % S(t, t) != 0) {
            st.row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) st.row_negate(t);
  }
done:
  SmithForm out;
  out.rank = t;
  for (std::size_t i = 0; i < n; ++i) out.invariants.push_back(S(i, i));
  out.U = std::move(st.U);
  out.S = std::move(st.S);
  out.V = std::move(st.V);
  out.V_inv = std::move(st.Vi);
  return out;
}

mpz_class cokernel_torsion_order(const IntMatrix& m) {
  mpz_class order = 1;
  for (const auto& d : smith_normal_form(m).invariants)
    if (d > 1) order *= d;
  return order;
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void validate_chart(const MonoidChart& c, const char* which) {
  const std::string w = which;
  if (c.group_rank < 0) throw MalformedChart(w + " group rank is negative");
  for (std::size_t i = 0; i < c.torsion_invariants.size(); ++i) {
    const auto d = c.torsion_invariants[i];
    if (d < 2) throw MalformedChart(w + " torsion invariant " + std::to_string(d) + " is < 2");
    if (i > 0 && d % c.torsion_invariants[i - 1] != 0)
      throw MalformedChart(w + " torsion invariants do not divide successively");
  }
}

}  // namespace

void validate(const ChartMorphism& phi) {
  validate_chart(phi.source, "source");
  validate_chart(phi.target, "target");
  if (phi.residue_characteristic != 0 && !is_prime(phi.residue_characteristic))
    throw MalformedChart("residue characteristic " + std::to_string(phi.residue_characteristic) +
                         " is neither 0 nor prime");
  const auto& M = phi.matrix;
  if (M.rows() != phi.target.dimension() || M.cols() != phi.source.dimension())
    throw MalformedChart("matrix is " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                         ", expected " + std::to_string(phi.target.dimension()) + "x" +
                         std::to_string(phi.source.dimension()));

  const std::size_t tr = static_cast<std::size_t>(phi.target.group_rank);
  const std::size_t tt = phi.target.torsion_invariants.size();
  const std::size_t sr = static_cast<std::size_t>(phi.source.group_rank);
  const std::size_t stt = phi.source.torsion_invariants.size();
  for (std::size_t j = 0; j < M.cols(); ++j) {
    const bool group_coord = j < sr + stt;
    if (j >= sr && j < sr + stt) {
      const mpz_class d = phi.source.torsion_invariants[j - sr];
      for (std::size_t i = 0; i < M.rows(); ++i) {
        const bool killed = (i >= tr && i < tr + tt)
                                ? (d * M(i, j)) % phi.target.torsion_invariants[i - tr] == 0
                                : M(i, j) == 0;
        if (!killed)
          throw MalformedChart("image of source torsion coordinate " + std::to_string(j) +
                               " is not killed by " + d.get_str());
      }
    }
    for (std::size_t i = tr + tt; i < M.rows(); ++i) {
      if (group_coord && M(i, j) != 0)
        throw MalformedChart("source group coordinate " + std::to_string(j) +
                             " maps onto a free generator");
      if (!group_coord && M(i, j) < 0)
        throw MalformedChart("source generator " + std::to_string(j) +
                             " has a negative free-generator coordinate");
    }
  }
}

SmoothnessResult kato_smoothness_check(const ChartMorphism& phi) {
  validate(phi);
  const auto& M = phi.matrix;
  const std::size_t nq = M.cols(), np = M.rows();
  const std::size_t tr = static_cast<std::size_t>(phi.target.group_rank);
  const auto& tors = phi.target.torsion_invariants;

  // Presentation of coker(Q^gp -> P^gp): [M | relations of P^gp].
  IntMatrix C(np, nq + tors.size());
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) C(i, j) = M(i, j);
  for (std::size_t s = 0; s < tors.size(); ++s) C(tr + s, nq + s) = tors[s];

  const SmithForm snf = smith_normal_form(C);
  SmoothnessResult r;
  for (const auto& d : snf.invariants)
    if (d > 1) r.torsion_order *= d;
  r.cokernel_rank = np - snf.rank;

  // Kernel of C projected to the source must lie in the relations of Q^gp.
  const std::size_t sr = static_cast<std::size_t>(phi.source.group_rank);
  const auto& stors = phi.source.torsion_invariants;
  r.injective = true;
  for (std::size_t col = snf.rank; col < C.cols() && r.injective; ++col) {
    for (std::size_t j = 0; j < nq; ++j) {
      const mpz_class& x = snf.V_inv(j, col);
      const bool ok = (j >= sr && j < sr + stors.size()) ? x % stors[j - sr] == 0 : x == 0;
      if (!ok) {
        r.injective = false;
        break;
      }
    }
  }

  const std::int64_t p = phi.residue_characteristic;
  if (!r.injective) {
    r.reason = "not injective";
  } else if (p != 0 && r.torsion_order % p == 0) {
    r.reason = "torsion " + r.torsion_order.get_str() + " not invertible in characteristic " +
               std::to_string(p);
  } else {
    r.smooth = true;
    r.reason = "injective, torsion " + r.torsion_order.get_str() + " invertible";
  }
  return r;
}

ChartMorphism remove_horizontal(const ChartMorphism& phi) {
  validate(phi);
  const std::size_t offset =
      static_cast<std::size_t>(phi.target.group_rank) + phi.target.torsion_invariants.size();
  ChartMorphism out{phi.source, phi.target, {}, phi.residue_characteristic};
  out.target.free_generators.clear();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < phi.matrix.rows(); ++i) {
    if (i >= offset && phi.target.free_generators[i - offset] == GeneratorLabel::Horizontal) {
      for (std::size_t j = 0; j < phi.matrix.cols(); ++j)
        if (phi.matrix(i, j) != 0)
          throw HorizontalImageNonzero("source coordinate " + std::to_string(j) +
                                       " maps onto horizontal generator " +
                                       std::to_string(i - offset));
      continue;
    }
    if (i >= offset) out.target.free_generators.push_back(GeneratorLabel::Vertical);
    keep.push_back(i);
  }
  out.matrix = IntMatrix(keep.size(), phi.matrix.cols());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t j = 0; j < phi.matrix.cols(); ++j) out.matrix(r, j) = phi.matrix(keep[r], j);
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> split_fields(const std::string& line, std::size_t base_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ','))
      ++i;
    std::size_t b = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',')
      ++i;
    if (i > b) out.push_back({line.substr(b, i - b), base_column + b});
  }
  return out;
}

std::int64_t parse_int(const Token& tok, std::size_t line) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok.text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.text.size() || tok.text.empty())
    throw ParseError(line, tok.column, "'" + tok.text + "' is not an integer", {"integer"});
  return v;
}

}  // namespace

ChartMorphism parse_chart(std::string_view text) {
  ChartMorphism phi;
  bool have_matrix = false, in_matrix = false;
  std::vector<std::vector<mpz_class>> rows;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto add_row = [&](const std::vector<Token>& toks, std::size_t ln) {
    std::vector<mpz_class> row;
    for (const auto& t : toks) {
      mpz_class v;
      if (v.set_str(t.text, 10) != 0)
        throw ParseError(ln, t.column, "'" + t.text + "' is not an integer", {"integer"});
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(ln, 1, "matrix row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!in_matrix)
        throw ParseError(lineno, 1, "expected 'key = value'", {"="});
      add_row(split_fields(line, 1), lineno);
      continue;
    }
    in_matrix = false;
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = line.substr(eq + 1);
    const auto fields = split_fields(value, eq + 2);
    auto single_int = [&]() -> std::int64_t {
      if (fields.size() != 1)
        throw ParseError(lineno, eq + 2, "key '" + key + "' takes one integer", {"integer"});
      return parse_int(fields[0], lineno);
    };
    auto int_list = [&]() {
      std::vector<std::int64_t> v;
      for (const auto& f : fields) v.push_back(parse_int(f, lineno));
      return v;
    };
    auto labels = [&]() {
      std::vector<GeneratorLabel> v;
      for (const auto& f : fields) {
        if (f.text == "V") v.push_back(GeneratorLabel::Vertical);
        else if (f.text == "H") v.push_back(GeneratorLabel::Horizontal);
        else throw ParseError(lineno, f.column, "unknown generator label '" + f.text + "'", {"V", "H"});
      }
      return v;
    };
    if (key == "characteristic") phi.residue_characteristic = single_int();
    else if (key == "source_rank") phi.source.group_rank = single_int();
    else if (key == "source_torsion") phi.source.torsion_invariants = int_list();
    else if (key == "source_free") phi.source.free_generators = labels();
    else if (key == "target_rank") phi.target.group_rank = single_int();
    else if (key == "target_torsion") phi.target.torsion_invariants = int_list();
    else if (key == "target_free") phi.target.free_generators = labels();
    else if (key == "matrix") {
      if (have_matrix) throw ParseError(lineno, 1, "duplicate key 'matrix'");
      have_matrix = in_matrix = true;
      if (!fields.empty()) add_row(fields, lineno);
    } else {
      throw ParseError(lineno, 1, "unknown key '" + key + "'",
                       {"characteristic", "source_rank", "source_torsion", "source_free",
                        "target_rank", "target_torsion", "target_free", "matrix"});
    }
  }
  if (!have_matrix) throw ParseError(lineno + 1, 1, "missing key 'matrix'", {"matrix"});
  const std::size_t cols = rows.empty() ? phi.source.dimension() : rows.front().size();
  phi.matrix = IntMatrix(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) phi.matrix(i, j) = rows[i][j];
  return phi;
}

std::string to_string(const MonoidChart& chart) {
  std::string s = "Z^" + std::to_string(chart.group_rank);
  for (auto d : chart.torsion_invariants) s += " + Z/" + std::to_string(d);
  s += " + N^" + std::to_string(chart.free_generators.size());
  if (!chart.free_generators.empty()) {
    s += " (";
    for (std::size_t i = 0; i < chart.free_generators.size(); ++i)
      s += chart.free_generators[i] == GeneratorLabel::Vertical ? "V" : "H";
    s += ")";
  }
  return s;
}

std::string serialize_chart(const ChartMorphism& phi) {
  auto ints = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (auto x : v) s += " " + std::to_string(x);
    return s;
  };
  auto labels = [](const std::vector<GeneratorLabel>& v) {
    std::string s;
    for (auto x : v) s += x == GeneratorLabel::Vertical ? " V" : " H";
    return s;
  };
  std::string s;
  s += "characteristic = " + std::to_string(phi.residue_characteristic) + "\n";
  s += "source_rank = " + std::to_string(phi.source.group_rank) + "\n";
  s += "source_torsion =" + ints(phi.source.torsion_invariants) + "\n";
  s += "source_free =" + labels(phi.source.free_generators) + "\n";
  s += "target_rank = " + std::to_string(phi.target.group_rank) + "\n";
  s += "target_torsion =" + ints(phi.target.torsion_invariants) + "\n";
  s += "target_free =" + labels(phi.target.free_generators) + "\n";
  s += "matrix =\n" + phi.matrix.str();
  return s;
}

}  // namespace logred
