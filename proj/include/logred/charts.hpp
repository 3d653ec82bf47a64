#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace logred {

/// Dense integer matrix, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row i += c * row j
  void add_row(std::size_t i, std::size_t j, const mpz_class& c);
  /// col i += c * col j
  void add_col(std::size_t i, std::size_t j, const mpz_class& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Bareiss fraction-free elimination; square matrices only.
mpz_class determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U, S, V, V_inv;  // M = U S V, V * V_inv = 1
  std::vector<mpz_class> invariants;  // diagonal of S, min(rows, cols) entries
  std::size_t rank = 0;
};

/// U, V unimodular; S diagonal with nonnegative entries d_1 | d_2 | ...
SmithForm smith_normal_form(const IntMatrix& m);

/// Product of the invariant factors > 1 of coker(m); 1 if torsion-free.
mpz_class cokernel_torsion_order(const IntMatrix& m);

enum class GeneratorLabel { Vertical, Horizontal };

/// P = G + N^a at the level of P^gp = Z^rank + sum Z/d_i + Z^a. Coordinates
/// of P^gp are ordered: free group part, torsion part, free generators.
struct MonoidChart {
  std::int64_t group_rank = 0;
  std::vector<std::int64_t> torsion_invariants;
  std::vector<GeneratorLabel> free_generators;

  std::size_t dimension() const {
    return static_cast<std::size_t>(group_rank) + torsion_invariants.size() +
           free_generators.size();
  }
  friend bool operator==(const MonoidChart&, const MonoidChart&) = default;
};

/// Q^gp -> P^gp; column j is the image of source coordinate j.
struct ChartMorphism {
  MonoidChart source;
  MonoidChart target;
  IntMatrix matrix;
  std::int64_t residue_characteristic = 0;
};

/// Throws MalformedChart on dimension mismatches, torsion invariants that are
/// < 2 or do not divide successively, a characteristic that is neither 0 nor
/// prime, a torsion source coordinate whose image is not killed by its
/// order, or a map that is not a monoid map (group part reaching a free
/// generator, free generator with a negative free coordinate).
void validate(const ChartMorphism& phi);

struct SmoothnessResult {
  bool smooth = false;
  bool injective = false;
  mpz_class torsion_order = 1;  // torsion part of coker(Q^gp -> P^gp)
  std::size_t cokernel_rank = 0;
  std::string reason;
};

/// Injectivity of Q^gp -> P^gp and invertibility of the torsion of the
/// cokernel in the residue characteristic. Validates first.
SmoothnessResult kato_smoothness_check(const ChartMorphism& phi);

/// Drops the Horizontal free generators of the target. Throws
/// HorizontalImageNonzero if some source coordinate has a nonzero component
/// on one of them.
ChartMorphism remove_horizontal(const ChartMorphism& phi);

/// Chart file:
///
///   characteristic = 5
///   source_rank    = 0
///   source_torsion =
///   source_free    = V
///   target_rank    = 0
///   target_torsion =
///   target_free    = V H H
///   matrix =
///   5
///   0
///   0
///
/// One matrix row per line (entries separated by spaces or commas), one row
/// per target coordinate. `#` starts a comment. Missing keys default to 0 or
/// empty except `matrix`, which is required. Throws ParseError.
ChartMorphism parse_chart(std::string_view text);

std::string to_string(const MonoidChart& chart);
std::string serialize_chart(const ChartMorphism& phi);

}  // namespace logred
