#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "logred/charts.hpp"
#include "logred/exact/expr.hpp"
#include "logred/exact/tower.hpp"

namespace logred {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ExprEntry {
  std::string text;
  SourcePos pos;
};

/// Surface file:
///
///   # comment
///   base = Fp(5)          Q | Fp(p) | Fp(p)(u)
///   A = 0                 short form: A and B
///   B = t^5 - pi
///   factor = t - 1        optional, repeatable
///   assert_cohomological_tameness = true
///   aux_degree = 2
///
/// Long form uses a1, a2, a3, a4, a6 instead (a1, a2, a3 default to 0).
struct SurfaceInput {
  FieldDescriptor field = FieldDescriptor::rationals();
  bool long_form = false;
  std::map<std::string, ExprEntry> coefficients;
  std::vector<ExprEntry> factors;
  bool assert_cohomological_tameness = false;
  std::optional<std::int64_t> aux_degree;
};

/// Throws ParseError on syntax, FieldError on a bad base field or a missing
/// or mixed coefficient set. Every expression is parsed once here.
SurfaceInput parse_surface(std::string_view text);

struct AnalyzeOptions {
  bool assert_cohomological_tameness = false;  // OR-ed with the file
  std::optional<std::int64_t> aux_degree;      // overrides the file
};

/// Full pipeline. Mathematical errors become a "failure" block.
Json analyze(const SurfaceInput& input, const AnalyzeOptions& options = {});

/// Single place: a monic squarefree polynomial in t, or "inf".
Json local_report(const SurfaceInput& input, std::string_view place);

/// Per-class tameness and the aggregate.
Json tame_report(const SurfaceInput& input);

/// Division-polynomial tameness of a t-free curve; with oracle_q, also the
/// brute-force comparison over GF(q) of the reduction at pi = 0.
Json torsion3_report(const SurfaceInput& input, std::optional<std::int64_t> oracle_q);

Json charts_report(const ChartMorphism& phi, bool remove_horizontal);

/// Built-in invariant suite.
Json selftest();

std::string render_json(const Json& report);
std::string render_text(const Json& report);

/// 0 unless the report carries a failure block (then 2).
int exit_code(const Json& report);

}  // namespace logred
