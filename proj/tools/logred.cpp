#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logred/charts.hpp"
#include "logred/errors.hpp"
#include "logred/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw logred::FieldError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const logred::Json& report, bool text) {
  std::cout << (text ? logred::render_text(report) : logred::render_json(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logarithmic good reduction of elliptic surfaces over k(pi)"};
  app.require_subcommand(1);
  bool text = false, json = false;

  std::string file, place, chart_file;
  bool assert_tameness = false, remove_h = false;
  std::optional<std::int64_t> aux_degree, oracle_q, chart_p;

  auto add_format = [&](CLI::App* sub) {
    auto* fmt = sub->add_option_group("format");
    fmt->add_flag("--json", json, "JSON report (default)");
    fmt->add_flag("--text", text, "aligned text report");
    fmt->require_option(0, 1);
  };

  auto* analyze = app.add_subcommand("analyze", "full pipeline on a surface file");
  analyze->add_option("file", file, "surface file")->required();
  analyze->add_flag("--assert-cohomological-tameness", assert_tameness,
                    "assert cohomological tameness of the surface");
  analyze->add_option("--aux-degree", aux_degree, "degree of the auxiliary divisor")
      ->check(CLI::PositiveNumber);
  add_format(analyze);

  auto* local = app.add_subcommand("local", "fibre at a single place");
  local->add_option("file", file, "surface file")->required();
  local->add_option("--place", place, "monic squarefree polynomial in t, or inf")->required();
  add_format(local);

  auto* tame = app.add_subcommand("tame", "tameness of the discriminant classes");
  tame->add_option("file", file, "surface file")->required();
  add_format(tame);

  auto* torsion3 = app.add_subcommand("torsion3", "3-division polynomial tameness");
  torsion3->add_option("file", file, "surface file with t-free A, B")->required();
  torsion3->add_option("--oracle-q", oracle_q, "compare with enumeration over GF(q)");
  add_format(torsion3);

  auto* charts = app.add_subcommand("charts", "Kato smoothness of a chart morphism");
  charts->add_option("chartfile", chart_file, "chart file")->required();
  charts->add_flag("--remove-horizontal", remove_h, "drop horizontal generators");
  charts->add_option("--p", chart_p, "residue characteristic (overrides the file)");
  add_format(charts);

  auto* selftest = app.add_subcommand("selftest", "built-in invariant suite");
  add_format(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      const auto in = logred::parse_surface(read_file(file));
      const auto r = logred::analyze(in, {assert_tameness, aux_degree});
      emit(r, text);
      return logred::exit_code(r);
    }
    if (*local) {
      emit(logred::local_report(logred::parse_surface(read_file(file)), place), text);
      return 0;
    }
    if (*tame) {
      emit(logred::tame_report(logred::parse_surface(read_file(file))), text);
      return 0;
    }
    if (*torsion3) {
      emit(logred::torsion3_report(logred::parse_surface(read_file(file)), oracle_q), text);
      return 0;
    }
    if (*charts) {
      auto phi = logred::parse_chart(read_file(chart_file));
      if (chart_p) phi.residue_characteristic = *chart_p;
      emit(logred::charts_report(phi, remove_h), text);
      return 0;
    }
    if (*selftest) {
      const auto r = logred::selftest();
      emit(r, text);
      return r["failed"].get<std::int64_t>() == 0 ? 0 : 2;
    }
  } catch (const logred::MathError& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const logred::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  }
  return 1;
}
