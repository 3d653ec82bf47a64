#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logred/charts.hpp"
#include "logred/errors.hpp"
#include "logred/report.hpp"
#include "logred/weierstrass.hpp"

namespace py = pybind11;

namespace {

logred::Valuation valuation(const py::object& v) {
  if (v.is_none()) return logred::Valuation::infinity();
  if (py::isinstance<py::str>(v)) {
    if (v.cast<std::string>() != "inf") throw py::value_error("valuation must be an int or 'inf'");
    return logred::Valuation::infinity();
  }
  return logred::Valuation::finite(v.cast<std::int64_t>());
}

logred::IntMatrix to_matrix(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  logred::IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw py::value_error("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

logred::Json from_matrix(const logred::IntMatrix& m) {
  logred::Json rows = logred::Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    logred::Json row = logred::Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact core of logred; every function returns a JSON document as a string";

  static py::exception<logred::Error> error(m, "Error");
  static py::exception<logred::ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<logred::FieldError> field_error(m, "FieldError", error.ptr());
  static py::exception<logred::MathError> math_error(m, "MathError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const logred::ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const logred::FieldError& e) {
      py::set_error(field_error, e.what());
    } catch (const logred::MathError& e) {
      py::set_error(math_error, (std::string(e.kind()) + ": " + e.what()).c_str());
    } catch (const logred::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.attr("schema_version") = logred::kSchemaVersion;

  m.def(
      "analyze",
      [](const std::string& text, bool assert_tameness, std::optional<std::int64_t> aux_degree) {
        return logred::render_json(
            logred::analyze(logred::parse_surface(text), {assert_tameness, aux_degree}));
      },
      py::arg("text"), py::arg("assert_cohomological_tameness") = false,
      py::arg("aux_degree") = py::none());

  m.def(
      "local_analysis",
      [](const std::string& text, const std::string& place) {
        return logred::render_json(logred::local_report(logred::parse_surface(text), place));
      },
      py::arg("text"), py::arg("place"));

  m.def(
      "tame",
      [](const std::string& text) {
        return logred::render_json(logred::tame_report(logred::parse_surface(text)));
      },
      py::arg("text"));

  m.def(
      "torsion3",
      [](const std::string& text, std::optional<std::int64_t> oracle_q) {
        return logred::render_json(logred::torsion3_report(logred::parse_surface(text), oracle_q));
      },
      py::arg("text"), py::arg("oracle_q") = py::none());

  m.def(
      "charts",
      [](const std::string& text, bool remove_horizontal, std::optional<std::int64_t> p) {
        auto phi = logred::parse_chart(text);
        if (p) phi.residue_characteristic = *p;
        return logred::render_json(logred::charts_report(phi, remove_horizontal));
      },
      py::arg("text"), py::arg("remove_horizontal") = false, py::arg("p") = py::none());

  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<std::int64_t>>& rows) {
        const auto snf = logred::smith_normal_form(to_matrix(rows));
        logred::Json j;
        j["U"] = from_matrix(snf.U);
        j["S"] = from_matrix(snf.S);
        j["V"] = from_matrix(snf.V);
        logred::Json inv = logred::Json::array();
        for (const auto& d : snf.invariants) inv.push_back(d.get_str());
        j["invariants"] = inv;
        j["rank"] = snf.rank;
        return j.dump();
      },
      py::arg("matrix"));

  m.def(
      "kodaira_type",
      [](const py::object& v_c4, const py::object& v_c6, const py::object& v_delta) {
        return logred::kodaira_type(valuation(v_c4), valuation(v_c6), valuation(v_delta)).symbol();
      },
      py::arg("v_c4"), py::arg("v_c6"), py::arg("v_delta"));

  m.def("selftest", [] { return logred::render_json(logred::selftest()); });
}
