#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "logred/charts.hpp"
#include "logred/errors.hpp"
#include "logred/finite_field.hpp"
#include "logred/report.hpp"
#include "logred/surface.hpp"
#include "logred/tame.hpp"
#include "report_walk.hpp"

using namespace logred;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, double limit_s, const std::function<Result()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Result o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || s < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::string limit = limit_s > 0 ? " < " + std::to_string(static_cast<int>(limit_s)) + " s" : "";
  std::printf("criterion %d %s: %s; %s (%.3f s%s)\n", n, ok ? "PASS" : "FAIL", name,
              o.detail.c_str(), s, limit.c_str());
  std::fflush(stdout);
}

template <class k>
GlobalReport<k> global(const FieldDescriptor& fd, const std::string& A, const std::string& B) {
  const auto one = unit_of<k>(fd);
  return analyze_surface(EllipticSurface<k>(
      fd, WeierstrassEquation<k>::short_form(parse_polynomial<k>(A, one),
                                             parse_polynomial<k>(B, one))));
}

Json analyze_text(const std::string& base, const std::string& A, const std::string& B,
                  AnalyzeOptions o = {}) {
  return analyze(parse_surface("base = " + base + "\nA = " + A + "\nB = " + B + "\n"), o);
}

const Json* find_class(const Json& r, const std::string& place) {
  for (const auto& c : r["classes"])
    if (c["place"] == place) return &c;
  return nullptr;
}

std::string random_poly_text(std::mt19937& rng, int max_deg, int pi_percent, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-5, 5), pct(0, 99);
  std::string s = "0";
  for (int i = 0; i < terms; ++i) {
    int a = c(rng);
    if (a == 0) a = 1;
    s += " + (" + std::to_string(a) + ")";
    if (pct(rng) < pi_percent) s += "*pi";
    s += "*t^" + std::to_string(deg(rng));
  }
  return s;
}

// Kodaira suite: (A, B, place carrying the type, type).
struct KodairaCase {
  const char* A;
  const char* B;
  const char* place;
  const char* symbol;
};
const std::vector<KodairaCase> kodaira_suite{
    {"0", "1", "inf", "I0"},        {"-3", "2 + t", "t^2 + 4*t", "I1"},
    {"-3", "2 + t^5", "t", "I5"},   {"0", "t", "t", "II"},
    {"t", "0", "t", "III"},         {"0", "t^2", "t", "IV"},
    {"t^2", "t^4", "t", "I0*"},     {"-3*t^2", "2*t^3 + t^4", "t", "I1*"},
    {"-3*t^2", "2*t^3 + t^7", "t", "I4*"}, {"t^3", "t^4", "t", "IV*"},
    {"t^3", "t^5", "t", "III*"},    {"t^4", "t^5", "t", "II*"}};

}  // namespace

int main() {
  std::vector<Json> suite_reports;

  criterion(1, "component identity m = nu - epsilon", 5, [&] {
    std::set<std::string> seen;
    int classes = 0, oracle_checked = 0;
    std::string bad;
    for (const auto& c : kodaira_suite) {
      const Json r = analyze_text("Q", c.A, c.B);
      suite_reports.push_back(r);
      if (!r["failure"].is_null()) {
        bad += std::string(" failure for ") + c.symbol;
        continue;
      }
      std::vector<Json> all(r["classes"].begin(), r["classes"].end());
      all.push_back(r["infinity"]);
      for (const auto& cl : all) {
        ++classes;
        seen.insert(cl["kodaira"].get<std::string>());
        if (cl["m"].get<int>() != cl["nu"].get<int>() - cl["epsilon"].get<int>())
          bad += " m != nu - epsilon at " + cl["place"].get<std::string>();
        if (cl["irreducible"].get<bool>()) {
          ++oracle_checked;
          if (cl["oracle_kind"] != cl["reduction_kind"])
            bad += " oracle disagrees at " + cl["place"].get<std::string>();
        }
      }
      const Json* target = std::string(c.place) == "inf" ? &r["infinity"] : find_class(r, c.place);
      if (!target || (*target)["kodaira"] != c.symbol) bad += std::string(" missing ") + c.symbol;
    }
    for (const auto& c : kodaira_suite)
      if (!seen.count(c.symbol)) bad += std::string(" type not realized ") + c.symbol;
    return Result{bad.empty(), std::to_string(kodaira_suite.size()) + " surfaces, " +
                                    std::to_string(seen.size()) + " types, " +
                                    std::to_string(classes) + " fibres checked, " +
                                    std::to_string(oracle_checked) + " oracle comparisons" + bad};
  });

  criterion(2, "inseparable class t^5 - u over F5(u)", 1, [&] {
    const Json r = analyze_text("Fp(5)(u)", "0", "t^5 - u");
    suite_reports.push_back(r);
    const Json* c = find_class(r, "t^5 - u");
    if (!c) return Result{false, "class t^5 - u not found"};
    const bool ok = (*c)["nu"] == 2 && (*c)["kodaira"] == "II" &&
                    (*c)["tameness"]["state"] == "NotEtale";
    return Result{ok, "nu = " + (*c)["nu"].dump() + ", type " + (*c)["kodaira"].get<std::string>() +
                           ", tameness " + (*c)["tameness"]["state"].get<std::string>()};
  });

  criterion(3, "worked surface y^2 = x^3 + t over Q(pi) and F5(pi)", 1, [&] {
    std::string detail;
    bool ok = true;
    for (const char* base : {"Q", "Fp(5)"}) {
      const Json r = analyze_text(base, "0", "t", {true, 1});
      suite_reports.push_back(r);
      const Json* c = find_class(r, "t");
      const bool here = c && r["classes"].size() == 1 && (*c)["kodaira"] == "II" &&
                        (*c)["m"] == 1 && r["infinity"]["kodaira"] == "II*" &&
                        r["infinity"]["m"] == 9 && r["total_nu"] == 12 &&
                        r["total_nu_mod_12"] == 0 &&
                        r["big_modification_plan"] == Json::array({"t"}) &&
                        r["auxiliary_divisor"]["points"] == Json::array({"t - 1"}) &&
                        r["verdict"]["outcome"] == "LogGoodUpToModification";
      ok = ok && here;
      detail += std::string(detail.empty() ? "" : ", ") + base + " " +
                r["verdict"]["outcome"].get<std::string>();
    }
    return Result{ok, detail};
  });

  criterion(4, "global degree invariant on random surfaces", 30, [&] {
    std::mt19937 rng(2024);
    int done = 0, skipped = 0;
    std::string bad;
    std::int64_t max_nu = 0;
    auto run = [&](const FieldDescriptor& fd, int count) {
      for (int made = 0; made < count;) {
        const auto A = random_poly_text(rng, 12, 15, 3);
        const auto B = random_poly_text(rng, 12, 15, 3);
        dispatch_field(fd, [&](auto tag) {
          using k = decltype(tag);
          const auto one = unit_of<k>(fd);
          const auto a = parse_polynomial<k>(A, one), b = parse_polynomial<k>(B, one);
          if (short_discriminant<k>(a, b).is_zero()) {
            ++skipped;
            return;
          }
          const EllipticSurface<k> s(fd, WeierstrassEquation<k>::short_form(a, b));
          const auto r = analyze_surface(s);
          auto prod = s.minimal_discriminant().one();
          for (const auto& c : r.classes) prod *= c.poly.pow(static_cast<unsigned>(c.nu));
          if (r.total_nu % 12 != 0) bad += " total nu " + std::to_string(r.total_nu);
          if (prod != s.minimal_discriminant().monic()) bad += " product mismatch";
          max_nu = std::max(max_nu, r.total_nu);
          ++made;
          ++done;
        });
      }
    };
    run(FieldDescriptor::rationals(), 30);
    run(FieldDescriptor::prime_field(7), 30);
    return Result{bad.empty(), std::to_string(done) + " surfaces over Q(pi) and F7(pi), max total nu " +
                                    std::to_string(max_nu) + bad};
  });

  criterion(5, "tameness soundness on binomial products", 10, [&] {
    std::mt19937 rng(5);
    const std::vector<std::int64_t> primes{5, 7, 11};
    int done = 0, wild = 0, wrong = 0;
    std::string bad;
    while (done < 150) {
      const std::int64_t p = primes[rng() % primes.size()];
      const int nf = 1 + static_cast<int>(rng() % 3);
      std::set<std::pair<std::int64_t, std::int64_t>> slopes;
      std::string text = "1";
      bool expect_wild = false;
      for (int i = 0; i < nf; ++i) {
        std::int64_t e = 1 + static_cast<std::int64_t>(rng() % (2 * p));
        std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 9);
        const std::int64_t g = std::gcd(a, e);
        a /= g;
        e /= g;
        if (!slopes.insert({a, e}).second) continue;
        expect_wild = expect_wild || e % p == 0;
        const std::int64_t c = 1 + static_cast<std::int64_t>(rng() % (p - 1));
        text += "*(t^" + std::to_string(e) + " - " + std::to_string(c) + "*pi^" + std::to_string(a) + ")";
      }
      const auto g = parse_polynomial<Fp>(text, Fp(1, p));
      const auto v = place_tameness<Fp>(g);
      const auto expect = expect_wild ? TamenessState::Wild : TamenessState::Tame;
      if (v.state != expect) {
        ++wrong;
        bad = " e.g. p = " + std::to_string(p) + ": " + text + " gave " + to_string(v.state);
      }
      wild += expect_wild;
      ++done;
    }
    return Result{wrong == 0, std::to_string(done) + " products, " + std::to_string(wild) +
                                   " wild, " + std::to_string(wrong) + " misclassified" + bad};
  });

  criterion(6, "3-torsion tameness over Fp(pi), p in {5, 7, 11}", 20, [&] {
    std::mt19937 rng(6);
    std::string detail, bad;
    int total = 0, undetermined = 0;
    for (std::int64_t p : {5, 7, 11}) {
      int here = 0, und = 0;
      const Fp one(1, p);
      const auto pi = pi_element(one);
      while (here < 30) {
        std::uniform_int_distribution<std::int64_t> c(0, p - 1), va(0, 6), vb(0, 9);
        auto unit = [&] {
          auto u = k_to_K(Fp(1 + c(rng) % (p - 1), p));
          return u + k_to_K(Fp(c(rng), p)) * pi;
        };
        auto A = unit(), B = unit();
        for (std::int64_t i = 0, n = va(rng); i < n; ++i) A *= pi;
        for (std::int64_t i = 0, n = vb(rng); i < n; ++i) B *= pi;
        if (rng() % 6 == 0) A = A.zero();
        else if (rng() % 6 == 0) B = B.zero();
        const auto four = A.from_int(4), tw7 = A.from_int(27);
        if ((four * A * A * A + tw7 * B * B).is_zero()) continue;
        const auto t = three_torsion_tameness<Fp>(A, B);
        if (t.aggregate == TamenessState::Wild || t.aggregate == TamenessState::NotEtale)
          bad += " " + to_string(t.aggregate) + " at p = " + std::to_string(p);
        und += t.aggregate == TamenessState::Undetermined;
        ++here;
      }
      total += here;
      undetermined += und;
      detail += "p = " + std::to_string(p) + ": " + std::to_string(und) + "/" + std::to_string(here) +
                " undetermined; ";
    }
    const double rate = static_cast<double>(undetermined) / total;
    char buf[64];
    std::snprintf(buf, sizeof buf, "overall undetermined rate %.1f%% (limit 20%%)", 100 * rate);
    return Result{bad.empty() && rate <= 0.20, detail + buf + bad};
  });

  criterion(7, "3-torsion oracle over GF(q), q <= 200", 30, [&] {
    std::mt19937 rng(7);
    const std::vector<std::int64_t> qs{5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 37, 41, 43, 47,
                                       49, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
                                       107, 109, 113, 121, 125, 127, 131, 137, 139, 149,
                                       151, 157, 163, 167, 169, 173, 179, 181, 191, 193, 197, 199};
    int done = 0, with_points = 0, formula_checked = 0;
    std::string bad;
    for (std::size_t i = 0; done < 60; ++i) {
      const FiniteField F(qs[i % qs.size()]);
      std::uniform_int_distribution<std::int64_t> e(0, F.q() - 1);
      const auto A = static_cast<FiniteField::Elem>(e(rng));
      const auto B = static_cast<FiniteField::Elem>(e(rng));
      const auto d = F.add(F.mul(F.from_int(4), F.mul(A, F.mul(A, A))),
                           F.mul(F.from_int(27), F.mul(B, B)));
      if (d == 0) continue;
      const auto brute = three_torsion_oracle(F, A, B);
      if (brute != psi3_roots(F, A, B)) bad += " mismatch q = " + std::to_string(F.q());
      if (F.r() == 1) {
        // The library's symbolic psi3, evaluated over F_p.
        const Fp one(1, F.p());
        const auto t = three_torsion_tameness<Fp>(k_to_K(Fp(A, F.p())), k_to_K(Fp(B, F.p())));
        std::vector<FiniteField::Elem> roots;
        for (std::int64_t x = 0; x < F.p(); ++x)
          if (t.psi3.eval(k_to_K(Fp(x, F.p()))).is_zero())
            roots.push_back(static_cast<FiniteField::Elem>(x));
        if (roots != brute) bad += " symbolic psi3 mismatch q = " + std::to_string(F.q());
        ++formula_checked;
      }
      with_points += !brute.empty();
      ++done;
    }
    return Result{bad.empty(), std::to_string(done) + " curves, " + std::to_string(with_points) +
                                    " with rational 3-torsion x, " + std::to_string(formula_checked) +
                                    " also against the symbolic psi3" + bad};
  });

  criterion(8, "chart toolkit", 10, [&] {
    using GL = GeneratorLabel;
    std::string bad;
    const ChartMorphism node{{0, {}, {GL::Vertical}}, {0, {}, {GL::Vertical, GL::Vertical}},
                             IntMatrix{{1}, {1}}, 0};
    for (std::int64_t p : {0, 5, 7, 11}) {
      auto phi = node;
      phi.residue_characteristic = p;
      if (!kato_smoothness_check(phi).smooth) bad += " node not smooth";
    }
    for (std::int64_t p : {0, 5, 7}) {
      for (long e : {1, 2, 5, 7, 10}) {
        const ChartMorphism t{{0, {}, {GL::Vertical}},
                              {0, {}, {GL::Vertical, GL::Horizontal, GL::Horizontal}},
                              IntMatrix{{e}, {0}, {0}}, p};
        const bool expect = p == 0 || e % p != 0;
        const auto before = kato_smoothness_check(t);
        const auto after = kato_smoothness_check(remove_horizontal(t));
        if (before.smooth != expect || after.smooth != expect || after.torsion_order != e)
          bad += " tame chart e = " + std::to_string(e);
      }
    }
    const ChartMorphism zero{{1, {}, {}}, {1, {}, {}}, IntMatrix{{0}}, 5};
    if (kato_smoothness_check(zero).smooth) bad += " zero map smooth";

    std::mt19937 rng(8);
    int charts = 0, smooth = 0, snfs = 0;
    auto check_snf = [&](const IntMatrix& m) {
      const auto s = smith_normal_form(m);
      if (!(s.U * s.S * s.V == m) || abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1)
        bad += " SNF reconstruction";
      ++snfs;
    };
    for (; charts < 150; ++charts) {
      const auto phi = gen::random_chart(rng);
      const auto before = kato_smoothness_check(phi);
      const auto after = kato_smoothness_check(remove_horizontal(phi));
      if (before.smooth != after.smooth || before.torsion_order != after.torsion_order)
        bad += " removal changed the check";
      smooth += before.smooth;
      check_snf(phi.matrix);
    }
    std::uniform_int_distribution<int> dim(1, 6);
    for (int i = 0; i < 150; ++i) check_snf(gen::random_matrix(rng, dim(rng), dim(rng)));
    return Result{bad.empty(), std::to_string(charts) + " random charts (" + std::to_string(smooth) +
                                    " log smooth), " + std::to_string(snfs) +
                                    " SNF reconstructions" + bad};
  });

  criterion(9, "determinism and round trip", 0, [&] {
    std::string bad;
    std::size_t polys = 0;
    std::vector<std::string> texts;
    for (const auto& c : kodaira_suite) texts.push_back(std::string("base = Q\nA = ") + c.A + "\nB = " + c.B + "\n");
    texts.push_back("base = Fp(5)(u)\nA = 0\nB = t^5 - u\n");
    texts.push_back("base = Fp(5)\nA = 0\nB = t^5 - pi\n");
    texts.push_back("base = Fp(7)\nA = t^2\nB = t^2 + pi\nassert_cohomological_tameness = true\n");
    texts.push_back("base = Q\na1 = t\na2 = pi\na4 = t^3 - 1\na6 = t\n");
    texts.push_back("base = Fp(11)\nA = pi\nB = 1\n");
    for (const auto& text : texts) {
      const auto in = parse_surface(text);
      const auto a = render_json(analyze(in)), b = render_json(analyze(in));
      if (a != b || render_text(analyze(in)) != render_text(analyze(in))) bad += " nondeterministic";
      const Json r = Json::parse(a);
      polys += gen::printed_polynomials(r).size();
      for (const auto& f : gen::round_trip_failures(r)) bad += " " + f;
    }
    for (const auto& r : suite_reports) {
      polys += gen::printed_polynomials(r).size();
      for (const auto& f : gen::round_trip_failures(r)) bad += " " + f;
    }
    if (render_json(selftest()) != render_json(selftest())) bad += " selftest nondeterministic";
    return Result{bad.empty(), std::to_string(texts.size()) + " reports byte-identical, " +
                                    std::to_string(polys) + " printed polynomials re-parse" + bad};
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
