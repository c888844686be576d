// Acceptance suite: six criteria, one pass/fail line each, exit code 0
// only if every criterion holds. Criterion 2 carries a closed-form clause
// for the fifth column that the tables genuinely contradict from n = 7;
// it is checked as stated and reported honestly (see the per-n output).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "pqtrace/identities.hpp"
#include "pqtrace/json_io.hpp"
#include "pqtrace/oracle.hpp"
#include "pqtrace/triangle.hpp"

using namespace pqtrace;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int index, const std::string& name, bool pass, double secs,
            const std::vector<std::string>& notes = {}) {
  std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), secs);
  for (const auto& n : notes) std::printf("       %s\n", n.c_str());
  if (!pass) ++failures;
}

// criterion 1: whole registry at order 8 exactly; selected entries at 12
bool criterion_identities(std::vector<std::string>& notes) {
  IdentityRegistry registry;
  bool pass = true;

  const auto reports = registry.verify_all(8);
  if (reports.size() != 21) {
    notes.push_back("expected 21 registry reports, got " +
                    std::to_string(reports.size()));
    pass = false;
  }
  for (const auto& r : reports)
    if (!r.pass) {
      notes.push_back("order-8 failure: " + r.name);
      pass = false;
    }

  for (const std::string name : {"thm_sum", "eq_complement", "identity_diff",
                                 "eq_pq_diff", "cor_even", "cor_odd",
                                 "ham1_prop41", "prop_binom"}) {
    for (const auto& r : registry.verify(name, 12))
      if (!r.pass) {
        notes.push_back("order-12 failure: " + r.name + " at order " +
                        std::to_string(r.order));
        pass = false;
      }
  }
  return pass;
}

// criterion 2: table equivalence, cross relations, closed forms, N = 20
bool criterion_triangle(std::vector<std::string>& notes) {
  const int N = 20;
  bool pass = true;

  const FnkTables direct = fnk_direct(N);
  const FnkTables rec = fnk_recurrence(N);
  const FnkTables abcd = abcd_recurrence(N);

  for (int n = 1; n <= N && pass; ++n)
    for (int k = 1; k <= n; ++k)
      if (direct.f.at(n, k) != rec.f.at(n, k) ||
          direct.f.at(n, k) != abcd.f.at(n, k)) {
        notes.push_back("method disagreement at n=" + std::to_string(n) +
                        " k=" + std::to_string(k));
        pass = false;
        break;
      }

  bool relation_ok = true;
  for (int n = 1; n <= N - 1; ++n)
    for (int k = 1; k <= n; ++k)
      relation_ok = relation_ok &&
                    direct.a.at(n + 1, k) + direct.b.at(n + 1, k + 1) ==
                        direct.f.at(n, k);
  if (!relation_ok) {
    notes.push_back("a(n+1,k) + b(n+1,k+1) = f(n,k) fails");
    pass = false;
  }

  const CheckReport lemma = lemma_sys_check(direct, N);
  if (!lemma.pass()) {
    notes.push_back("four-identity system fails (" +
                    std::to_string(lemma.failures.size()) + " cases)");
    pass = false;
  }

  if (direct.f.at(2, 2) != 3 || direct.f.at(3, 3) != 4 || direct.f.at(4, 4) != 7) {
    notes.push_back("low-order spot values wrong");
    pass = false;
  }

  const CheckReport closed = closed_forms_check(direct, N);
  if (!closed.pass()) {
    pass = false;
    notes.push_back("closed-form clause failures: " +
                    std::to_string(closed.failures.size()) +
                    " (fifth-column quadratic n^2-4n+6; table values follow "
                    "n(n-3) from n=7, confirmed by all three methods and by "
                    "brute-force word enumeration)");
    for (const auto& f : closed.failures)
      notes.push_back("  " + f.what + " at n=" + std::to_string(f.n) + ": table " +
                      number_str(f.lhs) + " vs formula " + number_str(f.rhs));
  }
  return pass;
}

// criterion 3: generating-function audit at N = 12
bool criterion_genfun(std::vector<std::string>& notes) {
  const GenfunReport rep = genfun_compare(12);
  bool pass = true;

  if (!rep.self_consistent) {
    notes.push_back("series division self-consistency failed");
    pass = false;
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : rep.entries) seen.insert({e.n, e.k});
  for (int n = 3; n <= 12; ++n)
    for (int k = 2; k <= n; ++k)
      if (!seen.count({n, k})) {
        notes.push_back("report incomplete at n=" + std::to_string(n) +
                        " k=" + std::to_string(k));
        pass = false;
      }
  notes.push_back("findings (reported, not failures): " +
                  std::to_string(rep.mismatches) +
                  " coefficient mismatches against the printed identity");
  return pass;
}

// criterion 4: oracle agreement over the grid
bool criterion_oracle(std::vector<std::string>& notes) {
  const double tol = 1e-10;
  bool pass = true;
  const auto grid = default_model_grid();
  if (grid.size() < 20) {
    notes.push_back("grid smaller than 20 models");
    pass = false;
  }

  SplitMix64 rng(99991);
  double max_res = 0.0, max_spec = 0.0;
  for (const ModelSpec& spec : grid) {
    const ProjectionPair pair = build(spec);
    for (std::uint32_t len = 0; len <= 14; ++len)
      for (Letter first : {Letter::P, Letter::Q}) {
        max_res = std::max(max_res, crosscheck(pair, NCPoly(Word(first, len))));
        if (len == 0) break;
      }
    for (SpectrumKind kind : {SpectrumKind::sum, SpectrumKind::sum_shift_sq,
                              SpectrumKind::commutator_sq}) {
      const auto got = spectrum(pair, kind);
      const auto want = expected_spectrum(spec, kind);
      for (std::size_t i = 0; i < got.size(); ++i)
        max_spec = std::max(max_spec, std::abs(got[i] - want[i]));
    }
  }
  // 200 random polynomials spread over the grid
  for (int i = 0; i < 200; ++i) {
    const ModelSpec& spec = grid[i % grid.size()];
    const ProjectionPair pair = build(spec);
    max_res = std::max(max_res, crosscheck(pair, random_ncpoly(rng, 6, 14)));
  }

  notes.push_back("max crosscheck residual " + std::to_string(max_res) +
                  ", max spectrum error " + std::to_string(max_spec));
  if (max_res > tol || max_spec > tol) pass = false;
  return pass;
}

// criterion 5: Haar Monte-Carlo at d=64, 200 samples
bool criterion_haar(std::vector<std::string>& notes) {
  HaarConfig cfg;  // d=64, samples=200, max_j=4, seed=42
  const HaarReport rep = haar_demo(cfg);
  bool pass = true;
  for (const auto& r : rep.moments) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "j=%d estimate %.6f target %.6f |err| %.6f",
                  r.j, r.estimate, r.target, r.abs_error);
    notes.push_back(buf);
    if (r.abs_error > 0.05) pass = false;
  }
  if (rep.max_thm_sum_residual > 1e-10 || rep.max_thm_comm_residual > 1e-10) {
    notes.push_back("per-sample identity residuals exceed 1e-10");
    pass = false;
  }
  return pass;
}

// criterion 6: identical config gives byte-identical machine output
bool criterion_reproducibility(std::vector<std::string>& notes) {
  bool pass = true;

  IdentityRegistry registry;
  const auto render_verify = [&registry] {
    json arr = json::array();
    for (const auto& r : registry.verify_all(6)) arr.push_back(report_json(r, false));
    return arr.dump(2);
  };
  if (render_verify() != render_verify()) {
    notes.push_back("verify-all JSON differs between runs");
    pass = false;
  }

  const auto render_haar = [] {
    HaarConfig cfg;
    cfg.d = 16;
    cfg.samples = 10;
    cfg.max_j = 3;
    cfg.seed = 12345;
    return haar_json(haar_demo(cfg)).dump(2);
  };
  if (render_haar() != render_haar()) {
    notes.push_back("haar JSON differs between runs");
    pass = false;
  }

  const auto render_triangle = [] {
    const FnkTables t = fnk_direct(10);
    std::string csv;
    for (int n = 1; n <= 10; ++n)
      for (int k = 2; k <= n; ++k)
        csv += std::to_string(n) + "," + std::to_string(k) + "," +
               number_str(t.f.at(n, k)) + "\n";
    return csv;
  };
  if (render_triangle() != render_triangle()) {
    notes.push_back("triangle CSV differs between runs");
    pass = false;
  }
  return pass;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)(std::vector<std::string>&);
    double budget_s;
  };
  const Criterion criteria[] = {
      {"identity suite exact to order 8 (selected entries to 12)",
       criterion_identities, 60.0},
      {"triangle equivalence and closed forms to N=20", criterion_triangle, 10.0},
      {"generating-function audit at N=12", criterion_genfun, 10.0},
      {"oracle agreement over the model grid", criterion_oracle, 60.0},
      {"Haar Monte-Carlo against arcsine moments", criterion_haar, 120.0},
      {"byte-identical reproducibility", criterion_reproducibility, 30.0},
  };

  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    std::vector<std::string> notes;
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = c.run(notes);
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
      pass = false;
    }
    const double secs = seconds_since(t0);
    if (secs > c.budget_s) {
      notes.push_back("runtime " + std::to_string(secs) + " s exceeds budget " +
                      std::to_string(c.budget_s) + " s");
      pass = false;
    }
    report(index, c.name, pass, secs, notes);
  }

  if (failures == 0) {
    std::printf("acceptance: all criteria pass\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
