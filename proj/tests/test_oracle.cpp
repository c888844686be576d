#include <catch2/catch.hpp>

#include <cmath>

#include "pqtrace/identities.hpp"
#include "pqtrace/json_io.hpp"
#include "pqtrace/oracle.hpp"

using namespace pqtrace;

namespace {
constexpr double kTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("single-angle model at pi/3", "[oracle]") {
  ModelSpec spec;
  spec.angles = {kPi / 3.0};
  const ProjectionPair pair = build(spec);

  CHECK(pair.d == 2);
  CHECK(idempotency_residual(pair) <= 1e-12);
  CHECK(word_trace(pair, Word::parse("P")) == Approx(0.5).margin(kTol));
  CHECK(word_trace(pair, Word::parse("PQ")) == Approx(0.125).margin(kTol));
  CHECK(word_trace(pair, Word::parse("PQPQ")) == Approx(0.03125).margin(kTol));
  CHECK(word_trace(pair, Word::unit()) == 1.0);

  const auto sum_spec = spectrum(pair, SpectrumKind::sum);
  CHECK(sum_spec[0] == Approx(0.5).margin(kTol));
  CHECK(sum_spec[1] == Approx(1.5).margin(kTol));

  const auto comm_spec = spectrum(pair, SpectrumKind::commutator_sq);
  CHECK(comm_spec[0] == Approx(3.0 / 16.0).margin(kTol));
  CHECK(comm_spec[1] == Approx(3.0 / 16.0).margin(kTol));
}

TEST_CASE("commuting model: equal projections", "[oracle]") {
  ModelSpec spec;
  spec.mult = {1, 0, 0, 1};
  const ProjectionPair pair = build(spec);
  CHECK(pair.d == 2);
  CHECK(pair.P == pair.Q);
  for (unsigned k = 1; k <= 6; ++k) {
    CHECK(spec.m(k) == Approx(0.5).margin(kTol));
    CHECK(word_trace(pair, Word(Letter::P, 2 * k)) == Approx(0.5).margin(kTol));
  }
  const auto s = spectrum(pair, SpectrumKind::sum_shift_sq);
  CHECK(s[0] == Approx(1.0).margin(kTol));
  CHECK(s[1] == Approx(1.0).margin(kTol));
}

TEST_CASE("dimension counting with a kernel block", "[oracle]") {
  ModelSpec spec;
  spec.angles = {kPi / 6.0, kPi / 4.0};
  spec.mult = {0, 1, 0, 0};
  CHECK(spec.dimension() == 5);
  CHECK(spec.p() == Approx(3.0 / 5.0).margin(kTol));
  CHECK(spec.q() == Approx(2.0 / 5.0).margin(kTol));
  const ProjectionPair pair = build(spec);
  CHECK(idempotency_residual(pair) <= 1e-12);
}

TEST_CASE("degenerate angles are rejected", "[oracle]") {
  ModelSpec zero_angle;
  zero_angle.angles = {0.0};
  CHECK_THROWS_AS(build(zero_angle), std::invalid_argument);
  ModelSpec right_angle;
  right_angle.angles = {kPi / 2.0};
  CHECK_THROWS_AS(build(right_angle), std::invalid_argument);
  ModelSpec empty;
  CHECK_THROWS_AS(build(empty), std::invalid_argument);
}

TEST_CASE("crosscheck on handpicked polynomials", "[oracle]") {
  ModelSpec spec;
  spec.angles = {kPi / 4.0};
  const ProjectionPair pair = build(spec);

  const NCPoly sum_sq = (proj_P() + proj_Q() - NCPoly::unit()).pow(2);
  CHECK(crosscheck(pair, sum_sq) <= kTol);

  const NCPoly d2 = comm_skew().pow(2);
  CHECK(crosscheck(pair, d2) <= kTol);
  // tr(D^2) = 2m_2 - 2m_1 with m_1 = 1/4, m_2 = 1/8
  CHECK(poly_trace(pair, d2) == Approx(-0.25).margin(kTol));

  CHECK(crosscheck(pair, NCPoly::unit()) == 0.0);
}

TEST_CASE("reduction soundness: every word, every grid model", "[oracle][property]") {
  for (const ModelSpec& spec : default_model_grid()) {
    const ProjectionPair pair = build(spec);
    CHECK(idempotency_residual(pair) <= 1e-12);
    for (std::uint32_t len = 0; len <= 24; ++len)
      for (Letter first : {Letter::P, Letter::Q}) {
        const Word w(first, len);
        INFO("d=" << pair.d << " word=" << (w.empty() ? "1" : w.str()));
        CHECK(crosscheck(pair, NCPoly(w)) <= kTol);
        if (len == 0) break;
      }
  }
}

TEST_CASE("crosscheck on random polynomials over the grid", "[oracle][property]") {
  SplitMix64 rng(555);
  const auto grid = default_model_grid();
  REQUIRE(grid.size() >= 20);
  for (const ModelSpec& spec : grid) {
    const ProjectionPair pair = build(spec);
    for (int i = 0; i < 10; ++i) {
      const NCPoly x = random_ncpoly(rng, 6, 14);
      CHECK(crosscheck(pair, x) <= kTol);
    }
  }
}

TEST_CASE("positivity of traces of x* x", "[oracle][property]") {
  SplitMix64 rng(808);
  for (const ModelSpec& spec : default_model_grid(8)) {
    const ProjectionPair pair = build(spec);
    for (int i = 0; i < 20; ++i) {
      const NCPoly x = random_ncpoly(rng, 5, 10);
      const NCPoly xs_x = x.adjoint() * x;
      const MomentExpr e = trace(xs_x);
      const double val = eval(e, spec.assignment(e.max_k()));
      CHECK(val >= -kTol);
    }
  }
}

TEST_CASE("spectrum mappings across the grid", "[oracle]") {
  for (const ModelSpec& spec : default_model_grid()) {
    const ProjectionPair pair = build(spec);
    for (SpectrumKind kind : {SpectrumKind::sum, SpectrumKind::sum_shift_sq,
                              SpectrumKind::commutator_sq}) {
      const auto got = spectrum(pair, kind);
      const auto want = expected_spectrum(spec, kind);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        INFO("kind=" << spectrum_kind_name(kind) << " d=" << pair.d);
        CHECK(got[i] == Approx(want[i]).margin(kTol));
      }
    }
  }
}

TEST_CASE("registry identities hold numerically on every grid model",
          "[oracle][identities]") {
  const IdentityRegistry registry;
  const auto grid = default_model_grid(8);
  for (const ModelSpec& spec : grid) {
    const Assignment assign = spec.assignment(64);
    for (const auto& name : registry.names()) {
      const int order = registry.parametric(name)
                            ? std::max(registry.min_order(name), 3)
                            : 0;
      for (const auto& ls : registry.build_sides(name, order)) {
        double lhs, rhs;
        if (std::holds_alternative<std::pair<MomentExpr, MomentExpr>>(ls.sides)) {
          const auto& [l, r] = std::get<std::pair<MomentExpr, MomentExpr>>(ls.sides);
          lhs = eval(l, assign);
          rhs = eval(r, assign);
        } else {
          const auto& [l, r] = std::get<std::pair<NCPoly, NCPoly>>(ls.sides);
          lhs = eval(trace(l), assign);
          rhs = eval(trace(r), assign);
        }
        INFO(name << " [" << ls.label << "]");
        CHECK(lhs == Approx(rhs).margin(kTol));
      }
    }
  }
}

TEST_CASE("haar rotation demo is deterministic and numerically tight", "[oracle][haar]") {
  HaarConfig cfg;
  cfg.d = 16;
  cfg.samples = 5;
  cfg.max_j = 2;
  cfg.seed = 7;

  const HaarReport a = haar_demo(cfg);
  const HaarReport b = haar_demo(cfg);
  REQUIRE(a.moments.size() == 2);
  for (std::size_t i = 0; i < a.moments.size(); ++i) {
    CHECK(a.moments[i].estimate == b.moments[i].estimate);  // bitwise
    CHECK(a.moments[i].target ==
          Approx(i == 0 ? 0.5 : 0.375).margin(1e-15));
  }
  CHECK(a.max_thm_sum_residual <= kTol);
  CHECK(a.max_thm_comm_residual <= kTol);
  // small sample: just demand the right ballpark
  CHECK(std::abs(a.moments[0].estimate - 0.5) < 0.2);
}

TEST_CASE("haar input validation", "[oracle][haar]") {
  HaarConfig cfg;
  cfg.d = 15;
  CHECK_THROWS_AS(haar_demo(cfg), std::invalid_argument);
  cfg.d = 8;
  CHECK_THROWS_AS(haar_demo(cfg), std::invalid_argument);
  cfg.d = 16;
  cfg.samples = 0;
  CHECK_THROWS_AS(haar_demo(cfg), std::invalid_argument);
}

TEST_CASE("haar orthogonal sampler produces orthogonal matrices", "[oracle][haar]") {
  GaussianSource gauss(123);
  const auto u = haar_orthogonal(12, gauss);
  const Eigen::MatrixXd err =
      u * u.transpose() - Eigen::MatrixXd::Identity(12, 12);
  CHECK(err.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("model file parsing", "[oracle][io]") {
  const ModelSpec spec = model_from_json(
      json::parse(R"({"angles": [0.5, 1.0], "mult": [1, 0, 2, 0]})"));
  CHECK(spec.angles.size() == 2);
  CHECK(spec.mult == std::array<int, 4>{1, 0, 2, 0});
  CHECK(spec.dimension() == 7);
  // round trip through the serializer
  CHECK(model_from_json(model_json(spec)).dimension() == 7);

  CHECK_THROWS_AS(model_from_json(json::parse(R"({"angles": [0.5]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      model_from_json(json::parse(R"({"angles": [], "mult": [1, 0, 0]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      model_from_json(json::parse(R"({"angles": [2.5], "mult": [0, 0, 0, 0]})")),
      std::invalid_argument);
}

TEST_CASE("spectrum kind names", "[oracle]") {
  CHECK(spectrum_kind_from_name("sum_shift_sq") == SpectrumKind::sum_shift_sq);
  CHECK_THROWS_AS(spectrum_kind_from_name("bogus"), std::invalid_argument);
  // closed-form spectra are registered for three kinds only
  CHECK_THROWS_AS(expected_spectrum(ModelSpec{{0.5}, {0, 0, 0, 0}},
                                    SpectrumKind::angle),
                  std::invalid_argument);
}
