#include <catch2/catch.hpp>

#include <set>

#include "pqtrace/series.hpp"
#include "pqtrace/triangle.hpp"

using namespace pqtrace;

TEST_CASE("direct tables reproduce the low-order expansions", "[triangle]") {
  const FnkTables t = fnk_direct(6);

  // n = 2: P + (PQ)^2 + (QP)^2 + Q(PQ)^2
  CHECK(t.f.at(2, 2) == 3);
  CHECK(t.a.at(2, 0) == 1);
  CHECK(t.b.at(2, 2) == 1);
  CHECK(t.c.at(2, 2) == 1);
  CHECK(t.d.at(2, 2) == 1);
  CHECK(t.a.at(2, 2) == 0);
  CHECK(t.b.at(2, 1) == 0);

  // n = 3
  CHECK(t.f.at(3, 2) == 3);
  CHECK(t.f.at(3, 3) == 4);
  CHECK(t.a.at(3, 2) == 1);
  CHECK(t.b.at(3, 3) == 2);

  // n = 4
  CHECK(t.f.at(4, 2) == 4);
  CHECK(t.f.at(4, 3) == 4);
  CHECK(t.f.at(4, 4) == 7);
  CHECK(t.a.at(4, 2) == 2);
  CHECK(t.a.at(4, 3) == 1);
  CHECK(t.b.at(4, 3) == 1);
  CHECK(t.b.at(4, 4) == 3);
  CHECK(t.c.at(4, 3) == 1);
  CHECK(t.c.at(4, 4) == 2);
  CHECK(t.d.at(4, 3) == 1);
  CHECK(t.d.at(4, 4) == 2);

  // n = 5 diagonal continues the Lucas pattern
  CHECK(t.f.at(5, 5) == 11);

  // out-of-range reads are zero
  CHECK(t.f.at(2, 3) == 0);
  CHECK(t.f.at(0, 0) == 0);
  CHECK(t.f.at(7, 2) == 0);
}

TEST_CASE("recurrence fill matches its seeds and arithmetic", "[triangle]") {
  const FnkTables t = fnk_recurrence(8);
  CHECK(t.f.at(1, 1) == 1);
  CHECK(t.f.at(2, 2) == 3);
  CHECK(t.f.at(4, 3) == 4);   // 3 + 4 - 3 + 0
  CHECK(t.f.at(6, 6) == 18);  // 11 + 7
  for (int n = 3; n <= 8; ++n) CHECK(t.f.at(n, 2) == n);
}

TEST_CASE("abcd recurrences reproduce the direct multiplicities", "[triangle]") {
  const FnkTables got = abcd_recurrence(12);
  const FnkTables want = fnk_direct(12);
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(got.a.at(n, k) == want.a.at(n, k));
      CHECK(got.b.at(n, k) == want.b.at(n, k));
      CHECK(got.c.at(n, k) == want.c.at(n, k));
      CHECK(got.d.at(n, k) == want.d.at(n, k));
    }
  CHECK(got.a.at(3, 2) == 1);  // a(2,2) + d(2,2) = 0 + 1
  CHECK(got.b.at(4, 4) == 3);  // b(3,3) + c(3,3) = 2 + 1
  // a(5,2) + b(5,3) = f(4,2)
  CHECK(got.a.at(5, 2) + got.b.at(5, 3) == want.f.at(4, 2));
  CHECK(want.f.at(4, 2) == 4);
}

TEST_CASE("the three methods agree exactly up to N=20", "[triangle]") {
  const int N = 20;
  const FnkTables direct = fnk_direct(N);
  const FnkTables rec = fnk_recurrence(N);
  const FnkTables abcd = abcd_recurrence(N);
  for (int n = 1; n <= N; ++n)
    for (int k = 1; k <= n; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(direct.f.at(n, k) == rec.f.at(n, k));
      CHECK(direct.f.at(n, k) == abcd.f.at(n, k));
    }
}

TEST_CASE("lucas diagonal", "[triangle]") {
  const FnkTables t = fnk_direct(20);
  for (int n = 3; n <= 20; ++n)
    CHECK(t.f.at(n, n) == t.f.at(n - 1, n - 1) + t.f.at(n - 2, n - 2));
}

TEST_CASE("relation between f and the a, b columns", "[triangle]") {
  const FnkTables t = fnk_direct(20);
  for (int n = 1; n <= 19; ++n)
    for (int k = 1; k <= n; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(t.a.at(n + 1, k) + t.b.at(n + 1, k + 1) == t.f.at(n, k));
    }
}

TEST_CASE("four-identity system against the direct tables", "[triangle]") {
  const FnkTables t = fnk_direct(20);
  const CheckReport rep = lemma_sys_check(t, 20);
  CHECK(rep.pass());
  CHECK(rep.checks > 150);

  // hand-checked instances
  CHECK(t.f.at(3, 3) == t.f.at(2, 2) + t.a.at(2, 1) + t.b.at(2, 2));  // 4 = 3+0+1
  CHECK(t.f.at(4, 2) == t.f.at(3, 2) - t.b.at(3, 2) + 1);             // 4 = 3-0+1
}

TEST_CASE("closed forms: columns 2..4 and the diagonal hold; column 5 "
          "diverges from the quadratic at n=7",
          "[triangle]") {
  const FnkTables t = fnk_direct(12);
  const CheckReport rep = closed_forms_check(t, 12);

  // The quadratic n^2-4n+6 for f(n,5) matches only n = 5, 6. From n = 7
  // the table value is n(n-3); every other closed form holds exactly.
  std::set<int> failing_n;
  for (const auto& f : rep.failures) {
    CHECK(f.what == "f(n,5)");
    CHECK(f.k == 5);
    CHECK(f.lhs == BigInt(f.n) * (f.n - 3));  // observed table value
    CHECK(f.rhs == BigInt(f.n) * f.n - 4 * f.n + 6);
    failing_n.insert(f.n);
  }
  CHECK(failing_n == std::set<int>{7, 8, 9, 10, 11, 12});

  CHECK(t.f.at(5, 4) == 10);  // C(5,2)
  CHECK(t.f.at(5, 5) == 11);  // 25 - 20 + 6, also the Lucas value
  CHECK(t.f.at(4, 4) == 7);
}

TEST_CASE("series division machinery", "[triangle][series]") {
  const int N = 6;
  const ZSeries one = ZSeries::monomial(N, Rational(1), 0, 0);
  const ZSeries z = ZSeries::monomial(N, Rational(1), 1, 0);
  // (1/(1-z)) * (1-z) == 1
  CHECK(ZSeries::geometric(N) * (one - z) == one);
  CHECK(zs_div(one, one - z) == ZSeries::geometric(N));

  // division demands constant term exactly 1
  CHECK_THROWS_AS(zs_div(one, z), std::domain_error);
  CHECK_THROWS_AS(zs_div(one, ZSeries::monomial(N, Rational(2), 0, 0)),
                  std::domain_error);
}

TEST_CASE("generating function audit", "[triangle][genfun]") {
  const GenfunReport rep = genfun_compare(12);
  CHECK(rep.self_consistent);

  // complete per-coefficient report over 3 <= n <= 12, 2 <= k <= n
  std::set<std::pair<int, int>> seen;
  for (const auto& e : rep.entries) seen.insert({e.n, e.k});
  for (int n = 3; n <= 12; ++n)
    for (int k = 2; k <= n; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(seen.count({n, k}) == 1);
    }

  // the printed identity disagrees with the triangle at low order; the
  // division side of row 3 is 6w^2 while the table row is 3w^2 + 4w^3
  const auto find = [&rep](int n, int k) {
    for (const auto& e : rep.entries)
      if (e.n == n && e.k == k) return e;
    FAIL("entry missing");
    return GenfunEntry{};
  };
  CHECK_FALSE(find(3, 2).match);
  CHECK(find(3, 2).series == 6);
  CHECK(find(3, 2).table == 3);
  CHECK_FALSE(find(3, 3).match);
  CHECK(find(4, 2).match);  // the k=2 column agrees from n=4 on
  CHECK(find(4, 3).series == 9);
  CHECK(find(4, 3).table == 4);
  CHECK(rep.mismatches > 0);
}

TEST_CASE("structural guards reject bad input sizes", "[triangle]") {
  CHECK_THROWS_AS(fnk_direct(1), std::invalid_argument);
  CHECK_THROWS_AS(fnk_recurrence(0), std::invalid_argument);
  CHECK_THROWS_AS(genfun_compare(2), std::invalid_argument);
  const FnkTables t = fnk_recurrence(6);
  CHECK_THROWS_AS(lemma_sys_check(t, 6), std::invalid_argument);  // needs abcd
  CHECK_THROWS_AS(closed_forms_check(fnk_direct(6), 4), std::invalid_argument);
}
