#pragma once
// Registry of the trace and operator identities satisfied by a pair of
// orthogonal projections. Every entry is checked with exact rational
// arithmetic: pass means the residual is identically zero, not small.
//
// Identities stated with the scalar i are restated over the rationals
// through D = PQ - QP and explicit (-1)^j signs, using C = iD and hence
// tr(C^{2j}) = (-1)^j tr(D^{2j}).

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pqtrace/dihedral.hpp"
#include "pqtrace/ncpoly.hpp"
#include "pqtrace/rational.hpp"
#include "pqtrace/trace.hpp"

namespace pqtrace {

struct UnknownIdentityError : std::invalid_argument {
  explicit UnknownIdentityError(const std::string& name)
      : std::invalid_argument("unknown identity name: " + name) {}
};

struct OrderCapError : std::invalid_argument {
  OrderCapError(int order, int cap)
      : std::invalid_argument("order " + std::to_string(order) +
                              " exceeds configured cap " + std::to_string(cap)) {}
};

/// One side pair of an identity, either at operator level (NCPoly) or at
/// trace level (MomentExpr). Grouped entries carry several labeled pairs.
struct LabeledSides {
  std::string label;
  std::variant<std::pair<NCPoly, NCPoly>, std::pair<MomentExpr, MomentExpr>> sides;
};

struct ResidualPart {
  std::string label;
  std::variant<NCPoly, MomentExpr> value;

  bool is_zero() const {
    if (std::holds_alternative<NCPoly>(value))
      return std::get<NCPoly>(value).is_zero();
    return std::get<MomentExpr>(value).is_zero();
  }

  std::string str() const {
    if (std::holds_alternative<NCPoly>(value)) return std::get<NCPoly>(value).str();
    return std::get<MomentExpr>(value).str();
  }
};

struct IdentityReport {
  std::string name;
  int order = 0;
  bool pass = false;
  std::vector<ResidualPart> residuals;  // reported in full, never truncated
  double wall_ms = 0.0;
};

class IdentityRegistry {
 public:
  /// Default runtime guard; configurable per instance.
  int order_cap = 12;

  IdentityRegistry() { register_all(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
  }

  bool has(const std::string& name) const {
    return index_.count(name) != 0;
  }

  /// Resolve an alias to its canonical registry name.
  std::string canonical(const std::string& name) const {
    return entry(name).name;
  }

  std::string description(const std::string& name) const {
    return entry(name).description;
  }

  bool parametric(const std::string& name) const {
    return entry(name).parametric;
  }

  int min_order(const std::string& name) const { return entry(name).min_order; }

  /// Sides of every sub-identity of `name` at one order (ignored for
  /// non-parametric entries). Exposed for cross-checks in tests.
  std::vector<LabeledSides> build_sides(const std::string& name, int order) const {
    const Entry& e = entry(name);
    if (e.parametric) check_order(order, e);
    return e.build(order);
  }

  /// Check one entry at one specific order.
  IdentityReport verify_at(const std::string& name, int order) const {
    const Entry& e = entry(name);
    if (e.parametric) check_order(order, e);
    const auto t0 = std::chrono::steady_clock::now();
    IdentityReport rep;
    rep.name = e.name;
    rep.order = e.parametric ? order : 0;
    rep.pass = true;
    for (const auto& ls : e.build(order)) {
      ResidualPart part;
      part.label = ls.label;
      if (std::holds_alternative<std::pair<NCPoly, NCPoly>>(ls.sides)) {
        const auto& [lhs, rhs] = std::get<std::pair<NCPoly, NCPoly>>(ls.sides);
        part.value = lhs - rhs;
      } else {
        const auto& [lhs, rhs] = std::get<std::pair<MomentExpr, MomentExpr>>(ls.sides);
        part.value = lhs - rhs;
      }
      rep.pass = rep.pass && part.is_zero();
      rep.residuals.push_back(std::move(part));
    }
    rep.wall_ms = elapsed_ms(t0);
    return rep;
  }

  /// Check one entry at every applicable order up to `max_order`,
  /// one report per order. Non-parametric entries yield a single report.
  std::vector<IdentityReport> verify(const std::string& name, int max_order) const {
    const Entry& e = entry(name);
    if (!e.parametric) return {verify_at(name, 0)};
    check_order(max_order, e);
    std::vector<IdentityReport> out;
    for (int j = e.min_order; j <= max_order; ++j) out.push_back(verify_at(name, j));
    return out;
  }

  /// One aggregated report per registry entry, covering all applicable
  /// orders up to `max_order`. On pass the residual list is empty; on
  /// failure it holds every nonzero residual found.
  std::vector<IdentityReport> verify_all(int max_order) const {
    std::vector<IdentityReport> out;
    for (const auto& e : entries_) {
      const auto t0 = std::chrono::steady_clock::now();
      IdentityReport agg;
      agg.name = e.name;
      agg.order = e.parametric ? max_order : 0;
      agg.pass = true;
      const int lo = e.parametric ? e.min_order : 0;
      const int hi = e.parametric ? max_order : lo;
      for (int j = lo; j <= hi; ++j) {
        IdentityReport rep = verify_at(e.name, j);
        if (!rep.pass) {
          agg.pass = false;
          for (auto& part : rep.residuals) {
            if (!part.is_zero()) {
              part.label = "order " + std::to_string(j) +
                           (part.label.empty() ? "" : ": " + part.label);
              agg.residuals.push_back(std::move(part));
            }
          }
        }
      }
      agg.wall_ms = elapsed_ms(t0);
      out.push_back(std::move(agg));
    }
    return out;
  }

 private:
  struct Entry {
    std::string name;
    std::vector<std::string> aliases;
    std::string description;
    bool parametric = true;
    int min_order = 1;
    std::function<std::vector<LabeledSides>(int)> build;
  };

  static double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
  }

  void check_order(int order, const Entry& e) const {
    if (order > order_cap) throw OrderCapError(order, order_cap);
    if (order < e.min_order)
      throw std::invalid_argument("order " + std::to_string(order) + " below first applicable order " +
                                  std::to_string(e.min_order) + " for " + e.name);
  }

  const Entry& entry(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownIdentityError(name);
    return entries_[it->second];
  }

  void add(Entry e) {
    index_[e.name] = entries_.size();
    for (const auto& a : e.aliases) index_[a] = entries_.size();
    entries_.push_back(std::move(e));
  }

  static LabeledSides op(std::string label, NCPoly lhs, NCPoly rhs) {
    return {std::move(label), std::make_pair(std::move(lhs), std::move(rhs))};
  }
  static LabeledSides mom(std::string label, MomentExpr lhs, MomentExpr rhs) {
    return {std::move(label), std::make_pair(std::move(lhs), std::move(rhs))};
  }

  void register_all();

  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
};

inline void IdentityRegistry::register_all() {
  const NCPoly I = NCPoly::unit();
  const NCPoly P = proj_P();
  const NCPoly Q = proj_Q();
  const NCPoly R = sym_R();
  const NCPoly S = sym_S();
  const NCPoly A = kato_A();
  const NCPoly B = kato_B();
  const NCPoly D = comm_skew();
  const NCPoly cP = I - P;
  const NCPoly cQ = I - Q;
  const NCPoly RS = R * S;
  const NCPoly angle = P * Q * P;  // PQP

  const auto sign = [](int j) { return j % 2 == 0 ? Rational(1) : Rational(-1); };
  const auto pow4 = [](int j) { return Rational(BigInt(1) << (2 * j)); };

  // 1. (R+S)^{2n} against the binomial closed form, at operator level.
  add({"prop_binom",
       {},
       "(R+S)^{2n} = C(2n,n) + sum_k C(2n,n-k)((RS)^k + (SR)^k)",
       true,
       1,
       [](int n) {
         return std::vector<LabeledSides>{
             op("(R+S)^{2n} vs closed form",
                to_projection_poly(binomial_expand(static_cast<unsigned>(n))),
                to_projection_poly(binomial_closed_form(static_cast<unsigned>(n))))};
       }});

  // 2. Even moments of R+S.
  add({"cor_even",
       {},
       "tr[(R+S)^{2j}] = C(2j,j) + 2 sum_k C(2j,j-k) tr[(RS)^k]",
       true,
       0,
       [R, S, RS](int j) {
         MomentExpr lhs = trace((R + S).pow(2 * static_cast<unsigned>(j)));
         const auto row = binomial_row(2 * static_cast<unsigned>(j));
         MomentExpr rhs = mom_one(Rational(row[j]));
         for (int k = 1; k <= j; ++k)
           rhs += Rational(2 * row[j - k]) * trace(RS.pow(static_cast<unsigned>(k)));
         return std::vector<LabeledSides>{mom("even moment", lhs, rhs)};
       }});

  // 3. Odd moments of R+S collapse to a multiple of tr(R+S).
  add({"cor_odd",
       {},
       "tr[(R+S)^{2j+1}] = 4^j tr(R+S)",
       true,
       0,
       [R, S, pow4](int j) {
         MomentExpr lhs = trace((R + S).pow(2 * static_cast<unsigned>(j) + 1));
         MomentExpr rhs = pow4(j) * (mom_alpha() + mom_beta());
         return std::vector<LabeledSides>{mom("odd moment", lhs, rhs)};
       }});

  // 4. Angle-operator moments through the symmetry moments.
  add({"ham1_prop41",
       {},
       "tr[(PQP)^j] = C(2j,j)/2^{2j+1} + (alpha+beta)/4 + 2^{-2j} sum_k C(2j,j-k) tr[(RS)^k]",
       true,
       1,
       [angle, RS](int j) {
         MomentExpr lhs = trace(angle.pow(static_cast<unsigned>(j)));
         const auto row = binomial_row(2 * static_cast<unsigned>(j));
         MomentExpr rhs = mom_one(Rational(row[j], pow2(2 * j + 1)));
         rhs += Rational(1, 4) * (mom_alpha() + mom_beta());
         const Rational inv4j(1, pow2(2 * j));
         for (int k = 1; k <= j; ++k)
           rhs += (inv4j * Rational(row[j - k])) * trace(RS.pow(static_cast<unsigned>(k)));
         return std::vector<LabeledSides>{mom("moment relation", lhs, rhs)};
       }});

  // 5. 2 tr[(PQP)^j] - (alpha+beta)/2 = tr[(P+Q-1)^{2j}].
  add({"thm_sum",
       {},
       "2 tr[(PQP)^j] - (alpha+beta)/2 = tr[(P+Q-1)^{2j}]",
       true,
       1,
       [angle, P, Q, I](int j) {
         MomentExpr lhs = Rational(2) * trace(angle.pow(static_cast<unsigned>(j))) -
                          Rational(1, 2) * (mom_alpha() + mom_beta());
         MomentExpr rhs = trace((P + Q - I).pow(2 * static_cast<unsigned>(j)));
         return std::vector<LabeledSides>{mom("sum moment", lhs, rhs)};
       }});

  // 6. Complement version of thm_sum.
  add({"eq_complement",
       {},
       "2 tr[((1-P)(1-Q)(1-P))^j] + (alpha+beta)/2 = tr[(P+Q-1)^{2j}]",
       true,
       1,
       [cP, cQ, P, Q, I](int j) {
         MomentExpr lhs =
             Rational(2) * trace((cP * cQ * cP).pow(static_cast<unsigned>(j))) +
             Rational(1, 2) * (mom_alpha() + mom_beta());
         MomentExpr rhs = trace((P + Q - I).pow(2 * static_cast<unsigned>(j)));
         return std::vector<LabeledSides>{mom("complement moment", lhs, rhs)};
       }});

  // 7. Difference of the two previous relations.
  add({"identity_diff",
       {},
       "2 tr[(PQP)^j] - 2 tr[((1-P)(1-Q)(1-P))^j] = alpha+beta",
       true,
       1,
       [angle, cP, cQ](int j) {
         MomentExpr lhs =
             Rational(2) * trace(angle.pow(static_cast<unsigned>(j))) -
             Rational(2) * trace((cP * cQ * cP).pow(static_cast<unsigned>(j)));
         MomentExpr rhs = mom_alpha() + mom_beta();
         return std::vector<LabeledSides>{mom("difference", lhs, rhs)};
       }});

  // 8. Separation version: replace only P by 1-P.
  add({"eq_pq_diff",
       {},
       "2 tr[((1-P)Q(1-P))^j] + (alpha-beta)/2 = tr[(P-Q)^{2j}]",
       true,
       1,
       [cP, Q, P, I](int j) {
         MomentExpr lhs =
             Rational(2) * trace((cP * Q * cP).pow(static_cast<unsigned>(j))) +
             Rational(1, 2) * (mom_alpha() - mom_beta());
         MomentExpr rhs = trace((P - Q).pow(2 * static_cast<unsigned>(j)));
         return std::vector<LabeledSides>{mom("separation moment", lhs, rhs)};
       }});

  // 9. Odd moments of the commutator vanish.
  add({"comm_odd",
       {},
       "tr(D^{2j+1}) = 0 with D = PQ-QP",
       true,
       0,
       [D](int j) {
         MomentExpr lhs = trace(D.pow(2 * static_cast<unsigned>(j) + 1));
         return std::vector<LabeledSides>{mom("odd commutator moment", lhs, MomentExpr{})};
       }});

  // 10. Even commutator moments through tr[(RS)^{2k}].
  add({"comm_even_rs",
       {},
       "(-1)^j tr(D^{2j}) = 16^{-j} { C(2j,j) + 2 sum_k (-1)^k C(2j,j-k) tr[(RS)^{2k}] }",
       true,
       1,
       [D, RS, sign](int j) {
         MomentExpr lhs = sign(j) * trace(D.pow(2 * static_cast<unsigned>(j)));
         const auto row = binomial_row(2 * static_cast<unsigned>(j));
         const Rational inv16j(1, pow2(4 * j));
         MomentExpr rhs = mom_one(inv16j * Rational(row[j]));
         for (int k = 1; k <= j; ++k) {
           const Rational c = inv16j * Rational(2 * row[j - k]) * sign(k);
           rhs += c * trace(RS.pow(2 * static_cast<unsigned>(k)));
         }
         return std::vector<LabeledSides>{mom("even commutator moment", lhs, rhs)};
       }});

  // 11. (-1)^j tr(D^{2j}) = 2 tr[(PQP(P-PQP))^j].
  add({"thm_comm",
       {},
       "(-1)^j tr(D^{2j}) = 2 tr[(PQP(P-PQP))^j]",
       true,
       1,
       [D, angle, P, sign](int j) {
         MomentExpr lhs = sign(j) * trace(D.pow(2 * static_cast<unsigned>(j)));
         MomentExpr rhs =
             Rational(2) * trace((angle * (P - angle)).pow(static_cast<unsigned>(j)));
         return std::vector<LabeledSides>{mom("commutator vs angle", lhs, rhs)};
       }});

  // 12. Two equivalent words under the trace.
  add({"comm_word_eq",
       {},
       "tr[(PQP(P-PQ))^j] = tr[(PQP(P-PQP))^j]",
       true,
       1,
       [angle, P, Q](int j) {
         const NCPoly pq = P * Q;
         MomentExpr lhs = trace((angle * (P - pq)).pow(static_cast<unsigned>(j)));
         MomentExpr rhs = trace((angle * (P - angle)).pow(static_cast<unsigned>(j)));
         return std::vector<LabeledSides>{mom("word equality", lhs, rhs)};
       }});

  // 13. Defining relations of the dual pair A = P-Q, B = 1-P-Q.
  add({"kato_relations",
       {"kato_pyth", "kato_anti", "kato_center"},
       "A^2+B^2 = 1, AB+BA = 0, B^2P = PB^2 = PQP, B^2Q = QB^2 = QPQ",
       false,
       0,
       [A, B, I, P, Q, angle](int) {
         const NCPoly B2 = B * B;
         const NCPoly qpq = Q * P * Q;
         return std::vector<LabeledSides>{
             op("A^2 + B^2 = 1", A * A + B2, I),
             op("AB + BA = 0", A * B + B * A, NCPoly::zero()),
             op("B^2 P = PQP", B2 * P, angle),
             op("P B^2 = PQP", P * B2, angle),
             op("B^2 Q = QPQ", B2 * Q, qpq),
             op("Q B^2 = QPQ", Q * B2, qpq)};
       }});

  // 14. B^2 written in the complements.
  add({"kato_square",
       {},
       "B^2 = (1-P)(1-Q) + QP = (1-Q)(1-P) + PQ",
       false,
       0,
       [B, cP, cQ, P, Q](int) {
         const NCPoly B2 = B * B;
         return std::vector<LabeledSides>{
             op("B^2 = (1-P)(1-Q) + QP", B2, cP * cQ + Q * P),
             op("B^2 = (1-Q)(1-P) + PQ", B2, cQ * cP + P * Q)};
       }});

  // 15. The dual pair against the symmetries.
  add({"kato_sym",
       {},
       "B+A = -S, B-A = -R",
       false,
       0,
       [A, B, R, S](int) {
         return std::vector<LabeledSides>{op("B + A = -S", B + A, -S),
                                          op("B - A = -R", B - A, -R)};
       }});

  // 16. Closed forms for powers of B (even form from j >= 1).
  add({"b_pow_closed",
       {"b_even_pow", "b_odd_pow"},
       "B^{2j} = (QP)^j + ((1-P)(1-Q))^j and B^{2j+1} = ((1-P)(1-Q))^j(1-P) - (QP)^j Q",
       true,
       0,
       [B, cP, cQ, Q, P](int j) {
         const unsigned uj = static_cast<unsigned>(j);
         const NCPoly qp = Q * P;
         const NCPoly comp = cP * cQ;
         std::vector<LabeledSides> out;
         if (j >= 1)
           out.push_back(op("even power", B.pow(2 * uj), qp.pow(uj) + comp.pow(uj)));
         out.push_back(op("odd power", B.pow(2 * uj + 1),
                          comp.pow(uj) * cP - qp.pow(uj) * Q));
         return out;
       }});

  // 17. Odd moments of A and B are constant.
  add({"odd_moment_const",
       {"b_odd_moment", "a_odd_moment"},
       "tr[B^{2j+1}] = tr(B), tr[A^{2j+1}] = tr(A)",
       true,
       0,
       [A, B](int j) {
         const unsigned e = 2 * static_cast<unsigned>(j) + 1;
         return std::vector<LabeledSides>{
             mom("tr[B^{2j+1}] = tr(B)", trace(B.pow(e)), trace(B)),
             mom("tr[A^{2j+1}] = tr(A)", trace(A.pow(e)), trace(A))};
       }});

  // 18. Even moments of B through the angle operator.
  add({"eq11",
       {},
       "tr[B^{2j}] = 2 tr[(B^2 P)^j] + tr(B)",
       true,
       1,
       [B, P](int j) {
         const unsigned uj = static_cast<unsigned>(j);
         MomentExpr lhs = trace(B.pow(2 * uj));
         MomentExpr rhs =
             Rational(2) * trace((B * B * P).pow(uj)) + trace(B);
         return std::vector<LabeledSides>{mom("even B moment", lhs, rhs)};
       }});

  // 19. Commutator factorizations through the dual pair.
  add({"c_factored",
       {},
       "A B = -D and (P-Q)(P+Q-1) = D",
       false,
       0,
       [A, B, D, P, Q, I](int) {
         return std::vector<LabeledSides>{
             op("A B = -D", A * B, -D),
             op("(P-Q)(P+Q-1) = D", (P - Q) * (P + Q - I), D)};
       }});

  // 20. Square of the commutator lies in the center's functional calculus.
  add({"c_square",
       {},
       "-D^2 = B^2(1-B^2) = A^2 B^2",
       false,
       0,
       [A, B, D, I](int) {
         const NCPoly B2 = B * B;
         const NCPoly minusD2 = -(D * D);
         return std::vector<LabeledSides>{
             op("-D^2 = B^2(1-B^2)", minusD2, B2 * (I - B2)),
             op("-D^2 = A^2 B^2", minusD2, A * A * B2)};
       }});

  // 21. The split of tr[B^{2j}(1-B^2)^j] between P and 1-P is even.
  add({"final_split",
       {},
       "tr[B^{2j}(1-B^2)^j P] = tr[B^{2j}(1-B^2)^j (1-P)]",
       true,
       1,
       [B, P, I, cP](int j) {
         const unsigned uj = static_cast<unsigned>(j);
         const NCPoly core = (B * B).pow(uj) * (I - B * B).pow(uj);
         return std::vector<LabeledSides>{
             mom("split", trace(core * P), trace(core * cP))};
       }});
}

}  // namespace pqtrace
