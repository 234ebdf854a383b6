#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "humbert/cohomology.hpp"
#include "humbert/correspondences.hpp"
#include "humbert/errors.hpp"
#include "humbert/model.hpp"
#include "humbert/report.hpp"

namespace humbert {

// ===========================================================================
// The seven motive summands h^0, h^2, h^1_(0..4) with their degree and sign
// character. These label the rows of the refined case table; the characters
// are the mathematical ones of the standard model, independent of any
// corrupted action used as a negative control.
// ===========================================================================

class SummandLabel {
public:
  static SummandLabel h0() { return SummandLabel(0); }
  static SummandLabel h2() { return SummandLabel(1); }
  static SummandLabel h1(int block) {
    if (block < 0 || block > 4) throw IndexError("block index out of range");
    return SummandLabel(2 + block);
  }

  static const std::array<SummandLabel, 7>& all() {
    static const std::array<SummandLabel, 7> labels = {
        h0(), h2(), h1(0), h1(1), h1(2), h1(3), h1(4)};
    return labels;
  }

  bool is_h1() const { return id_ >= 2; }
  int block() const {
    if (!is_h1()) throw IndexError("label has no block");
    return id_ - 2;
  }

  int degree() const { return id_ == 0 ? 0 : (id_ == 1 ? 2 : 1); }
  int rank() const { return is_h1() ? 2 : 1; }

  SignCharacter character() const {
    return is_h1() ? SignCharacter::chi(block()) : SignCharacter::trivial();
  }

  std::string name() const {
    if (id_ == 0) return "h0";
    if (id_ == 1) return "h2";
    return "h1_" + std::to_string(block());
  }

  const Correspondence& projector(const ProjectorSet& ps) const {
    if (id_ == 0) return ps.p0;
    if (id_ == 1) return ps.p2;
    return ps.block[static_cast<std::size_t>(block())];
  }

  bool operator==(const SummandLabel&) const = default;

private:
  explicit SummandLabel(int id) : id_(id) {}
  int id_;
};

enum class Verdict { Zero, Allowed };

enum class Reason {
  DegreeMatch,             // not an MCK constraint
  CharacterMismatch,       // product character unrealized
  SameIndexElliptic,       // all three in {h0, h2, h1_(i)} for one i
  InvariantTargetMismatch  // product realized but not the target character
};

inline std::string to_string(Verdict v) {
  return v == Verdict::Zero ? "ZERO" : "ALLOWED";
}

inline std::string to_string(Reason r) {
  switch (r) {
    case Reason::DegreeMatch: return "degree-match";
    case Reason::CharacterMismatch: return "character-mismatch";
    case Reason::SameIndexElliptic: return "same-index-elliptic";
    case Reason::InvariantTargetMismatch: return "invariant-target-mismatch";
  }
  throw InternalError("unknown reason");
}

// ===========================================================================
// The multiplication correspondence target∘Δsm∘(m1×m2), built over C^5:
// m1×m2 is a class on C^4 (slots 1,3 and 2,4), the small diagonal is a
// correspondence C^2 → C, and the compositions are pushforward/pullback
// products exactly as for 1-factor correspondences.
// ===========================================================================

inline CohClass multiplication_component(const CohClass& small_diag,
                                         const Correspondence& m1,
                                         const Correspondence& m2,
                                         const Correspondence& target) {
  // target ∘ Δsm: a class on C^3 (source C^2 in slots 1,2; target in slot 3).
  CohClass target_after =
      pushforward(mul(pullback(small_diag, {1, 2, 3}, 4),
                      pullback(target.cls, {3, 4}, 4)),
                  {1, 2, 4});
  // (m1 × m2): class on C^4.
  CohClass product_proj =
      mul(pullback(m1.cls, {1, 3}, 4), pullback(m2.cls, {2, 4}, 4));
  // Compose over the middle C^2.
  return pushforward(mul(pullback(product_proj, {1, 2, 3, 4}, 5),
                         pullback(target_after, {3, 4, 5}, 5)),
                     {1, 2, 5});
}

// ===========================================================================
// Coarse MCK check: π^k∘Δsm∘(π^i×π^j) vanishes iff i+j ≠ k, and for
// i+j = k equals the slot-degree (2−i, 2−j, k) component of Δsm (the honest
// multiplication component). The sum of all 27 compositions reassembles Δsm.
// ===========================================================================

inline CheckReport coarse_mck(const HumbertModel& model,
                              const ProjectorSet& ps, int i, int j, int k) {
  if (i < 0 || i > 2 || j < 0 || j > 2 || k < 0 || k > 2)
    throw IndexError("coarse_mck: Künneth indices must be in 0..2");
  const CohClass& dsm = small_diagonal(model.pairs());
  const std::array<const Correspondence*, 3> pi = {&ps.p0, &ps.p1, &ps.p2};
  const CohClass comp = multiplication_component(
      dsm, *pi[static_cast<std::size_t>(i)], *pi[static_cast<std::size_t>(j)],
      *pi[static_cast<std::size_t>(k)]);
  const CohClass expected = degree_component(dsm, {2 - i, 2 - j, k});

  CheckReport report = CheckReport::pass("mck-coarse");
  report.parameters["i"] = i;
  report.parameters["j"] = j;
  report.parameters["k"] = k;
  const bool constrained = (i + j != k);
  report.details["constrained"] = constrained;
  report.details["zero"] = comp.is_zero();
  if (comp != expected) {
    report.mark_fail("composition (" + std::to_string(i) + "," +
                     std::to_string(j) + "," + std::to_string(k) +
                     ") = " + comp.render());
  }
  if (constrained && !comp.is_zero()) {
    report.mark_fail("constrained triple nonzero: " + comp.render());
  }
  return report;
}

inline CheckReport coarse_mck_all(const HumbertModel& model) {
  const ProjectorSet ps = projectors(model);
  const CohClass& dsm = small_diagonal(model.pairs());
  CheckReport report = CheckReport::pass("mck-coarse");
  int constrained = 0;
  CohClass total(3);
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      for (int k = 0; k <= 2; ++k) {
        CheckReport one = coarse_mck(model, ps, i, j, k);
        if (i + j != k) ++constrained;
        if (!one.passed()) {
          report.mark_fail(one.witness.value_or("coarse triple failed"));
        }
        const std::array<const Correspondence*, 3> pi = {&ps.p0, &ps.p1,
                                                         &ps.p2};
        total += multiplication_component(dsm,
                                          *pi[static_cast<std::size_t>(i)],
                                          *pi[static_cast<std::size_t>(j)],
                                          *pi[static_cast<std::size_t>(k)]);
      }
    }
  }
  report.details["triples"] = 27;
  report.details["constrained_triples"] = constrained;
  report.details["reassembles_small_diagonal"] = (total == dsm);
  if (total != dsm)
    report.mark_fail("sum of components differs from the small diagonal");
  return report;
}

// ===========================================================================
// Refined case table over the seven summands. Two independent computations
// per triple: the engine composition proj(M3)∘Δsm∘(proj(M1)×proj(M2)) and a
// pure character-arithmetic prediction. The composition is nonzero exactly
// when both the degree and the product character match the target; the MCK
// verdict ZERO (degree mismatch) additionally carries one of the three proof
// reasons, each machine-checkable.
// ===========================================================================

struct CaseVerdict {
  SummandLabel m1;
  SummandLabel m2;
  SummandLabel m3;
  Verdict verdict;
  Reason reason;
  bool predicted_zero;
  bool cohomology_zero;

  bool agrees() const { return predicted_zero == cohomology_zero; }
};

inline std::pair<Verdict, Reason> classify_case(const SummandLabel& m1,
                                                const SummandLabel& m2,
                                                const SummandLabel& m3) {
  if (m1.degree() + m2.degree() == m3.degree())
    return {Verdict::Allowed, Reason::DegreeMatch};
  // Elliptic umbrella: all three inside {h0, h2, h1_(i)} for one common i.
  for (int i = 0; i < 5; ++i) {
    auto inside = [i](const SummandLabel& m) {
      return !m.is_h1() || m.block() == i;
    };
    if (inside(m1) && inside(m2) && inside(m3))
      return {Verdict::Zero, Reason::SameIndexElliptic};
  }
  const SignCharacter product = m1.character().product(m2.character());
  if (!is_realized(product)) return {Verdict::Zero, Reason::CharacterMismatch};
  return {Verdict::Zero, Reason::InvariantTargetMismatch};
}

inline std::vector<CaseVerdict> refined_case_table(const HumbertModel& model) {
  const ProjectorSet ps = projectors(model);
  const CohClass& dsm = small_diagonal(model.pairs());
  std::vector<CaseVerdict> table;
  table.reserve(343);
  for (const auto& m1 : SummandLabel::all()) {
    for (const auto& m2 : SummandLabel::all()) {
      for (const auto& m3 : SummandLabel::all()) {
        const auto [verdict, reason] = classify_case(m1, m2, m3);
        const bool degree_match = m1.degree() + m2.degree() == m3.degree();
        const bool character_match =
            m1.character().product(m2.character()) == m3.character();
        const CohClass comp = multiplication_component(
            dsm, m1.projector(ps), m2.projector(ps), m3.projector(ps));
        table.push_back(CaseVerdict{m1, m2, m3, verdict, reason,
                                    !(degree_match && character_match),
                                    comp.is_zero()});
      }
    }
  }
  return table;
}

inline std::string case_table_csv(std::span<const CaseVerdict> table) {
  std::string out = "M1,M2,M3,degrees,product_character,verdict,reason\n";
  for (const auto& row : table) {
    out += row.m1.name() + "," + row.m2.name() + "," + row.m3.name() + ",";
    out += std::to_string(row.m1.degree()) + "+" +
           std::to_string(row.m2.degree()) + "->" +
           std::to_string(row.m3.degree());
    out += ",";
    out += row.m1.character().product(row.m2.character()).render();
    out += ",";
    out += to_string(row.verdict) + "," + to_string(row.reason) + "\n";
  }
  return out;
}

inline CheckReport refined_mck(const HumbertModel& model) {
  const auto table = refined_case_table(model);
  CheckReport report = CheckReport::pass("mck-refined");
  int zero_verdicts = 0;
  int allowed = 0;
  int predicted_nonzero = 0;
  for (const auto& row : table) {
    if (row.verdict == Verdict::Zero)
      ++zero_verdicts;
    else
      ++allowed;
    if (!row.predicted_zero) ++predicted_nonzero;
    const std::string triple =
        "(" + row.m1.name() + "," + row.m2.name() + "," + row.m3.name() + ")";
    if (!row.agrees()) {
      report.mark_fail("character arithmetic disagrees with cohomology at " +
                       triple);
    }
    // Every MCK-constrained triple must actually vanish in cohomology.
    if (row.verdict == Verdict::Zero && !row.cohomology_zero) {
      report.mark_fail("constrained triple nonzero: " + triple);
    }
    if (row.verdict == Verdict::Zero && row.reason == Reason::DegreeMatch) {
      report.mark_fail("ZERO verdict without a proof reason at " + triple);
    }
  }
  report.details["triples"] = static_cast<int>(table.size());
  report.details["zero_verdicts"] = zero_verdicts;
  report.details["allowed"] = allowed;
  report.details["predicted_nonzero"] = predicted_nonzero;
  return report;
}

inline CheckReport mck_summary(const HumbertModel& model) {
  CheckReport coarse = coarse_mck_all(model);
  CheckReport refined = refined_mck(model);
  CheckReport report = CheckReport::pass("mck-summary");
  report.details["coarse"] = coarse.to_json();
  report.details["refined"] = refined.to_json();
  if (!coarse.passed())
    report.mark_fail(coarse.witness.value_or("coarse MCK failed"));
  if (!refined.passed())
    report.mark_fail(refined.witness.value_or("refined MCK failed"));
  return report;
}

}  // namespace humbert
