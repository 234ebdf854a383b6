#pragma once

#include <array>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "humbert/cohomology.hpp"
#include "humbert/errors.hpp"
#include "humbert/linalg.hpp"
#include "humbert/model.hpp"

namespace humbert {

// A class on C×C regarded as a self-map of H*(C). All distinguished
// correspondences here have degree 2, but the type admits any degree.
struct Correspondence {
  CohClass cls;

  explicit Correspondence(CohClass c) : cls(std::move(c)) {
    if (cls.ambient_power() != 2)
      throw DimensionError("correspondence must live on C^2");
  }

  bool operator==(const Correspondence&) const = default;
  std::string render() const { return cls.render(); }
};

inline CohClass act(const Correspondence& f, const CohClass& x) {
  if (x.ambient_power() != 1)
    throw DimensionError("correspondence action expects a class on C^1");
  return pushforward(mul(pullback(x, {1}, 2), f.cls), {2});
}

// after ∘ before: act(compose(g, f), x) = act(g, act(f, x)).
inline Correspondence compose(const Correspondence& after,
                              const Correspondence& before) {
  CohClass lifted = mul(pullback(before.cls, {1, 2}, 3),
                        pullback(after.cls, {2, 3}, 3));
  return Correspondence(pushforward(lifted, {1, 3}));
}

// Pullback along the swap of factors (Koszul signs included).
inline Correspondence transpose(const Correspondence& f) {
  return Correspondence(pullback(f.cls, {2, 1}, 2));
}

// ===========================================================================
// Distinguished classes, all produced by duality solves against their
// defining integral identities. Caches are keyed by the pair count only;
// these classes do not depend on the group action.
// ===========================================================================

// The diagonal: the unique degree-2 class with ∫ Δ·(x⊗y) = ∫ x·y.
inline const CohClass& diagonal_class(int pairs) {
  static std::array<std::optional<CohClass>, BasisSymbol::kMaxPairs + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (pairs < 1 || pairs > BasisSymbol::kMaxPairs)
    throw IndexError("pair count out of range");
  auto& slot = cache[static_cast<std::size_t>(pairs)];
  if (!slot) {
    slot = duality_solve(2, 2, pairs, [](const Monomial& t) {
      CohClass prod = mul(CohClass::symbol(t.slots()[0]),
                          CohClass::symbol(t.slots()[1]));
      return integrate(prod);
    });
  }
  return *slot;
}

inline Correspondence diagonal(int pairs = BasisSymbol::kMaxPairs) {
  return Correspondence(diagonal_class(pairs));
}

// The small diagonal on C^3: ∫ Δsm·(x⊗y⊗z) = ∫ x·y·z.
inline const CohClass& small_diagonal(int pairs = BasisSymbol::kMaxPairs) {
  static std::array<std::optional<CohClass>, BasisSymbol::kMaxPairs + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (pairs < 1 || pairs > BasisSymbol::kMaxPairs)
    throw IndexError("pair count out of range");
  auto& slot = cache[static_cast<std::size_t>(pairs)];
  if (!slot) {
    slot = duality_solve(3, 4, pairs, [](const Monomial& t) {
      CohClass prod = mul(mul(CohClass::symbol(t.slots()[0]),
                              CohClass::symbol(t.slots()[1])),
                          CohClass::symbol(t.slots()[2]));
      return integrate(prod);
    });
  }
  return *slot;
}

// The H^1⊗H^1 component of the diagonal: τ = Δ − w⊗u − u⊗w.
inline const CohClass& tau_class(int pairs = BasisSymbol::kMaxPairs) {
  static std::array<std::optional<CohClass>, BasisSymbol::kMaxPairs + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (pairs < 1 || pairs > BasisSymbol::kMaxPairs)
    throw IndexError("pair count out of range");
  auto& slot = cache[static_cast<std::size_t>(pairs)];
  if (!slot) {
    CohClass tau = diagonal_class(pairs);
    tau -= CohClass(Monomial({BasisSymbol::w(), BasisSymbol::u()}));
    tau -= CohClass(Monomial({BasisSymbol::u(), BasisSymbol::w()}));
    slot = std::move(tau);
  }
  return *slot;
}

namespace detail {

template <typename ActOnSymbol>
Correspondence graph_by_duality(int pairs, ActOnSymbol&& image_of) {
  return Correspondence(duality_solve(2, 2, pairs, [&](const Monomial& t) {
    CohClass gx = image_of(t.slots()[0]);
    return integrate(mul(gx, CohClass::symbol(t.slots()[1])));
  }));
}

}  // namespace detail

// Graph of a group element: the class with ∫ Γ·(x⊗y) = ∫ g(x)·y, hence
// act(graph(g), x) = g(x).
inline Correspondence graph(const HumbertModel& model, const GroupElement& g) {
  return detail::graph_by_duality(model.pairs(), [&](BasisSymbol s) {
    return model.act(g, CohClass::symbol(s));
  });
}

inline Correspondence graph_of_generator(const HumbertModel& model, int gen) {
  return detail::graph_by_duality(model.pairs(), [&](BasisSymbol s) {
    return model.act_generator(gen, CohClass::symbol(s));
  });
}

// ===========================================================================
// Chow–Künneth projectors. π0 = z×C and π2 = C×z with z represented
// homologically by w; π1 = Δ − π0 − π2. The five refined projectors are the
// single-zero terms of the 2^5-term averaging expansion
//   (1/2^5) π1 ∘ (Δ ± Γ_{s_0}) ∘ … ∘ (Δ ± Γ_{s_4}),
// realized verbatim (including the 1/2^5 factor and the pre-composition).
// ===========================================================================

struct ProjectorSet {
  Correspondence diag;
  Correspondence p0;
  Correspondence p1;
  Correspondence p2;
  std::array<Correspondence, 5> block;      // π1_(i)
  std::array<Correspondence, 5> gen_graph;  // Γ_{s_i}
};

namespace detail {

inline Correspondence expansion_product(
    const Correspondence& diag, const Correspondence& p1,
    const std::array<Correspondence, 5>& graphs, std::span<const int> r) {
  Correspondence term = diag;  // identity correspondence
  for (int i = 4; i >= 0; --i) {
    CohClass factor = diag.cls;
    if (r[static_cast<std::size_t>(i)] == 0)
      factor += graphs[static_cast<std::size_t>(i)].cls;
    else
      factor -= graphs[static_cast<std::size_t>(i)].cls;
    term = compose(Correspondence(std::move(factor)), term);
  }
  term = compose(p1, term);
  term.cls *= Rational(1, 32);
  return term;
}

}  // namespace detail

inline ProjectorSet projectors(const HumbertModel& model) {
  const int pairs = model.pairs();
  Correspondence diag = diagonal(pairs);
  Correspondence p0(CohClass(Monomial({BasisSymbol::w(), BasisSymbol::u()})));
  Correspondence p2(CohClass(Monomial({BasisSymbol::u(), BasisSymbol::w()})));
  Correspondence p1(diag.cls - p0.cls - p2.cls);

  std::array<Correspondence, 5> graphs = {
      graph_of_generator(model, 0), graph_of_generator(model, 1),
      graph_of_generator(model, 2), graph_of_generator(model, 3),
      graph_of_generator(model, 4)};
  auto block_for = [&](int i) {
    std::array<int, 5> r{1, 1, 1, 1, 1};
    r[static_cast<std::size_t>(i)] = 0;
    return detail::expansion_product(diag, p1, graphs, r);
  };
  std::array<Correspondence, 5> blocks = {block_for(0), block_for(1),
                                          block_for(2), block_for(3),
                                          block_for(4)};
  return ProjectorSet{std::move(diag),  p0,
                      std::move(p1),    p2,
                      std::move(blocks), std::move(graphs)};
}

// One term of the averaging expansion, labeled by its r-vector.
struct ExpansionTerm {
  std::array<int, 5> r;
  Correspondence term;
  bool is_zero;

  std::string r_label() const {
    std::string out;
    for (int v : r) out += static_cast<char>('0' + v);
    return out;
  }
};

inline std::vector<ExpansionTerm> expansion_terms(const HumbertModel& model) {
  const ProjectorSet ps = projectors(model);
  std::vector<ExpansionTerm> out;
  out.reserve(32);
  for (int mask = 0; mask < 32; ++mask) {
    std::array<int, 5> r{};
    for (int i = 0; i < 5; ++i) r[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    Correspondence term =
        detail::expansion_product(ps.diag, ps.p1, ps.gen_graph, r);
    const bool zero = term.cls.is_zero();
    out.push_back(ExpansionTerm{r, std::move(term), zero});
  }
  return out;
}

inline std::string expansion_csv(std::span<const ExpansionTerm> terms) {
  std::string out = "r_vector,zero,term\n";
  for (const auto& t : terms) {
    out += t.r_label();
    out += ',';
    out += t.is_zero ? "1" : "0";
    out += ',';
    out += csv_escape(t.term.render());
    out += '\n';
  }
  return out;
}

}  // namespace humbert
