#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "humbert/cohomology.hpp"
#include "humbert/correspondences.hpp"
#include "humbert/errors.hpp"
#include "humbert/linalg.hpp"
#include "humbert/rational.hpp"

namespace humbert {

// ===========================================================================
// The tautological free algebra on generators o_i and τ_{i,j} (i < j), with
// codimension grading (every generator has codimension 1). Monomials are
// sorted generator multisets; generators commute (they evaluate to even
// cohomology classes), so no signs arise.
// ===========================================================================

struct TautGenerator {
  std::uint8_t first = 0;
  std::uint8_t second = 0;  // 0 for o_i; otherwise τ_{first,second}, first < second

  static TautGenerator o(int i) {
    check_index(i);
    return TautGenerator{static_cast<std::uint8_t>(i), 0};
  }

  static TautGenerator tau(int i, int j) {
    check_index(i);
    check_index(j);
    if (i == j) throw IndexError("tau generator needs distinct indices");
    if (i > j) std::swap(i, j);
    return TautGenerator{static_cast<std::uint8_t>(i),
                         static_cast<std::uint8_t>(j)};
  }

  bool is_point() const { return second == 0; }
  bool is_tau() const { return second != 0; }

  int max_index() const { return is_point() ? first : second; }

  bool uses(int index) const {
    return first == index || (is_tau() && second == index);
  }

  std::string render() const {
    if (is_point()) return "o" + std::to_string(first);
    return "tau" + std::to_string(first) + std::to_string(second);
  }

  auto operator<=>(const TautGenerator&) const = default;

private:
  static void check_index(int i) {
    if (i < 1 || i > 255) throw IndexError("generator index out of range");
  }
};

using TautMonomial = std::vector<TautGenerator>;  // kept sorted

inline std::string render(const TautMonomial& mono) {
  if (mono.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (i > 0) out += '*';
    out += mono[i].render();
  }
  return out;
}

class TautExpr {
public:
  explicit TautExpr(int ambient) : ambient_(ambient) {
    if (ambient_ < 1) throw DimensionError("ambient power must be positive");
  }

  static TautExpr constant(int ambient, Rational value) {
    TautExpr out(ambient);
    out.add_term({}, std::move(value));
    return out;
  }

  static TautExpr o(int i, int ambient) {
    TautExpr out(ambient);
    out.add_term({TautGenerator::o(i)}, Rational(1));
    return out;
  }

  static TautExpr tau(int i, int j, int ambient) {
    TautExpr out(ambient);
    out.add_term({TautGenerator::tau(i, j)}, Rational(1));
    return out;
  }

  int ambient_power() const { return ambient_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<TautMonomial, Rational>& terms() const { return terms_; }

  void add_term(TautMonomial mono, Rational coeff) {
    if (coeff == 0) return;
    for (const auto& g : mono) {
      if (g.max_index() > ambient_)
        throw IndexError("generator index exceeds ambient power");
    }
    std::sort(mono.begin(), mono.end());
    auto [it, inserted] = terms_.emplace(std::move(mono), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TautExpr& operator+=(const TautExpr& other) {
    require_same_ambient(other);
    for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
    return *this;
  }
  TautExpr& operator-=(const TautExpr& other) {
    require_same_ambient(other);
    for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
    return *this;
  }
  TautExpr& operator*=(const Rational& scalar) {
    if (scalar == 0) {
      terms_.clear();
    } else {
      for (auto& [mono, coeff] : terms_) coeff *= scalar;
    }
    return *this;
  }

  friend TautExpr operator+(TautExpr a, const TautExpr& b) { return a += b; }
  friend TautExpr operator-(TautExpr a, const TautExpr& b) { return a -= b; }
  friend TautExpr operator*(TautExpr a, const Rational& s) { return a *= s; }
  friend TautExpr operator*(const Rational& s, TautExpr a) { return a *= s; }

  friend TautExpr operator*(const TautExpr& a, const TautExpr& b) {
    a.require_same_ambient(b);
    TautExpr out(a.ambient_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        TautMonomial mono = ma;
        mono.insert(mono.end(), mb.begin(), mb.end());
        out.add_term(std::move(mono), ca * cb);
      }
    }
    return out;
  }

  bool operator==(const TautExpr& other) const {
    return ambient_ == other.ambient_ && terms_ == other.terms_;
  }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
      if (!first) out += " + ";
      first = false;
      if (coeff == 1 && !mono.empty()) {
        out += humbert::render(mono);
      } else if (coeff == -1 && !mono.empty()) {
        out += "-" + humbert::render(mono);
      } else {
        out += to_string(coeff);
        if (!mono.empty()) out += " " + humbert::render(mono);
      }
    }
    return out;
  }

private:
  void require_same_ambient(const TautExpr& other) const {
    if (ambient_ != other.ambient_)
      throw DimensionError("ambient power mismatch");
  }

  int ambient_;
  std::map<TautMonomial, Rational> terms_;
};

// ===========================================================================
// Evaluation into cohomology: the algebra homomorphism with o_i the point
// class pulled to slot i and τ_{i,j} the Künneth-1 diagonal pulled to slots
// (i, j).
// ===========================================================================

inline CohClass eval_cohomology(const TautMonomial& mono, int ambient,
                                int pairs = BasisSymbol::kMaxPairs) {
  CohClass out = CohClass::unit(ambient);
  const CohClass point = CohClass::symbol(BasisSymbol::w());
  for (const auto& g : mono) {
    if (g.max_index() > ambient)
      throw IndexError("generator index exceeds ambient power");
    if (g.is_point()) {
      out = mul(out, pullback(point, {static_cast<int>(g.first)}, ambient));
    } else {
      out = mul(out, pullback(tau_class(pairs),
                              {static_cast<int>(g.first),
                               static_cast<int>(g.second)},
                              ambient));
    }
  }
  return out;
}

inline CohClass eval_cohomology(const TautExpr& expr,
                                int pairs = BasisSymbol::kMaxPairs) {
  CohClass out(expr.ambient_power());
  for (const auto& [mono, coeff] : expr.terms())
    out += coeff * eval_cohomology(mono, expr.ambient_power(), pairs);
  return out;
}

// The unique c with eval(τ_{1,2}·o_1) = c · eval(o_1·o_2), derived from the
// engine rather than copied from any printed relation. The rewrite system
// below uses this constant.
inline Rational derive_tau_o_coefficient(int pairs = BasisSymbol::kMaxPairs) {
  const CohClass lhs = eval_cohomology(
      TautExpr::tau(1, 2, 2) * TautExpr::o(1, 2), pairs);
  const CohClass rhs = eval_cohomology(
      TautExpr::o(1, 2) * TautExpr::o(2, 2), pairs);
  if (rhs.is_zero()) throw ModelError("derive_tau_o_coefficient: o1*o2 = 0");
  if (lhs.is_zero()) return Rational(0);
  const auto& [ref_mono, ref_coeff] = *rhs.terms().begin();
  Rational c = lhs.coefficient(ref_mono) / ref_coeff;
  if (!(lhs - c * rhs).is_zero())
    throw ModelError("tau*o is not proportional to o*o");
  return c;
}

// ===========================================================================
// Rewrite system. Rules, in priority order:
//   R1:  o_i·o_i           -> 0
//   R2a: τ_{i,j}·o_k       -> c·o_i·o_j            (k ∈ {i,j}, c derived)
//   R2b: τ_{i,j}·τ_{i,j}   -> -b·o_i·o_j
//   R3:  τ sharing one idx -> τ(other two)·o(shared)
// Normal forms are monomials whose generators have pairwise disjoint index
// support. Confluence is validated empirically by the test suite. The
// matching-sum relation needs b+2 distinct indices (never available at desk
// scale, m <= 5) and is checked standalone by the matching-sum functions.
// ===========================================================================

struct RelationSet {
  int b = 10;                     // -b in the τ² rule (= dim H^1)
  Rational tau_point = Rational(0);  // derived c in R2a
};

inline RelationSet standard_relations(int pairs = BasisSymbol::kMaxPairs) {
  RelationSet rules;
  rules.b = 2 * pairs;
  rules.tau_point = derive_tau_o_coefficient(pairs);
  return rules;
}

enum class RewriteOrder { FirstRedex, LastRedex };

namespace detail {

struct Redex {
  int rule;  // 1 = R1, 2 = R2a, 3 = R2b, 4 = R3
  std::size_t a, b;
};

inline std::optional<Redex> find_redex(const TautMonomial& mono,
                                       RewriteOrder order) {
  std::optional<Redex> best;
  auto consider = [&](Redex r) {
    if (!best) {
      best = r;
      return;
    }
    const bool earlier = std::tie(r.a, r.b) < std::tie(best->a, best->b);
    if (order == RewriteOrder::FirstRedex ? earlier : !earlier) best = r;
  };
  for (int rule = 1; rule <= 4; ++rule) {
    for (std::size_t p = 0; p < mono.size(); ++p) {
      for (std::size_t q = p + 1; q < mono.size(); ++q) {
        const auto& x = mono[p];
        const auto& y = mono[q];
        bool match = false;
        switch (rule) {
          case 1:
            match = x.is_point() && y.is_point() && x.first == y.first;
            break;
          case 2:
            match = (x.is_tau() && y.is_point() && x.uses(y.first)) ||
                    (y.is_tau() && x.is_point() && y.uses(x.first));
            break;
          case 3:
            match = x.is_tau() && y.is_tau() && x == y;
            break;
          case 4:
            if (x.is_tau() && y.is_tau() && x != y) {
              const int shared = (y.uses(x.first) ? x.first : 0) +
                                 (y.uses(x.second) ? x.second : 0);
              match = shared != 0 &&
                      !(y.uses(x.first) && y.uses(x.second));
            }
            break;
        }
        if (match) consider(Redex{rule, p, q});
      }
    }
    if (best) return best;  // rule priority: only fall through if none found
  }
  return best;
}

}  // namespace detail

inline TautExpr reduce(const TautExpr& expr, const RelationSet& rules,
                       RewriteOrder order = RewriteOrder::FirstRedex) {
  TautExpr out(expr.ambient_power());
  std::vector<std::pair<TautMonomial, Rational>> work(expr.terms().begin(),
                                                      expr.terms().end());
  while (!work.empty()) {
    auto [mono, coeff] = std::move(work.back());
    work.pop_back();
    auto redex = detail::find_redex(mono, order);
    if (!redex) {
      out.add_term(std::move(mono), std::move(coeff));
      continue;
    }
    const TautGenerator x = mono[redex->a];
    const TautGenerator y = mono[redex->b];
    TautMonomial rest;
    rest.reserve(mono.size());
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (i != redex->a && i != redex->b) rest.push_back(mono[i]);

    TautMonomial replaced = rest;
    Rational factor = coeff;
    switch (redex->rule) {
      case 1:  // o_i² = 0
        continue;
      case 2: {  // τ_{i,j}·o  -> c·o_i·o_j
        const TautGenerator& tau = x.is_tau() ? x : y;
        factor *= rules.tau_point;
        if (factor == 0) continue;
        replaced.push_back(TautGenerator::o(tau.first));
        replaced.push_back(TautGenerator::o(tau.second));
        break;
      }
      case 3:  // τ² = -b·o_i·o_j
        factor *= Rational(-rules.b);
        replaced.push_back(TautGenerator::o(x.first));
        replaced.push_back(TautGenerator::o(x.second));
        break;
      case 4: {  // τ_{a,s}·τ_{b,s} = τ_{a,b}·o_s
        const int shared = y.uses(x.first) ? x.first : x.second;
        const int xi = x.first == shared ? x.second : x.first;
        const int yi = y.first == shared ? y.second : y.first;
        replaced.push_back(TautGenerator::tau(xi, yi));
        replaced.push_back(TautGenerator::o(shared));
        break;
      }
    }
    std::sort(replaced.begin(), replaced.end());
    work.emplace_back(std::move(replaced), std::move(factor));
  }
  return out;
}

inline TautExpr reduce(const TautExpr& expr,
                       RewriteOrder order = RewriteOrder::FirstRedex) {
  static const RelationSet rules = standard_relations();
  return reduce(expr, rules, order);
}

// ===========================================================================
// Graded dimensions and the injectivity check: normal-form monomials per
// codimension versus the exact rank of their cohomology images.
// ===========================================================================

// All normal-form monomials (pairwise disjoint index support) on C^m,
// grouped by codimension.
inline std::vector<std::vector<TautMonomial>> normal_form_monomials(int m) {
  if (m < 1) throw DimensionError("ambient power must be positive");
  std::vector<std::vector<TautMonomial>> by_codim(
      static_cast<std::size_t>(m) + 1);
  TautMonomial current;
  auto rec = [&](auto&& self, int next_index) -> void {
    // Skip indices already consumed by a τ from a smaller index.
    while (next_index <= m) {
      bool used = false;
      for (const auto& g : current)
        if (g.uses(next_index)) used = true;
      if (!used) break;
      ++next_index;
    }
    if (next_index > m) {
      TautMonomial sorted = current;
      std::sort(sorted.begin(), sorted.end());
      by_codim[sorted.size()].push_back(std::move(sorted));
      return;
    }
    // index unused: use as o / pair into a τ / leave out
    current.push_back(TautGenerator::o(next_index));
    self(self, next_index + 1);
    current.pop_back();
    for (int j = next_index + 1; j <= m; ++j) {
      bool free = true;
      for (const auto& g : current)
        if (g.uses(j)) free = false;
      if (!free) continue;
      current.push_back(TautGenerator::tau(next_index, j));
      self(self, next_index + 1);
      current.pop_back();
    }
    self(self, next_index + 1);
  };
  rec(rec, 1);
  for (auto& bucket : by_codim) std::sort(bucket.begin(), bucket.end());
  return by_codim;
}

struct GradedDimRow {
  int codim = 0;
  std::int64_t quotient_dim = 0;
  int image_rank = 0;
  bool injective() const { return quotient_dim == image_rank; }
};

inline std::vector<GradedDimRow> graded_dims(
    int m, int max_codim = -1, int pairs = BasisSymbol::kMaxPairs) {
  if (m < 1) throw UsageError("graded_dims: ambient power must be positive");
  if (m > 5) throw BudgetError("graded_dims: m > 5 exceeds the desk budget");
  auto buckets = normal_form_monomials(m);
  const int top = max_codim < 0
                      ? static_cast<int>(buckets.size()) - 1
                      : std::min<int>(max_codim,
                                      static_cast<int>(buckets.size()) - 1);
  std::vector<GradedDimRow> rows;
  for (int codim = 0; codim <= top; ++codim) {
    const auto& bucket = buckets[static_cast<std::size_t>(codim)];
    std::vector<CohClass> images;
    images.reserve(bucket.size());
    for (const auto& mono : bucket)
      images.push_back(eval_cohomology(mono, m, pairs));
    GradedDimRow row;
    row.codim = codim;
    row.quotient_dim = static_cast<std::int64_t>(bucket.size());
    row.image_rank = rank_of_span(images, 2 * codim);
    rows.push_back(row);
  }
  return rows;
}

// ===========================================================================
// Matching combinatorics for the Kimura relation.
// ===========================================================================

inline Integer double_factorial(int n) {
  if (n < -1) throw DomainError("double_factorial: negative argument");
  Integer out = 1;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

using Matching = std::vector<std::pair<int, int>>;

inline std::vector<Matching> perfect_matchings(int n) {
  if (n < 0 || n % 2 != 0)
    throw UsageError("perfect_matchings: even element count required");
  std::vector<Matching> out;
  std::vector<int> elems(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) elems[static_cast<std::size_t>(i)] = i + 1;
  Matching current;
  auto rec = [&](auto&& self, std::vector<int>& avail) -> void {
    if (avail.empty()) {
      out.push_back(current);
      return;
    }
    const int a = avail.front();
    for (std::size_t t = 1; t < avail.size(); ++t) {
      const int b = avail[t];
      std::vector<int> rest;
      rest.reserve(avail.size() - 2);
      for (std::size_t s = 1; s < avail.size(); ++s)
        if (s != t) rest.push_back(avail[s]);
      current.emplace_back(a, b);
      self(self, rest);
      current.pop_back();
    }
  };
  if (n == 0) {
    out.push_back({});
  } else {
    rec(rec, elems);
  }
  return out;
}

// Σ over perfect matchings of ∏ τ_{a,b}, scaled by the multiplicity
// 2^{b/2+1}·(b/2+1)! with which each matching occurs in the full symmetric-
// group sum. Expected to vanish identically; b ∈ {2,4,6} (the b = 10 case is
// handled by the pairing mode below).
inline CohClass matching_sum_exact(int b) {
  if (b != 2 && b != 4 && b != 6)
    throw UsageError("matching_sum_exact: b must be one of 2, 4, 6");
  const int pairs = b / 2;
  const int m = b + 2;
  const CohClass& tau = tau_class(pairs);
  CohClass sum(m);
  for (const auto& matching : perfect_matchings(m)) {
    CohClass prod = CohClass::unit(m);
    for (const auto& [a, bb] : matching)
      prod = mul(prod, pullback(tau, {a, bb}, m));
    sum += prod;
  }
  Integer fact = 1;
  for (int k = 2; k <= b / 2 + 1; ++k) fact *= k;
  const Integer multiplicity = (Integer(1) << (b / 2 + 1)) * fact;
  sum *= Rational(multiplicity);
  return sum;
}

// Pfaffian-pairing mode for b = 10: pair the matching sum against a random
// decomposable tensor x_1⊗…⊗x_12. The pairing factorizes through the
// engine-computed two-point values g(x,y) = ∫ τ·(x⊗y) into the signed
// matching sum Σ_M sgn(M) ∏ g — the Pfaffian of the Gram matrix of a rank-10
// form on 12 vectors, hence exactly 0 on every trial.
struct PfaffianPairingResult {
  int trials = 0;
  std::uint64_t seed = 0;
  Integer matching_count = 0;
  bool all_zero = true;
  std::optional<int> first_nonzero_trial;
};

namespace detail {

// Signed sum over perfect matchings of ∏ gram values: the smallest active
// element pairs with the t-th remaining one at sign (-1)^{t-1}. Per-depth
// workspaces avoid allocation in the hot recursion.
class SignedMatchingSum {
public:
  explicit SignedMatchingSum(const std::vector<std::vector<Integer>>& gram)
      : gram_(gram), rest_(gram.size()) {
    for (std::size_t d = 0; d < rest_.size(); ++d)
      rest_[d].reserve(gram.size());
  }

  Integer run(Integer* leaf_count) {
    leaf_count_ = leaf_count;
    std::vector<int> all(gram_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return rec(all, 0);
  }

private:
  Integer rec(const std::vector<int>& active, std::size_t depth) {
    if (active.empty()) {
      if (leaf_count_) ++*leaf_count_;
      return Integer(1);
    }
    const int a = active.front();
    Integer total = 0;
    int sign = 1;
    for (std::size_t t = 1; t < active.size(); ++t) {
      const int b = active[t];
      std::vector<int>& rest = rest_[depth];
      rest.clear();
      for (std::size_t s = 1; s < active.size(); ++s)
        if (s != t) rest.push_back(active[s]);
      Integer term = gram_[static_cast<std::size_t>(a)]
                          [static_cast<std::size_t>(b)] *
                     rec(rest, depth + 1);
      if (sign < 0)
        total -= term;
      else
        total += term;
      sign = -sign;
    }
    return total;
  }

  const std::vector<std::vector<Integer>>& gram_;
  std::vector<std::vector<int>> rest_;
  Integer* leaf_count_ = nullptr;
};

// The H^1 pairing matrix under (x, y) -> ∫ τ·(x⊗y), computed through the
// engine once; trials only take integer bilinear forms against it.
inline const std::vector<std::vector<Integer>>& tau_pairing_matrix(int pairs) {
  static std::array<std::optional<std::vector<std::vector<Integer>>>,
                    BasisSymbol::kMaxPairs + 1>
      cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(pairs)];
  if (!slot) {
    const CohClass& tau = tau_class(pairs);
    std::vector<BasisSymbol> odd;
    for (auto s : curve_basis(pairs))
      if (s.odd()) odd.push_back(s);
    std::vector<std::vector<Integer>> matrix(
        odd.size(), std::vector<Integer>(odd.size(), Integer(0)));
    for (std::size_t a = 0; a < odd.size(); ++a) {
      for (std::size_t b = 0; b < odd.size(); ++b) {
        const CohClass tensor =
            mul(pullback(CohClass::symbol(odd[a]), {1}, 2),
                pullback(CohClass::symbol(odd[b]), {2}, 2));
        const Rational value = integrate(mul(tau, tensor));
        if (denominator(value) != 1)
          throw InternalError("pairing value should be integral");
        matrix[a][b] = numerator(value);
      }
    }
    slot = std::move(matrix);
  }
  return *slot;
}

}  // namespace detail

inline PfaffianPairingResult matching_sum_pfaffian(int trials,
                                                   std::uint64_t seed) {
  if (trials < 1) throw UsageError("matching_sum_pfaffian: trials must be >= 1");
  const int pairs = BasisSymbol::kMaxPairs;
  const int b = 2 * pairs;
  const int vectors = b + 2;  // 12
  const auto& pairing = detail::tau_pairing_matrix(pairs);

  PfaffianPairingResult result;
  result.trials = trials;
  result.seed = seed;

  std::mt19937_64 rng(seed);
  // Raw engine output reduced by hand; std::uniform_int_distribution is not
  // pinned by the standard and would break byte-identical reports.
  auto next_coeff = [&rng]() {
    return static_cast<int>(rng() % 19) - 9;  // in [-9, 9]
  };

  // Coordinates in the basis order e_1..e_5, f_1..f_5.
  std::vector<std::vector<long long>> coords(
      static_cast<std::size_t>(vectors),
      std::vector<long long>(static_cast<std::size_t>(b), 0));
  std::vector<std::vector<Integer>> gram(
      static_cast<std::size_t>(vectors),
      std::vector<Integer>(static_cast<std::size_t>(vectors), Integer(0)));

  for (int trial = 0; trial < trials; ++trial) {
    for (auto& vec : coords) {
      for (int k = 0; k < pairs; ++k) {
        vec[static_cast<std::size_t>(k)] = next_coeff();          // e_{k+1}
        vec[static_cast<std::size_t>(pairs + k)] = next_coeff();  // f_{k+1}
      }
    }
    for (int x = 0; x < vectors; ++x) {
      for (int y = x + 1; y < vectors; ++y) {
        long long value = 0;
        for (int s = 0; s < b; ++s) {
          for (int t = 0; t < b; ++t) {
            const long long w = static_cast<long long>(
                pairing[static_cast<std::size_t>(s)]
                       [static_cast<std::size_t>(t)]);
            if (w == 0) continue;
            value += w * coords[static_cast<std::size_t>(x)]
                              [static_cast<std::size_t>(s)] *
                     coords[static_cast<std::size_t>(y)]
                           [static_cast<std::size_t>(t)];
          }
        }
        gram[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = value;
        gram[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = -value;
      }
    }
    Integer leaves = 0;
    detail::SignedMatchingSum summer(gram);
    const Integer value = summer.run(trial == 0 ? &leaves : nullptr);
    if (trial == 0) result.matching_count = leaves;
    if (value != 0) {
      result.all_zero = false;
      if (!result.first_nonzero_trial) result.first_nonzero_trial = trial;
    }
  }
  return result;
}

// ===========================================================================
// Distinguished cycles checked for vanishing.
// ===========================================================================

// Faber–Pandharipande class Δ·p_j*(K) − c·K×K with K = (2g−2)·w = 8·w.
// The curve constant is c = 1/8; other constants give the negative control.
inline CohClass fp_cycle(int j, const Rational& constant = Rational(1, 8)) {
  if (j != 1 && j != 2) throw IndexError("fp_cycle: j must be 1 or 2");
  const int pairs = BasisSymbol::kMaxPairs;
  const CohClass canonical = Rational(8) * CohClass::symbol(BasisSymbol::w());
  const CohClass k1 = pullback(canonical, {1}, 2);
  const CohClass k2 = pullback(canonical, {2}, 2);
  return mul(diagonal_class(pairs), j == 1 ? k1 : k2) -
         constant * mul(k1, k2);
}

// The modified small diagonal on C^3 with z = w. The six correction terms are
// indexed 0..5 so negative controls can drop exactly one.
inline CohClass gamma3_with_corrections(std::span<const int> dropped) {
  const int pairs = BasisSymbol::kMaxPairs;
  const CohClass z = CohClass::symbol(BasisSymbol::w());
  const CohClass z1 = pullback(z, {1}, 3);
  const CohClass z2 = pullback(z, {2}, 3);
  const CohClass z3 = pullback(z, {3}, 3);
  const CohClass& diag = diagonal_class(pairs);

  const CohClass corrections[6] = {
      mul(pullback(diag, {1, 2}, 3), z3), mul(pullback(diag, {2, 3}, 3), z1),
      mul(pullback(diag, {1, 3}, 3), z2), mul(z1, z2),
      mul(z1, z3),                        mul(z2, z3)};

  CohClass out = small_diagonal(pairs);
  for (int t = 0; t < 6; ++t) {
    if (std::find(dropped.begin(), dropped.end(), t) != dropped.end()) continue;
    if (t < 3)
      out -= corrections[t];
    else
      out += corrections[t];
  }
  return out;
}

inline CohClass gamma3() { return gamma3_with_corrections({}); }

inline CohClass gamma3_without(int correction_term) {
  if (correction_term < 0 || correction_term > 5)
    throw IndexError("gamma3_without: correction term index out of range");
  const int dropped[1] = {correction_term};
  return gamma3_with_corrections(dropped);
}

}  // namespace humbert
