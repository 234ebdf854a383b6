#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "humbert/errors.hpp"
#include "humbert/rational.hpp"

namespace humbert {

// ===========================================================================
// Basis of H*(C,Q) for the fixed curve model: u in degree 0, the symplectic
// pairs e_1..e_p, f_1..f_p in degree 1, and the point class w in degree 2.
// The symbol layout always reserves five pairs; truncated models (p < 5)
// simply never emit the higher ones. The id order u < e_1..e_5 < f_1..f_5 < w
// is the canonical term order used everywhere.
// ===========================================================================

class BasisSymbol {
public:
  static constexpr int kMaxPairs = 5;

  BasisSymbol() = default;

  static BasisSymbol u() { return BasisSymbol(0); }
  static BasisSymbol w() { return BasisSymbol(2 * kMaxPairs + 1); }
  static BasisSymbol e(int k) {
    check_pair(k);
    return BasisSymbol(static_cast<std::uint8_t>(k));
  }
  static BasisSymbol f(int k) {
    check_pair(k);
    return BasisSymbol(static_cast<std::uint8_t>(kMaxPairs + k));
  }

  bool is_unit() const { return id_ == 0; }
  bool is_point() const { return id_ == 2 * kMaxPairs + 1; }
  bool is_e() const { return id_ >= 1 && id_ <= kMaxPairs; }
  bool is_f() const { return id_ > kMaxPairs && id_ < 2 * kMaxPairs + 1; }

  // 1-based symplectic pair index; only meaningful for e/f symbols.
  int pair() const { return is_e() ? id_ : id_ - kMaxPairs; }

  int degree() const { return is_unit() ? 0 : (is_point() ? 2 : 1); }
  bool odd() const { return degree() == 1; }

  std::string name() const {
    if (is_unit()) return "u";
    if (is_point()) return "w";
    return (is_e() ? "e" : "f") + std::to_string(pair());
  }

  auto operator<=>(const BasisSymbol&) const = default;

private:
  explicit BasisSymbol(std::uint8_t id) : id_(id) {}
  static void check_pair(int k) {
    if (k < 1 || k > kMaxPairs) throw IndexError("basis pair index out of range");
  }
  std::uint8_t id_ = 0;
};

// The 2p+2 basis classes of H*(C) in canonical order: u, e_1..e_p, f_1..f_p, w.
inline std::vector<BasisSymbol> curve_basis(int pairs) {
  if (pairs < 1 || pairs > BasisSymbol::kMaxPairs)
    throw IndexError("pair count out of range");
  std::vector<BasisSymbol> out;
  out.reserve(2 * pairs + 2);
  out.push_back(BasisSymbol::u());
  for (int k = 1; k <= pairs; ++k) out.push_back(BasisSymbol::e(k));
  for (int k = 1; k <= pairs; ++k) out.push_back(BasisSymbol::f(k));
  out.push_back(BasisSymbol::w());
  return out;
}

// Product in H*(C). u is the unit, e_k f_k = w, f_k e_k = -w, everything else
// of total degree > 2 or from mismatched pairs is zero.
struct SlotProduct {
  BasisSymbol symbol;
  int sign;
};

inline std::optional<SlotProduct> slot_product(BasisSymbol a, BasisSymbol b) {
  if (a.is_unit()) return SlotProduct{b, +1};
  if (b.is_unit()) return SlotProduct{a, +1};
  if (a.degree() + b.degree() > 2) return std::nullopt;
  if (a.is_e() && b.is_f() && a.pair() == b.pair())
    return SlotProduct{BasisSymbol::w(), +1};
  if (a.is_f() && b.is_e() && a.pair() == b.pair())
    return SlotProduct{BasisSymbol::w(), -1};
  return std::nullopt;
}

// ===========================================================================
// Monomial: one Künneth tensor basis element of H*(C^m), one symbol per slot.
// ===========================================================================

class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<BasisSymbol> slots) : slots_(std::move(slots)) {}

  static Monomial unit(int m) {
    return Monomial(std::vector<BasisSymbol>(check_power(m), BasisSymbol::u()));
  }
  static Monomial top(int m) {
    return Monomial(std::vector<BasisSymbol>(check_power(m), BasisSymbol::w()));
  }

  int ambient_power() const { return static_cast<int>(slots_.size()); }
  const std::vector<BasisSymbol>& slots() const { return slots_; }

  int degree() const {
    int d = 0;
    for (auto s : slots_) d += s.degree();
    return d;
  }

  bool is_top() const {
    return std::all_of(slots_.begin(), slots_.end(),
                       [](BasisSymbol s) { return s.is_point(); });
  }

  // Canonical rendering: slot symbols joined by '@', e.g. "w@u".
  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (i > 0) out += '@';
      out += slots_[i].name();
    }
    return out;
  }

  auto operator<=>(const Monomial&) const = default;

private:
  static int check_power(int m) {
    if (m < 1) throw DimensionError("ambient power must be positive");
    return m;
  }
  std::vector<BasisSymbol> slots_;
};

// Koszul sign of (a_1⊗…⊗a_m)·(b_1⊗…⊗b_m): prod_{i<j} (-1)^{deg b_i · deg a_j}.
inline int koszul_sign(const Monomial& a, const Monomial& b) {
  int odd_b_prefix = 0;
  int parity = 0;
  const auto& as = a.slots();
  const auto& bs = b.slots();
  for (std::size_t s = 0; s < as.size(); ++s) {
    if (as[s].odd()) parity ^= (odd_b_prefix & 1);
    if (bs[s].odd()) ++odd_b_prefix;
  }
  return parity ? -1 : +1;
}

struct SignedMonomial {
  Monomial monomial;
  int sign;
};

inline std::optional<SignedMonomial> monomial_product(const Monomial& a,
                                                      const Monomial& b) {
  if (a.ambient_power() != b.ambient_power())
    throw DimensionError("monomial product: mismatched ambient power");
  std::vector<BasisSymbol> out;
  out.reserve(a.slots().size());
  int sign = koszul_sign(a, b);
  for (std::size_t s = 0; s < a.slots().size(); ++s) {
    auto p = slot_product(a.slots()[s], b.slots()[s]);
    if (!p) return std::nullopt;
    sign *= p->sign;
    out.push_back(p->symbol);
  }
  return SignedMonomial{Monomial(std::move(out)), sign};
}

// ===========================================================================
// CohClass: sparse exact-rational linear combination of monomials on C^m.
// Immutable in spirit; all operations return fresh values. The std::map key
// order is the canonical term order, so iteration (and hence rendering and
// elimination pivots) is deterministic.
// ===========================================================================

class CohClass {
public:
  explicit CohClass(int ambient_power) : ambient_(ambient_power) {
    if (ambient_ < 1) throw DimensionError("ambient power must be positive");
  }

  explicit CohClass(Monomial mono, Rational coeff = Rational(1))
      : ambient_(mono.ambient_power()) {
    add_term(std::move(mono), std::move(coeff));
  }

  static CohClass zero(int ambient_power) { return CohClass(ambient_power); }
  static CohClass unit(int ambient_power) {
    return CohClass(Monomial::unit(ambient_power));
  }
  // Degree-1 ambient: a single basis class of H*(C).
  static CohClass symbol(BasisSymbol s) {
    return CohClass(Monomial(std::vector<BasisSymbol>{s}));
  }

  int ambient_power() const { return ambient_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Rational coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // The common degree of all terms; nullopt for the zero class or a mixed-
  // degree combination.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree();
    for (const auto& [mono, coeff] : terms_)
      if (mono.degree() != d) return std::nullopt;
    return d;
  }

  CohClass& operator+=(const CohClass& other) {
    require_same_ambient(other);
    for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
    return *this;
  }
  CohClass& operator-=(const CohClass& other) {
    require_same_ambient(other);
    for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
    return *this;
  }
  CohClass& operator*=(const Rational& scalar) {
    if (scalar == 0) {
      terms_.clear();
    } else {
      for (auto& [mono, coeff] : terms_) coeff *= scalar;
    }
    return *this;
  }

  friend CohClass operator+(CohClass lhs, const CohClass& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend CohClass operator-(CohClass lhs, const CohClass& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend CohClass operator-(CohClass x) {
    for (auto& [mono, coeff] : x.terms_) coeff = -coeff;
    return x;
  }
  friend CohClass operator*(CohClass x, const Rational& scalar) {
    x *= scalar;
    return x;
  }
  friend CohClass operator*(const Rational& scalar, CohClass x) {
    x *= scalar;
    return x;
  }

  bool operator==(const CohClass& other) const {
    return ambient_ == other.ambient_ && terms_ == other.terms_;
  }

  // Canonical rendering: terms in canonical order joined by " + ", each term
  // as coefficient then monomial (unit coefficients abbreviated), e.g.
  // "-10 w@w" or "w@u + u@w".
  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
      if (!first) out += " + ";
      first = false;
      if (coeff == 1) {
        out += mono.render();
      } else if (coeff == -1) {
        out += "-" + mono.render();
      } else {
        out += to_string(coeff) + " " + mono.render();
      }
    }
    return out;
  }

  void add_term(Monomial mono, Rational coeff) {
    if (mono.ambient_power() != ambient_)
      throw DimensionError("term ambient power mismatch");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(mono), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

private:
  void require_same_ambient(const CohClass& other) const {
    if (ambient_ != other.ambient_)
      throw DimensionError("ambient power mismatch");
  }

  int ambient_;
  std::map<Monomial, Rational> terms_;
};

// Cup product with Koszul signs.
inline CohClass mul(const CohClass& x, const CohClass& y) {
  if (x.ambient_power() != y.ambient_power())
    throw DimensionError("mul: ambient power mismatch");
  CohClass out(x.ambient_power());
  for (const auto& [ma, ca] : x.terms()) {
    for (const auto& [mb, cb] : y.terms()) {
      auto prod = monomial_product(ma, mb);
      if (!prod) continue;
      out.add_term(prod->monomial, ca * cb * prod->sign);
    }
  }
  return out;
}

inline CohClass operator*(const CohClass& x, const CohClass& y) {
  return mul(x, y);
}

// Pairing against the fundamental class: the coefficient of w⊗…⊗w.
inline Rational integrate(const CohClass& x) {
  return x.coefficient(Monomial::top(x.ambient_power()));
}

// Pullback along the projection C^m -> C^k selecting the listed slots
// (1-based target positions, one per source slot). Non-monotone placements
// pick up the Koszul sign of the induced permutation of odd symbols, so the
// correspondence transpose is the special case slots = [2,1].
inline CohClass pullback(const CohClass& x, std::span<const int> slots,
                         int target_power) {
  const int k = x.ambient_power();
  if (static_cast<int>(slots.size()) != k)
    throw DimensionError("pullback: slot list length mismatch");
  std::vector<bool> used(static_cast<std::size_t>(target_power), false);
  for (int s : slots) {
    if (s < 1 || s > target_power)
      throw IndexError("pullback: slot index out of range");
    if (used[static_cast<std::size_t>(s - 1)])
      throw IndexError("pullback: slot indices must be injective");
    used[static_cast<std::size_t>(s - 1)] = true;
  }

  CohClass out(target_power);
  for (const auto& [mono, coeff] : x.terms()) {
    std::vector<BasisSymbol> placed(static_cast<std::size_t>(target_power),
                                    BasisSymbol::u());
    int parity = 0;
    const auto& src = mono.slots();
    for (int s = 0; s < k; ++s) {
      placed[static_cast<std::size_t>(slots[s] - 1)] = src[s];
      if (!src[s].odd()) continue;
      for (int t = s + 1; t < k; ++t) {
        if (src[t].odd() && slots[s] > slots[t]) parity ^= 1;
      }
    }
    out.add_term(Monomial(std::move(placed)), parity ? -coeff : coeff);
  }
  return out;
}

inline CohClass pullback(const CohClass& x, std::initializer_list<int> slots,
                         int target_power) {
  return pullback(x, std::span<const int>(slots.begin(), slots.size()),
                  target_power);
}

// Fiber integration along the discarded slots: a monomial survives iff every
// discarded slot holds w (even, so no sign arises); retained slots keep their
// order. `keep` is 1-based and strictly increasing.
inline CohClass pushforward(const CohClass& x, std::span<const int> keep) {
  const int m = x.ambient_power();
  if (keep.empty() || static_cast<int>(keep.size()) > m)
    throw IndexError("pushforward: invalid slot selection");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 1 || keep[i] > m)
      throw IndexError("pushforward: slot index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw IndexError("pushforward: slots must be strictly increasing");
  }

  CohClass out(static_cast<int>(keep.size()));
  for (const auto& [mono, coeff] : x.terms()) {
    const auto& src = mono.slots();
    std::vector<BasisSymbol> kept;
    kept.reserve(keep.size());
    bool survives = true;
    std::size_t next = 0;
    for (int s = 0; s < m; ++s) {
      if (next < keep.size() && keep[next] == s + 1) {
        kept.push_back(src[s]);
        ++next;
      } else if (!src[s].is_point()) {
        survives = false;
        break;
      }
    }
    if (survives) out.add_term(Monomial(std::move(kept)), coeff);
  }
  return out;
}

inline CohClass pushforward(const CohClass& x, std::initializer_list<int> keep) {
  return pushforward(x, std::span<const int>(keep.begin(), keep.size()));
}

// The part of x whose i-th slot has degree slot_degrees[i].
inline CohClass degree_component(const CohClass& x,
                                 std::span<const int> slot_degrees) {
  if (static_cast<int>(slot_degrees.size()) != x.ambient_power())
    throw DimensionError("degree_component: arity mismatch");
  CohClass out(x.ambient_power());
  for (const auto& [mono, coeff] : x.terms()) {
    bool match = true;
    for (std::size_t s = 0; s < slot_degrees.size(); ++s) {
      if (mono.slots()[s].degree() != slot_degrees[s]) {
        match = false;
        break;
      }
    }
    if (match) out.add_term(mono, coeff);
  }
  return out;
}

inline CohClass degree_component(const CohClass& x,
                                 std::initializer_list<int> slot_degrees) {
  return degree_component(
      x, std::span<const int>(slot_degrees.begin(), slot_degrees.size()));
}

// All monomials of the given total degree on C^m over the first `pairs`
// symplectic pairs, in canonical order.
inline std::vector<Monomial> monomial_basis(int m, int degree, int pairs) {
  if (m < 1) throw DimensionError("ambient power must be positive");
  std::vector<Monomial> out;
  std::vector<BasisSymbol> current(static_cast<std::size_t>(m));
  const auto symbols = curve_basis(pairs);
  auto rec = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == m) {
      if (remaining == 0) out.emplace_back(current);
      return;
    }
    for (auto s : symbols) {
      if (s.degree() > remaining) continue;
      if (remaining - s.degree() > 2 * (m - slot - 1)) continue;
      current[static_cast<std::size_t>(slot)] = s;
      self(self, slot + 1, remaining - s.degree());
    }
  };
  if (degree >= 0 && degree <= 2 * m) rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace humbert
