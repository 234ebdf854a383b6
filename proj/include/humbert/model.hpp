#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "humbert/cohomology.hpp"
#include "humbert/errors.hpp"
#include "humbert/rational.hpp"
#include "humbert/report.hpp"

namespace humbert {

// Genus of a type-n curve in the family: 2^{n-2}(n-3)+1.
inline Integer genus(int n) {
  if (n < 2) throw DomainError("genus: type must be at least 2");
  return (Integer(1) << (n - 2)) * (n - 3) + 1;
}

// ===========================================================================
// Sign characters of the involution group: 5-tuples of signs over the
// generators s_0..s_4. The realized set on H*(C) is the trivial character
// (carried by H^0 and H^2) together with the five chi_i (+1 in position i,
// -1 elsewhere) carried by the blocks of H^1. Products of distinct chi's
// leave the realized set; that collapse is what powers the case table.
// ===========================================================================

class SignCharacter {
public:
  SignCharacter() { signs_.fill(+1); }

  static SignCharacter trivial() { return SignCharacter(); }

  static SignCharacter chi(int block) {
    check_block(block);
    SignCharacter c;
    c.signs_.fill(-1);
    c.signs_[static_cast<std::size_t>(block)] = +1;
    return c;
  }

  int sign(int i) const {
    check_block(i);
    return signs_[static_cast<std::size_t>(i)];
  }

  SignCharacter product(const SignCharacter& other) const {
    SignCharacter out;
    for (std::size_t i = 0; i < signs_.size(); ++i)
      out.signs_[i] = static_cast<std::int8_t>(signs_[i] * other.signs_[i]);
    return out;
  }

  std::string render() const {
    std::string out;
    for (auto s : signs_) out += (s > 0 ? '+' : '-');
    return out;
  }

  bool operator==(const SignCharacter&) const = default;

private:
  static void check_block(int i) {
    if (i < 0 || i > 4) throw IndexError("character block out of range");
  }
  std::array<std::int8_t, 5> signs_;
};

inline SignCharacter character_of(int block) { return SignCharacter::chi(block); }

inline const std::vector<SignCharacter>& realized_characters() {
  static const std::vector<SignCharacter> realized = [] {
    std::vector<SignCharacter> out;
    out.push_back(SignCharacter::trivial());
    for (int i = 0; i < 5; ++i) out.push_back(SignCharacter::chi(i));
    return out;
  }();
  return realized;
}

inline bool is_realized(const SignCharacter& c) {
  for (const auto& r : realized_characters())
    if (r == c) return true;
  return false;
}

// ===========================================================================
// The involution group G ≅ (Z/2Z)^4 with generators s_0..s_4 subject to
// s_0 s_1 s_2 s_3 s_4 = 1. Elements are exponent 5-tuples reduced to the
// canonical representative with first bit 0, giving exactly 16 elements.
// ===========================================================================

class GroupElement {
public:
  GroupElement() = default;

  static GroupElement identity() { return GroupElement(); }

  static GroupElement generator(int i) {
    if (i < 0 || i > 4) throw IndexError("generator index out of range");
    GroupElement g;
    g.bits_[static_cast<std::size_t>(i)] = 1;
    g.reduce();
    return g;
  }

  GroupElement operator*(const GroupElement& other) const {
    GroupElement out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      out.bits_[i] = bits_[i] ^ other.bits_[i];
    out.reduce();
    return out;
  }

  bool is_identity() const {
    for (auto b : bits_)
      if (b) return false;
    return true;
  }

  bool bit(int i) const {
    if (i < 0 || i > 4) throw IndexError("generator index out of range");
    return bits_[static_cast<std::size_t>(i)] != 0;
  }

  static std::vector<GroupElement> all() {
    std::vector<GroupElement> out;
    out.reserve(16);
    for (int mask = 0; mask < 16; ++mask) {
      GroupElement g;
      for (int i = 0; i < 4; ++i)
        g.bits_[static_cast<std::size_t>(i + 1)] =
            static_cast<std::uint8_t>((mask >> i) & 1);
      out.push_back(g);
    }
    return out;
  }

  std::string render() const {
    if (is_identity()) return "1";
    std::string out;
    for (int i = 0; i < 5; ++i) {
      if (!bits_[static_cast<std::size_t>(i)]) continue;
      if (!out.empty()) out += '*';
      out += "s" + std::to_string(i);
    }
    return out;
  }

  bool operator==(const GroupElement&) const = default;

private:
  void reduce() {
    if (bits_[0]) {
      for (auto& b : bits_) b ^= 1;
    }
  }
  std::array<std::uint8_t, 5> bits_{};
};

// ===========================================================================
// The concrete genus-5 model: blocks V_i = span(e_{i+1}, f_{i+1}) for
// i = 0..4, with s_i acting by +1 on V_i and -1 on every other block, and
// trivially on u and w. The distinguished degree-1 zero-cycle is represented
// homologically by w. A deliberately corrupted variant (s_0 negating V_0 as
// well) is available as a negative control; it only makes sense through the
// per-generator API, since it breaks the defining group relation.
// ===========================================================================

class HumbertModel {
public:
  static HumbertModel standard() { return HumbertModel(false); }

  static HumbertModel with_corrupted_action() { return HumbertModel(true); }

  int pairs() const { return 5; }
  bool corrupted() const { return corrupted_; }

  // Sign of generator s_gen on block V_block.
  int generator_sign(int gen, int block) const {
    if (gen < 0 || gen > 4) throw IndexError("generator index out of range");
    if (block < 0 || block > 4) throw IndexError("block index out of range");
    return gen_sign_[static_cast<std::size_t>(gen)]
                    [static_cast<std::size_t>(block)];
  }

  int sign(const GroupElement& g, int block) const {
    int s = 1;
    for (int i = 0; i < 5; ++i)
      if (g.bit(i)) s *= generator_sign(i, block);
    return s;
  }

  // Signed action on one basis symbol (u and w are fixed).
  int symbol_sign_generator(int gen, BasisSymbol s) const {
    if (!s.odd()) return +1;
    return generator_sign(gen, s.pair() - 1);
  }

  int symbol_sign(const GroupElement& g, BasisSymbol s) const {
    if (!s.odd()) return +1;
    return sign(g, s.pair() - 1);
  }

  // Linear extension of the action table to H*(C); an algebra automorphism.
  CohClass act(const GroupElement& g, const CohClass& x) const {
    return act_impl(x, [&](BasisSymbol s) { return symbol_sign(g, s); });
  }

  CohClass act_generator(int gen, const CohClass& x) const {
    return act_impl(
        x, [&](BasisSymbol s) { return symbol_sign_generator(gen, s); });
  }

  // Dimension of the common +1 eigenspace in H^1 of the listed generators.
  int invariant_dimension(std::span<const int> generators) const {
    if (generators.empty())
      throw UsageError("invariant_dimension: empty generator set");
    int blocks = 0;
    for (int block = 0; block < 5; ++block) {
      bool fixed = true;
      for (int g : generators) {
        if (generator_sign(g, block) != +1) {
          fixed = false;
          break;
        }
      }
      if (fixed) ++blocks;
    }
    return 2 * blocks;
  }

  int invariant_dimension(std::initializer_list<int> generators) const {
    return invariant_dimension(
        std::span<const int>(generators.begin(), generators.size()));
  }

private:
  explicit HumbertModel(bool corrupted) : corrupted_(corrupted) {
    for (std::size_t g = 0; g < 5; ++g)
      for (std::size_t b = 0; b < 5; ++b)
        gen_sign_[g][b] = (g == b) ? +1 : -1;
    if (corrupted_) gen_sign_[0][0] = -1;
  }

  template <typename SymbolSign>
  CohClass act_impl(const CohClass& x, SymbolSign&& symbol_sign_of) const {
    if (x.ambient_power() != 1)
      throw DimensionError("model action is defined on H*(C) only");
    CohClass out(1);
    for (const auto& [mono, coeff] : x.terms()) {
      const int s = symbol_sign_of(mono.slots().front());
      out.add_term(mono, coeff * s);
    }
    return out;
  }

  std::array<std::array<std::int8_t, 5>, 5> gen_sign_;
  bool corrupted_ = false;
};

// ===========================================================================
// Family parameters. The cohomological model does not depend on the lambda
// values beyond their pairwise distinctness, so they are carried as exact
// rationals or opaque symbolic tags and only validated.
// ===========================================================================

struct FamilyParam {
  std::optional<Rational> value;  // numeric if parseable
  std::string text;               // original token

  static FamilyParam parse(const std::string& token) {
    FamilyParam p;
    p.text = token;
    p.value = parse_rational(token);
    return p;
  }

  bool coincides(const FamilyParam& other) const {
    if (value && other.value) return *value == *other.value;
    if (!value && !other.value) return text == other.text;
    return false;
  }
};

inline CheckReport validate_family_params(std::span<const FamilyParam> params) {
  if (params.size() != 5)
    throw UsageError("family parameters: exactly 5 values required");
  CheckReport report = CheckReport::pass("family-params");
  Json values = Json::array();
  for (const auto& p : params) values.push_back(p.text);
  report.parameters["lambdas"] = values;
  Json coincidences = Json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = i + 1; j < params.size(); ++j) {
      if (params[i].coincides(params[j])) {
        coincidences.push_back(Json::array({i, j}));
        report.mark_fail("coincident parameters at indices (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  report.details["distinct"] = coincidences.empty();
  report.details["coincident_pairs"] = coincidences;
  return report;
}

inline CheckReport validate_family_params(
    const std::vector<std::string>& tokens) {
  std::vector<FamilyParam> params;
  params.reserve(tokens.size());
  for (const auto& t : tokens) params.push_back(FamilyParam::parse(t));
  return validate_family_params(std::span<const FamilyParam>(params));
}

}  // namespace humbert
