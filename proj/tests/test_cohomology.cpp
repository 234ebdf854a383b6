#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "helpers.hpp"
#include "humbert/cohomology.hpp"
#include "humbert/linalg.hpp"

using namespace humbert;
using humbert::testing::Rng;

namespace {

CohClass tensor2(BasisSymbol a, BasisSymbol b) {
  return CohClass(Monomial({a, b}));
}

const BasisSymbol U = BasisSymbol::u();
const BasisSymbol W = BasisSymbol::w();

}  // namespace

TEST_CASE("basis symbols carry the fixed degrees") {
  CHECK(U.degree() == 0);
  CHECK(W.degree() == 2);
  for (int k = 1; k <= 5; ++k) {
    CHECK(BasisSymbol::e(k).degree() == 1);
    CHECK(BasisSymbol::f(k).degree() == 1);
  }
  CHECK(curve_basis(5).size() == 12);
  CHECK(curve_basis(1).size() == 4);
  CHECK_THROWS_AS(BasisSymbol::e(6), IndexError);
}

TEST_CASE("cup product on C^2: symplectic pairing and Koszul sign") {
  // (e1⊗u)·(f1⊗u) = w⊗u
  CHECK(mul(tensor2(BasisSymbol::e(1), U), tensor2(BasisSymbol::f(1), U)) ==
        tensor2(W, U));
  // (u⊗e1)·(f1⊗u) = -(f1⊗e1)
  CHECK(mul(tensor2(U, BasisSymbol::e(1)), tensor2(BasisSymbol::f(1), U)) ==
        -tensor2(BasisSymbol::f(1), BasisSymbol::e(1)));
  // mismatched pairs annihilate
  CHECK(mul(tensor2(BasisSymbol::e(1), U), tensor2(BasisSymbol::f(2), U))
            .is_zero());
  // point class kills positive degree slotwise
  CHECK(mul(tensor2(W, U), tensor2(BasisSymbol::e(1), U)).is_zero());
}

TEST_CASE("ambient mismatch raises a dimension error") {
  CHECK_THROWS_AS(mul(CohClass::unit(1), CohClass::unit(2)), DimensionError);
  CHECK_THROWS_AS(CohClass::unit(1) + CohClass::unit(2), DimensionError);
}

TEST_CASE("graded commutativity on all basis monomials of C^1 and C^2") {
  for (int m : {1, 2}) {
    std::vector<Monomial> all;
    for (int d = 0; d <= 2 * m; ++d)
      for (const auto& mono : monomial_basis(m, d, 5)) all.push_back(mono);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const CohClass ab = mul(CohClass(a), CohClass(b));
        const CohClass ba = mul(CohClass(b), CohClass(a));
        const int sign = (a.degree() * b.degree()) % 2 == 0 ? 1 : -1;
        CHECK(ab == Rational(sign) * ba);
      }
    }
  }
}

TEST_CASE("associativity on 1000 random sparse triples") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const int m = rng.uniform(1, 3);
    const CohClass x = testing::random_class(rng, m, 5, 3);
    const CohClass y = testing::random_class(rng, m, 5, 3);
    const CohClass z = testing::random_class(rng, m, 5, 3);
    REQUIRE(mul(mul(x, y), z) == mul(x, mul(y, z)));
  }
}

TEST_CASE("integrate picks the top coefficient") {
  CHECK(integrate(tensor2(W, W)) == 1);
  CHECK(integrate(tensor2(BasisSymbol::e(1), BasisSymbol::f(1))) == 0);
  CHECK(integrate(mul(CohClass::symbol(BasisSymbol::e(1)),
                      CohClass::symbol(BasisSymbol::f(1)))) == 1);
  CHECK(integrate(mul(CohClass::symbol(BasisSymbol::f(1)),
                      CohClass::symbol(BasisSymbol::e(1)))) == -1);
}

TEST_CASE("pullback places slots and fills with the unit") {
  CHECK(pullback(CohClass::symbol(BasisSymbol::e(1)), {1}, 2) ==
        tensor2(BasisSymbol::e(1), U));
  CHECK(pullback(CohClass::symbol(W), {2}, 2) == tensor2(U, W));
  // ring homomorphism on a product
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const CohClass a = testing::random_class(rng, 2, 5, 3);
    const CohClass b = testing::random_class(rng, 2, 5, 3);
    const std::vector<int> slots = {1, 3};
    REQUIRE(pullback(mul(a, b), slots, 3) ==
            mul(pullback(a, slots, 3), pullback(b, slots, 3)));
  }
  CHECK_THROWS_AS(pullback(CohClass::unit(2), {1, 1}, 3), IndexError);
  CHECK_THROWS_AS(pullback(CohClass::unit(2), {1, 4}, 3), IndexError);
  CHECK_THROWS_AS(pullback(CohClass::unit(2), {1}, 3), DimensionError);
}

TEST_CASE("non-monotone pullback is the signed permutation action") {
  // transpose of an odd⊗odd monomial picks up the Koszul sign
  const CohClass ef = tensor2(BasisSymbol::e(1), BasisSymbol::f(2));
  CHECK(pullback(ef, {2, 1}, 2) ==
        -tensor2(BasisSymbol::f(2), BasisSymbol::e(1)));
  // even symbols move freely
  CHECK(pullback(tensor2(W, U), {2, 1}, 2) == tensor2(U, W));
  // the swap is an involution
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const CohClass x = testing::random_class(rng, 2, 5, 4);
    REQUIRE(pullback(pullback(x, {2, 1}, 2), {2, 1}, 2) == x);
  }
}

TEST_CASE("pushforward integrates out point slots") {
  CHECK(pushforward(tensor2(BasisSymbol::e(1), W), {1}) ==
        CohClass::symbol(BasisSymbol::e(1)));
  CHECK(pushforward(tensor2(W, BasisSymbol::e(1)), {1}).is_zero());
  CHECK_THROWS_AS(pushforward(CohClass::unit(2), {2, 1}), IndexError);
  CHECK_THROWS_AS(pushforward(CohClass::unit(2), {3}), IndexError);
}

TEST_CASE("projection formula, exhaustive on C^2") {
  std::vector<Monomial> basis2;
  for (int d = 0; d <= 4; ++d)
    for (const auto& mono : monomial_basis(2, d, 5)) basis2.push_back(mono);
  REQUIRE(basis2.size() == 144);
  for (const std::vector<int>& keep :
       {std::vector<int>{1}, std::vector<int>{2}}) {
    for (auto a : curve_basis(5)) {
      const CohClass ac = CohClass::symbol(a);
      for (const auto& bm : basis2) {
        const CohClass b(bm);
        const CohClass lhs = pushforward(mul(pullback(ac, keep, 2), b), keep);
        const CohClass rhs = mul(ac, pushforward(b, keep));
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("projection formula, randomized on C^3") {
  Rng rng(99);
  const std::vector<std::vector<int>> keeps = {{1}, {2}, {3}, {1, 2}, {1, 3},
                                               {2, 3}};
  for (int i = 0; i < 300; ++i) {
    const auto& keep = keeps[static_cast<std::size_t>(
        rng.uniform(0, static_cast<int>(keeps.size()) - 1))];
    const CohClass a =
        testing::random_class(rng, static_cast<int>(keep.size()), 5, 3);
    const CohClass b = testing::random_class(rng, 3, 5, 4);
    REQUIRE(pushforward(mul(pullback(a, keep, 3), b), keep) ==
            mul(a, pushforward(b, keep)));
  }
}

TEST_CASE("Poincaré pairing on C^1 is nondegenerate") {
  const auto basis = curve_basis(5);
  std::vector<std::vector<Rational>> gram;
  for (auto x : basis) {
    std::vector<Rational> row;
    for (auto y : basis)
      row.push_back(integrate(mul(CohClass::symbol(x), CohClass::symbol(y))));
    gram.push_back(std::move(row));
  }
  CHECK(rank_of_matrix(gram) == 12);
}

TEST_CASE("Künneth dimension counts match the binomial convolution") {
  for (int pairs : {1, 3, 5}) {
    // per-factor Poincaré polynomial (1, 2*pairs, 1)
    for (int m = 1; m <= 3; ++m) {
      std::vector<long long> conv = {1};
      for (int f = 0; f < m; ++f) {
        std::vector<long long> next(conv.size() + 2, 0);
        for (std::size_t d = 0; d < conv.size(); ++d) {
          next[d] += conv[d];
          next[d + 1] += conv[d] * 2 * pairs;
          next[d + 2] += conv[d];
        }
        conv = std::move(next);
      }
      long long total = 0;
      for (int d = 0; d <= 2 * m; ++d) {
        const auto count =
            static_cast<long long>(monomial_basis(m, d, pairs).size());
        REQUIRE(count == conv[static_cast<std::size_t>(d)]);
        total += count;
      }
      long long expected_total = 1;
      for (int f = 0; f < m; ++f) expected_total *= (2 * pairs + 2);
      CHECK(total == expected_total);
    }
  }
}

TEST_CASE("rank_of_span on explicit spans") {
  const CohClass wu = tensor2(W, U);
  const CohClass uw = tensor2(U, W);
  const std::vector<CohClass> span = {wu, uw, wu + uw};
  CHECK(rank_of_span(span, 2) == 2);
  CHECK(rank_of_span(std::vector<CohClass>{}, 3) == 0);
  const std::vector<CohClass> bad = {wu + CohClass::unit(2)};
  CHECK_THROWS_AS(rank_of_span(bad, 2), DegreeError);
  const std::vector<CohClass> mixed_ambient = {wu, CohClass::unit(1)};
  CHECK_THROWS_AS(rank_of_span(mixed_ambient, 2), DimensionError);
}

TEST_CASE("canonical rendering") {
  CHECK(CohClass(Monomial({W, W}), Rational(-10)).render() == "-10 w@w");
  CHECK(tensor2(W, U).render() == "w@u");
  CHECK((-tensor2(BasisSymbol::e(1), BasisSymbol::f(1))).render() == "-e1@f1");
  CHECK(CohClass(2).render() == "0");
  CHECK((CohClass(Monomial({U, W}), Rational(1, 2))).render() == "1/2 u@w");
  // canonical term order: u@w before w@u
  CHECK((tensor2(W, U) + tensor2(U, W)).render() == "u@w + w@u");
}

TEST_CASE("degree_component filters by slot degrees") {
  const CohClass x = tensor2(W, U) + tensor2(U, W) +
                     tensor2(BasisSymbol::e(1), BasisSymbol::f(1));
  CHECK(degree_component(x, {2, 0}) == tensor2(W, U));
  CHECK(degree_component(x, {1, 1}) ==
        tensor2(BasisSymbol::e(1), BasisSymbol::f(1)));
  CHECK(degree_component(x, {0, 0}).is_zero());
}

TEST_CASE("homogeneous degree queries") {
  CHECK(tensor2(W, U).homogeneous_degree() == 2);
  CHECK(!(tensor2(W, U) + CohClass::unit(2)).homogeneous_degree());
  CHECK(!CohClass(2).homogeneous_degree());
}
