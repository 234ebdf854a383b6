#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "humbert/linalg.hpp"
#include "humbert/model.hpp"

using namespace humbert;

TEST_CASE("genus of the curve family") {
  CHECK(genus(2) == 0);
  CHECK(genus(3) == 1);
  CHECK(genus(4) == 5);
  CHECK(genus(5) == 17);
  CHECK(genus(10) == 1793);
  CHECK_THROWS_AS(genus(1), DomainError);
  CHECK_THROWS_AS(genus(-3), DomainError);
}

TEST_CASE("the involution group has sixteen elements") {
  const auto elements = GroupElement::all();
  REQUIRE(elements.size() == 16);
  std::set<std::string> renders;
  for (const auto& g : elements) renders.insert(g.render());
  CHECK(renders.size() == 16);

  // s_0 s_1 s_2 s_3 s_4 = 1
  GroupElement product = GroupElement::identity();
  for (int i = 0; i < 5; ++i) product = product * GroupElement::generator(i);
  CHECK(product.is_identity());

  for (const auto& g : elements) CHECK((g * g).is_identity());
  CHECK(GroupElement::generator(0) * GroupElement::generator(1) ==
        GroupElement::generator(1) * GroupElement::generator(0));
}

TEST_CASE("generator action on the character blocks") {
  const HumbertModel model = HumbertModel::standard();
  // s_0 fixes V_0 = span(e_1, f_1)
  CHECK(model.act(GroupElement::generator(0),
                  CohClass::symbol(BasisSymbol::e(1))) ==
        CohClass::symbol(BasisSymbol::e(1)));
  // s_0 negates V_2, so f_3 flips
  CHECK(model.act(GroupElement::generator(0),
                  CohClass::symbol(BasisSymbol::f(3))) ==
        -CohClass::symbol(BasisSymbol::f(3)));
  // u and w are fixed by everything
  for (const auto& g : GroupElement::all()) {
    CHECK(model.act(g, CohClass::unit(1)) == CohClass::unit(1));
    CHECK(model.act(g, CohClass::symbol(BasisSymbol::w())) ==
          CohClass::symbol(BasisSymbol::w()));
  }
  CHECK_THROWS_AS(model.act(GroupElement::generator(0), CohClass::unit(2)),
                  DimensionError);
}

TEST_CASE("the defining relation acts as the identity") {
  const HumbertModel model = HumbertModel::standard();
  for (auto s : curve_basis(5)) {
    CohClass x = CohClass::symbol(s);
    for (int g = 0; g < 5; ++g) x = model.act_generator(g, x);
    CHECK(x == CohClass::symbol(s));
  }
}

TEST_CASE("every group element acts by an algebra automorphism") {
  const HumbertModel model = HumbertModel::standard();
  const auto basis = curve_basis(5);
  for (const auto& g : GroupElement::all()) {
    for (auto x : basis) {
      for (auto y : basis) {
        const CohClass cx = CohClass::symbol(x);
        const CohClass cy = CohClass::symbol(y);
        CHECK(model.act(g, mul(cx, cy)) ==
              mul(model.act(g, cx), model.act(g, cy)));
        // the pairing is preserved
        CHECK(integrate(mul(model.act(g, cx), model.act(g, cy))) ==
              integrate(mul(cx, cy)));
      }
    }
  }
}

TEST_CASE("invariant dimensions match the quotient-curve genera") {
  const HumbertModel model = HumbertModel::standard();
  for (int i = 0; i < 5; ++i) CHECK(model.invariant_dimension({i}) == 2);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      CHECK(model.invariant_dimension({i, j}) == 0);
  CHECK(model.invariant_dimension({0, 1, 2}) == 0);
  CHECK(model.invariant_dimension({0, 1, 2, 3, 4}) == 0);
  CHECK_THROWS_AS(model.invariant_dimension(std::initializer_list<int>{}),
                  UsageError);
}

TEST_CASE("sign characters and the realized set") {
  CHECK(character_of(0).render() == "+----");
  CHECK(character_of(4).render() == "----+");
  CHECK(SignCharacter::trivial().render() == "+++++");

  CHECK(character_of(0).product(character_of(1)).render() == "--+++");
  CHECK(!is_realized(character_of(0).product(character_of(1))));
  CHECK(character_of(0).product(character_of(0)) == SignCharacter::trivial());
  CHECK(is_realized(SignCharacter::trivial()));

  CHECK(realized_characters().size() == 6);
  for (int i = 0; i < 5; ++i) {
    CHECK(is_realized(character_of(i)));
    for (int j = i + 1; j < 5; ++j)
      CHECK(!is_realized(character_of(i).product(character_of(j))));
  }
}

TEST_CASE("characters match the model's generator signs") {
  const HumbertModel model = HumbertModel::standard();
  for (int block = 0; block < 5; ++block) {
    for (int gen = 0; gen < 5; ++gen) {
      CHECK(model.generator_sign(gen, block) == character_of(block).sign(gen));
    }
  }
}

TEST_CASE("blocks are orthogonal and jointly span H^1") {
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      if (i == j) continue;
      for (auto x : {BasisSymbol::e(i), BasisSymbol::f(i)}) {
        for (auto y : {BasisSymbol::e(j), BasisSymbol::f(j)}) {
          CHECK(integrate(mul(CohClass::symbol(x), CohClass::symbol(y))) == 0);
        }
      }
    }
  }
  std::vector<CohClass> one_classes;
  for (auto s : curve_basis(5))
    if (s.odd()) one_classes.push_back(CohClass::symbol(s));
  CHECK(rank_of_span(one_classes, 1) == 10);
}

TEST_CASE("the corrupted model differs exactly at (s_0, V_0)") {
  const HumbertModel bad = HumbertModel::with_corrupted_action();
  CHECK(bad.corrupted());
  CHECK(bad.generator_sign(0, 0) == -1);
  CHECK(bad.invariant_dimension({0}) == 0);
  const HumbertModel good = HumbertModel::standard();
  for (int g = 0; g < 5; ++g)
    for (int b = 0; b < 5; ++b)
      if (!(g == 0 && b == 0))
        CHECK(bad.generator_sign(g, b) == good.generator_sign(g, b));
}

TEST_CASE("family parameter validation") {
  CHECK(validate_family_params({"0", "1", "2", "3", "4"}).passed());

  const CheckReport repeated =
      validate_family_params({"0", "1", "1", "3", "4"});
  CHECK(repeated.status == Status::Fail);
  REQUIRE(repeated.witness.has_value());
  CHECK(repeated.witness->find("(1,2)") != std::string::npos);
  CHECK(repeated.details["coincident_pairs"].size() == 1);

  CHECK_THROWS_AS(validate_family_params({"0", "1", "2", "3"}), UsageError);

  // exact rational comparison across renderings
  CHECK(validate_family_params({"1/2", "2/4", "2", "3", "4"}).status ==
        Status::Fail);
  // symbolic tags compare as opaque tokens
  CHECK(validate_family_params({"t0", "t1", "t2", "t3", "t4"}).passed());
  CHECK(validate_family_params({"t0", "t0", "t2", "t3", "t4"}).status ==
        Status::Fail);
  // numeric and symbolic never coincide
  CHECK(validate_family_params({"1", "t1", "2", "3", "4"}).passed());
}
