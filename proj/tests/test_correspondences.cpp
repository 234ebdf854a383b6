#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "helpers.hpp"
#include "humbert/checks.hpp"
#include "humbert/correspondences.hpp"

using namespace humbert;
using humbert::testing::Rng;

namespace {

const HumbertModel& model() {
  static const HumbertModel m = HumbertModel::standard();
  return m;
}

CohClass tensor2(const CohClass& x, const CohClass& y) {
  return mul(pullback(x, {1}, 2), pullback(y, {2}, 2));
}

}  // namespace

TEST_CASE("diagonal duality against the cup product, all basis pairs") {
  const Correspondence diag = diagonal(5);
  for (auto x : curve_basis(5)) {
    for (auto y : curve_basis(5)) {
      const CohClass cx = CohClass::symbol(x);
      const CohClass cy = CohClass::symbol(y);
      CHECK(integrate(mul(diag.cls, tensor2(cx, cy))) ==
            integrate(mul(cx, cy)));
    }
  }
  // identity action on all 12 basis classes
  for (auto x : curve_basis(5))
    CHECK(act(diag, CohClass::symbol(x)) == CohClass::symbol(x));
  // Künneth end coefficients
  CHECK(diag.cls.coefficient(Monomial({BasisSymbol::w(), BasisSymbol::u()})) ==
        1);
  CHECK(diag.cls.coefficient(Monomial({BasisSymbol::u(), BasisSymbol::w()})) ==
        1);
}

TEST_CASE("tau is the odd Künneth block of the diagonal") {
  const CohClass& tau = tau_class(5);
  REQUIRE(tau.term_count() == 10);
  for (const auto& [mono, coeff] : tau.terms()) {
    CHECK(mono.slots()[0].odd());
    CHECK(mono.slots()[1].odd());
  }
  // τ·τ = -10 w⊗w
  CHECK(mul(tau, tau) ==
        Rational(-10) *
            CohClass(Monomial({BasisSymbol::w(), BasisSymbol::w()})));
  // τ is symmetric as a correspondence
  CHECK(transpose(Correspondence(tau)) == Correspondence(tau));
}

TEST_CASE("small diagonal duality against triple products") {
  const CohClass& dsm = small_diagonal(5);
  // spec triples
  auto pairing = [&](BasisSymbol x, BasisSymbol y, BasisSymbol z) {
    const CohClass tensor = mul(mul(pullback(CohClass::symbol(x), {1}, 3),
                                    pullback(CohClass::symbol(y), {2}, 3)),
                                pullback(CohClass::symbol(z), {3}, 3));
    return integrate(mul(dsm, tensor));
  };
  CHECK(pairing(BasisSymbol::u(), BasisSymbol::w(), BasisSymbol::w()) == 0);
  CHECK(pairing(BasisSymbol::u(), BasisSymbol::u(), BasisSymbol::w()) == 1);
  CHECK(pairing(BasisSymbol::e(1), BasisSymbol::f(1), BasisSymbol::u()) == 1);
  // full duality over all basis triples
  for (auto x : curve_basis(5)) {
    for (auto y : curve_basis(5)) {
      for (auto z : curve_basis(5)) {
        const Rational expected = integrate(
            mul(mul(CohClass::symbol(x), CohClass::symbol(y)),
                CohClass::symbol(z)));
        REQUIRE(pairing(x, y, z) == expected);
      }
    }
  }
}

TEST_CASE("graphs realize the group action") {
  CHECK(graph(model(), GroupElement::identity()) == diagonal(5));
  const Correspondence g0 = graph(model(), GroupElement::generator(0));
  CHECK(act(g0, CohClass::symbol(BasisSymbol::e(1))) ==
        CohClass::symbol(BasisSymbol::e(1)));
  CHECK(act(g0, CohClass::symbol(BasisSymbol::f(3))) ==
        -CohClass::symbol(BasisSymbol::f(3)));
  for (const auto& g : GroupElement::all()) {
    const Correspondence gamma = graph(model(), g);
    for (auto x : curve_basis(5)) {
      CHECK(act(gamma, CohClass::symbol(x)) ==
            model().act(g, CohClass::symbol(x)));
    }
  }
  // per-generator construction agrees on the standard model
  for (int i = 0; i < 5; ++i) {
    CHECK(graph_of_generator(model(), i) ==
          graph(model(), GroupElement::generator(i)));
  }
}

TEST_CASE("composition is the action composition, randomized") {
  Rng rng(4242);
  for (int i = 0; i < 1000; ++i) {
    const Correspondence f(testing::random_homogeneous_class(rng, 2, 2, 5, 4));
    const Correspondence g(testing::random_homogeneous_class(rng, 2, 2, 5, 4));
    const CohClass x = testing::random_class(rng, 1, 5, 2);
    REQUIRE(act(compose(g, f), x) == act(g, act(f, x)));
  }
}

TEST_CASE("composition identities on the projectors") {
  const ProjectorSet ps = projectors(model());
  for (const Correspondence* p : {&ps.p0, &ps.p1, &ps.p2}) {
    CHECK(compose(ps.diag, *p) == *p);
    CHECK(compose(*p, ps.diag) == *p);
  }
  CHECK(compose(ps.block[0], ps.block[1]).cls.is_zero());
  CHECK(act(ps.p2, CohClass::symbol(BasisSymbol::w())) ==
        CohClass::symbol(BasisSymbol::w()));
  CHECK(act(ps.p2, CohClass::symbol(BasisSymbol::e(1))).is_zero());
  CHECK(act(ps.p0, CohClass::unit(1)) == CohClass::unit(1));
}

TEST_CASE("transpose duality, exhaustive on the distinguished correspondences") {
  const ProjectorSet ps = projectors(model());
  std::vector<Correspondence> distinguished = {ps.diag, ps.p0, ps.p1, ps.p2};
  for (const auto& g : ps.gen_graph) distinguished.push_back(g);
  for (const auto& b : ps.block) distinguished.push_back(b);
  for (const auto& f : distinguished) {
    const Correspondence ft = transpose(f);
    CHECK(transpose(ft) == f);
    for (auto x : curve_basis(5)) {
      for (auto y : curve_basis(5)) {
        const CohClass cx = CohClass::symbol(x);
        const CohClass cy = CohClass::symbol(y);
        REQUIRE(integrate(mul(act(f, cx), cy)) ==
                integrate(mul(cx, act(ft, cy))));
      }
    }
  }
  CHECK(transpose(ps.diag) == ps.diag);
  CHECK(transpose(ps.p0) == ps.p2);
}

TEST_CASE("transpose duality holds for random correspondences of any degree") {
  // For homogeneous F the degree-dictated sign is (-1)^{deg F · deg y}; it is
  // trivial for the degree-2 correspondences used everywhere else.
  Rng rng(555);
  for (int i = 0; i < 300; ++i) {
    const int degree = rng.uniform(0, 4);
    const Correspondence f(
        testing::random_homogeneous_class(rng, 2, degree, 5, 3));
    const Correspondence ft = transpose(f);
    for (auto x : curve_basis(5)) {
      for (auto y : curve_basis(5)) {
        const CohClass cx = CohClass::symbol(x);
        const CohClass cy = CohClass::symbol(y);
        const int sign = (degree * y.degree()) % 2 == 0 ? 1 : -1;
        REQUIRE(integrate(mul(act(f, cx), cy)) ==
                Rational(sign) * integrate(mul(cx, act(ft, cy))));
      }
    }
  }
}

TEST_CASE("projector suite: orthogonal idempotents with the right images") {
  CHECK(check_projector_suite(model()).passed());

  const ProjectorSet ps = projectors(model());
  CHECK(ps.p0.cls + ps.p1.cls + ps.p2.cls == ps.diag.cls);
  CohClass block_sum(2);
  for (int i = 0; i < 5; ++i) {
    block_sum += ps.block[static_cast<std::size_t>(i)].cls;
    // image of the refined projector is exactly V_i
    for (int k = 1; k <= 5; ++k) {
      for (auto s : {BasisSymbol::e(k), BasisSymbol::f(k)}) {
        const CohClass image =
            act(ps.block[static_cast<std::size_t>(i)], CohClass::symbol(s));
        if (k == i + 1)
          CHECK(image == CohClass::symbol(s));
        else
          CHECK(image.is_zero());
      }
    }
  }
  CHECK(block_sum == ps.p1.cls);
}

TEST_CASE("the averaging expansion collapses to five block projectors") {
  CHECK(check_expansion(model()).passed());

  const ProjectorSet ps = projectors(model());
  const auto terms = expansion_terms(model());
  REQUIRE(terms.size() == 32);
  int nonzero = 0;
  for (const auto& t : terms) {
    const int zeros =
        static_cast<int>(std::count(t.r.begin(), t.r.end(), 0));
    if (zeros == 1) {
      const int i =
          static_cast<int>(std::find(t.r.begin(), t.r.end(), 0) - t.r.begin());
      CHECK(!t.is_zero);
      CHECK(t.term == ps.block[static_cast<std::size_t>(i)]);
      ++nonzero;
    } else {
      CHECK(t.is_zero);
    }
  }
  CHECK(nonzero == 5);

  const std::string csv = expansion_csv(terms);
  CHECK(csv.find("r_vector,zero,term") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 33);
  CHECK(csv.find("01111,0,") != std::string::npos);
  CHECK(csv.find("11111,1,0") != std::string::npos);
}

TEST_CASE("negative control: corrupted action breaks the expansion") {
  const HumbertModel bad = HumbertModel::with_corrupted_action();
  const CheckReport report = check_expansion(bad);
  CHECK(report.status == Status::Fail);
  REQUIRE(report.witness.has_value());
  // With s_0 anti-invariant everywhere, the r_0 = 0 term dies and the
  // all-ones term turns into the V_0 projector: still five nonzero terms,
  // but in the wrong places.
  const auto terms = expansion_terms(bad);
  const ProjectorSet good = projectors(model());
  for (const auto& t : terms) {
    const int zeros = static_cast<int>(std::count(t.r.begin(), t.r.end(), 0));
    if (zeros == 0) {
      CHECK(!t.is_zero);
      CHECK(t.term == good.block[0]);
    } else if (zeros == 1 && t.r[0] == 0) {
      CHECK(t.is_zero);
    } else if (zeros == 1) {
      CHECK(!t.is_zero);
    } else {
      CHECK(t.is_zero);
    }
  }
}

TEST_CASE("rank of the degree-2 tautological span on C^2") {
  const CohClass o1 = pullback(CohClass::symbol(BasisSymbol::w()), {1}, 2);
  const CohClass o2 = pullback(CohClass::symbol(BasisSymbol::w()), {2}, 2);
  const std::vector<CohClass> span = {o1, o2, tau_class(5)};
  CHECK(rank_of_span(span, 2) == 3);
}

TEST_CASE("duality solve rejects nothing on the standard model") {
  // the solver must produce classes, not throw, across truncations
  for (int pairs : {1, 2, 3, 5}) {
    CHECK(diagonal_class(pairs).term_count() ==
          static_cast<std::size_t>(2 * pairs + 2));
    CHECK(!small_diagonal(pairs).is_zero());
    CHECK(tau_class(pairs).term_count() ==
          static_cast<std::size_t>(2 * pairs));
  }
}
