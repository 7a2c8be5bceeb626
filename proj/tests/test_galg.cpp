#include <doctest.h>

#include "loopmod/galg.hpp"
#include "support.hpp"

using namespace loopmod;
using testsupport::mat;

namespace {

const std::vector<std::vector<long>> kShapes = {{2}, {4}, {2, 2}, {2, 4}, {3, 3}, {2, 2, 2}, {4, 4}, {6}};

GradedAlgebra pauli() {
  FinAbGroup z2({2});
  FinAbGroup t = z2.direct_product(z2);
  Bicharacter beta(t, {{Phase(), Phase(1, 2)}, {Phase(1, 2), Phase()}});
  return smash_product(z2, z2, beta);
}

bool is_scalar_multiple_of_unit(const GradedAlgebra& a, const Vec& v) {
  return a.degree_of(v) == a.group().identity() && v.size() == a.dim();
}

}  // namespace

TEST_CASE("group algebras are commutative and central") {
  FinAbGroup g({2, 3});
  GradedAlgebra a = twisted_group_algebra(Cocycle::trivial(Subgroup::whole(g)));
  CHECK(validate(a).ok());
  CHECK(a.dim() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(a.multiply(a.basis_vector(i), a.basis_vector(j)) == a.multiply(a.basis_vector(j), a.basis_vector(i)));
  CenterResult c = center(a);
  CHECK(c.basis.size() == 6);
  CHECK(c.support.size() == 6);
}

TEST_CASE("the Pauli smash product is the 2x2 matrix algebra") {
  GradedAlgebra a = pauli();
  REQUIRE(validate(a).ok());
  CHECK(a.dim() == 4);
  // c_(a,b) -> A^a B^b with anticommuting A, B reproduces the structure constants.
  Matrix ma = mat({{1, 0}, {0, -1}});
  Matrix mb = mat({{0, 1}, {1, 0}});
  std::vector<Matrix> images;
  for (auto x : a.group().elements()) {
    auto c = a.group().coords(x);
    Matrix m = Matrix::identity(2);
    if (c[0]) m = m * ma;
    if (c[1]) m = m * mb;
    images.push_back(m);
  }
  MatrixAlgebra m = matrix_algebra(a.group(), images, a.degrees(), false);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Vec lhs = a.multiply(a.basis_vector(i), a.basis_vector(j));
      CHECK(realize(m, lhs) == images[i] * images[j]);
    }
  CHECK(span_closure(images, 2).size() == 4);
  CenterResult c = center(a);
  REQUIRE(c.basis.size() == 1);
  CHECK(c.support == std::vector<GroupElem>{a.group().identity()});
  CHECK(graded_division_check(a).is_division());
}

TEST_CASE("twisted group algebras from bicharacters are associative with center over the radical") {
  std::mt19937_64 rng(77);
  for (const auto& shape : kShapes) {
    FinAbGroup t(shape);
    for (int trial = 0; trial < 3; ++trial) {
      Bicharacter beta = random_alternating(rng, t);
      SubgroupPresentation pres(Subgroup::whole(t));
      Cocycle sigma = Cocycle::from_bicharacter(pres, beta);
      CHECK(sigma.violations().empty());
      GradedAlgebra a = twisted_group_algebra(sigma);
      CHECK(validate(a).ok());
      CenterResult c = center(a);
      Subgroup rad = radical(beta);
      std::vector<GroupElem> rad_ambient;
      for (auto x : rad.elements()) rad_ambient.push_back(pres.embed(x));
      std::sort(rad_ambient.begin(), rad_ambient.end());
      CHECK(c.support == rad_ambient);
      for (const auto& h : isotropic_subgroups(beta, true)) CHECK(a.support().size() * c.support.size() == h.order() * h.order());
      CHECK(graded_division_check(a).is_division());
      std::vector<Cyc> lambda;
      for (std::size_t i = 0; i < t.order(); ++i) lambda.push_back(i == 0 ? Cyc(1) : Cyc(static_cast<long>(i + 1)));
      CHECK(sigma.rescaled(lambda).violations().empty());
    }
  }
}

TEST_CASE("a broken cocycle is rejected") {
  FinAbGroup z2({2});
  Subgroup t = Subgroup::whole(z2);
  Cocycle bad(t, {Cyc(1), Cyc(2), Cyc(1), Cyc(1)});
  CHECK_FALSE(bad.violations().empty());
  CHECK_THROWS(twisted_group_algebra(bad));
}

TEST_CASE("trivial smash product is the base field") {
  FinAbGroup one({1});
  GradedAlgebra a = smash_product(one, one, Bicharacter::trivial(one.direct_product(one)));
  CHECK(a.dim() == 1);
  CHECK(validate(a).ok());
}

TEST_CASE("span closure") {
  CHECK(span_closure({Matrix::identity(3)}, 3).size() == 1);
  Matrix x = mat({{0, 1}, {1, 0}});
  Matrix z = mat({{1, 0}, {0, -1}});
  auto full = span_closure({x, z}, 2);
  CHECK(full.size() == 4);
  CHECK(span_closure(full, 2).size() == 4);
  Matrix n = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(span_closure({n}, 3).size() == 3);
}

TEST_CASE("radical via the trace form") {
  auto upper = span_closure({mat({{1, 0}, {0, 0}}), mat({{0, 1}, {0, 0}})}, 2);
  REQUIRE(upper.size() == 3);
  auto rad = radical_via_trace(upper);
  REQUIRE(rad.size() == 1);
  CHECK(rad[0](1, 0).is_zero());
  CHECK(rad[0](0, 0).is_zero());
  CHECK(rad[0](1, 1).is_zero());
  CHECK_FALSE(rad[0](0, 1).is_zero());
  CHECK(radical_via_trace(span_closure({mat({{0, 1}, {1, 0}}), mat({{1, 0}, {0, -1}})}, 2)).empty());
  CHECK(radical_via_trace({Matrix::identity(2)}).empty());
}

TEST_CASE("normalizing a subfield with x^2 = -1 raises the order to 4") {
  FinAbGroup z2({2});
  Subgroup t = Subgroup::whole(z2);
  GradedAlgebra a = twisted_group_algebra(Cocycle(t, {Cyc(1), Cyc(1), Cyc(1), Cyc(-1)}));
  NormalizedSubfield n = normalize_subfield_basis(a, t);
  CHECK(n.field_order % 4 == 0);
  CHECK(a.multiply(n.elements[1], n.elements[1]) == a.unit());
  CHECK(n.elements[0] == a.unit());
  CHECK(n.elements[1][1] == Cyc::zeta(4, -1));

  GradedAlgebra triv = twisted_group_algebra(Cocycle::trivial(t));
  NormalizedSubfield same = normalize_subfield_basis(triv, t);
  CHECK(same.elements[1] == triv.basis_vector(1));
  CHECK(normalize_subfield_basis(triv, Subgroup::trivial(z2)).elements.front() == triv.unit());

  GradedAlgebra three = twisted_group_algebra(Cocycle(t, {Cyc(1), Cyc(1), Cyc(1), Cyc(3)}));
  CHECK_THROWS_AS(normalize_subfield_basis(three, t), FieldNotSplit);
}

TEST_CASE("primitive central idempotents") {
  FinAbGroup z2({2});
  GradedAlgebra a = twisted_group_algebra(Cocycle::trivial(Subgroup::whole(z2)));
  auto ids = primitive_central_idempotents(a);
  REQUIRE(ids.idempotents.size() == 2);
  CHECK(ids.idempotents[0] == Vec{Cyc(Rational(1, 2)), Cyc(Rational(1, 2))});
  CHECK(ids.idempotents[1] == Vec{Cyc(Rational(1, 2)), Cyc(Rational(-1, 2))});
  CHECK(primitive_central_idempotents(pauli()).idempotents == std::vector<Vec>{pauli().unit()});

  std::mt19937_64 rng(3);
  for (const auto& shape : kShapes) {
    FinAbGroup t(shape);
    Bicharacter beta = random_alternating(rng, t);
    GradedAlgebra alg = twisted_group_algebra(Cocycle::from_bicharacter(SubgroupPresentation(Subgroup::whole(t)), beta));
    auto res = primitive_central_idempotents(alg);
    CHECK(res.idempotents.size() == radical(beta).order());
    Vec sum(alg.dim());
    for (std::size_t i = 0; i < res.idempotents.size(); ++i) {
      sum = add_vec(sum, res.idempotents[i]);
      for (std::size_t j = 0; j < res.idempotents.size(); ++j) {
        Vec p = alg.multiply(res.idempotents[i], res.idempotents[j]);
        CHECK(p == (i == j ? res.idempotents[i] : Vec(alg.dim())));
      }
    }
    CHECK(sum == alg.unit());
    CHECK(is_scalar_multiple_of_unit(alg, alg.unit()));
  }
}

TEST_CASE("a matrix algebra with trivial grading is not graded division") {
  FinAbGroup one({1});
  std::vector<Matrix> basis = {mat({{1, 0}, {0, 0}}), mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}}), mat({{0, 0}, {0, 1}})};
  MatrixAlgebra m = matrix_algebra(one, basis, std::vector<GroupElem>(4, one.identity()), false);
  CHECK(validate(m.algebra).ok());
  CHECK_FALSE(graded_division_check(m.algebra).is_division());
  MatrixAlgebra rev = matrix_algebra(one, basis, std::vector<GroupElem>(4, one.identity()), true);
  CHECK(validate(rev.algebra).ok());
  CHECK(rev.algebra.product(0, 1) != m.algebra.product(0, 1));
}
