#include <doctest.h>

#include <random>
#include <set>

#include "loopmod/fixtures.hpp"
#include "loopmod/gmod.hpp"

using namespace loopmod;
namespace fx = loopmod::fixtures;

namespace {

bool spans_equal(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t n) {
  EchelonBasis ea(n), eb(n);
  for (const auto& v : a) ea.insert(v);
  for (const auto& v : b) eb.insert(v);
  if (ea.size() != eb.size()) return false;
  for (const auto& v : b) {
    if (!ea.contains(v)) return false;
  }
  return true;
}

Vec random_homogeneous(std::mt19937_64& rng, const GradedModule& w) {
  auto supp = w.support();
  std::uniform_int_distribution<std::size_t> pick(0, supp.size() - 1);
  std::uniform_int_distribution<long> coef(-5, 5);
  GroupElem g = supp[pick(rng)];
  Vec v(w.dim());
  while (is_zero_vec(v)) {
    for (auto i : w.component(g)) v[i] = Cyc(coef(rng));
  }
  return v;
}

}  // namespace

TEST_CASE("Pauli regular module") {
  GradedModule w = fx::pauli_regular();
  CHECK(validate(w).ok());
  CHECK(validate(w.algebra()).ok());
  SimplicityResult s = is_graded_simple(w);
  CHECK(s.verdict == Verdict::yes);
  CHECK(is_simple_ungraded(w).verdict == Verdict::no);
  Centralizer c = graded_centralizer(w);
  CHECK(c.dim() == 4);
  CHECK(c.support().size() == 4);
  CHECK(validate(c.algebra().algebra).ok());
  CHECK(ungraded_centralizer(w).size() == 4);
  // The centralizer is the algebra acting by right multiplication.
  std::vector<Vec> right, cent;
  for (std::size_t b = 0; b < 4; ++b) right.push_back(w.algebra().right_matrix(b).flat());
  for (const auto& m : c.maps) cent.push_back(m.matrix.flat());
  CHECK(spans_equal(right, cent, 16));
}

TEST_CASE("Pauli natural module graded by a quotient") {
  GradedModule v = fx::pauli_natural();
  CHECK(v.grading_group().order() == 2);
  CHECK(validate(v).ok());
  CHECK(is_simple_ungraded(v).verdict == Verdict::yes);
  CHECK(is_graded_simple(v).verdict == Verdict::yes);
  CHECK(graded_centralizer(v).dim() == 1);

  // Moving e1 into the degree of e0 breaks exactly the two off-diagonal basis elements on both vectors.
  std::vector<GroupElem> bad = {v.degree(0), v.degree(0)};
  GradedModule broken(v.algebra_ptr(), v.grading(), bad, v.actions());
  auto rep = validate(broken);
  std::set<std::string> got(rep.violations.begin(), rep.violations.end());
  const auto& labels = v.algebra().labels();
  std::set<std::string> want = {"grading: " + labels[2] + " on e0", "grading: " + labels[2] + " on e1",
                                "grading: " + labels[3] + " on e0", "grading: " + labels[3] + " on e1"};
  CHECK(got == want);
}

TEST_CASE("doubled modules are not simple and come with a witness") {
  GradedModule w = fx::pauli_regular();
  GradedModule ww = direct_sum(w, w);
  CHECK(validate(ww).ok());
  auto s = is_graded_simple(ww);
  CHECK(s.verdict == Verdict::no);
  REQUIRE_FALSE(s.witness.empty());
  CHECK(s.witness.size() < ww.dim());
  std::vector<Vec> homogeneous;
  for (const auto& v : s.witness) {
    for (auto g : ww.support()) {
      Vec p = ww.project(v, g);
      if (!is_zero_vec(p)) homogeneous.push_back(p);
    }
  }
  CHECK(spin_all(ww, homogeneous).size() == s.witness.size());
}

TEST_CASE("the rational quaternion-like grading of 2x2 matrices") {
  GradedModule w = fx::m2rz2_regular();
  CHECK(validate(w).ok());
  CHECK(w.field_order() <= 2);
  auto s = is_graded_simple(w);
  CHECK(s.verdict == Verdict::yes);
  CHECK(graded_division_check(w.algebra()).is_division());
  Centralizer c = graded_centralizer(w);
  CHECK(c.dim() == 4);
  CHECK(ungraded_centralizer(w).size() == c.dim());
  CHECK(intertwiners(w, w, w.grading_group().identity()).size() == 2);
  auto u = is_simple_ungraded(w);
  CHECK(u.verdict == Verdict::no);
  CHECK(u.witness.size() == 2);
  // Over Q(i) the even part of the centralizer splits.
  GradedModule wi = w;
  wi.raise_field_order(4);
  CHECK(is_graded_simple(wi).verdict == Verdict::no);
}

TEST_CASE("square test in cyclotomic fields") {
  CHECK(is_square_in(Cyc(-4), 2) == false);
  CHECK(is_square_in(Cyc(-4), 4) == true);
  CHECK(is_square_in(Cyc(2), 8) == true);
  CHECK(is_square_in(Cyc(2), 4) == false);
  CHECK(is_square_in(Cyc(-3), 3) == true);
  CHECK(is_square_in(Cyc(5), 5) == true);
  CHECK(is_square_in(Cyc(3), 12) == true);
  CHECK(is_square_in(Cyc(3), 6) == false);
  CHECK(is_square_in(Cyc(Rational(9, 4)), 1) == true);
  CHECK(is_square_in(Cyc::zeta(3, 1), 3) == true);
  CHECK(is_square_in(Cyc::zeta(4, 1), 4) == false);
}

TEST_CASE("shifts") {
  GradedModule w = fx::pauli_regular();
  const FinAbGroup& g = w.grading_group();
  CHECK(shift(w, g.identity()).degrees() == w.degrees());
  for (auto a : g.elements()) {
    CHECK(shift(shift(w, a), g.inv(a)).degrees() == w.degrees());
    for (auto b : g.elements()) CHECK(shift(shift(w, a), b).degrees() == shift(w, g.mul(a, b)).degrees());
    // Every degree lies in the centralizer support, so every shift is isomorphic.
    CHECK(is_isomorphic_graded(shift(w, a), w).isomorphic());
  }
  GradedModule v = fx::pauli_natural();
  GroupElem other = v.degree(1);
  auto r = is_isomorphic_graded(shift(v, other), v);
  CHECK(r.outcome == IsoOutcome::not_isomorphic);
  CHECK(is_isomorphic_ungraded(shift(v, other), v).isomorphic());
}

TEST_CASE("isomorphism tests") {
  GradedModule w = fx::pauli_regular();
  auto self = is_isomorphic_graded(w, w);
  REQUIRE(self.isomorphic());
  CHECK_FALSE(det(*self.map).is_zero());
  GradedModule v = fx::pauli_natural();
  CHECK(is_isomorphic_ungraded(v, v).isomorphic());
}

TEST_CASE("spinning") {
  GradedModule w = fx::pauli_regular();
  CHECK(spin(w, Vec(4), true).empty());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) CHECK(spin(w, random_homogeneous(rng, w), true).size() == 4);
  GradedModule ww = direct_sum(w, w);
  Vec first(8);
  first[0] = Cyc(1);
  auto s = spin(ww, first, true);
  CHECK(s.size() == 4);
  for (const auto& v : s)
    for (std::size_t i = 4; i < 8; ++i) CHECK(v[i].is_zero());
  GradedModule m = fx::m2rz2_regular();
  for (int i = 0; i < 20; ++i) CHECK(spin(m, random_homogeneous(rng, m), true).size() == 4);
}

TEST_CASE("graded density") {
  GradedModule v = fx::pauli_natural();
  Vec e0{Cyc(1), Cyc()};
  Vec e1{Cyc(), Cyc(1)};
  auto id = solve_density(v, {e0}, {e0});
  REQUIRE(id.element);
  CHECK(v.act(*id.element) * e0 == e0);
  auto swap = solve_density(v, {e0}, {e1});
  REQUIRE(swap.element);
  CHECK(v.act(*swap.element) * e0 == e1);
  auto dep = solve_density(v, {e0, e0}, {e0, e1});
  CHECK_FALSE(dep.element);
  CHECK(dep.error.find("dependent") != std::string::npos);
  GradedModule w = fx::pauli_regular();
  auto two = solve_density(w, {w.algebra().basis_vector(0)}, {w.algebra().basis_vector(3)});
  REQUIRE(two.element);
  CHECK(w.act(*two.element) * w.algebra().basis_vector(0) == w.algebra().basis_vector(3));
}

TEST_CASE("ungraded simplicity finds zero divisors with cube-root eigenvalues") {
  // The regular module of a 9-dimensional split twisted group algebra of Z3 x Z3 is three copies of a simple module.
  GradedModule w = regular_module(fx::smash_algebra(3));
  w.raise_field_order(3);
  SimplicityResult r = is_simple_ungraded(w);
  CHECK(r.verdict == Verdict::no);
  CHECK(is_graded_simple(w).simple());
}
