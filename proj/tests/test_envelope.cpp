#include <doctest.h>

#include "loopmod/corpus.hpp"
#include "loopmod/envelope.hpp"
#include "loopmod/fixtures.hpp"
#include "support.hpp"

using namespace loopmod;
namespace fx = loopmod::fixtures;
using testsupport::mat;

namespace {

std::vector<Matrix> matrix_units() {
  return {mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}}), mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})};
}

GradedModule column_module(const FinAbGroup& g, const std::vector<GroupElem>& degrees) {
  auto a = fx::algebra_from_matrices(g, matrix_units(), degrees);
  QuotientMap q(g, Subgroup::whole(g));
  return fx::natural_module(a, matrix_units(), q, {q.target().identity(), q.target().identity()});
}

}  // namespace

TEST_CASE("inertia of a module over a trivially graded algebra is everything") {
  FinAbGroup g({2});
  GradedModule v = column_module(g, {g.identity(), g.identity(), g.identity(), g.identity()});
  SimpleInertia k = inertia_of_simple(v);
  CHECK(k.group.order() == 2);
  InertiaGrading gr = grade_by_inertia(v, k);
  CHECK(gr.ok());
  CHECK(gr.to_az.target().order() == 2);
  std::size_t in_identity = 0;
  for (auto d : gr.degrees) in_identity += d == gr.to_az.target().identity();
  CHECK(in_identity == 4);
}

TEST_CASE("the Pauli module: inertia, grading by inertia and envelope") {
  GradedModule v = fx::pauli_natural();
  SimpleInertia k = inertia_of_simple(v);
  CHECK(k.group.order() == 4);
  InertiaGrading gr = grade_by_inertia(v, k);
  CHECK(gr.ok());
  REQUIRE(gr.basis.size() == 4);
  // Each component is the line through the Pauli matrix of that degree.
  auto mats = fx::pauli_matrices();
  auto a = fx::pauli_algebra();
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t j = 0;
    while (gr.degrees[j] != a->degree(i)) ++j;
    EchelonBasis line(4);
    line.insert(gr.basis[j].flat());
    CHECK(line.contains(mats[i].flat()));
  }
  EnvelopeResult e = graded_envelope(v);
  CHECK(e.ok());
  CHECK(e.z.order() == 1);
  CHECK(e.w.dim() == 4);
  CHECK(is_isomorphic_graded(e.w, fx::pauli_regular()).isomorphic());
  CHECK(intertwiners_ungraded(v, e.w).size() == 2);
}

TEST_CASE("sign modules of the group algebra of Z2") {
  for (long sign : {1L, -1L}) {
    GradedModule v = fx::z2_sign_module(sign);
    SimpleInertia k = inertia_of_simple(v);
    CHECK(k.group.order() == 1);
    EnvelopeResult e = graded_envelope(v);
    CHECK(e.ok());
    CHECK(e.z.order() == 2);
    CHECK(e.w.dim() == 2);
    CHECK_FALSE(intertwiners_ungraded(fx::z2_sign_module(-sign), e.w).empty());
  }
}

TEST_CASE("graded Wedderburn splitting of small matrix algebras") {
  FinAbGroup one({1});
  WedderburnSplit f = graded_wedderburn_split(one, {mat({{1}})}, {one.identity()});
  CHECK(f.ok());
  CHECK(f.ideal.size() == 1);
  CHECK(f.division.dim() == 1);

  FinAbGroup g({2});
  WedderburnSplit el = graded_wedderburn_split(g, matrix_units(), {g.identity(), g.identity(), g.generator(0), g.generator(0)});
  CHECK(el.ok());
  CHECK(el.ideal.size() == 2);
  CHECK(el.division.dim() == 1);

  auto a = fx::pauli_algebra();
  WedderburnSplit p = graded_wedderburn_split(a->group(), fx::pauli_matrices(), a->degrees());
  CHECK(p.ok());
  CHECK(p.ideal.size() == 4);
  CHECK(p.division.dim() == 4);
}

TEST_CASE("envelopes of central images across the corpus") {
  for (const auto& inst : corpus(31, 10, CorpusLimits{})) {
    CAPTURE(inst.seed);
    const GradedModule& w = inst.module;
    auto s = maximal_graded_subfields(w);
    GradedModule v = central_image(w, s.subfields.front(), Character::trivial(w.grading_group())).module;
    EnvelopeResult e = graded_envelope(v);
    CHECK(e.ok());
    CHECK(is_isomorphic_graded(e.w, w).outcome != IsoOutcome::inconclusive);
    // Central images of the envelope are twists of V.
    auto se = maximal_graded_subfields(e.w);
    for (const auto& f : se.subfields) {
      GradedModule vi = central_image(e.w, f, Character::trivial(e.w.grading_group())).module;
      bool twist_found = false;
      for (const auto& chi : characters(w.grading_group())) {
        twist_found = twist_found || is_isomorphic_ungraded(twist_by_automorphism(v, chi), vi).isomorphic();
      }
      CHECK(twist_found);
    }
  }
}

TEST_CASE("the End(V) grading carries the Brauer invariant") {
  std::vector<GradedModule> ws = {regular_module(fx::smash_algebra(3)), regular_module(fx::z4z4_algebra()),
                                  fx::pauli_regular()};
  for (const auto& inst : corpus(8, 6, CorpusLimits{})) ws.push_back(inst.module);
  for (const auto& w : ws) {
    auto s = maximal_graded_subfields(w);
    GradedModule v = central_image(w, s.subfields.front(), Character::trivial(w.grading_group())).module;
    EndomorphismGrading eg = grade_endomorphism_algebra(w, v);
    REQUIRE(eg.ok());
    WedderburnSplit split = graded_wedderburn_split(eg.to_gz.target(), eg.basis, eg.degrees);
    REQUIRE(split.ok());
    CHECK(invariant_of_division(split.division.algebra().algebra) == brauer_invariant(w).invariant());
  }
}
