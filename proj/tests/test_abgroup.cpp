#include <doctest.h>

#include <set>

#include "loopmod/abgroup.hpp"

using namespace loopmod;

namespace {

const std::vector<std::vector<long>> kShapes = {{1}, {2}, {4}, {6}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {2, 2, 2}, {4, 4}, {2, 3}};

Bicharacter pauli_beta() {
  FinAbGroup t({2, 2});
  return Bicharacter(t, {{Phase(), Phase(1, 2)}, {Phase(1, 2), Phase()}});
}

}  // namespace

TEST_CASE("group basics") {
  FinAbGroup g({2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  GroupElem a = g.from_coords({1, 3});
  CHECK(g.coords(g.mul(a, a)) == std::vector<long>{0, 2});
  CHECK(g.mul(a, g.inv(a)) == g.identity());
  CHECK(g.element_order(a) == 4);
  CHECK(g.format(a) == "(1,3)");
}

TEST_CASE("characters and their values") {
  CHECK(characters(FinAbGroup({2, 2})).size() == 4);
  CHECK(characters(FinAbGroup({1})).size() == 1);
  FinAbGroup z6({6});
  std::set<Phase> values;
  for (const auto& chi : characters(z6)) {
    CHECK(characters(z6).front().is_trivial());
    for (auto g : z6.elements()) {
      values.insert(chi(g));
      CHECK(chi(g).order() <= 6);
      CHECK(6 % chi(g).order() == 0);
    }
  }
  CHECK(values.size() == 6);
}

TEST_CASE("orthogonal complements") {
  FinAbGroup g({2, 2});
  CHECK(orthogonal_complement(Subgroup::whole(g)).order() == 1);
  CHECK(orthogonal_complement(Subgroup::trivial(g)).order() == 4);
  CHECK(orthogonal_complement(Subgroup::generated(g, {g.generator(0)})).order() == 2);
  for (const auto& shape : kShapes) {
    FinAbGroup h(shape);
    for (const auto& s : all_subgroups(h)) CHECK(s.order() * orthogonal_complement(s).order() == h.order());
  }
}

TEST_CASE("extending characters from a subgroup") {
  FinAbGroup z4({4});
  Subgroup two = Subgroup::generated(z4, {z4.from_coords({2})});
  auto ext = extend_character(two, {Phase(), Phase(1, 2)});
  REQUIRE(ext.size() == 2);
  std::set<Phase> gen_values;
  for (const auto& chi : ext) gen_values.insert(chi(z4.generator(0)));
  CHECK(gen_values == std::set<Phase>{Phase(1, 4), Phase(3, 4)});
  auto trivial_ext = extend_character(two, {Phase(), Phase()});
  CHECK(trivial_ext.size() == 2);
  Subgroup all = Subgroup::whole(z4);
  std::vector<Phase> vals;
  for (auto g : all.elements()) vals.push_back(Phase(static_cast<long>(g.index), 4));
  CHECK(extend_character(all, vals).size() == 1);
}

TEST_CASE("subgroup characters are a transversal of the complement") {
  for (const auto& shape : kShapes) {
    FinAbGroup g(shape);
    for (const auto& h : all_subgroups(g)) {
      auto chars = subgroup_characters(h);
      CHECK(chars.size() == h.order());
      CHECK(chars.front().is_trivial());
      for (std::size_t i = 0; i < chars.size(); ++i) {
        for (std::size_t j = i + 1; j < chars.size(); ++j) CHECK_FALSE(same_restriction(chars[i], chars[j], h));
      }
    }
  }
}

TEST_CASE("quotient maps, sections and transversals") {
  FinAbGroup z4({4});
  QuotientMap q(z4, Subgroup::generated(z4, {z4.from_coords({2})}));
  CHECK(q.target().order() == 2);
  CHECK(q.transversal() == std::vector<GroupElem>{z4.from_coords({0}), z4.from_coords({1})});
  FinAbGroup g({2, 2});
  CHECK(QuotientMap(g, Subgroup::trivial(g)).transversal().size() == 4);
  CHECK(QuotientMap(g, Subgroup::whole(g)).transversal() == std::vector<GroupElem>{g.identity()});
  for (const auto& shape : kShapes) {
    FinAbGroup src(shape);
    for (const auto& h : all_subgroups(src)) {
      QuotientMap p(src, h);
      CHECK(p.target().order() * h.order() == src.order());
      for (std::size_t i = 0; h.order() > 1 && i + 1 < p.target().factors().size(); ++i) {
        CHECK(p.target().factors()[i + 1] % p.target().factors()[i] == 0);
      }
      for (auto x : p.target().elements()) CHECK(p.apply(p.section(x)) == x);
      std::set<GroupElem> images;
      for (auto t : p.transversal()) images.insert(p.apply(t));
      CHECK(images.size() == p.target().order());
      for (auto a : src.elements()) {
        CHECK((p.apply(a) == p.target().identity()) == h.contains(a));
        for (auto b : src.elements()) CHECK(p.apply(src.mul(a, b)) == p.target().mul(p.apply(a), p.apply(b)));
      }
    }
  }
}

TEST_CASE("subgroup presentations are isomorphisms onto the subgroup") {
  for (const auto& shape : kShapes) {
    FinAbGroup g(shape);
    for (const auto& s : all_subgroups(g)) {
      SubgroupPresentation p(s);
      const FinAbGroup& a = p.abstract();
      CHECK(a.order() == s.order());
      for (auto x : a.elements()) {
        CHECK(p.abstract_of(p.embed(x)) == x);
        for (auto y : a.elements()) CHECK(p.embed(a.mul(x, y)) == g.mul(p.embed(x), p.embed(y)));
      }
    }
  }
}

TEST_CASE("smith normal form reproduces the input") {
  IntMatrix a = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm s = smith_normal_form(a);
  auto mul = [](const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.size(), std::vector<long>(y[0].size(), 0));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t j = 0; j < y[0].size(); ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
  };
  CHECK(mul(mul(s.u, a), s.v) == s.d);
  CHECK(s.d[0][0] == 2);
  CHECK(s.d[1][1] == 6);
  CHECK(s.d[2][2] == 12);
  IntMatrix id = mul(s.v, s.v_inv);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(id[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("radicals and isotropic subgroups") {
  FinAbGroup t({2, 2});
  Bicharacter triv = Bicharacter::trivial(t);
  CHECK(radical(triv).order() == 4);
  auto max_triv = isotropic_subgroups(triv, true);
  REQUIRE(max_triv.size() == 1);
  CHECK(max_triv[0].order() == 4);

  Bicharacter beta = pauli_beta();
  CHECK(beta.is_alternating());
  CHECK(radical(beta).order() == 1);
  auto maxes = isotropic_subgroups(beta, true);
  REQUIRE(maxes.size() == 3);
  for (const auto& h : maxes) CHECK(h.order() == 2);

  FinAbGroup t4({2, 2, 2, 2});
  std::vector<std::vector<Phase>> m(4, std::vector<Phase>(4));
  m[0][1] = Phase(1, 2);
  m[1][0] = Phase(1, 2);
  Bicharacter block(t4, m);
  Subgroup rad = radical(block);
  CHECK(rad == Subgroup::generated(t4, {t4.generator(2), t4.generator(3)}));
  for (const auto& h : isotropic_subgroups(block, true)) {
    CHECK(rad.is_subset_of(h));
    CHECK(t4.order() * rad.order() == h.order() * h.order());
    CHECK(tilde_beta_kernel_is(block, h));
  }
}

TEST_CASE("the Z4 x Z4 example has a maximal isotropic subgroup without complement") {
  FinAbGroup t({4, 4});
  Bicharacter beta(t, {{Phase(), Phase(3, 4)}, {Phase(1, 4), Phase()}});
  CHECK(beta.is_alternating());
  Subgroup doubled = Subgroup::generated(t, {t.from_coords({2, 0}), t.from_coords({0, 2})});
  auto maxes = isotropic_subgroups(beta, true);
  CHECK(std::find(maxes.begin(), maxes.end(), doubled) != maxes.end());
  for (const auto& h : maxes) CHECK(h.order() == 4);
  bool has_complement = false;
  for (const auto& a : all_subgroups(t)) {
    if (a.order() != 4) continue;
    bool meets_trivially = true;
    for (auto x : a.elements()) meets_trivially = meets_trivially && (x == t.identity() || !doubled.contains(x));
    has_complement = has_complement || meets_trivially;
  }
  CHECK_FALSE(has_complement);
}
