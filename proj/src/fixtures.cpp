#include "loopmod/fixtures.hpp"

namespace loopmod::fixtures {

namespace {

Matrix m2(long a, long b, long c, long d) {
  Matrix m(2, 2);
  m(0, 0) = Cyc(a);
  m(0, 1) = Cyc(b);
  m(1, 0) = Cyc(c);
  m(1, 1) = Cyc(d);
  return m;
}

}  // namespace

std::shared_ptr<const GradedAlgebra> algebra_from_matrices(const FinAbGroup& g, const std::vector<Matrix>& basis,
                                                           const std::vector<GroupElem>& degrees) {
  return std::make_shared<const GradedAlgebra>(matrix_algebra(g, basis, degrees, false).algebra);
}

GradedModule natural_module(std::shared_ptr<const GradedAlgebra> a, const std::vector<Matrix>& basis,
                            const QuotientMap& grading, const std::vector<GroupElem>& degrees) {
  return GradedModule(std::move(a), grading, degrees, basis);
}

std::vector<Matrix> pauli_matrices() { return {m2(1, 0, 0, 1), m2(1, 0, 0, -1), m2(0, 1, 1, 0), m2(0, 1, -1, 0)}; }

std::shared_ptr<const GradedAlgebra> pauli_algebra() {
  static const auto alg = [] {
    FinAbGroup g({2, 2});
    return algebra_from_matrices(g, pauli_matrices(),
                                 {g.from_coords({0, 0}), g.from_coords({1, 0}), g.from_coords({0, 1}), g.from_coords({1, 1})});
  }();
  return alg;
}

GradedModule pauli_regular() { return regular_module(pauli_algebra()); }

GradedModule pauli_natural() {
  auto a = pauli_algebra();
  const FinAbGroup& g = a->group();
  QuotientMap q(g, Subgroup::generated(g, {g.from_coords({1, 0})}));
  GroupElem swap = q.apply(g.from_coords({0, 1}));
  return natural_module(a, pauli_matrices(), q, {q.target().identity(), swap});
}

std::vector<Matrix> m2rz2_matrices() { return {m2(1, 0, 0, 1), m2(0, 1, -1, 0), m2(1, 0, 0, -1), m2(0, 1, 1, 0)}; }

std::shared_ptr<const GradedAlgebra> m2rz2_algebra() {
  static const auto alg = [] {
    FinAbGroup g({2});
    GroupElem e = g.identity();
    GroupElem t = g.generator(0);
    return algebra_from_matrices(g, m2rz2_matrices(), {e, e, t, t});
  }();
  return alg;
}

GradedModule m2rz2_regular() { return regular_module(m2rz2_algebra()); }

std::shared_ptr<const GradedAlgebra> z4z4_algebra() {
  static const auto alg = [] {
    FinAbGroup t({4, 4});
    Bicharacter beta(t, {{Phase(), Phase(3, 4)}, {Phase(1, 4), Phase()}});
    return std::make_shared<const GradedAlgebra>(
        twisted_group_algebra(Cocycle::from_bicharacter(SubgroupPresentation(Subgroup::whole(t)), beta)));
  }();
  return alg;
}

std::shared_ptr<const GradedAlgebra> smash_algebra(long n) {
  FinAbGroup a({n});
  FinAbGroup t = a.direct_product(a);
  Bicharacter beta(t, {{Phase(), Phase(n - 1, n)}, {Phase(1, n), Phase()}});
  return std::make_shared<const GradedAlgebra>(smash_product(a, a, beta));
}

std::shared_ptr<const GradedAlgebra> group_algebra_z2() {
  static const auto alg = [] {
    FinAbGroup g({2});
    return std::make_shared<const GradedAlgebra>(twisted_group_algebra(Cocycle::trivial(Subgroup::whole(g))));
  }();
  return alg;
}

GradedModule z2_sign_module(long sign) {
  auto a = group_algebra_z2();
  const FinAbGroup& g = a->group();
  QuotientMap q(g, Subgroup::whole(g));
  std::vector<Matrix> act;
  for (auto x : a->degrees()) {
    Matrix m(1, 1);
    m(0, 0) = Cyc(x == g.identity() ? 1 : sign);
    act.push_back(m);
  }
  return GradedModule(a, q, {q.target().identity()}, act);
}

}  // namespace loopmod::fixtures
