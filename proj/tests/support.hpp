// Small hand-rolled generators shared by the unit tests.
#pragma once

#include <random>

#include "loopmod/abgroup.hpp"
#include "loopmod/corpus.hpp"
#include "loopmod/linalg.hpp"

namespace testsupport {

inline loopmod::Matrix mat(const std::vector<std::vector<long>>& rows) {
  loopmod::Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = loopmod::Cyc(rows[i][j]);
  return m;
}

}  // namespace testsupport

#include <memory>

#include "loopmod/galg.hpp"
#include "loopmod/gmod.hpp"

namespace testsupport {

// Regular module of a random twisted group algebra of g.
inline loopmod::GradedModule random_regular(std::mt19937_64& rng, const loopmod::FinAbGroup& g) {
  using namespace loopmod;
  Bicharacter beta = loopmod::random_alternating(rng, g);
  auto alg = std::make_shared<const GradedAlgebra>(
      twisted_group_algebra(Cocycle::from_bicharacter(SubgroupPresentation(Subgroup::whole(g)), beta)));
  return regular_module(alg);
}

inline loopmod::Subgroup random_subgroup(std::mt19937_64& rng, const loopmod::FinAbGroup& g) {
  auto all = loopmod::all_subgroups(g);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

}  // namespace testsupport
