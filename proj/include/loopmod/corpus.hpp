// Seeded random graded-simple modules W = M_k(D) acting on k copies of a graded division algebra D.
#pragma once

#include <cstdint>
#include <random>

#include "loopmod/gmod.hpp"

namespace loopmod {

struct CorpusInstance {
  std::uint64_t seed = 0;
  FinAbGroup group;
  Subgroup support;  // support T of D
  Bicharacter beta;  // on the invariant-factor presentation of T
  std::size_t copies = 1;
  std::vector<GroupElem> shifts;  // degrees of the standard column vectors
  GradedModule module;            // graded by the identity quotient of the group
};

struct CorpusLimits {
  std::size_t max_order = 8;
  std::size_t max_dim = 12;
};

CorpusInstance random_instance(std::uint64_t seed, const CorpusLimits& limits);
std::vector<CorpusInstance> corpus(std::uint64_t seed, std::size_t count, const CorpusLimits& limits);

// Random alternating bicharacter on an invariant-factor group.
Bicharacter random_alternating(std::mt19937_64& rng, const FinAbGroup& t);
// Random invertible homogeneous change of basis applied componentwise.
GradedModule scramble(std::mt19937_64& rng, const GradedModule& w);

}  // namespace loopmod
