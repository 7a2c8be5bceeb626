// Worked examples used by tests, the acceptance binary and the CLI self-test.
#pragma once

#include <memory>

#include "loopmod/gmod.hpp"

namespace loopmod::fixtures {

// 2x2 matrices graded by Z2 x Z2 with basis I, diag(1,-1), [[0,1],[1,0]], [[0,1],[-1,0]].
std::vector<Matrix> pauli_matrices();
std::shared_ptr<const GradedAlgebra> pauli_algebra();
GradedModule pauli_regular();
// Column space F^2 graded by Z2 x Z2 / <(1,0)>.
GradedModule pauli_natural();

// 2x2 rational matrices graded by Z2 with even part span{I, [[0,1],[-1,0]]}.
std::vector<Matrix> m2rz2_matrices();
std::shared_ptr<const GradedAlgebra> m2rz2_algebra();
GradedModule m2rz2_regular();

// Twisted group algebra of Z4 x Z4 with the nondegenerate beta(e1, e2) = zeta_4^3.
std::shared_ptr<const GradedAlgebra> z4z4_algebra();
// F Zn # F Zn with the nondegenerate commutation beta(e1, e2) = zeta_n^{-1}.
std::shared_ptr<const GradedAlgebra> smash_algebra(long n);
// Group algebra of Z2, graded by Z2.
std::shared_ptr<const GradedAlgebra> group_algebra_z2();
// One-dimensional module of the group algebra of Z2 where the generator acts by sign; trivially graded.
GradedModule z2_sign_module(long sign);

// Graded algebra given by independent matrices closed under products.
std::shared_ptr<const GradedAlgebra> algebra_from_matrices(const FinAbGroup& g, const std::vector<Matrix>& basis,
                                                           const std::vector<GroupElem>& degrees);
// Column space of a matrix algebra built by algebra_from_matrices, columns graded by a quotient.
GradedModule natural_module(std::shared_ptr<const GradedAlgebra> a, const std::vector<Matrix>& basis,
                            const QuotientMap& grading, const std::vector<GroupElem>& degrees);

}  // namespace loopmod::fixtures
