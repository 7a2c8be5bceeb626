// Finite-dimensional graded unital associative algebras.
#pragma once

#include <string>
#include <vector>

#include "loopmod/abgroup.hpp"
#include "loopmod/linalg.hpp"

namespace loopmod {

struct Term {
  std::size_t index;
  Cyc coeff;
  bool operator==(const Term& o) const { return index == o.index && coeff == o.coeff; }
};
using SparseVec = std::vector<Term>;

// Basis x_0..x_{n-1}, homogeneous of the given degrees, with x_i x_j = sum_k c(i,j,k) x_k.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  GradedAlgebra(FinAbGroup group, std::vector<GroupElem> degrees, std::vector<std::string> labels, Vec unit);

  void set_product(std::size_t i, std::size_t j, SparseVec terms);

  const FinAbGroup& group() const { return group_; }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<GroupElem>& degrees() const { return degrees_; }
  GroupElem degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& unit() const { return unit_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }

  Vec basis_vector(std::size_t i) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec power(const Vec& a, long k) const;
  // Basis indices of degree g.
  std::vector<std::size_t> component(GroupElem g) const;
  std::vector<GroupElem> support() const;
  // Matrices of left and right multiplication by x_i in the basis.
  Matrix left_matrix(std::size_t i) const;
  Matrix right_matrix(std::size_t i) const;
  // Two-sided inverse, if any.
  std::optional<Vec> inverse_of(const Vec& a) const;
  // Homogeneous degree of a nonzero vector, if it is homogeneous.
  std::optional<GroupElem> degree_of(const Vec& a) const;
  // Largest cyclotomic order among structure constants and unit.
  int field_order() const;

 private:
  FinAbGroup group_;
  std::vector<GroupElem> degrees_;
  std::vector<std::string> labels_;
  Vec unit_;
  std::vector<SparseVec> products_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Associativity, unit and grading compatibility on all basis triples.
ValidationReport validate(const GradedAlgebra& a);

// Normalized 2-cocycle on a subgroup T of an ambient group; values indexed by positions in T.
class Cocycle {
 public:
  Cocycle() = default;
  Cocycle(Subgroup support, std::vector<Cyc> values);
  static Cocycle trivial(const Subgroup& support);
  // sigma(x, y) = beta-part below the diagonal, in the invariant-factor coordinates of the presentation.
  static Cocycle from_bicharacter(const SubgroupPresentation& pres, const Bicharacter& beta);

  const Subgroup& support() const { return support_; }
  const Cyc& operator()(GroupElem a, GroupElem b) const;
  // sigma'(s,t) = lambda_s lambda_t / lambda_{st} sigma(s,t); lambda indexed by positions, lambda_e = 1.
  Cocycle rescaled(const std::vector<Cyc>& lambda) const;
  std::vector<std::string> violations() const;

 private:
  Subgroup support_;
  std::vector<Cyc> values_;
};

// F^sigma T as an algebra graded by the ambient group of T.
GradedAlgebra twisted_group_algebra(const Cocycle& sigma);
// FA # FB graded by A x B with (a1 b1)(a2 b2) = beta(b1, a2) a1a2 b1b2.
GradedAlgebra smash_product(const FinAbGroup& a, const FinAbGroup& b, const Bicharacter& beta);

struct CenterResult {
  std::vector<Vec> basis;  // homogeneous
  std::vector<GroupElem> degrees;
  std::vector<GroupElem> support;
};
CenterResult center(const GradedAlgebra& a);

// Graded subalgebra spanned by homogeneous vectors; throws if the span is not a unital subalgebra.
GradedAlgebra subalgebra(const GradedAlgebra& a, const std::vector<Vec>& basis, const std::vector<GroupElem>& degrees);

// Smallest unital subalgebra of n x n matrices containing the generators.
std::vector<Matrix> span_closure(const std::vector<Matrix>& generators, std::size_t n);
// Kernel of the trace form tr(xy) on the span of the given matrices.
std::vector<Matrix> radical_via_trace(const std::vector<Matrix>& basis);

struct NormalizedSubfield {
  Subgroup subgroup;
  std::vector<Vec> elements;  // c_h for h in subgroup.elements() order
  int field_order = 1;        // cyclotomic order the rescaling needed
};
// Rescale the homogeneous components over h so that c_{h1} c_{h2} = c_{h1 h2}.
NormalizedSubfield normalize_subfield_basis(const GradedAlgebra& a, const Subgroup& h);

struct CentralIdempotents {
  Subgroup center_support;
  std::vector<Character> characters;  // canonical transversal of the complement of the support
  std::vector<Vec> idempotents;
};
CentralIdempotents primitive_central_idempotents(const GradedAlgebra& a);

struct DivisionCheck {
  bool homogeneous_invertible = true;  // every homogeneous basis element is invertible
  bool components_at_most_one = true;
  bool is_division() const { return homogeneous_invertible; }
};
DivisionCheck graded_division_check(const GradedAlgebra& a);

// Commutation bicharacter x_s x_t = beta(s, t) x_t x_s of an algebra whose support is a subgroup with
// one-dimensional components. Throws FieldNotSplit when a component is larger.
struct CommutationData {
  Subgroup support;
  SubgroupPresentation presentation;
  Bicharacter beta;  // on presentation.abstract()
  Phase operator()(GroupElem s, GroupElem t) const {
    return beta(presentation.abstract_of(s), presentation.abstract_of(t));
  }
  // Subgroup of the ambient group corresponding to a subgroup of the abstract presentation.
  Subgroup embed(const Subgroup& abstract_sub) const;
};
CommutationData commutation_bicharacter(const GradedAlgebra& a);

// The algebra spanned by a family of matrices closed under products (checked).
// When reversed is set, the product of basis elements i, j is M_j M_i (maps acting on the right).
struct MatrixAlgebra {
  GradedAlgebra algebra;
  std::vector<Matrix> matrices;
};
MatrixAlgebra matrix_algebra(const FinAbGroup& group, const std::vector<Matrix>& basis,
                             const std::vector<GroupElem>& degrees, bool reversed);
// Matrix of an algebra element given by coordinates.
Matrix realize(const MatrixAlgebra& m, const Vec& coords);

}  // namespace loopmod
