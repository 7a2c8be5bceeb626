// Graded left modules over graded algebras.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopmod/galg.hpp"

namespace loopmod {

// A module graded by a quotient of the algebra's group. Action matrices act on column vectors:
// x_b e_j = sum_i action(b)(i, j) e_i.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(std::shared_ptr<const GradedAlgebra> algebra, QuotientMap grading, std::vector<GroupElem> degrees,
               std::vector<Matrix> action);

  const GradedAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const GradedAlgebra>& algebra_ptr() const { return algebra_; }
  const QuotientMap& grading() const { return grading_; }
  const FinAbGroup& grading_group() const { return grading_.target(); }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<GroupElem>& degrees() const { return degrees_; }
  GroupElem degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }
  const Matrix& action(std::size_t b) const { return action_[b]; }
  // Grading-group degree of algebra basis element b.
  GroupElem algebra_degree(std::size_t b) const { return grading_.apply(algebra_->degree(b)); }

  Matrix act(const Vec& r) const;
  std::vector<std::size_t> component(GroupElem g) const;
  std::vector<GroupElem> support() const;
  std::optional<GroupElem> degree_of(const Vec& v) const;
  Vec project(const Vec& v, GroupElem g) const;

  // Cyclotomic order of the ground field the module is considered over.
  int field_order() const { return field_order_; }
  void raise_field_order(int n);

 private:
  std::shared_ptr<const GradedAlgebra> algebra_;
  QuotientMap grading_;
  std::vector<GroupElem> degrees_;
  std::vector<Matrix> action_;
  int field_order_ = 1;
};

struct GradedMap {
  GroupElem degree;
  Matrix matrix;
};

ValidationReport validate(const GradedModule& v);

GradedModule regular_module(std::shared_ptr<const GradedAlgebra> a);
GradedModule direct_sum(const GradedModule& v, const GradedModule& w);
// Module on the span of vectors (homogeneous, independent, invariant); throws otherwise.
GradedModule submodule(const GradedModule& w, const std::vector<Vec>& basis);
// Same module with degrees multiplied by g.
GradedModule shift(const GradedModule& w, GroupElem g);
// Coarsen the grading along a quotient of the current grading group.
GradedModule coarsen(const GradedModule& w, const QuotientMap& further);
// Change the grading map to another quotient whose target is the same group (degrees unchanged).
GradedModule with_grading(const GradedModule& w, const QuotientMap& grading);
// Base change of the module through a new basis (columns of `basis`, homogeneous of `degrees`).
GradedModule change_basis(const GradedModule& w, const Matrix& basis, const std::vector<GroupElem>& degrees);

// Module maps V -> V' homogeneous of degree g (in the common grading group).
std::vector<Matrix> intertwiners(const GradedModule& v, const GradedModule& vp, GroupElem g);
std::vector<Matrix> intertwiners_ungraded(const GradedModule& v, const GradedModule& vp);

struct Centralizer {
  FinAbGroup group;
  std::vector<GradedMap> maps;
  std::vector<GroupElem> support() const;
  std::size_t dim() const { return maps.size(); }
  // Structure constants, graded by the grading group, products composed left to right. Quadratic in dim().
  MatrixAlgebra algebra() const;
};
Centralizer graded_centralizer(const GradedModule& w);
std::vector<Matrix> ungraded_centralizer(const GradedModule& w);

enum class Verdict { yes, no, indeterminate };
std::string to_string(Verdict v);

struct SimplicityResult {
  Verdict verdict = Verdict::indeterminate;
  std::vector<Vec> witness;  // a proper nonzero (graded) submodule when verdict is no
  std::string reason;
  bool simple() const { return verdict == Verdict::yes; }
};
SimplicityResult is_graded_simple(const GradedModule& w);
SimplicityResult is_simple_ungraded(const GradedModule& w);

// Dimension of the algebra generated by the action (and, when graded, the grading projections).
std::size_t image_algebra_dim(const GradedModule& w, bool graded);

enum class IsoOutcome { isomorphic, not_isomorphic, inconclusive };
struct IsoResult {
  IsoOutcome outcome = IsoOutcome::inconclusive;
  std::optional<Matrix> map;
  std::string reason;
  bool isomorphic() const { return outcome == IsoOutcome::isomorphic; }
};
IsoResult is_isomorphic_graded(const GradedModule& v, const GradedModule& vp);
IsoResult is_isomorphic_ungraded(const GradedModule& v, const GradedModule& vp);
// Invertible element in the span of a hom space, found among basis elements and seeded combinations.
std::optional<Matrix> find_invertible(const std::vector<Matrix>& span, unsigned seed = 1, int tries = 24);

// Smallest submodule containing v; with homogeneous_only the smallest graded one.
std::vector<Vec> spin(const GradedModule& w, const Vec& v, bool homogeneous_only);
std::vector<Vec> spin_all(const GradedModule& w, const std::vector<Vec>& seeds);

struct DensityResult {
  std::optional<Vec> element;  // algebra coordinates of r
  std::string error;
};
DensityResult solve_density(const GradedModule& v, const std::vector<Vec>& sources, const std::vector<Vec>& targets);

// Whether y^2 = d has a solution in Q(zeta_n); empty when this cannot be decided.
std::optional<bool> is_square_in(const Cyc& d, int n);

}  // namespace loopmod
