// Classification invariants: support, commutation bicharacter, center, inertia group, Brauer invariant,
// Schur index, and the explicit simple module of a graded division algebra.
#pragma once

#include <optional>
#include <string>

#include "loopmod/central.hpp"

namespace loopmod {

struct DivisionAlgebraProfile {
  CommutationData commutation;  // support T and beta
  Subgroup center;              // Z
  Subgroup isotropic;           // chosen maximal isotropic H (least in element order)
  std::vector<Subgroup> all_maximal_isotropic;
  std::size_t schur_index = 1;  // |H/Z|
  bool alternating = false;
  bool radical_is_center = false;
  bool order_identity = false;  // |T||Z| = |H|^2 for every maximal isotropic H
  bool index_identity = false;  // index^2 = |T/Z|
  bool simple_iff_central = false;
  bool ok() const { return alternating && radical_is_center && order_identity && index_identity && simple_iff_central; }
};
// D must have one-dimensional homogeneous components over a subgroup; throws FieldNotSplit otherwise.
DivisionAlgebraProfile profile(const GradedAlgebra& d);

struct InertiaResult {
  FinAbGroup dual;         // same invariant factors as G
  Subgroup center;         // Z in G
  Subgroup group;          // Z^perp in the dual
  bool cross_checked = false;  // equals the set of chi with V^{alpha_chi} isomorphic to V
};
// W graded by G through a quotient of the algebra's group; C(W) split.
InertiaResult inertia_group(const GradedModule& w);

// Canonical form of a central graded division algebra: its support inside the grading group Q and the
// commutation bicharacter evaluated on the Smith-normalized generators of the support.
struct BrauerInvariant {
  FinAbGroup quotient;
  Subgroup support;
  std::vector<GroupElem> generators;
  std::vector<std::vector<Phase>> beta;  // on generators
  bool nondegenerate = false;
  std::string to_json() const;
  bool operator==(const BrauerInvariant& o) const {
    return quotient == o.quotient && support == o.support && generators == o.generators && beta == o.beta;
  }
};
BrauerInvariant invariant_of_division(const GradedAlgebra& d);

struct BrauerReport {
  FinAbGroup quotient;  // G/Z
  std::vector<BrauerInvariant> per_idempotent;
  std::vector<GradedAlgebra> blocks;  // D eps_i graded by G/Z
  std::size_t schur_index = 1;
  bool index_identity = false;       // index^2 = |T/Z|
  bool independent_of_idempotent = false;
  const BrauerInvariant& invariant() const { return per_idempotent.front(); }
  bool ok() const { return index_identity && independent_of_idempotent; }
};
BrauerReport brauer_invariant(const GradedModule& w);
std::size_t schur_index(const GradedModule& w);

struct DivisionIsoResult {
  bool by_invariants = false;                 // equal supports and bicharacters
  std::optional<bool> by_rescaling;           // explicit c_t -> mu_t c'_t; empty if a root left the field
  bool agree() const { return !by_rescaling || *by_rescaling == by_invariants; }
};
// Both graded by the same group with one-dimensional components.
DivisionIsoResult division_algebras_isomorphic(const GradedAlgebra& d1, const GradedAlgebra& d2);

struct SimpleModuleModel {
  Subgroup isotropic;                // H
  std::vector<GroupElem> section;    // xi(tbar) in G, indexed by the basis of M
  bool smash_section = false;        // section lands in an isotropic complement of H
  std::vector<Vec> normalized;       // c_t in D coordinates, t in support order
  GradedModule module;               // M graded by G/H
  std::vector<Matrix> dual_action;   // right action on M*, as matrices on dual coordinates
  std::vector<GroupElem> dual_degrees;
  bool simple = false;
  bool pairing_graded = false;
  bool morita_bijective = false;
  bool morita_graded = false;
  bool ok() const { return simple && pairing_graded && morita_bijective && morita_graded; }
};
// D a central graded division algebra with one-dimensional components, H maximal isotropic.
SimpleModuleModel simple_module_model(const GradedAlgebra& d, const Subgroup& h);
SimpleModuleModel simple_module_model(const GradedAlgebra& d, const Subgroup& h, const std::vector<GroupElem>& section);

// End(V) graded by G/Z with components rho_V(R_gbar).
struct EndomorphismGrading {
  QuotientMap to_gz;
  std::vector<GroupElem> degrees;  // per basis matrix
  std::vector<Matrix> basis;
  MatrixAlgebra algebra;
  bool direct_sum = false;
  bool closed = false;
  bool ok() const { return direct_sum && closed; }
};
// V an ungraded simple submodule of W (any grading on V is ignored), over the same algebra.
EndomorphismGrading grade_endomorphism_algebra(const GradedModule& w, const GradedModule& v);

}  // namespace loopmod
