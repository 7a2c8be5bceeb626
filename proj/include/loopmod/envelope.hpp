// From an ungraded simple module V to a graded simple module containing it.
#pragma once

#include "loopmod/invars.hpp"

namespace loopmod {

struct SimpleInertia {
  Subgroup group;                // K_V inside the dual of the algebra's group
  std::vector<Character> members;
  std::vector<Matrix> witnesses;  // phi_chi: V -> V^{alpha_chi}, unnormalized, one per member
};
// Characters chi of the algebra's group with V^{alpha_chi} isomorphic to V; V must be simple.
SimpleInertia inertia_of_simple(const GradedModule& v);

// End(V) graded by A/Z, Z = K^perp, through simultaneous eigenspaces of Ad phi_chi.
struct InertiaGrading {
  QuotientMap to_az;
  std::vector<Matrix> basis;
  std::vector<GroupElem> degrees;
  bool dimensions_ok = false;   // components add up to (dim V)^2
  bool action_graded = false;   // rho_V(x_b) lies in the component of deg b
  bool closed = false;
  bool ok() const { return dimensions_ok && action_graded && closed; }
};
InertiaGrading grade_by_inertia(const GradedModule& v, const SimpleInertia& k);

struct WedderburnSplit {
  std::vector<Matrix> ideal;          // homogeneous basis of a minimal graded left ideal W'
  std::vector<GroupElem> ideal_degrees;
  GradedModule ideal_module;          // W' over the matrix algebra
  Centralizer division;               // D' = End_A(W')
  bool minimal = false;               // W' graded simple
  bool division_ok = false;
  bool double_centralizer = false;    // A acts faithfully and dim A = (dim W')^2 / dim D'
  bool ok() const { return minimal && division_ok && double_centralizer; }
};
// basis spans a graded simple algebra of matrices; degrees in q.
WedderburnSplit graded_wedderburn_split(const FinAbGroup& q, const std::vector<Matrix>& basis,
                                        const std::vector<GroupElem>& degrees);

struct EnvelopeResult {
  SimpleInertia inertia;
  Subgroup z;
  InertiaGrading grading;
  WedderburnSplit split;
  GradedModule w_prime;   // R-module via rho_V, graded by A/Z
  GradedModule w;         // induced along A -> A/Z
  Matrix embedding;       // V -> W
  bool graded_simple = false;
  bool contains_v = false;
  bool inertia_matches = false;
  bool dimension_ok = false;  // dim W = dim W' |Z|
  bool ok() const {
    return grading.ok() && split.ok() && graded_simple && contains_v && inertia_matches && dimension_ok;
  }
};
// V simple as an ungraded module; its grading, if any, is ignored.
EnvelopeResult graded_envelope(const GradedModule& v);

}  // namespace loopmod
