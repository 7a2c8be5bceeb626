// Loop modules, induced modules and the maps relating them.
#pragma once

#include "loopmod/gmod.hpp"

namespace loopmod {

// L(V) = sum over x in P of V_{s(x)} (x) x, graded by P through q, where V is graded through s o q.
struct LoopModule {
  GradedModule module;
  QuotientMap outer;                  // s: P -> grading group of V
  std::vector<GroupElem> group_part;  // x for each basis vector (element of P)
  std::vector<std::size_t> source;    // basis index in V for each basis vector
  std::size_t source_dim = 0;
  std::vector<GroupElem> kernel;      // elements h of ker s, in order
  std::vector<Matrix> delta;          // right multiplication by 1 (x) h, one per kernel element

  std::size_t index_of(GroupElem x, std::size_t i) const;
};

// Loop relative to pi: G -> Gbar, where V is graded by pi.
LoopModule loop(const GradedModule& v, const QuotientMap& pi);
// Loop of V graded through p = s o q, producing a module graded by the target of q.
LoopModule loop_general(const GradedModule& v, const QuotientMap& q, const QuotientMap& s);

// Same module with degrees pushed through pi.
GradedModule forgetful(const GradedModule& w, const QuotientMap& pi);

struct InducedModule {
  GradedModule raw;           // basis chi_j (x) e_i at index j * dim V + i, graded by the quotient
  GradedModule module;        // homogeneous basis, graded by G
  Matrix basis;               // columns: the homogeneous basis in raw coordinates
  std::vector<Character> transversal;
  std::vector<Matrix> dual_action;  // action of the standard generators of the dual group on raw coordinates
};

// Default transversal of the annihilator of ker(pi) in the dual group.
std::vector<Character> default_transversal(const QuotientMap& pi);
InducedModule induce(const GradedModule& v, const QuotientMap& pi, const std::vector<Character>& transversal);

// phi: loop basis -> raw induced basis; psi: raw induced basis -> loop basis.
Matrix phi(const LoopModule& l, const std::vector<Character>& transversal);
Matrix psi(const LoopModule& l, const std::vector<Character>& transversal);
// Re-express raw coordinates for the transversal `from` in the raw basis of `to`, when both
// transversals have the same restrictions in the same order.
Matrix transversal_change(const GradedModule& v, const QuotientMap& pi, const std::vector<Character>& from,
                          const std::vector<Character>& to);

struct TransitivityResult {
  LoopModule direct;  // L_pi(V)
  LoopModule inner;   // L_{pi''}(V), graded by G/K
  LoopModule outer;   // L_{pi'}(inner)
  Matrix map;         // direct -> outer
  bool verified = false;
};
TransitivityResult loop_transitivity_iso(const GradedModule& v, const QuotientMap& pi, const Subgroup& k);

// Phi(v (x) gh) = chi(h) phi(v) (x) gh with g = section(gbar), and Psi(delta_h) = chi(h) delta_h.
struct LoopMorphism {
  Matrix big_phi;
  std::vector<Cyc> psi_scalars;  // chi(h) per kernel element
  bool module_map = false;
  bool respects_subfields = false;
};
LoopMorphism loop_on_morphism(const Matrix& small_phi, const Character& chi, const LoopModule& source,
                              const LoopModule& target);

struct CentralizerLoopReport {
  std::size_t loop_of_centralizer_dim = 0;
  std::size_t centralizer_of_subfield_dim = 0;
  bool equal = false;
  bool self_centralized = false;
};
// The loop of C(V) versus the centralizer of span{delta_h} in C(L(V)).
CentralizerLoopReport centralizer_loop_identity(const GradedModule& v, const QuotientMap& pi);

// Thinness of the pregrading associated to V, decided through graded simplicity of the loop.
Verdict is_thin_associated(const GradedModule& v, const QuotientMap& pi);

bool same_quotient(const QuotientMap& a, const QuotientMap& b);

}  // namespace loopmod
