// Maximal graded subfields of centralizers, central images, twists and isotypic decompositions.
#pragma once

#include <optional>

#include "loopmod/loopfun.hpp"

namespace loopmod {

// A graded subfield of C(W) spanned by c_h, h in the support, with c_{h1} c_{h2} = c_{h1 h2}.
// Elements act on W by w -> c_h w (as matrices); composition in C(W) is left to right.
struct GradedSubfield {
  Subgroup support;
  std::vector<Matrix> elements;  // in support.elements() order
  int field_order = 1;           // cyclotomic order needed by the normalization
  bool self_centralizing = false;

  const Matrix& at(GroupElem h) const { return elements[support.position(h)]; }
};

// Elements of C(W) commuting with every given map.
std::vector<Matrix> centralizer_within(const Centralizer& c, const std::vector<Matrix>& maps);

// Normalized subfield over h, when the components of C(W) over h are one-dimensional.
GradedSubfield subfield_on(const GradedModule& w, const Centralizer& c, const Subgroup& h);

struct SubfieldSearch {
  std::vector<GradedSubfield> subfields;
  bool split = true;  // C(W) has one-dimensional components, so the list is complete
};
// Split case: one subfield per maximal isotropic subgroup of the commutation bicharacter of C(W).
// Otherwise: candidates built from basis elements of the components (and their pairwise sums).
SubfieldSearch maximal_graded_subfields(const GradedModule& w);

struct CentralImage {
  GradedModule module;               // graded by G/H through the composite of the grading of W
  QuotientMap pi;                    // G -> G/H
  Matrix gamma;                      // W -> V
  Character chi;                     // character of G, used through its restriction to H
  std::vector<std::size_t> kept;     // basis of W spanning the components over the transversal
};
// V = W / W ker(rho_chi), realised on the transversal components.
CentralImage central_image(const GradedModule& w, const GradedSubfield& f, const Character& chi);

struct CentralImageReport {
  bool gamma_module_map = false;
  bool gamma_twisted = false;          // gamma(c_h w) = chi(h) gamma(w)
  bool bijective_on_components = false;
  Verdict simple = Verdict::indeterminate;
  Verdict graded_simple = Verdict::indeterminate;
  bool central = false;
  bool ok() const {
    return gamma_module_map && gamma_twisted && bijective_on_components && simple == Verdict::yes &&
           graded_simple == Verdict::yes && central;
  }
};
CentralImageReport verify_central_image(const GradedModule& w, const GradedSubfield& f, const CentralImage& ci);

// The map w_g -> gamma(w) (x) g from (W, F) to (L(V), L(F 1)).
struct PairIsomorphism {
  LoopModule loop;
  Matrix map;
  bool graded_isomorphism = false;
  bool subfields_match = false;  // map c_h = chi(h) delta_h map
  bool ok() const { return graded_isomorphism && subfields_match; }
};
PairIsomorphism pair_isomorphism(const GradedModule& w, const GradedSubfield& f, const CentralImage& ci);

// V graded by G/H through q: R-group -> G followed by pi: G -> G/H; chi a character of G used on H.
GradedModule twist_by_character(const GradedModule& v, const QuotientMap& q, const QuotientMap& pi,
                                const Character& chi);
// Action precomposed with r_g -> chi(g) r_g, chi a character of the algebra's group.
GradedModule twist_by_automorphism(const GradedModule& v, const Character& chi);

struct IsotypicPiece {
  Character restriction;  // representative character; the piece collects chi with the same restriction to Z
  Matrix idempotent;      // as a map on W
  std::vector<Vec> basis;  // G/Z-homogeneous basis in W coordinates
  GradedModule module;    // graded by G/Z
  std::vector<std::size_t> members;  // indices of the characters of H in this class
};

struct Decomposition {
  Centralizer centralizer;
  Subgroup h;
  Subgroup z;
  QuotientMap to_gz;  // G -> G/Z
  std::vector<Character> characters;  // transversal of the characters of H
  std::vector<CentralImage> images;
  std::vector<std::size_t> class_of;
  std::vector<IsotypicPiece> pieces;
  std::vector<std::size_t> multiplicities;
  bool splitting_invertible = false;  // W -> sum of all central images
  bool classes_certified = false;     // restriction classes agree with intertwiner isomorphism tests
  bool multiplicities_ok = false;     // all equal |H/Z|
  bool dimension_ok = false;          // sum n_i dim V^i = dim W
  bool pieces_graded_simple = false;
  bool pieces_distinct = false;
  bool ok() const {
    return splitting_invertible && classes_certified && multiplicities_ok && dimension_ok && pieces_graded_simple &&
           pieces_distinct;
  }
};
Decomposition decompose(const GradedModule& w, const GradedSubfield& f);

// w_g -> w_g eps_i (x) g from W onto the loop of the i-th isotypic piece along G -> G/Z.
struct IsotypicReconstruction {
  LoopModule loop;
  Matrix map;
  bool module_isomorphism = false;
  bool algebra_isomorphism = false;  // d_t -> d_t eps_i (x) t on the centralizer
  bool ok() const { return module_isomorphism && algebra_isomorphism; }
};
IsotypicReconstruction reconstruct_from_isotypic(const GradedModule& w, const Decomposition& d, std::size_t i);

struct TwistSearch {
  IsoOutcome loops = IsoOutcome::inconclusive;
  std::optional<Character> witness;
  bool violation = false;  // isomorphic loops without a twist witness
};
// V, V' graded by G/H through q and pi.
TwistSearch loop_iso_implies_twist(const GradedModule& v, const GradedModule& vp, const QuotientMap& q,
                                   const QuotientMap& pi);

// Per character of H: morphisms of pairs between the loops versus graded maps V -> V'^chi.
struct FunctorCheck {
  std::vector<std::size_t> pair_morphisms;
  std::vector<std::size_t> small_morphisms;
  bool faithful = true;
  bool full = true;
};
FunctorCheck extended_functor_check(const GradedModule& v, const GradedModule& vp, const QuotientMap& q,
                                    const QuotientMap& pi);

}  // namespace loopmod
