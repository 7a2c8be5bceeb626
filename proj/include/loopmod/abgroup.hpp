// Finite abelian groups, subgroups, quotients, characters and bicharacters.
#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "loopmod/cyclotomic.hpp"

namespace loopmod {

// Elements are mixed-radix indices; lexicographic order of coordinate tuples
// (first coordinate most significant) coincides with index order.
struct GroupElem {
  std::size_t index = 0;
  auto operator<=>(const GroupElem&) const = default;
};

class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<long> factors);

  const std::vector<long>& factors() const { return factors_; }
  std::size_t order() const { return order_; }
  long exponent() const { return exponent_; }
  std::size_t rank() const { return factors_.size(); }

  GroupElem identity() const { return GroupElem{0}; }
  GroupElem mul(GroupElem a, GroupElem b) const;
  GroupElem inv(GroupElem a) const;
  GroupElem div(GroupElem a, GroupElem b) const { return mul(a, inv(b)); }
  GroupElem pow(GroupElem a, long k) const;
  long element_order(GroupElem a) const;
  GroupElem generator(std::size_t i) const;

  std::vector<long> coords(GroupElem a) const;
  GroupElem from_coords(const std::vector<long>& c) const;  // reduces residues
  std::vector<GroupElem> elements() const;

  FinAbGroup direct_product(const FinAbGroup& o) const;
  // Embeddings of the factors of a direct product built by direct_product.
  GroupElem pair(const FinAbGroup& left, GroupElem a, const FinAbGroup& right, GroupElem b) const;

  bool operator==(const FinAbGroup& o) const { return factors_ == o.factors_; }
  std::string describe() const;
  std::string format(GroupElem a) const;

 private:
  std::vector<long> factors_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  long exponent_ = 1;
};

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated(const FinAbGroup& parent, const std::vector<GroupElem>& gens);
  static Subgroup trivial(const FinAbGroup& parent) { return generated(parent, {}); }
  static Subgroup whole(const FinAbGroup& parent);

  const FinAbGroup& parent() const { return parent_; }
  const std::vector<GroupElem>& generators() const { return gens_; }
  const std::vector<GroupElem>& elements() const { return elems_; }  // increasing index order
  std::size_t order() const { return elems_.size(); }
  bool contains(GroupElem g) const { return pos_[g.index] >= 0; }
  // Position of a member within elements().
  std::size_t position(GroupElem g) const;
  bool is_subset_of(const Subgroup& o) const;
  bool operator==(const Subgroup& o) const { return parent_ == o.parent_ && elems_ == o.elems_; }

  std::string format() const;

 private:
  FinAbGroup parent_;
  std::vector<GroupElem> gens_;
  std::vector<GroupElem> elems_;
  std::vector<long> pos_;
};

std::vector<Subgroup> all_subgroups(const FinAbGroup& g);

// Integer Smith normal form U A V = D with unimodular U, V.
using IntMatrix = std::vector<std::vector<long>>;
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix v_inv;
};
SmithForm smith_normal_form(const IntMatrix& a);

// A subgroup together with an isomorphism from an invariant-factor group.
class SubgroupPresentation {
 public:
  SubgroupPresentation() = default;
  explicit SubgroupPresentation(const Subgroup& s);

  const Subgroup& subgroup() const { return sub_; }
  const FinAbGroup& abstract() const { return abstract_; }
  const std::vector<GroupElem>& generators() const { return gens_; }
  GroupElem embed(GroupElem abstract_elem) const { return to_ambient_[abstract_elem.index]; }
  GroupElem abstract_of(GroupElem ambient) const;

 private:
  Subgroup sub_;
  FinAbGroup abstract_;
  std::vector<GroupElem> gens_;
  std::vector<GroupElem> to_ambient_;
  std::vector<GroupElem> to_abstract_;  // indexed by subgroup position
};

class QuotientMap {
 public:
  QuotientMap() = default;
  QuotientMap(const FinAbGroup& source, const Subgroup& kernel);
  static QuotientMap identity(const FinAbGroup& g);
  // first: G -> P, second: P -> Q; returns the composite G -> Q.
  static QuotientMap composite(const QuotientMap& first, const QuotientMap& second);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const Subgroup& kernel() const { return kernel_; }
  GroupElem apply(GroupElem g) const { return forward_[g.index]; }
  // Lexicographically least representative of each coset.
  GroupElem section(GroupElem q) const { return section_[q.index]; }
  const std::vector<GroupElem>& transversal() const { return section_; }
  bool is_identity() const { return kernel_.order() == 1 && target_ == source_; }

  Subgroup image(const Subgroup& s) const;
  Subgroup preimage(const Subgroup& s) const;

 private:
  void finish_section();

  FinAbGroup source_;
  FinAbGroup target_;
  Subgroup kernel_;
  std::vector<GroupElem> forward_;
  std::vector<GroupElem> section_;
};

// Natural pairing between G and its dual (same invariant factors): sum a_i g_i / d_i.
Phase pairing(const FinAbGroup& g, GroupElem dual_elem, GroupElem elem);

class Character {
 public:
  Character() = default;
  Character(FinAbGroup group, GroupElem exponents) : group_(std::move(group)), exps_(exponents) {}
  static Character trivial(const FinAbGroup& g) { return Character(g, g.identity()); }

  const FinAbGroup& group() const { return group_; }
  GroupElem exponents() const { return exps_; }
  Phase operator()(GroupElem g) const { return pairing(group_, exps_, g); }
  Cyc value(GroupElem g) const { return Cyc::from_phase((*this)(g)); }
  Character operator*(const Character& o) const { return Character(group_, group_.mul(exps_, o.exps_)); }
  Character inverse() const { return Character(group_, group_.inv(exps_)); }
  bool is_trivial() const { return exps_.index == 0; }
  bool operator==(const Character& o) const { return group_ == o.group_ && exps_ == o.exps_; }

  std::string format() const { return group_.format(exps_); }

 private:
  FinAbGroup group_;
  GroupElem exps_;
};

// All characters, trivial first, in index order of exponent tuples.
std::vector<Character> characters(const FinAbGroup& g);
// Annihilator of s inside the dual group (which has the same invariant factors).
Subgroup orthogonal_complement(const Subgroup& s);
// All characters of G agreeing with chi on the elements of h.
std::vector<Character> extend_character(const Subgroup& h, const std::vector<Phase>& values_on_h);
// The canonical transversal of h^perp in the dual: first character (in index order) of each
// restriction class, so element k restricts to the k-th character of h. Trivial character first.
std::vector<Character> subgroup_characters(const Subgroup& h);
bool same_restriction(const Character& a, const Character& b, const Subgroup& h);
// The character g -> chi(q(g)) of the source of q.
Character pullback(const Character& chi, const QuotientMap& q);

class Bicharacter {
 public:
  Bicharacter() = default;
  // values[i][j] = beta(e_i, e_j) on the standard generators of t.
  Bicharacter(FinAbGroup t, std::vector<std::vector<Phase>> values);
  static Bicharacter trivial(const FinAbGroup& t);

  const FinAbGroup& group() const { return group_; }
  const std::vector<std::vector<Phase>>& matrix() const { return values_; }
  Phase operator()(GroupElem a, GroupElem b) const;
  bool is_alternating() const;
  bool operator==(const Bicharacter& o) const { return group_ == o.group_ && values_ == o.values_; }

 private:
  FinAbGroup group_;
  std::vector<std::vector<Phase>> values_;
  std::vector<std::vector<long>> scaled_;  // numerators over the exponent
};

Subgroup radical(const Bicharacter& beta);
Subgroup beta_orthogonal(const Bicharacter& beta, const Subgroup& s);
// Isotropic subgroups sorted by element lists; maximal_only keeps those equal to their orthogonal.
std::vector<Subgroup> isotropic_subgroups(const Bicharacter& beta, bool maximal_only);
// Checks that t -> beta(t, .)|_h is a homomorphism T -> dual(h) with kernel exactly h.
bool tilde_beta_kernel_is(const Bicharacter& beta, const Subgroup& h);

}  // namespace loopmod
