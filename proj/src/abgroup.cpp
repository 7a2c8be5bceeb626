#include "loopmod/abgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loopmod {

// ---------------------------------------------------------------------------
// FinAbGroup

FinAbGroup::FinAbGroup(std::vector<long> factors) : factors_(std::move(factors)) {
  strides_.assign(factors_.size(), 1);
  order_ = 1;
  exponent_ = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    if (factors_[i] < 1) throw std::invalid_argument("FinAbGroup: invariant factors must be positive");
    strides_[i] = order_;
    order_ *= static_cast<std::size_t>(factors_[i]);
    exponent_ = std::lcm(exponent_, factors_[i]);
  }
}

std::vector<long> FinAbGroup::coords(GroupElem a) const {
  std::vector<long> c(factors_.size());
  std::size_t r = a.index;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    c[i] = static_cast<long>(r / strides_[i]);
    r %= strides_[i];
  }
  return c;
}

GroupElem FinAbGroup::from_coords(const std::vector<long>& c) const {
  if (c.size() != factors_.size()) throw std::invalid_argument("FinAbGroup::from_coords: wrong number of coordinates");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    idx += static_cast<std::size_t>(mod_floor(c[i], factors_[i])) * strides_[i];
  }
  return GroupElem{idx};
}

GroupElem FinAbGroup::mul(GroupElem a, GroupElem b) const {
  std::size_t idx = 0;
  std::size_t ra = a.index;
  std::size_t rb = b.index;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::size_t ca = ra / strides_[i];
    std::size_t cb = rb / strides_[i];
    ra %= strides_[i];
    rb %= strides_[i];
    idx += ((ca + cb) % static_cast<std::size_t>(factors_[i])) * strides_[i];
  }
  return GroupElem{idx};
}

GroupElem FinAbGroup::inv(GroupElem a) const {
  auto c = coords(a);
  for (auto& x : c) x = -x;
  return from_coords(c);
}

GroupElem FinAbGroup::pow(GroupElem a, long k) const {
  auto c = coords(a);
  for (auto& x : c) x *= k;
  return from_coords(c);
}

long FinAbGroup::element_order(GroupElem a) const {
  auto c = coords(a);
  long o = 1;
  for (std::size_t i = 0; i < c.size(); ++i) o = std::lcm(o, factors_[i] / std::gcd(c[i], factors_[i]));
  return o;
}

GroupElem FinAbGroup::generator(std::size_t i) const {
  std::vector<long> c(factors_.size(), 0);
  c.at(i) = 1;
  return from_coords(c);
}

std::vector<GroupElem> FinAbGroup::elements() const {
  std::vector<GroupElem> v(order_);
  for (std::size_t i = 0; i < order_; ++i) v[i] = GroupElem{i};
  return v;
}

FinAbGroup FinAbGroup::direct_product(const FinAbGroup& o) const {
  std::vector<long> f = factors_;
  f.insert(f.end(), o.factors_.begin(), o.factors_.end());
  return FinAbGroup(f);
}

GroupElem FinAbGroup::pair(const FinAbGroup& left, GroupElem a, const FinAbGroup& right, GroupElem b) const {
  auto c = left.coords(a);
  auto d = right.coords(b);
  c.insert(c.end(), d.begin(), d.end());
  return from_coords(c);
}

std::string FinAbGroup::describe() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " x " : "") << "Z" << factors_[i];
  return os.str();
}

std::string FinAbGroup::format(GroupElem a) const {
  auto c = coords(a);
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::generated(const FinAbGroup& parent, const std::vector<GroupElem>& gens) {
  Subgroup s;
  s.parent_ = parent;
  for (auto g : gens) {
    if (g.index >= parent.order()) throw std::invalid_argument("Subgroup: generator outside the parent group");
    if (g != parent.identity() && std::find(s.gens_.begin(), s.gens_.end(), g) == s.gens_.end()) s.gens_.push_back(g);
  }
  std::vector<bool> member(parent.order(), false);
  std::vector<GroupElem> found{parent.identity()};
  member[0] = true;
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (auto g : s.gens_) {
      GroupElem y = parent.mul(found[k], g);
      if (!member[y.index]) {
        member[y.index] = true;
        found.push_back(y);
      }
    }
  }
  std::sort(found.begin(), found.end());
  s.elems_ = std::move(found);
  s.pos_.assign(parent.order(), -1);
  for (std::size_t i = 0; i < s.elems_.size(); ++i) s.pos_[s.elems_[i].index] = static_cast<long>(i);
  return s;
}

Subgroup Subgroup::whole(const FinAbGroup& parent) {
  std::vector<GroupElem> gens;
  for (std::size_t i = 0; i < parent.rank(); ++i) gens.push_back(parent.generator(i));
  return generated(parent, gens);
}

std::size_t Subgroup::position(GroupElem g) const {
  long p = pos_.at(g.index);
  if (p < 0) throw std::invalid_argument("Subgroup::position: element is not a member");
  return static_cast<std::size_t>(p);
}

bool Subgroup::is_subset_of(const Subgroup& o) const {
  if (!(parent_ == o.parent_)) return false;
  return std::all_of(elems_.begin(), elems_.end(), [&](GroupElem g) { return o.contains(g); });
}

std::string Subgroup::format() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << parent_.format(gens_[i]);
  os << ">";
  return os.str();
}

std::vector<Subgroup> all_subgroups(const FinAbGroup& g) {
  std::vector<Subgroup> out{Subgroup::trivial(g)};
  std::set<std::vector<GroupElem>> seen{out[0].elements()};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (auto x : g.elements()) {
      if (out[k].contains(x)) continue;
      auto gens = out[k].generators();
      gens.push_back(x);
      Subgroup s = Subgroup::generated(g, gens);
      if (seen.insert(s.elements()).second) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithForm smith_normal_form(const IntMatrix& a) {
  std::size_t m = a.size();
  std::size_t n = m ? a[0].size() : 0;
  SmithForm s;
  s.d = a;
  auto ident = [](std::size_t k) {
    IntMatrix id(k, std::vector<long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    return id;
  };
  s.u = ident(m);
  s.v = ident(n);
  s.v_inv = ident(n);
  auto& d = s.d;
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (auto& r : d) std::swap(r[i], r[j]);
    for (auto& r : s.v) std::swap(r[i], r[j]);
    std::swap(s.v_inv[i], s.v_inv[j]);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, long q) {
    for (std::size_t j = 0; j < n; ++j) d[dst][j] += q * d[src][j];
    for (std::size_t j = 0; j < m; ++j) s.u[dst][j] += q * s.u[src][j];
  };
  auto col_add = [&](std::size_t dst, std::size_t src, long q) {
    for (auto& r : d) r[dst] += q * r[src];
    for (auto& r : s.v) r[dst] += q * r[src];
    for (std::size_t j = 0; j < n; ++j) s.v_inv[src][j] -= q * s.v_inv[dst][j];
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t bp = m;
    std::size_t bq = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (d[i][j] != 0 && (bp == m || std::labs(d[i][j]) < std::labs(d[bp][bq]))) {
          bp = i;
          bq = j;
        }
      }
    }
    if (bp == m) break;
    row_swap(t, bp);
    col_swap(t, bq);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m && !changed; ++i) {
        if (d[i][t] == 0) continue;
        row_add(i, t, -(d[i][t] / d[t][t]));
        if (d[i][t] != 0) {
          row_swap(t, i);
          changed = true;
        }
      }
      if (changed) continue;
      for (std::size_t j = t + 1; j < n && !changed; ++j) {
        if (d[t][j] == 0) continue;
        col_add(j, t, -(d[t][j] / d[t][t]));
        if (d[t][j] != 0) {
          col_swap(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      for (std::size_t i = t + 1; i < m && !changed; ++i) {
        for (std::size_t j = t + 1; j < n && !changed; ++j) {
          if (d[i][j] % d[t][t] != 0) {
            row_add(t, i, 1);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.u[t]) x = -x;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// SubgroupPresentation

SubgroupPresentation::SubgroupPresentation(const Subgroup& s) : sub_(s) {
  const FinAbGroup& amb = s.parent();
  const auto& sg = s.generators();
  std::size_t r = sg.size();
  std::size_t k = amb.rank();
  if (r == 0) {
    abstract_ = FinAbGroup();
    to_ambient_ = {amb.identity()};
    to_abstract_ = {GroupElem{0}};
    return;
  }
  IntMatrix rel(r + k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < r; ++i) rel[i] = amb.coords(sg[i]);
  for (std::size_t i = 0; i < k; ++i) rel[r + i][i] = amb.factors()[i];
  SmithForm outer = smith_normal_form(rel);
  // Rows k.. of U span the integer relations among the generators (and the ambient moduli).
  IntMatrix relations;
  for (std::size_t i = k; i < r + k; ++i) {
    relations.emplace_back(outer.u[i].begin(), outer.u[i].begin() + static_cast<std::ptrdiff_t>(r));
  }
  SmithForm inner = smith_normal_form(relations);
  std::vector<long> factors;
  for (std::size_t j = 0; j < r; ++j) {
    long e = j < inner.d.size() ? inner.d[j][j] : 0;
    if (e == 0) throw std::logic_error("SubgroupPresentation: infinite order relation lattice");
    if (e == 1) continue;
    factors.push_back(e);
    std::vector<long> c(k, 0);
    for (std::size_t i = 0; i < r; ++i) {
      auto gc = amb.coords(sg[i]);
      for (std::size_t q = 0; q < k; ++q) c[q] += inner.v_inv[j][i] * gc[q];
    }
    gens_.push_back(amb.from_coords(c));
  }
  abstract_ = FinAbGroup(factors);
  if (abstract_.order() != s.order()) throw std::logic_error("SubgroupPresentation: order mismatch");
  to_ambient_.resize(abstract_.order());
  to_abstract_.assign(s.order(), GroupElem{0});
  std::vector<bool> hit(s.order(), false);
  for (auto a : abstract_.elements()) {
    auto c = abstract_.coords(a);
    GroupElem x = amb.identity();
    for (std::size_t j = 0; j < c.size(); ++j) x = amb.mul(x, amb.pow(gens_[j], c[j]));
    to_ambient_[a.index] = x;
    std::size_t p = s.position(x);
    if (hit[p]) throw std::logic_error("SubgroupPresentation: generators are not independent");
    hit[p] = true;
    to_abstract_[p] = a;
  }
}

GroupElem SubgroupPresentation::abstract_of(GroupElem ambient) const {
  return to_abstract_[sub_.position(ambient)];
}

// ---------------------------------------------------------------------------
// QuotientMap

QuotientMap QuotientMap::identity(const FinAbGroup& g) {
  QuotientMap q;
  q.source_ = g;
  q.target_ = g;
  q.kernel_ = Subgroup::trivial(g);
  q.forward_ = g.elements();
  q.section_ = g.elements();
  return q;
}

QuotientMap::QuotientMap(const FinAbGroup& source, const Subgroup& kernel) {
  if (!(kernel.parent() == source)) throw std::invalid_argument("QuotientMap: kernel is not a subgroup of the source");
  if (kernel.order() == 1) {
    *this = identity(source);
    return;
  }
  source_ = source;
  kernel_ = kernel;
  std::size_t k = source.rank();
  IntMatrix rel;
  for (auto g : kernel.generators()) rel.push_back(source.coords(g));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<long> row(k, 0);
    row[i] = source.factors()[i];
    rel.push_back(row);
  }
  SmithForm snf = smith_normal_form(rel);
  std::vector<std::size_t> kept;
  std::vector<long> factors;
  for (std::size_t j = 0; j < k; ++j) {
    if (snf.d[j][j] > 1) {
      kept.push_back(j);
      factors.push_back(snf.d[j][j]);
    }
  }
  target_ = FinAbGroup(factors);
  forward_.resize(source.order());
  for (auto g : source.elements()) {
    auto x = source.coords(g);
    std::vector<long> y(kept.size(), 0);
    for (std::size_t jj = 0; jj < kept.size(); ++jj) {
      long acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += x[i] * snf.v[i][kept[jj]];
      y[jj] = acc;
    }
    forward_[g.index] = target_.from_coords(y);
  }
  finish_section();
  if (target_.order() * kernel_.order() != source_.order()) throw std::logic_error("QuotientMap: order mismatch");
}

void QuotientMap::finish_section() {
  section_.assign(target_.order(), GroupElem{source_.order()});
  for (auto g : source_.elements()) {
    GroupElem q = forward_[g.index];
    if (section_[q.index].index == source_.order()) section_[q.index] = g;
  }
  for (auto s : section_) {
    if (s.index == source_.order()) throw std::logic_error("QuotientMap: forward map is not surjective");
  }
}

QuotientMap QuotientMap::composite(const QuotientMap& first, const QuotientMap& second) {
  if (!(first.target_ == second.source_)) throw std::invalid_argument("QuotientMap::composite: groups do not match");
  QuotientMap q;
  q.source_ = first.source_;
  q.target_ = second.target_;
  q.forward_.resize(q.source_.order());
  std::vector<GroupElem> kern;
  for (auto g : q.source_.elements()) {
    q.forward_[g.index] = second.apply(first.apply(g));
    if (q.forward_[g.index] == q.target_.identity()) kern.push_back(g);
  }
  q.kernel_ = Subgroup::generated(q.source_, kern);
  q.finish_section();
  return q;
}

Subgroup QuotientMap::image(const Subgroup& s) const {
  std::vector<GroupElem> gens;
  for (auto g : s.generators()) gens.push_back(apply(g));
  return Subgroup::generated(target_, gens);
}

Subgroup QuotientMap::preimage(const Subgroup& s) const {
  std::vector<GroupElem> gens = kernel_.generators();
  for (auto g : s.generators()) gens.push_back(section(g));
  return Subgroup::generated(source_, gens);
}

// ---------------------------------------------------------------------------
// Characters

Phase pairing(const FinAbGroup& g, GroupElem dual_elem, GroupElem elem) {
  auto a = g.coords(dual_elem);
  auto x = g.coords(elem);
  long e = g.exponent();
  long acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc = mod_floor(acc + (a[i] * x[i] % g.factors()[i]) * (e / g.factors()[i]), e);
  }
  return Phase(acc, e);
}

std::vector<Character> characters(const FinAbGroup& g) {
  std::vector<Character> out;
  out.reserve(g.order());
  for (auto a : g.elements()) out.emplace_back(g, a);
  return out;
}

Subgroup orthogonal_complement(const Subgroup& s) {
  const FinAbGroup& g = s.parent();
  std::vector<GroupElem> members;
  for (auto a : g.elements()) {
    bool kills = std::all_of(s.generators().begin(), s.generators().end(),
                             [&](GroupElem x) { return pairing(g, a, x).is_one(); });
    if (kills) members.push_back(a);
  }
  return Subgroup::generated(g, members);
}

std::vector<Character> extend_character(const Subgroup& h, const std::vector<Phase>& values_on_h) {
  if (values_on_h.size() != h.order()) throw std::invalid_argument("extend_character: one value per element of H required");
  std::vector<Character> out;
  for (const auto& chi : characters(h.parent())) {
    bool ok = true;
    for (std::size_t i = 0; i < h.order() && ok; ++i) ok = chi(h.elements()[i]) == values_on_h[i];
    if (ok) out.push_back(chi);
  }
  return out;
}

std::vector<Character> subgroup_characters(const Subgroup& h) {
  std::set<std::vector<Phase>> seen;
  std::vector<Character> out;
  for (const auto& chi : characters(h.parent())) {
    std::vector<Phase> sig;
    for (auto g : h.generators()) sig.push_back(chi(g));
    if (seen.insert(sig).second) out.push_back(chi);
  }
  return out;
}

bool same_restriction(const Character& a, const Character& b, const Subgroup& h) {
  return std::all_of(h.generators().begin(), h.generators().end(), [&](GroupElem g) { return a(g) == b(g); });
}

Character pullback(const Character& chi, const QuotientMap& q) {
  if (!(chi.group() == q.target())) throw std::invalid_argument("pullback: character of the wrong group");
  const FinAbGroup& g = q.source();
  std::vector<long> exps;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Phase v = chi(q.apply(g.generator(i)));
    long d = g.factors()[i];
    if (d % v.den() != 0) throw std::logic_error("pullback: value order does not divide the generator order");
    exps.push_back(v.num() * (d / v.den()));
  }
  return Character(g, g.from_coords(exps));
}

// ---------------------------------------------------------------------------
// Bicharacters

Bicharacter::Bicharacter(FinAbGroup t, std::vector<std::vector<Phase>> values)
    : group_(std::move(t)), values_(std::move(values)) {
  std::size_t k = group_.rank();
  if (values_.size() != k) throw std::invalid_argument("Bicharacter: matrix size does not match the group rank");
  long e = group_.exponent();
  scaled_.assign(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    if (values_[i].size() != k) throw std::invalid_argument("Bicharacter: matrix is not square");
    for (std::size_t j = 0; j < k; ++j) {
      const Phase& p = values_[i][j];
      long g = std::gcd(group_.factors()[i], group_.factors()[j]);
      if (g % p.den() != 0) throw std::invalid_argument("Bicharacter: value order incompatible with the factors");
      scaled_[i][j] = p.num() * (e / p.den());
    }
  }
}

Bicharacter Bicharacter::trivial(const FinAbGroup& t) {
  return Bicharacter(t, std::vector<std::vector<Phase>>(t.rank(), std::vector<Phase>(t.rank())));
}

Phase Bicharacter::operator()(GroupElem a, GroupElem b) const {
  auto x = group_.coords(a);
  auto y = group_.coords(b);
  long e = group_.exponent();
  long acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0 || scaled_[i][j] == 0) continue;
      acc = mod_floor(acc + (x[i] * y[j] % e) * scaled_[i][j], e);
    }
  }
  return Phase(acc, e);
}

bool Bicharacter::is_alternating() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i][i].is_one()) return false;
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (!(values_[i][j] + values_[j][i]).is_one()) return false;
    }
  }
  return true;
}

Subgroup beta_orthogonal(const Bicharacter& beta, const Subgroup& s) {
  const FinAbGroup& t = beta.group();
  std::vector<GroupElem> members;
  for (auto x : t.elements()) {
    bool ok = std::all_of(s.generators().begin(), s.generators().end(),
                          [&](GroupElem y) { return beta(x, y).is_one(); });
    if (ok) members.push_back(x);
  }
  return Subgroup::generated(t, members);
}

Subgroup radical(const Bicharacter& beta) { return beta_orthogonal(beta, Subgroup::whole(beta.group())); }

std::vector<Subgroup> isotropic_subgroups(const Bicharacter& beta, bool maximal_only) {
  if (!beta.is_alternating()) throw std::invalid_argument("isotropic_subgroups: bicharacter is not alternating");
  const FinAbGroup& t = beta.group();
  Subgroup start = maximal_only ? radical(beta) : Subgroup::trivial(t);
  std::vector<Subgroup> queue{start};
  std::set<std::vector<GroupElem>> seen{start.elements()};
  std::vector<Subgroup> out;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    Subgroup perp = beta_orthogonal(beta, queue[k]);
    if (!maximal_only || perp == queue[k]) out.push_back(queue[k]);
    for (auto x : perp.elements()) {
      if (queue[k].contains(x)) continue;
      auto gens = queue[k].generators();
      gens.push_back(x);
      Subgroup s = Subgroup::generated(t, gens);
      if (seen.insert(s.elements()).second) queue.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
  return out;
}

bool tilde_beta_kernel_is(const Bicharacter& beta, const Subgroup& h) {
  const FinAbGroup& t = beta.group();
  for (auto a : t.elements()) {
    for (std::size_t i = 0; i < t.rank(); ++i) {
      GroupElem b = t.generator(i);
      for (auto x : h.generators()) {
        if (!(beta(t.mul(a, b), x) == beta(a, x) + beta(b, x))) return false;
      }
    }
  }
  return beta_orthogonal(beta, h) == h;
}

}  // namespace loopmod
