#include "loopmod/loopfun.hpp"

#include <stdexcept>

namespace loopmod {

bool same_quotient(const QuotientMap& a, const QuotientMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
  for (auto g : a.source().elements()) {
    if (a.apply(g) != b.apply(g)) return false;
  }
  return true;
}

std::size_t LoopModule::index_of(GroupElem x, std::size_t i) const {
  for (std::size_t k = 0; k < source.size(); ++k) {
    if (group_part[k] == x && source[k] == i) return k;
  }
  throw std::out_of_range("loop: no basis vector with this label");
}

LoopModule loop_general(const GradedModule& v, const QuotientMap& q, const QuotientMap& s) {
  if (!(q.target() == s.source())) throw std::invalid_argument("loop: quotient maps do not compose");
  if (!same_quotient(QuotientMap::composite(q, s), v.grading())) {
    throw std::invalid_argument("loop: module is not graded by the composite quotient");
  }
  const FinAbGroup& p = q.target();
  LoopModule l;
  l.outer = s;
  l.source_dim = v.dim();
  std::vector<GroupElem> degrees;
  for (auto x : p.elements()) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (v.degree(i) != s.apply(x)) continue;
      l.group_part.push_back(x);
      l.source.push_back(i);
      degrees.push_back(x);
    }
  }
  const std::size_t n = degrees.size();
  // Position lookup: (x, i) -> basis index.
  std::vector<std::size_t> pos(p.order() * v.dim(), n);
  for (std::size_t k = 0; k < n; ++k) pos[l.group_part[k].index * v.dim() + l.source[k]] = k;

  std::vector<Matrix> act;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) {
    GroupElem shift = q.apply(v.algebra().degree(b));
    const Matrix& m = v.action(b);
    Matrix big(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      GroupElem target = p.mul(shift, l.group_part[c]);
      for (std::size_t r = 0; r < v.dim(); ++r) {
        if (m(r, l.source[c]).is_zero()) continue;
        std::size_t row = pos[target.index * v.dim() + r];
        if (row == n) throw std::invalid_argument("loop: module action does not respect the grading");
        big(row, c) = m(r, l.source[c]);
      }
    }
    act.push_back(std::move(big));
  }
  l.module = GradedModule(v.algebra_ptr(), q, degrees, act);
  l.module.raise_field_order(v.field_order());
  for (auto h : s.kernel().elements()) {
    l.kernel.push_back(h);
    Matrix d(n, n);
    for (std::size_t c = 0; c < n; ++c) d(pos[p.mul(l.group_part[c], h).index * v.dim() + l.source[c]], c) = Cyc(1);
    l.delta.push_back(std::move(d));
  }
  return l;
}

LoopModule loop(const GradedModule& v, const QuotientMap& pi) {
  return loop_general(v, QuotientMap::identity(pi.source()), pi);
}

GradedModule forgetful(const GradedModule& w, const QuotientMap& pi) { return coarsen(w, pi); }

std::vector<Character> default_transversal(const QuotientMap& pi) { return subgroup_characters(pi.kernel()); }

namespace {

// The character in the transversal with the same restriction to h as chi, and chi / that one.
std::pair<std::size_t, Character> transversal_position(const std::vector<Character>& tr, const Character& chi,
                                                       const Subgroup& h) {
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (same_restriction(tr[k], chi, h)) return {k, chi * tr[k].inverse()};
  }
  throw std::invalid_argument("transversal does not cover every character of the kernel");
}

void check_transversal(const std::vector<Character>& tr, const Subgroup& h) {
  if (tr.size() != h.order()) throw std::invalid_argument("transversal must have one character per character of the kernel");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (!(tr[i].group() == h.parent())) throw std::invalid_argument("transversal characters live on the wrong group");
    for (std::size_t j = i + 1; j < tr.size(); ++j) {
      if (same_restriction(tr[i], tr[j], h)) throw std::invalid_argument("transversal characters restrict equally");
    }
  }
}

}  // namespace

InducedModule induce(const GradedModule& v, const QuotientMap& pi, const std::vector<Character>& transversal) {
  if (!same_quotient(v.grading(), pi)) throw std::invalid_argument("induce: module is not graded by this quotient");
  const Subgroup& h = pi.kernel();
  check_transversal(transversal, h);
  const FinAbGroup& g = pi.source();
  const std::size_t n = transversal.size();
  const std::size_t d = v.dim();
  InducedModule out;
  out.transversal = transversal;

  std::vector<Matrix> act;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) {
    GroupElem deg = v.algebra().degree(b);
    Matrix m(n * d, n * d);
    for (std::size_t j = 0; j < n; ++j) {
      Cyc s = Cyc::from_phase(-transversal[j](deg));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          if (!v.action(b)(r, c).is_zero()) m(j * d + r, j * d + c) = s * v.action(b)(r, c);
        }
    }
    act.push_back(std::move(m));
  }
  std::vector<GroupElem> raw_deg;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) raw_deg.push_back(v.degree(i));
  out.raw = GradedModule(v.algebra_ptr(), pi, raw_deg, act);
  out.raw.raise_field_order(v.field_order());

  // chi . (chi_j (x) v) = chi_k (x) varpi(g) v where chi chi_j = chi_k varpi.
  std::vector<Character> dual_gens;
  for (std::size_t k = 0; k < g.rank(); ++k) dual_gens.emplace_back(g, g.generator(k));
  for (const auto& chi : dual_gens) {
    Matrix a(n * d, n * d);
    for (std::size_t j = 0; j < n; ++j) {
      auto [k, varpi] = transversal_position(transversal, chi * transversal[j], h);
      for (std::size_t i = 0; i < d; ++i) a(k * d + i, j * d + i) = varpi.value(pi.section(v.degree(i)));
    }
    out.dual_action.push_back(std::move(a));
  }

  std::vector<Vec> columns;
  std::vector<GroupElem> degrees;
  for (auto gbar : v.support()) {
    std::vector<std::size_t> coords;
    for (std::size_t k = 0; k < n * d; ++k) {
      if (raw_deg[k] == gbar) coords.push_back(k);
    }
    for (auto x : g.elements()) {
      if (pi.apply(x) != gbar) continue;
      Matrix stacked(dual_gens.size() * coords.size(), coords.size());
      for (std::size_t c = 0; c < dual_gens.size(); ++c) {
        Cyc eig = dual_gens[c].value(x);
        for (std::size_t r = 0; r < coords.size(); ++r)
          for (std::size_t s = 0; s < coords.size(); ++s) {
            Cyc entry = out.dual_action[c](coords[r], coords[s]);
            if (r == s) entry -= eig;
            stacked(c * coords.size() + r, s) = entry;
          }
      }
      for (const auto& kv : kernel(stacked)) {
        Vec col(n * d);
        for (std::size_t s = 0; s < coords.size(); ++s) col[coords[s]] = kv[s];
        columns.push_back(std::move(col));
        degrees.push_back(x);
      }
    }
  }
  if (columns.size() != n * d) throw std::logic_error("induce: eigenspaces do not span the induced module");
  out.basis = Matrix::from_columns(n * d, columns);
  Matrix inv = inverse(out.basis);
  std::vector<Matrix> hom_act;
  for (const auto& m : out.raw.actions()) hom_act.push_back(inv * m * out.basis);
  out.module = GradedModule(v.algebra_ptr(), QuotientMap::identity(g), degrees, hom_act);
  out.module.raise_field_order(v.field_order());
  return out;
}

Matrix phi(const LoopModule& l, const std::vector<Character>& transversal) {
  const std::size_t vdim = l.source_dim;
  const std::size_t n = transversal.size();
  Matrix m(n * vdim, l.module.dim());
  for (std::size_t c = 0; c < l.module.dim(); ++c) {
    for (std::size_t j = 0; j < n; ++j) m(j * vdim + l.source[c], c) = Cyc::from_phase(-transversal[j](l.group_part[c]));
  }
  return m;
}

Matrix psi(const LoopModule& l, const std::vector<Character>& transversal) {
  const std::size_t vdim = l.source_dim;
  const std::size_t n = transversal.size();
  const FinAbGroup& p = l.outer.source();
  Cyc inv_n(Rational(1, static_cast<long>(n)));
  Matrix m(l.module.dim(), n * vdim);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < vdim; ++i) {
      // Any representative of the degree of e_i; the sum runs over its whole coset.
      GroupElem g;
      bool found = false;
      for (std::size_t c = 0; c < l.module.dim() && !found; ++c) {
        if (l.source[c] == i) {
          g = l.group_part[c];
          found = true;
        }
      }
      if (!found) continue;
      for (auto h : l.kernel) {
        GroupElem gh = p.mul(g, h);
        m(l.index_of(gh, i), j * vdim + i) = inv_n * Cyc::from_phase(transversal[j](gh));
      }
    }
  }
  return m;
}

Matrix transversal_change(const GradedModule& v, const QuotientMap& pi, const std::vector<Character>& from,
                          const std::vector<Character>& to) {
  const Subgroup& h = pi.kernel();
  check_transversal(from, h);
  check_transversal(to, h);
  const std::size_t d = v.dim();
  const std::size_t n = from.size();
  Matrix m(n * d, n * d);
  for (std::size_t j = 0; j < n; ++j) {
    if (!same_restriction(from[j], to[j], h)) throw std::invalid_argument("transversals are not aligned");
    Character varpi = from[j] * to[j].inverse();
    for (std::size_t i = 0; i < d; ++i) m(j * d + i, j * d + i) = varpi.value(pi.section(v.degree(i)));
  }
  return m;
}

TransitivityResult loop_transitivity_iso(const GradedModule& v, const QuotientMap& pi, const Subgroup& k) {
  if (!k.is_subset_of(pi.kernel())) throw std::invalid_argument("transitivity: K must lie in the kernel");
  const FinAbGroup& g = pi.source();
  TransitivityResult out;
  out.direct = loop(v, pi);
  QuotientMap first(g, k);
  QuotientMap second(first.target(), first.image(pi.kernel()));
  QuotientMap through = QuotientMap::composite(first, second);
  // V regraded along the isomorphism between the two models of G/H.
  std::vector<GroupElem> degrees;
  for (auto d : v.degrees()) degrees.push_back(through.apply(pi.section(d)));
  GradedModule regraded(v.algebra_ptr(), through, degrees, v.actions());
  regraded.raise_field_order(v.field_order());
  out.inner = loop_general(regraded, first, second);
  out.outer = loop(out.inner.module, first);
  const std::size_t n = out.direct.module.dim();
  out.map = Matrix(out.outer.module.dim(), n);
  for (std::size_t c = 0; c < n; ++c) {
    GroupElem x = out.direct.group_part[c];
    std::size_t inner_index = out.inner.index_of(first.apply(x), out.direct.source[c]);
    out.map(out.outer.index_of(x, inner_index), c) = Cyc(1);
  }
  bool ok = out.outer.module.dim() == n && !det(out.map).is_zero();
  for (std::size_t c = 0; ok && c < n; ++c) {
    ok = out.outer.module.degree(out.outer.index_of(out.direct.group_part[c],
                                                     out.inner.index_of(first.apply(out.direct.group_part[c]),
                                                                        out.direct.source[c]))) ==
         out.direct.module.degree(c);
  }
  for (std::size_t b = 0; ok && b < v.algebra().dim(); ++b) {
    ok = out.map * out.direct.module.action(b) == out.outer.module.action(b) * out.map;
  }
  out.verified = ok;
  return out;
}

LoopMorphism loop_on_morphism(const Matrix& small_phi, const Character& chi, const LoopModule& source,
                              const LoopModule& target) {
  const QuotientMap& s = source.outer;
  const FinAbGroup& p = s.source();
  LoopMorphism out;
  out.big_phi = Matrix(target.module.dim(), source.module.dim());
  for (std::size_t c = 0; c < source.module.dim(); ++c) {
    GroupElem x = source.group_part[c];
    GroupElem h = p.div(x, s.section(s.apply(x)));
    Cyc scale = chi.value(h);
    for (std::size_t r = 0; r < small_phi.rows(); ++r) {
      const Cyc& entry = small_phi(r, source.source[c]);
      if (entry.is_zero()) continue;
      out.big_phi(target.index_of(x, r), c) = scale * entry;
    }
  }
  for (auto h : source.kernel) out.psi_scalars.push_back(chi.value(h));
  bool module_map = true;
  for (std::size_t b = 0; module_map && b < source.module.algebra().dim(); ++b) {
    module_map = out.big_phi * source.module.action(b) == target.module.action(b) * out.big_phi;
  }
  out.module_map = module_map;
  bool subfields = source.kernel == target.kernel;
  for (std::size_t k = 0; subfields && k < source.kernel.size(); ++k) {
    subfields = out.big_phi * source.delta[k] == target.delta[k].scaled(out.psi_scalars[k]) * out.big_phi;
  }
  out.respects_subfields = subfields;
  return out;
}

CentralizerLoopReport centralizer_loop_identity(const GradedModule& v, const QuotientMap& pi) {
  LoopModule l = loop(v, pi);
  const FinAbGroup& g = pi.source();
  const std::size_t n = l.module.dim();
  // d (x) g acts by (e_i (x) k) -> (D e_i) (x) kg.
  EchelonBasis lhs(n * n);
  Centralizer cv = graded_centralizer(v);
  for (const auto& d : cv.maps) {
    for (auto x : g.elements()) {
      if (pi.apply(x) != d.degree) continue;
      Matrix m(n, n);
      for (std::size_t c = 0; c < n; ++c) {
        GroupElem target = g.mul(l.group_part[c], x);
        for (std::size_t r = 0; r < v.dim(); ++r) {
          if (!d.matrix(r, l.source[c]).is_zero()) m(l.index_of(target, r), c) = d.matrix(r, l.source[c]);
        }
      }
      lhs.insert(m.flat());
    }
  }
  Centralizer cl = graded_centralizer(l.module);
  std::vector<Matrix> rhs_basis;
  {
    std::vector<Vec> images;
    for (const auto& m : cl.maps) {
      Vec img;
      for (const auto& dl : l.delta) {
        Matrix comm = m.matrix * dl - dl * m.matrix;
        img.insert(img.end(), comm.flat().begin(), comm.flat().end());
      }
      images.push_back(std::move(img));
    }
    for (const auto& rel : relations(images, n * n * l.delta.size())) {
      Matrix m(n, n);
      for (std::size_t k = 0; k < rel.size(); ++k) {
        if (!rel[k].is_zero()) m = m + cl.maps[k].matrix.scaled(rel[k]);
      }
      rhs_basis.push_back(std::move(m));
    }
  }
  CentralizerLoopReport rep;
  rep.loop_of_centralizer_dim = lhs.size();
  rep.centralizer_of_subfield_dim = rhs_basis.size();
  bool contained = true;
  for (const auto& m : rhs_basis) contained = contained && lhs.contains(m.flat());
  rep.equal = contained && lhs.size() == rhs_basis.size();
  rep.self_centralized = rep.equal && rhs_basis.size() == l.kernel.size();
  return rep;
}

Verdict is_thin_associated(const GradedModule& v, const QuotientMap& pi) {
  SimplicityResult s = is_graded_simple(v);
  if (s.verdict != Verdict::yes) {
    if (s.verdict == Verdict::no) throw std::invalid_argument("thinness: module is not graded simple");
    return Verdict::indeterminate;
  }
  return is_graded_simple(loop(v, pi).module).verdict;
}

}  // namespace loopmod
