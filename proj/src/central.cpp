#include "loopmod/central.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace loopmod {

namespace {

std::optional<Cyc> scalar_value(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return std::nullopt;
  Cyc c = m(0, 0);
  if (m == Matrix::identity(n).scaled(c)) return c;
  return std::nullopt;
}

Matrix matrix_power(const Matrix& m, long k) {
  Matrix out = Matrix::identity(m.rows());
  for (long i = 0; i < k; ++i) out = out * m;
  return out;
}

Matrix combination(const std::vector<Matrix>& basis, const Vec& coords) {
  Matrix out(basis[0].rows(), basis[0].cols());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!coords[k].is_zero()) out = out + basis[k].scaled(coords[k]);
  }
  return out;
}

// Builds c_h for all h from normalized generator images; nullopt if they fail to commute.
std::optional<std::vector<Matrix>> extend_over(const Subgroup& h, const SubgroupPresentation& pres,
                                               const std::vector<Matrix>& gens, std::size_t n) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i] * gens[j] != gens[j] * gens[i]) return std::nullopt;
    }
  std::vector<Matrix> out;
  for (auto e : h.elements()) {
    auto c = pres.abstract().coords(pres.abstract_of(e));
    Matrix m = Matrix::identity(n);
    for (std::size_t j = 0; j < c.size(); ++j) m = m * matrix_power(gens[j], c[j]);
    out.push_back(std::move(m));
  }
  return out;
}

bool same_span_per_degree(const GradedSubfield& a, const GradedSubfield& b) {
  if (!(a.support == b.support)) return false;
  for (std::size_t k = 0; k < a.elements.size(); ++k) {
    EchelonBasis eb(a.elements[k].rows() * a.elements[k].cols());
    eb.insert(a.elements[k].flat());
    if (!eb.contains(b.elements[k].flat())) return false;
  }
  return true;
}

}  // namespace

std::vector<Matrix> centralizer_within(const Centralizer& c, const std::vector<Matrix>& maps) {
  if (c.maps.empty()) return {};
  const std::size_t n = c.maps[0].matrix.rows();
  std::vector<Vec> images;
  for (const auto& b : c.maps) {
    Vec img;
    img.reserve(maps.size() * n * n);
    for (const auto& m : maps) {
      Matrix d = b.matrix * m - m * b.matrix;
      img.insert(img.end(), d.flat().begin(), d.flat().end());
    }
    images.push_back(std::move(img));
  }
  std::vector<Matrix> basis;
  for (const auto& m : c.maps) basis.push_back(m.matrix);
  std::vector<Matrix> out;
  for (const auto& rel : relations(images, maps.size() * n * n)) out.push_back(combination(basis, rel));
  return out;
}

GradedSubfield subfield_on(const GradedModule& w, const Centralizer& c, const Subgroup& h) {
  MatrixAlgebra d = c.algebra();
  NormalizedSubfield nf = normalize_subfield_basis(d.algebra, h);
  GradedSubfield out;
  out.support = h;
  out.field_order = nf.field_order;
  for (const auto& coords : nf.elements) out.elements.push_back(realize(d, coords));
  out.self_centralizing = centralizer_within(c, out.elements).size() == h.order();
  (void)w;
  return out;
}

SubfieldSearch maximal_graded_subfields(const GradedModule& w) {
  Centralizer c = graded_centralizer(w);
  SubfieldSearch out;
  const FinAbGroup& g = w.grading_group();
  std::map<GroupElem, std::vector<Matrix>> by_degree;
  for (const auto& m : c.maps) by_degree[m.degree].push_back(m.matrix);
  out.split = std::all_of(by_degree.begin(), by_degree.end(), [](const auto& kv) { return kv.second.size() == 1; });

  if (out.split) {
    MatrixAlgebra d = c.algebra();
    CommutationData beta = commutation_bicharacter(d.algebra);
    for (const auto& hs : isotropic_subgroups(beta.beta, true)) {
      GradedSubfield f = subfield_on(w, c, beta.embed(hs));
      if (!f.self_centralizing) throw std::logic_error("maximal isotropic subgroup gave a non-maximal subfield");
      out.subfields.push_back(std::move(f));
    }
    return out;
  }

  // Components of dimension above one: look for normalizable candidates without enlarging the field.
  std::vector<GroupElem> supp;
  for (const auto& kv : by_degree) supp.push_back(kv.first);
  Subgroup t = Subgroup::generated(g, supp);
  const std::size_t n = w.dim();
  for (const auto& h : all_subgroups(g)) {
    if (!h.is_subset_of(t)) continue;
    SubgroupPresentation pres(h);
    std::vector<std::vector<Matrix>> candidates;
    for (std::size_t i = 0; i < pres.generators().size(); ++i) {
      const auto& comp = by_degree[pres.generators()[i]];
      std::vector<Matrix> cand = comp;
      for (std::size_t a = 0; a < comp.size(); ++a)
        for (std::size_t b = a + 1; b < comp.size(); ++b) cand.push_back(comp[a] + comp[b]);
      std::vector<Matrix> normalized;
      long order = pres.abstract().factors()[i];
      for (const auto& m : cand) {
        auto lambda = scalar_value(matrix_power(m, order));
        if (!lambda || lambda->is_zero()) continue;
        try {
          Cyc mu = lambda->kth_root(order);
          if (!mu.lowered(w.field_order())) continue;
          normalized.push_back(m.scaled(mu.inverse()));
        } catch (const FieldNotSplit&) {
        }
      }
      candidates.push_back(std::move(normalized));
    }
    std::vector<std::size_t> pick(candidates.size(), 0);
    if (std::any_of(candidates.begin(), candidates.end(), [](const auto& v) { return v.empty(); })) continue;
    while (true) {
      std::vector<Matrix> gens;
      for (std::size_t i = 0; i < pick.size(); ++i) gens.push_back(candidates[i][pick[i]]);
      if (auto elems = extend_over(h, pres, gens, n)) {
        GradedSubfield f;
        f.support = h;
        f.elements = std::move(*elems);
        f.field_order = w.field_order();
        f.self_centralizing = centralizer_within(c, f.elements).size() == h.order();
        bool fresh = std::none_of(out.subfields.begin(), out.subfields.end(),
                                  [&](const GradedSubfield& o) { return same_span_per_degree(o, f); });
        if (f.self_centralizing && fresh) out.subfields.push_back(std::move(f));
      }
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == candidates[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return out;
}

CentralImage central_image(const GradedModule& w, const GradedSubfield& f, const Character& chi) {
  const FinAbGroup& g = w.grading_group();
  if (!(f.support.parent() == g)) throw std::invalid_argument("central image: subfield graded by another group");
  if (!(chi.group() == g)) throw std::invalid_argument("central image: character of another group");
  CentralImage out;
  out.pi = QuotientMap(g, f.support);
  out.chi = chi;
  const QuotientMap& pi = out.pi;
  std::vector<long> slot(w.dim(), -1);
  for (std::size_t j = 0; j < w.dim(); ++j) {
    GroupElem d = w.degree(j);
    if (pi.section(pi.apply(d)) == d) {
      slot[j] = static_cast<long>(out.kept.size());
      out.kept.push_back(j);
    }
  }
  const std::size_t m = out.kept.size();
  out.gamma = Matrix(m, w.dim());
  for (std::size_t j = 0; j < w.dim(); ++j) {
    GroupElem d = w.degree(j);
    GroupElem rep = pi.section(pi.apply(d));
    GroupElem h = g.div(d, rep);
    Vec e(w.dim());
    e[j] = Cyc(1);
    Vec y = f.at(g.inv(h)) * e;
    Cyc scale = chi.value(h);
    for (std::size_t i = 0; i < w.dim(); ++i) {
      if (y[i].is_zero()) continue;
      if (slot[i] < 0) throw std::logic_error("central image: c_h moved a vector off the transversal");
      out.gamma(static_cast<std::size_t>(slot[i]), j) = scale * y[i];
    }
  }
  std::vector<GroupElem> degrees;
  for (auto j : out.kept) degrees.push_back(pi.apply(w.degree(j)));
  std::vector<Matrix> act;
  for (const auto& a : w.actions()) {
    Matrix r(m, m);
    Matrix ga = out.gamma * a;
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t i = 0; i < m; ++i) r(i, c) = ga(i, out.kept[c]);
    act.push_back(std::move(r));
  }
  out.module = GradedModule(w.algebra_ptr(), QuotientMap::composite(w.grading(), pi), degrees, act);
  out.module.raise_field_order(std::max(w.field_order(), f.field_order));
  out.module.raise_field_order(static_cast<int>(g.exponent()));
  return out;
}

CentralImageReport verify_central_image(const GradedModule& w, const GradedSubfield& f, const CentralImage& ci) {
  CentralImageReport r;
  const GradedModule& v = ci.module;
  r.gamma_module_map = true;
  for (std::size_t b = 0; b < w.algebra().dim() && r.gamma_module_map; ++b) {
    r.gamma_module_map = ci.gamma * w.action(b) == v.action(b) * ci.gamma;
  }
  r.gamma_twisted = true;
  for (auto h : f.support.elements()) {
    if (!(ci.gamma * f.at(h) == ci.gamma.scaled(ci.chi.value(h)))) r.gamma_twisted = false;
  }
  r.bijective_on_components = true;
  for (auto d : w.support()) {
    auto cols = w.component(d);
    auto rows = v.component(ci.pi.apply(d));
    if (cols.size() != rows.size()) {
      r.bijective_on_components = false;
      break;
    }
    Matrix block(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) block(a, b) = ci.gamma(rows[a], cols[b]);
    if (rank(block) != cols.size()) r.bijective_on_components = false;
  }
  r.simple = is_simple_ungraded(v).verdict;
  r.graded_simple = is_graded_simple(v).verdict;
  r.central = ungraded_centralizer(v).size() == 1;
  return r;
}

PairIsomorphism pair_isomorphism(const GradedModule& w, const GradedSubfield& f, const CentralImage& ci) {
  PairIsomorphism out;
  out.loop = loop_general(ci.module, w.grading(), ci.pi);
  const LoopModule& l = out.loop;
  out.map = Matrix(l.module.dim(), w.dim());
  for (std::size_t j = 0; j < w.dim(); ++j) {
    for (std::size_t i = 0; i < ci.module.dim(); ++i) {
      if (!ci.gamma(i, j).is_zero()) out.map(l.index_of(w.degree(j), i), j) = ci.gamma(i, j);
    }
  }
  bool ok = l.module.dim() == w.dim() && rank(out.map) == w.dim();
  for (std::size_t b = 0; ok && b < w.algebra().dim(); ++b) ok = out.map * w.action(b) == l.module.action(b) * out.map;
  for (std::size_t j = 0; ok && j < w.dim(); ++j) {
    for (std::size_t r = 0; r < l.module.dim(); ++r) {
      if (!out.map(r, j).is_zero() && l.module.degree(r) != w.degree(j)) ok = false;
    }
  }
  out.graded_isomorphism = ok;
  bool sub = l.kernel.size() == f.support.order();
  for (std::size_t k = 0; sub && k < l.kernel.size(); ++k) {
    GroupElem h = l.kernel[k];
    sub = out.map * f.at(h) == (l.delta[k] * out.map).scaled(ci.chi.value(h));
  }
  out.subfields_match = sub;
  return out;
}

GradedModule twist_by_character(const GradedModule& v, const QuotientMap& q, const QuotientMap& pi,
                                const Character& chi) {
  if (!same_quotient(QuotientMap::composite(q, pi), v.grading())) {
    throw std::invalid_argument("twist: module is not graded through the given quotients");
  }
  const FinAbGroup& g = pi.source();
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) {
    GroupElem x = q.apply(v.algebra().degree(b));
    Matrix m = v.action(b);
    for (std::size_t c = 0; c < v.dim(); ++c) {
      GroupElem k = v.degree(c);
      GroupElem h = g.div(g.mul(x, pi.section(k)), pi.section(pi.apply(g.mul(x, pi.section(k)))));
      Cyc s = chi.value(h);
      if (s.is_one()) continue;
      for (std::size_t r = 0; r < v.dim(); ++r) {
        if (!m(r, c).is_zero()) m(r, c) = m(r, c) * s;
      }
    }
    act.push_back(std::move(m));
  }
  GradedModule out(v.algebra_ptr(), v.grading(), v.degrees(), act);
  out.raise_field_order(v.field_order());
  out.raise_field_order(static_cast<int>(chi.group().exponent()));
  return out;
}

GradedModule twist_by_automorphism(const GradedModule& v, const Character& chi) {
  if (!(chi.group() == v.algebra().group())) throw std::invalid_argument("twist: character of another group");
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) act.push_back(v.action(b).scaled(chi.value(v.algebra().degree(b))));
  GradedModule out(v.algebra_ptr(), v.grading(), v.degrees(), act);
  out.raise_field_order(v.field_order());
  out.raise_field_order(static_cast<int>(chi.group().exponent()));
  return out;
}

Decomposition decompose(const GradedModule& w, const GradedSubfield& f) {
  Decomposition d;
  const FinAbGroup& g = w.grading_group();
  d.centralizer = graded_centralizer(w);
  d.h = f.support;
  MatrixAlgebra alg = d.centralizer.algebra();
  d.z = Subgroup::generated(g, center(alg.algebra).support);
  if (!d.z.is_subset_of(d.h)) throw std::logic_error("decompose: center support not inside the subfield support");
  d.to_gz = QuotientMap(g, d.z);
  d.characters = subgroup_characters(d.h);
  for (const auto& chi : d.characters) d.images.push_back(central_image(w, f, chi));

  // Classes by restriction to Z.
  std::vector<std::size_t> reps;
  for (std::size_t j = 0; j < d.characters.size(); ++j) {
    std::size_t cls = reps.size();
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (same_restriction(d.characters[j], d.characters[reps[k]], d.z)) cls = k;
    }
    if (cls == reps.size()) reps.push_back(j);
    d.class_of.push_back(cls);
  }
  d.classes_certified = true;
  for (std::size_t j = 0; j < d.images.size(); ++j) {
    const auto& rep = d.images[reps[d.class_of[j]]].module;
    if (j != reps[d.class_of[j]] && !is_isomorphic_ungraded(d.images[j].module, rep).isomorphic()) {
      d.classes_certified = false;
    }
  }
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      if (is_isomorphic_ungraded(d.images[reps[a]].module, d.images[reps[b]].module).outcome !=
          IsoOutcome::not_isomorphic) {
        d.classes_certified = false;
      }
    }

  std::size_t total_rows = 0;
  for (const auto& im : d.images) total_rows += im.module.dim();
  Matrix stacked(total_rows, w.dim());
  std::size_t row = 0;
  for (const auto& im : d.images) {
    for (std::size_t i = 0; i < im.module.dim(); ++i, ++row)
      for (std::size_t j = 0; j < w.dim(); ++j) stacked(row, j) = im.gamma(i, j);
  }
  d.splitting_invertible = total_rows == w.dim() && rank(stacked) == w.dim();

  GradedModule coarse = coarsen(w, d.to_gz);
  Cyc inv_z(Rational(1, static_cast<long>(d.z.order())));
  const std::size_t quotient_order = d.h.order() / d.z.order();
  d.multiplicities_ok = true;
  std::size_t dim_sum = 0;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    IsotypicPiece p;
    p.restriction = d.characters[reps[k]];
    Matrix e(w.dim(), w.dim());
    for (auto zz : d.z.elements()) e = e + f.at(zz).scaled(Cyc::from_phase(-p.restriction(zz)));
    p.idempotent = e.scaled(inv_z);
    for (std::size_t j = 0; j < d.class_of.size(); ++j) {
      if (d.class_of[j] == k) p.members.push_back(j);
    }
    for (std::size_t j = 0; j < w.dim(); ++j) {
      GroupElem deg = w.degree(j);
      if (d.to_gz.section(d.to_gz.apply(deg)) != deg) continue;
      Vec e_j(w.dim());
      e_j[j] = Cyc(1);
      p.basis.push_back(p.idempotent * e_j);
    }
    p.module = submodule(coarse, p.basis);
    d.multiplicities.push_back(p.members.size());
    if (p.members.size() != quotient_order) d.multiplicities_ok = false;
    dim_sum += p.members.size() * d.images[reps[k]].module.dim();
    d.pieces.push_back(std::move(p));
  }
  d.dimension_ok = dim_sum == w.dim();
  d.pieces_graded_simple = std::all_of(d.pieces.begin(), d.pieces.end(),
                                       [](const IsotypicPiece& p) { return is_graded_simple(p.module).simple(); });
  d.pieces_distinct = true;
  for (std::size_t a = 0; a < d.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < d.pieces.size(); ++b) {
      if (is_isomorphic_ungraded(d.pieces[a].module, d.pieces[b].module).outcome != IsoOutcome::not_isomorphic) {
        d.pieces_distinct = false;
      }
    }
  return d;
}

IsotypicReconstruction reconstruct_from_isotypic(const GradedModule& w, const Decomposition& d, std::size_t i) {
  const IsotypicPiece& p = d.pieces.at(i);
  IsotypicReconstruction out;
  out.loop = loop_general(p.module, w.grading(), d.to_gz);
  const LoopModule& l = out.loop;
  EchelonBasis eb(w.dim(), true);
  for (const auto& v : p.basis) eb.insert(v);
  out.map = Matrix(l.module.dim(), w.dim());
  bool ok = l.module.dim() == w.dim();
  for (std::size_t j = 0; ok && j < w.dim(); ++j) {
    Vec e_j(w.dim());
    e_j[j] = Cyc(1);
    auto coords = eb.coordinates(p.idempotent * e_j);
    if (!coords) {
      ok = false;
      break;
    }
    for (std::size_t k = 0; k < coords->size(); ++k) {
      if (!(*coords)[k].is_zero()) out.map(l.index_of(w.degree(j), k), j) = (*coords)[k];
    }
  }
  ok = ok && rank(out.map) == w.dim();
  for (std::size_t b = 0; ok && b < w.algebra().dim(); ++b) ok = out.map * w.action(b) == l.module.action(b) * out.map;
  out.module_isomorphism = ok;

  // Centralizer side: d_t eps restricted to the piece, one line per coset of Z, spanning |T/Z| dimensions.
  bool alg = true;
  EchelonBasis span(w.dim() * w.dim());
  std::map<GroupElem, Matrix> by_coset;
  for (const auto& m : d.centralizer.maps) {
    Matrix de = m.matrix * p.idempotent;
    if (de.is_zero()) {
      alg = false;
      break;
    }
    GroupElem coset = d.to_gz.apply(m.degree);
    auto it = by_coset.find(coset);
    if (it == by_coset.end()) {
      by_coset.emplace(coset, de);
      span.insert(de.flat());
    } else {
      EchelonBasis line(w.dim() * w.dim());
      line.insert(it->second.flat());
      if (!line.contains(de.flat())) alg = false;
    }
  }
  out.algebra_isomorphism = alg && span.size() * d.z.order() == d.centralizer.dim();
  return out;
}

TwistSearch loop_iso_implies_twist(const GradedModule& v, const GradedModule& vp, const QuotientMap& q,
                                   const QuotientMap& pi) {
  TwistSearch out;
  LoopModule lv = loop_general(v, q, pi);
  LoopModule lvp = loop_general(vp, q, pi);
  out.loops = is_isomorphic_graded(lv.module, lvp.module).outcome;
  if (out.loops != IsoOutcome::isomorphic) return out;
  for (const auto& chi : subgroup_characters(pi.kernel())) {
    if (is_isomorphic_graded(twist_by_character(v, q, pi, chi), vp).isomorphic()) {
      out.witness = chi;
      return out;
    }
  }
  out.violation = true;
  return out;
}

FunctorCheck extended_functor_check(const GradedModule& v, const GradedModule& vp, const QuotientMap& q,
                                    const QuotientMap& pi) {
  FunctorCheck out;
  LoopModule lv = loop_general(v, q, pi);
  LoopModule lvp = loop_general(vp, q, pi);
  const FinAbGroup& g = pi.source();
  auto graded_maps = intertwiners(lv.module, lvp.module, g.identity());
  for (const auto& chi : subgroup_characters(pi.kernel())) {
    std::vector<Vec> images;
    for (const auto& b : graded_maps) {
      Vec img;
      for (std::size_t k = 0; k < lv.kernel.size(); ++k) {
        Matrix diff = b * lv.delta[k] - (lvp.delta[k] * b).scaled(chi.value(lv.kernel[k]));
        img.insert(img.end(), diff.flat().begin(), diff.flat().end());
      }
      images.push_back(std::move(img));
    }
    std::size_t pair_dim = graded_maps.empty() ? 0 : relations(images, images[0].size()).size();
    auto small = intertwiners(v, twist_by_character(vp, q, pi, chi), v.grading_group().identity());
    out.pair_morphisms.push_back(pair_dim);
    out.small_morphisms.push_back(small.size());
    EchelonBasis lifted(lvp.module.dim() * lv.module.dim());
    for (const auto& phi : small) {
      LoopMorphism m = loop_on_morphism(phi, chi, lv, lvp);
      if (!m.module_map || !m.respects_subfields || !lifted.insert(m.big_phi.flat())) out.faithful = false;
    }
    if (pair_dim != small.size()) out.full = false;
  }
  return out;
}

}  // namespace loopmod
