#include "loopmod/invars.hpp"

#include <json.hpp>
#include <map>
#include <memory>
#include <stdexcept>

namespace loopmod {

namespace {

std::size_t unit_position(const GradedAlgebra& a) {
  std::size_t p = 0;
  while (a.unit()[p].is_zero()) ++p;
  return p;
}

// x^k = omega 1 for a homogeneous basis element x of order k in the support.
Cyc power_scalar(const GradedAlgebra& a, std::size_t basis_index, long k) {
  Vec p = a.power(a.basis_vector(basis_index), k);
  std::size_t u = unit_position(a);
  Cyc omega = p[u] / a.unit()[u];
  if (omega.is_zero() || p != scale_vec(a.unit(), omega)) {
    throw std::invalid_argument("power of a homogeneous element is not a nonzero scalar");
  }
  return omega;
}

Subgroup center_subgroup(const GradedAlgebra& a) {
  CenterResult c = center(a);
  Subgroup z = Subgroup::generated(a.group(), c.support);
  if (z.order() != c.support.size() || c.basis.size() != z.order()) {
    throw FieldNotSplit("center is not spanned by one element per degree of a subgroup");
  }
  return z;
}

// Restrict commuting maps to the image of an idempotent matrix.
struct ImageRestriction {
  EchelonBasis basis;
  explicit ImageRestriction(const Matrix& e) : basis(e.rows(), true) {
    for (std::size_t j = 0; j < e.cols(); ++j) basis.insert(e.column(j));
  }
  Matrix restrict(const Matrix& m) const {
    const std::size_t r = basis.size();
    Matrix out(r, r);
    for (std::size_t j = 0; j < r; ++j) {
      auto c = basis.coordinates(m * basis.vectors()[j]);
      if (!c) throw std::logic_error("restriction: map does not preserve the image");
      for (std::size_t i = 0; i < r; ++i) out(i, j) = (*c)[i];
    }
    return out;
  }
};

std::optional<Subgroup> isotropic_complement(const CommutationData& cd, const Subgroup& h) {
  const Subgroup& t = cd.support;
  for (const auto& b : all_subgroups(t.parent())) {
    if (b.order() * h.order() != t.order() || !b.is_subset_of(t)) continue;
    bool ok = true;
    for (auto x : b.elements()) {
      if (x != t.parent().identity() && h.contains(x)) ok = false;
      for (auto y : b.elements()) ok = ok && cd(x, y).is_one();
      if (!ok) break;
    }
    if (ok) return b;
  }
  return std::nullopt;
}

}  // namespace

DivisionAlgebraProfile profile(const GradedAlgebra& d) {
  DivisionAlgebraProfile p;
  p.commutation = commutation_bicharacter(d);
  const CommutationData& cd = p.commutation;
  const std::size_t t = cd.support.order();
  p.alternating = cd.beta.is_alternating();
  p.center = center_subgroup(d);
  p.radical_is_center = cd.embed(radical(cd.beta)) == p.center;
  for (const auto& hs : isotropic_subgroups(cd.beta, true)) p.all_maximal_isotropic.push_back(cd.embed(hs));
  if (p.all_maximal_isotropic.empty()) throw std::logic_error("profile: no maximal isotropic subgroup");
  p.isotropic = p.all_maximal_isotropic.front();
  const std::size_t z = p.center.order();
  p.order_identity = true;
  for (const auto& h : p.all_maximal_isotropic) {
    if (t * z != h.order() * h.order()) p.order_identity = false;
  }
  p.schur_index = p.isotropic.order() / z;
  p.index_identity = p.schur_index * p.schur_index * z == t;
  CentralIdempotents pci = primitive_central_idempotents(d);
  bool simple = pci.idempotents.size() == 1;
  p.simple_iff_central = simple == (z == 1) && pci.idempotents.size() == z;
  return p;
}

InertiaResult inertia_group(const GradedModule& w) {
  InertiaResult r;
  const FinAbGroup& g = w.grading_group();
  Centralizer c = graded_centralizer(w);
  r.center = center_subgroup(c.algebra().algebra);
  r.group = orthogonal_complement(r.center);
  r.dual = r.group.parent();

  SubfieldSearch s = maximal_graded_subfields(w);
  if (s.subfields.empty()) throw std::logic_error("inertia: no maximal graded subfield found");
  GradedModule v = central_image(w, s.subfields.front(), Character::trivial(g)).module;
  r.cross_checked = true;
  for (const auto& chi : characters(g)) {
    GradedModule tw = twist_by_automorphism(v, pullback(chi, w.grading()));
    IsoResult iso = is_isomorphic_ungraded(v, tw);
    if (iso.outcome == IsoOutcome::inconclusive || iso.isomorphic() != r.group.contains(chi.exponents())) {
      r.cross_checked = false;
    }
  }
  return r;
}

std::string BrauerInvariant::to_json() const {
  nlohmann::json j;
  j["quotient"] = quotient.factors();
  nlohmann::json supp = nlohmann::json::array();
  for (auto x : generators) supp.push_back(quotient.format(x));
  j["support"] = supp;
  nlohmann::json b = nlohmann::json::array();
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t k = i + 1; k < generators.size(); ++k) {
      b.push_back({quotient.format(generators[i]), quotient.format(generators[k]),
                   Cyc::from_phase(beta[i][k]).to_string()});
    }
  j["beta"] = b;
  return j.dump();
}

BrauerInvariant invariant_of_division(const GradedAlgebra& d) {
  CommutationData cd = commutation_bicharacter(d);
  BrauerInvariant b;
  b.quotient = d.group();
  b.support = cd.support;
  b.generators = cd.presentation.generators();
  b.beta.assign(b.generators.size(), std::vector<Phase>(b.generators.size()));
  for (std::size_t i = 0; i < b.generators.size(); ++i)
    for (std::size_t k = 0; k < b.generators.size(); ++k) b.beta[i][k] = cd(b.generators[i], b.generators[k]);
  b.nondegenerate = radical(cd.beta).order() == 1;
  return b;
}

BrauerReport brauer_invariant(const GradedModule& w) {
  const FinAbGroup& g = w.grading_group();
  Centralizer c = graded_centralizer(w);
  MatrixAlgebra d = c.algebra();
  CentralIdempotents pci = primitive_central_idempotents(d.algebra);
  QuotientMap to_gz(g, pci.center_support);
  BrauerReport r;
  r.quotient = to_gz.target();
  for (const auto& eps : pci.idempotents) {
    ImageRestriction img(realize(d, eps));
    std::vector<Matrix> mats;
    std::vector<GroupElem> degrees;
    for (std::size_t k = 0; k < c.maps.size(); ++k) {
      GroupElem t = c.maps[k].degree;
      if (to_gz.section(to_gz.apply(t)) != t) continue;
      Vec prod = d.algebra.multiply(d.algebra.basis_vector(k), eps);
      mats.push_back(img.restrict(realize(d, prod)));
      degrees.push_back(to_gz.apply(t));
    }
    GradedAlgebra block = matrix_algebra(r.quotient, mats, degrees, true).algebra;
    r.per_idempotent.push_back(invariant_of_division(block));
    r.blocks.push_back(std::move(block));
  }
  DivisionAlgebraProfile p = profile(r.blocks.front());
  r.schur_index = p.schur_index;
  r.index_identity = p.ok() && p.center.order() == 1 && r.schur_index * r.schur_index == r.blocks.front().dim();
  r.independent_of_idempotent = true;
  for (const auto& b : r.per_idempotent) {
    if (!(b == r.per_idempotent.front()) || !b.nondegenerate) r.independent_of_idempotent = false;
  }
  return r;
}

std::size_t schur_index(const GradedModule& w) { return brauer_invariant(w).schur_index; }

DivisionIsoResult division_algebras_isomorphic(const GradedAlgebra& d1, const GradedAlgebra& d2) {
  DivisionIsoResult r;
  if (!(d1.group() == d2.group())) throw std::invalid_argument("division iso: different grading groups");
  CommutationData c1 = commutation_bicharacter(d1);
  CommutationData c2 = commutation_bicharacter(d2);
  if (!(c1.support == c2.support)) {
    r.by_rescaling = false;
    return r;
  }
  r.by_invariants = true;
  for (auto x : c1.support.elements())
    for (auto y : c1.support.elements()) r.by_invariants = r.by_invariants && c1(x, y) == c2(x, y);

  // Match the generator powers, extend along canonical words, then test every product.
  const SubgroupPresentation& pres = c1.presentation;
  const FinAbGroup& abs = pres.abstract();
  std::vector<Cyc> mu;
  try {
    for (std::size_t i = 0; i < pres.generators().size(); ++i) {
      long k = abs.factors()[i];
      Cyc w1 = power_scalar(d1, d1.component(pres.generators()[i])[0], k);
      Cyc w2 = power_scalar(d2, d2.component(pres.generators()[i])[0], k);
      mu.push_back((w1 / w2).kth_root(k));
    }
  } catch (const FieldNotSplit&) {
    return r;
  }
  const std::size_t n = d1.dim();
  std::vector<std::size_t> target(n);
  std::vector<Cyc> scale(n);
  for (auto t : c1.support.elements()) {
    auto a = abs.coords(pres.abstract_of(t));
    Vec word1 = d1.unit();
    Vec word2 = d2.unit();
    Cyc m(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      Vec g1 = d1.basis_vector(d1.component(pres.generators()[i])[0]);
      Vec g2 = d2.basis_vector(d2.component(pres.generators()[i])[0]);
      for (long e = 0; e < a[i]; ++e) {
        word1 = d1.multiply(word1, g1);
        word2 = d2.multiply(word2, g2);
        m = m * mu[i];
      }
    }
    std::size_t i1 = d1.component(t)[0];
    std::size_t i2 = d2.component(t)[0];
    target[i1] = i2;
    scale[i1] = m * word2[i2] / word1[i1];
  }
  auto image = [&](const Vec& v) {
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i].is_zero()) out[target[i]] = v[i] * scale[i];
    }
    return out;
  };
  bool ok = image(d1.unit()) == d2.unit();
  for (std::size_t i = 0; ok && i < n; ++i)
    for (std::size_t j = 0; ok && j < n; ++j) {
      ok = image(d1.multiply(d1.basis_vector(i), d1.basis_vector(j))) ==
           d2.multiply(image(d1.basis_vector(i)), image(d1.basis_vector(j)));
    }
  r.by_rescaling = ok;
  return r;
}

SimpleModuleModel simple_module_model(const GradedAlgebra& d, const Subgroup& h) {
  CommutationData cd = commutation_bicharacter(d);
  QuotientMap q(d.group(), h);
  Subgroup image = q.image(cd.support);
  std::vector<GroupElem> section;
  auto b = isotropic_complement(cd, h);
  for (auto tbar : image.elements()) {
    GroupElem pick = q.section(tbar);
    if (b) {
      for (auto x : b->elements()) {
        if (q.apply(x) == tbar) pick = x;
      }
    }
    section.push_back(pick);
  }
  SimpleModuleModel m = simple_module_model(d, h, section);
  m.smash_section = b.has_value();
  return m;
}

SimpleModuleModel simple_module_model(const GradedAlgebra& d, const Subgroup& h, const std::vector<GroupElem>& section) {
  const FinAbGroup& g = d.group();
  CommutationData cd = commutation_bicharacter(d);
  const Subgroup& t = cd.support;
  if (!h.is_subset_of(t)) throw std::invalid_argument("model: subgroup outside the support");
  NormalizedSubfield nf = normalize_subfield_basis(d, h);
  SimpleModuleModel out;
  out.isotropic = h;
  out.section = section;
  QuotientMap q(g, h);
  if (section.size() * h.order() != t.order()) throw std::invalid_argument("model: section has the wrong size");

  for (auto x : t.elements()) {
    out.normalized.push_back(h.contains(x) ? nf.elements[h.position(x)] : d.basis_vector(d.component(x)[0]));
  }
  auto c_of = [&](GroupElem x) -> const Vec& { return out.normalized[t.position(x)]; };
  auto sigma = [&](GroupElem x, GroupElem y) {
    Vec p = d.multiply(c_of(x), c_of(y));
    std::size_t k = d.component(g.mul(x, y))[0];
    return p[k] / c_of(g.mul(x, y))[k];
  };
  std::map<GroupElem, std::size_t> slot;
  for (std::size_t k = 0; k < section.size(); ++k) {
    if (!t.contains(section[k]) || !slot.emplace(q.apply(section[k]), k).second) {
      throw std::invalid_argument("model: section is not a transversal of the support");
    }
  }
  const std::size_t n = section.size();
  std::vector<Matrix> act;
  for (std::size_t bi = 0; bi < d.dim(); ++bi) {
    GroupElem t1 = d.degree(bi);
    Cyc gamma = c_of(t1)[bi];  // c_{t1} = gamma x_b
    Matrix a(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      GroupElem xi2 = section[k];
      std::size_t target = slot.at(q.apply(g.mul(t1, xi2)));
      GroupElem xi12 = section[target];
      GroupElem hh = g.div(g.mul(t1, xi2), xi12);
      a(target, k) = sigma(t1, xi2) / (sigma(xi12, hh) * gamma);
    }
    act.push_back(std::move(a));
  }
  std::vector<GroupElem> degrees;
  for (auto x : section) degrees.push_back(q.apply(x));
  out.module = GradedModule(std::make_shared<const GradedAlgebra>(d), q, degrees, act);
  out.module.raise_field_order(std::max(d.field_order(), nf.field_order));
  out.module.raise_field_order(static_cast<int>(g.exponent()));
  out.simple = validate(out.module).ok() && is_simple_ungraded(out.module).simple() &&
               is_graded_simple(out.module).simple();

  const FinAbGroup& gh = q.target();
  for (const auto& m : act) out.dual_action.push_back(m.transposed());
  for (auto x : degrees) out.dual_degrees.push_back(gh.inv(x));
  // (f_k . x_b)(e_l) = f_k(x_b e_l), nonzero only in total degree zero.
  out.pairing_graded = true;
  for (std::size_t bi = 0; bi < d.dim(); ++bi) {
    GroupElem db = q.apply(d.degree(bi));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        Cyc lhs = out.dual_action[bi](l, k);
        Cyc rhs = act[bi](k, l);
        if (!(lhs == rhs)) out.pairing_graded = false;
        if (!rhs.is_zero() && gh.mul(gh.mul(out.dual_degrees[k], db), degrees[l]) != gh.identity()) {
          out.pairing_graded = false;
        }
      }
  }
  EchelonBasis span(n * n, true);
  for (const auto& m : act) span.insert(m.flat());
  out.morita_bijective = span.size() == d.dim() && d.dim() == n * n;
  out.morita_graded = out.morita_bijective;
  for (std::size_t k = 0; out.morita_graded && k < n; ++k)
    for (std::size_t l = 0; out.morita_graded && l < n; ++l) {
      Matrix e(n, n);
      e(k, l) = Cyc(1);
      auto coords = span.coordinates(e.flat());
      if (!coords) {
        out.morita_graded = false;
        break;
      }
      GroupElem want = gh.div(degrees[k], degrees[l]);
      for (std::size_t bi = 0; bi < coords->size(); ++bi) {
        if (!(*coords)[bi].is_zero() && q.apply(d.degree(bi)) != want) out.morita_graded = false;
      }
    }
  return out;
}

EndomorphismGrading grade_endomorphism_algebra(const GradedModule& w, const GradedModule& v) {
  if (&w.algebra() != &v.algebra() && w.algebra().dim() != v.algebra().dim()) {
    throw std::invalid_argument("endomorphism grading: modules over different algebras");
  }
  EndomorphismGrading r;
  Centralizer c = graded_centralizer(w);
  r.to_gz = QuotientMap(w.grading_group(), center_subgroup(c.algebra().algebra));
  const FinAbGroup& q = r.to_gz.target();
  const std::size_t n = v.dim();
  std::map<GroupElem, EchelonBasis> comps;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) {
    GroupElem deg = r.to_gz.apply(w.algebra_degree(b));
    auto it = comps.try_emplace(deg, n * n).first;
    if (it->second.insert(v.action(b).flat())) {
      r.basis.push_back(v.action(b));
      r.degrees.push_back(deg);
    }
  }
  EchelonBasis all(n * n);
  for (const auto& m : r.basis) all.insert(m.flat());
  r.direct_sum = all.size() == r.basis.size() && r.basis.size() == n * n;
  r.closed = true;
  for (std::size_t i = 0; r.closed && i < r.basis.size(); ++i)
    for (std::size_t j = 0; r.closed && j < r.basis.size(); ++j) {
      auto it = comps.find(q.mul(r.degrees[i], r.degrees[j]));
      Matrix p = r.basis[i] * r.basis[j];
      r.closed = p.is_zero() || (it != comps.end() && it->second.contains(p.flat()));
    }
  if (r.direct_sum) r.algebra = matrix_algebra(q, r.basis, r.degrees, false);
  return r;
}

}  // namespace loopmod
