#include "loopmod/galg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace loopmod {

GradedAlgebra::GradedAlgebra(FinAbGroup group, std::vector<GroupElem> degrees, std::vector<std::string> labels,
                             Vec unit)
    : group_(std::move(group)), degrees_(std::move(degrees)), labels_(std::move(labels)), unit_(std::move(unit)) {
  if (labels_.empty()) {
    for (std::size_t i = 0; i < degrees_.size(); ++i) labels_.push_back("x" + std::to_string(i));
  }
  if (labels_.size() != degrees_.size() || unit_.size() != degrees_.size()) {
    throw std::invalid_argument("algebra: labels, degrees and unit must have the same length");
  }
  products_.assign(degrees_.size() * degrees_.size(), {});
}

void GradedAlgebra::set_product(std::size_t i, std::size_t j, SparseVec terms) {
  SparseVec cleaned;
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  for (auto& t : terms) {
    if (t.index >= dim()) throw std::out_of_range("algebra: product index out of range");
    if (!cleaned.empty() && cleaned.back().index == t.index) {
      cleaned.back().coeff += t.coeff;
    } else {
      cleaned.push_back(std::move(t));
    }
  }
  std::erase_if(cleaned, [](const Term& t) { return t.coeff.is_zero(); });
  products_[i * dim() + j] = std::move(cleaned);
}

Vec GradedAlgebra::basis_vector(std::size_t i) const {
  Vec v(dim());
  v[i] = Cyc(1);
  return v;
}

Vec GradedAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      Cyc ab = a[i] * b[j];
      for (const auto& t : product(i, j)) out[t.index] += ab * t.coeff;
    }
  }
  return out;
}

Vec GradedAlgebra::power(const Vec& a, long k) const {
  Vec r = unit_;
  for (long i = 0; i < k; ++i) r = multiply(r, a);
  return r;
}

std::vector<std::size_t> GradedAlgebra::component(GroupElem g) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (degrees_[i] == g) out.push_back(i);
  }
  return out;
}

std::vector<GroupElem> GradedAlgebra::support() const {
  std::vector<GroupElem> s(degrees_.begin(), degrees_.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Matrix GradedAlgebra::left_matrix(std::size_t i) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    for (const auto& t : product(i, j)) m(t.index, j) = t.coeff;
  }
  return m;
}

Matrix GradedAlgebra::right_matrix(std::size_t i) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    for (const auto& t : product(j, i)) m(t.index, j) = t.coeff;
  }
  return m;
}

std::optional<Vec> GradedAlgebra::inverse_of(const Vec& a) const {
  Matrix left(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    Vec col = multiply(a, basis_vector(j));
    for (std::size_t i = 0; i < dim(); ++i) left(i, j) = col[i];
  }
  SolveResult s = solve(left, unit_);
  if (!s.consistent()) return std::nullopt;
  if (multiply(*s.solution, a) != unit_) return std::nullopt;
  return s.solution;
}

std::optional<GroupElem> GradedAlgebra::degree_of(const Vec& a) const {
  std::optional<GroupElem> deg;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    if (deg && *deg != degrees_[i]) return std::nullopt;
    deg = degrees_[i];
  }
  return deg;
}

int GradedAlgebra::field_order() const {
  long n = 1;
  for (const auto& c : unit_) n = lcm_long(n, c.order());
  for (const auto& p : products_) {
    for (const auto& t : p) n = lcm_long(n, t.coeff.order());
  }
  return static_cast<int>(n);
}

ValidationReport validate(const GradedAlgebra& a) {
  ValidationReport rep;
  const std::size_t n = a.dim();
  const auto& g = a.group();
  auto label = [&](std::size_t i) { return a.labels()[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& t : a.product(i, j)) {
        if (a.degree(t.index) != g.mul(a.degree(i), a.degree(j))) {
          rep.violations.push_back("grading: " + label(i) + "*" + label(j) + " has a term in " + label(t.index));
        }
      }
    }
  }
  auto ud = a.degree_of(a.unit());
  if (!ud || *ud != g.identity()) rep.violations.push_back("unit is not homogeneous of degree e");
  for (std::size_t i = 0; i < n; ++i) {
    Vec x = a.basis_vector(i);
    if (a.multiply(a.unit(), x) != x || a.multiply(x, a.unit()) != x) {
      rep.violations.push_back("unit: fails on " + label(i));
    }
  }
  // (x_i x_j) x_k against x_i (x_j x_k), both expanded through the sparse tables.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs(n);
        for (const auto& t : a.product(i, j)) {
          for (const auto& u : a.product(t.index, k)) lhs[u.index] += t.coeff * u.coeff;
        }
        Vec rhs(n);
        for (const auto& t : a.product(j, k)) {
          for (const auto& u : a.product(i, t.index)) rhs[u.index] += t.coeff * u.coeff;
        }
        if (lhs != rhs) {
          rep.violations.push_back("associativity: (" + label(i) + "," + label(j) + "," + label(k) + ")");
          if (rep.violations.size() > 50) return rep;
        }
      }
    }
  }
  return rep;
}

Cocycle::Cocycle(Subgroup support, std::vector<Cyc> values) : support_(std::move(support)), values_(std::move(values)) {
  if (values_.size() != support_.order() * support_.order()) {
    throw std::invalid_argument("cocycle: expected |T|^2 values");
  }
  for (const auto& v : values_) {
    if (v.is_zero()) throw std::invalid_argument("cocycle: values must be nonzero");
  }
}

Cocycle Cocycle::trivial(const Subgroup& support) {
  return Cocycle(support, std::vector<Cyc>(support.order() * support.order(), Cyc(1)));
}

Cocycle Cocycle::from_bicharacter(const SubgroupPresentation& pres, const Bicharacter& beta) {
  const FinAbGroup& abs = pres.abstract();
  if (!(beta.group() == abs)) throw std::invalid_argument("cocycle: bicharacter must live on the presentation group");
  const Subgroup& t = pres.subgroup();
  const auto& m = beta.matrix();
  std::vector<Cyc> values;
  values.reserve(t.order() * t.order());
  for (auto a : t.elements()) {
    auto x = abs.coords(pres.abstract_of(a));
    for (auto b : t.elements()) {
      auto y = abs.coords(pres.abstract_of(b));
      Phase p;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) p = p + m[i][j].scaled(x[i] * y[j]);
      }
      values.push_back(Cyc::from_phase(p));
    }
  }
  return Cocycle(t, std::move(values));
}

const Cyc& Cocycle::operator()(GroupElem a, GroupElem b) const {
  return values_[support_.position(a) * support_.order() + support_.position(b)];
}

Cocycle Cocycle::rescaled(const std::vector<Cyc>& lambda) const {
  const auto& el = support_.elements();
  const auto& g = support_.parent();
  std::vector<Cyc> values(values_.size());
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = 0; j < el.size(); ++j) {
      std::size_t k = support_.position(g.mul(el[i], el[j]));
      values[i * el.size() + j] = lambda[i] * lambda[j] / lambda[k] * values_[i * el.size() + j];
    }
  }
  return Cocycle(support_, std::move(values));
}

std::vector<std::string> Cocycle::violations() const {
  std::vector<std::string> out;
  const auto& g = support_.parent();
  const auto& el = support_.elements();
  for (auto t : el) {
    if (!(*this)(g.identity(), t).is_one() || !(*this)(t, g.identity()).is_one()) {
      out.push_back("cocycle: not normalized at " + g.format(t));
    }
  }
  for (auto a : el) {
    for (auto b : el) {
      for (auto c : el) {
        if ((*this)(a, b) * (*this)(g.mul(a, b), c) != (*this)(b, c) * (*this)(a, g.mul(b, c))) {
          out.push_back("cocycle identity fails at (" + g.format(a) + "," + g.format(b) + "," + g.format(c) + ")");
        }
      }
    }
  }
  return out;
}

GradedAlgebra twisted_group_algebra(const Cocycle& sigma) {
  auto errs = sigma.violations();
  if (!errs.empty()) throw std::invalid_argument(errs.front());
  const Subgroup& t = sigma.support();
  const FinAbGroup& g = t.parent();
  const auto& el = t.elements();
  std::vector<std::string> labels;
  for (auto x : el) labels.push_back("c" + g.format(x));
  Vec unit(el.size());
  unit[t.position(g.identity())] = Cyc(1);
  GradedAlgebra a(g, el, labels, unit);
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = 0; j < el.size(); ++j) {
      a.set_product(i, j, {{t.position(g.mul(el[i], el[j])), sigma(el[i], el[j])}});
    }
  }
  return a;
}

GradedAlgebra smash_product(const FinAbGroup& a, const FinAbGroup& b, const Bicharacter& beta) {
  FinAbGroup t = a.direct_product(b);
  if (!(beta.group() == t)) throw std::invalid_argument("smash product: bicharacter must be on A x B");
  std::vector<GroupElem> degrees = t.elements();
  std::vector<std::string> labels;
  for (auto x : degrees) labels.push_back("c" + t.format(x));
  Vec unit(t.order());
  unit[0] = Cyc(1);
  GradedAlgebra alg(t, degrees, labels, unit);
  for (auto a1 : a.elements()) {
    for (auto b1 : b.elements()) {
      GroupElem left = t.pair(a, a1, b, b1);
      for (auto a2 : a.elements()) {
        Cyc twist = Cyc::from_phase(beta(t.pair(a, a.identity(), b, b1), t.pair(a, a2, b, b.identity())));
        for (auto b2 : b.elements()) {
          GroupElem right = t.pair(a, a2, b, b2);
          alg.set_product(left.index, right.index, {{t.mul(left, right).index, twist}});
        }
      }
    }
  }
  return alg;
}

CenterResult center(const GradedAlgebra& a) {
  CenterResult out;
  const std::size_t n = a.dim();
  for (auto g : a.support()) {
    auto comp = a.component(g);
    // Column k: the commutators [x_k, x_i] stacked over all i.
    std::vector<Vec> images;
    for (auto k : comp) {
      Vec col(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& t : a.product(k, i)) col[i * n + t.index] += t.coeff;
        for (const auto& t : a.product(i, k)) col[i * n + t.index] -= t.coeff;
      }
      images.push_back(std::move(col));
    }
    for (const auto& rel : relations(images, n * n)) {
      Vec z(n);
      for (std::size_t c = 0; c < comp.size(); ++c) z[comp[c]] = rel[c];
      out.basis.push_back(std::move(z));
      out.degrees.push_back(g);
    }
  }
  out.support = out.degrees;
  out.support.erase(std::unique(out.support.begin(), out.support.end()), out.support.end());
  return out;
}

GradedAlgebra subalgebra(const GradedAlgebra& a, const std::vector<Vec>& basis, const std::vector<GroupElem>& degrees) {
  EchelonBasis eb(a.dim(), true);
  for (const auto& v : basis) {
    if (!eb.insert(v)) throw std::invalid_argument("subalgebra: basis vectors are dependent");
  }
  auto unit = eb.coordinates(a.unit());
  if (!unit) throw std::invalid_argument("subalgebra: span does not contain the unit");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) labels.push_back("b" + std::to_string(i));
  GradedAlgebra sub(a.group(), degrees, labels, *unit);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = eb.coordinates(a.multiply(basis[i], basis[j]));
      if (!c) throw std::invalid_argument("subalgebra: span is not closed under products");
      SparseVec terms;
      for (std::size_t k = 0; k < c->size(); ++k) {
        if (!(*c)[k].is_zero()) terms.push_back({k, (*c)[k]});
      }
      sub.set_product(i, j, std::move(terms));
    }
  }
  return sub;
}

std::vector<Matrix> span_closure(const std::vector<Matrix>& generators, std::size_t n) {
  EchelonBasis eb(n * n);
  std::vector<Matrix> basis;
  auto add = [&](const Matrix& m) {
    if (eb.insert(m.flat())) basis.push_back(m);
  };
  add(Matrix::identity(n));
  for (const auto& g : generators) add(g);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (const auto& g : generators) add(g * basis[k]);
  }
  return basis;
}

std::vector<Matrix> radical_via_trace(const std::vector<Matrix>& basis) {
  const std::size_t m = basis.size();
  Matrix gram(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      gram(i, j) = (basis[i] * basis[j]).trace();
      gram(j, i) = gram(i, j);
    }
  }
  std::vector<Matrix> out;
  for (const auto& c : kernel(gram)) {
    Matrix x(basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < m; ++i) {
      if (!c[i].is_zero()) x = x + basis[i].scaled(c[i]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

NormalizedSubfield normalize_subfield_basis(const GradedAlgebra& a, const Subgroup& h) {
  if (!(h.parent() == a.group())) throw std::invalid_argument("normalize: subgroup of the wrong group");
  for (auto x : h.elements()) {
    if (a.component(x).size() != 1) {
      throw std::invalid_argument("normalize: component " + a.group().format(x) + " is not 1-dimensional");
    }
  }
  NormalizedSubfield out;
  out.subgroup = h;
  SubgroupPresentation pres(h);
  const FinAbGroup& abs = pres.abstract();
  std::size_t unit_pos = 0;
  while (a.unit()[unit_pos].is_zero()) ++unit_pos;

  std::vector<Vec> gens;
  long order = 1;
  for (std::size_t j = 0; j < pres.generators().size(); ++j) {
    long m = abs.factors()[j];
    Vec x = a.basis_vector(a.component(pres.generators()[j])[0]);
    Vec p = a.power(x, m);
    Cyc lambda = p[unit_pos] / a.unit()[unit_pos];
    if (lambda.is_zero() || p != scale_vec(a.unit(), lambda)) {
      throw std::invalid_argument("normalize: power of a homogeneous element is not a nonzero scalar");
    }
    Cyc mu = lambda.kth_root(m);
    order = lcm_long(order, mu.order());
    gens.push_back(scale_vec(x, mu.inverse()));
  }
  for (auto e : h.elements()) {
    auto c = abs.coords(pres.abstract_of(e));
    Vec v = a.unit();
    for (std::size_t j = 0; j < c.size(); ++j) {
      for (long k = 0; k < c[j]; ++k) v = a.multiply(v, gens[j]);
    }
    out.elements.push_back(std::move(v));
  }
  const auto& el = h.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = 0; j < el.size(); ++j) {
      std::size_t k = h.position(a.group().mul(el[i], el[j]));
      if (a.multiply(out.elements[i], out.elements[j]) != out.elements[k]) {
        throw std::invalid_argument("normalize: components over the subgroup do not commute");
      }
    }
  }
  for (const auto& v : out.elements) {
    for (const auto& c : v) order = lcm_long(order, c.order());
  }
  out.field_order = static_cast<int>(order);
  return out;
}

CentralIdempotents primitive_central_idempotents(const GradedAlgebra& a) {
  CenterResult ctr = center(a);
  const FinAbGroup& g = a.group();
  Subgroup z = Subgroup::generated(g, ctr.support);
  if (z.order() != ctr.support.size()) throw FieldNotSplit("center support is not a subgroup");
  for (auto s : ctr.support) {
    if (std::count(ctr.degrees.begin(), ctr.degrees.end(), s) != 1) {
      throw FieldNotSplit("center component " + g.format(s) + " is not 1-dimensional");
    }
  }
  GradedAlgebra zalg = subalgebra(a, ctr.basis, ctr.degrees);
  NormalizedSubfield nz = normalize_subfield_basis(zalg, z);
  std::vector<Vec> cz;
  for (const auto& coords : nz.elements) {
    Vec v(a.dim());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!coords[i].is_zero()) axpy(v, coords[i], ctr.basis[i]);
    }
    cz.push_back(std::move(v));
  }
  CentralIdempotents out;
  out.center_support = z;
  out.characters = subgroup_characters(z);
  Cyc inv_order = Cyc(Rational(1, static_cast<long>(z.order())));
  for (const auto& chi : out.characters) {
    Vec e(a.dim());
    for (std::size_t k = 0; k < z.order(); ++k) axpy(e, Cyc::from_phase(-chi(z.elements()[k])), cz[k]);
    out.idempotents.push_back(scale_vec(e, inv_order));
  }
  return out;
}

DivisionCheck graded_division_check(const GradedAlgebra& a) {
  DivisionCheck out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!a.inverse_of(a.basis_vector(i))) out.homogeneous_invertible = false;
  }
  for (auto g : a.support()) {
    if (a.component(g).size() > 1) out.components_at_most_one = false;
  }
  return out;
}

Subgroup CommutationData::embed(const Subgroup& abstract_sub) const {
  std::vector<GroupElem> gens;
  for (auto x : abstract_sub.generators()) gens.push_back(presentation.embed(x));
  return Subgroup::generated(support.parent(), gens);
}

CommutationData commutation_bicharacter(const GradedAlgebra& a) {
  auto supp = a.support();
  for (auto t : supp) {
    if (a.component(t).size() != 1) {
      throw FieldNotSplit("component " + a.group().format(t) + " has dimension " +
                          std::to_string(a.component(t).size()));
    }
  }
  Subgroup t = Subgroup::generated(a.group(), supp);
  if (t.order() != supp.size()) throw std::invalid_argument("commutation bicharacter: support is not a subgroup");
  SubgroupPresentation pres(t);
  auto ratio = [&](GroupElem x, GroupElem y) {
    std::size_t i = a.component(x)[0];
    std::size_t j = a.component(y)[0];
    Vec xy = a.multiply(a.basis_vector(i), a.basis_vector(j));
    Vec yx = a.multiply(a.basis_vector(j), a.basis_vector(i));
    std::size_t k = a.component(a.group().mul(x, y))[0];
    if (yx[k].is_zero() || xy[k].is_zero()) throw std::invalid_argument("commutation bicharacter: zero product");
    Cyc r = xy[k] / yx[k];
    if (scale_vec(yx, r) != xy) throw std::invalid_argument("commutation bicharacter: products not proportional");
    auto ph = r.as_root_of_unity();
    if (!ph) throw std::invalid_argument("commutation bicharacter: ratio is not a root of unity");
    return *ph;
  };
  const auto& gens = pres.generators();
  std::vector<std::vector<Phase>> m(gens.size(), std::vector<Phase>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) m[i][j] = ratio(gens[i], gens[j]);
  CommutationData out{t, pres, Bicharacter(pres.abstract(), m)};
  for (auto x : t.elements())
    for (auto y : t.elements()) {
      if (out(x, y) != ratio(x, y)) throw std::logic_error("commutation bicharacter: not multiplicative");
    }
  return out;
}

MatrixAlgebra matrix_algebra(const FinAbGroup& group, const std::vector<Matrix>& basis,
                             const std::vector<GroupElem>& degrees, bool reversed) {
  if (basis.empty()) throw std::invalid_argument("matrix algebra: empty basis");
  const std::size_t n = basis[0].rows();
  const std::size_t d = basis.size();
  EchelonBasis eb(n * basis[0].cols());
  for (const auto& m : basis) {
    if (!eb.insert(m.flat())) throw std::invalid_argument("matrix algebra: dependent basis");
  }
  // Restricting to the pivot positions is injective on the span, so coordinates come from a d x d solve
  // and membership is confirmed by re-expanding over the sparse supports.
  const auto& piv = eb.pivots();
  Matrix at_pivots(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) at_pivots(k, i) = basis[i].flat()[piv[k]];
  const Matrix solver = inverse(at_pivots);
  std::vector<std::vector<std::pair<std::size_t, Cyc>>> support(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec f = basis[i].flat();
    for (std::size_t t = 0; t < f.size(); ++t)
      if (!f[t].is_zero()) support[i].push_back({t, f[t]});
  }
  auto coordinates = [&](const Vec& f) -> std::optional<Vec> {
    Vec restricted(d);
    for (std::size_t k = 0; k < d; ++k) restricted[k] = f[piv[k]];
    Vec c = solver * restricted;
    Vec r = f;
    for (std::size_t i = 0; i < d; ++i) {
      if (c[i].is_zero()) continue;
      for (const auto& [t, x] : support[i]) r[t] -= c[i] * x;
    }
    if (!is_zero_vec(r)) return std::nullopt;
    return c;
  };
  auto unit = coordinates(Matrix::identity(n).flat());
  if (!unit) throw std::invalid_argument("matrix algebra: identity not in span");
  GradedAlgebra alg(group, degrees, {}, *unit);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Matrix p = reversed ? basis[j] * basis[i] : basis[i] * basis[j];
      auto c = coordinates(p.flat());
      if (!c) throw std::invalid_argument("matrix algebra: span not closed under products");
      SparseVec terms;
      for (std::size_t k = 0; k < c->size(); ++k) {
        if (!(*c)[k].is_zero()) terms.push_back({k, (*c)[k]});
      }
      alg.set_product(i, j, std::move(terms));
    }
  }
  return {std::move(alg), basis};
}

Matrix realize(const MatrixAlgebra& m, const Vec& coords) {
  Matrix out(m.matrices[0].rows(), m.matrices[0].cols());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].is_zero()) out = out + m.matrices[i].scaled(coords[i]);
  }
  return out;
}

}  // namespace loopmod
