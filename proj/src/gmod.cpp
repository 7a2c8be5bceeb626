#include "loopmod/gmod.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <random>
#include <stdexcept>

namespace loopmod {

GradedModule::GradedModule(std::shared_ptr<const GradedAlgebra> algebra, QuotientMap grading,
                           std::vector<GroupElem> degrees, std::vector<Matrix> action)
    : algebra_(std::move(algebra)), grading_(std::move(grading)), degrees_(std::move(degrees)), action_(std::move(action)) {
  if (!algebra_) throw std::invalid_argument("module: missing algebra");
  if (!(grading_.source() == algebra_->group())) throw std::invalid_argument("module: grading map has the wrong source");
  if (action_.size() != algebra_->dim()) throw std::invalid_argument("module: one action matrix per algebra basis element");
  for (const auto& m : action_) {
    if (m.rows() != dim() || m.cols() != dim()) throw std::invalid_argument("module: action matrix of the wrong size");
  }
  long n = lcm_long(algebra_->field_order(), grading_.target().exponent());
  for (const auto& m : action_) {
    for (const auto& c : m.flat()) n = lcm_long(n, c.order());
  }
  field_order_ = static_cast<int>(n);
}

void GradedModule::raise_field_order(int n) { field_order_ = static_cast<int>(lcm_long(field_order_, n)); }

Matrix GradedModule::act(const Vec& r) const {
  Matrix m(dim(), dim());
  for (std::size_t b = 0; b < r.size(); ++b) {
    if (!r[b].is_zero()) m = m + action_[b].scaled(r[b]);
  }
  return m;
}

std::vector<std::size_t> GradedModule::component(GroupElem g) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (degrees_[i] == g) out.push_back(i);
  }
  return out;
}

std::vector<GroupElem> GradedModule::support() const {
  std::vector<GroupElem> s = degrees_;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::optional<GroupElem> GradedModule::degree_of(const Vec& v) const {
  std::optional<GroupElem> d;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v[i].is_zero()) continue;
    if (d && *d != degrees_[i]) return std::nullopt;
    d = degrees_[i];
  }
  return d;
}

Vec GradedModule::project(const Vec& v, GroupElem g) const {
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (degrees_[i] == g) out[i] = v[i];
  }
  return out;
}

ValidationReport validate(const GradedModule& v) {
  ValidationReport rep;
  const GradedAlgebra& a = v.algebra();
  const FinAbGroup& q = v.grading_group();
  if (!v.act(a.unit()).is_identity()) rep.violations.push_back("unit does not act as the identity");
  for (std::size_t b = 0; b < a.dim(); ++b) {
    GroupElem t = v.algebra_degree(b);
    const Matrix& m = v.action(b);
    for (std::size_t j = 0; j < v.dim(); ++j) {
      for (std::size_t i = 0; i < v.dim(); ++i) {
        if (!m(i, j).is_zero() && v.degree(i) != q.mul(t, v.degree(j))) {
          rep.violations.push_back("grading: " + a.labels()[b] + " on e" + std::to_string(j));
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix expect(v.dim(), v.dim());
      for (const auto& t : a.product(i, j)) expect = expect + v.action(t.index).scaled(t.coeff);
      if (!(v.action(i) * v.action(j) == expect)) {
        rep.violations.push_back("homomorphism: " + a.labels()[i] + "*" + a.labels()[j]);
      }
    }
  }
  return rep;
}

GradedModule regular_module(std::shared_ptr<const GradedAlgebra> a) {
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < a->dim(); ++b) act.push_back(a->left_matrix(b));
  QuotientMap id = QuotientMap::identity(a->group());
  std::vector<GroupElem> degrees = a->degrees();
  return GradedModule(std::move(a), id, degrees, act);
}

GradedModule direct_sum(const GradedModule& v, const GradedModule& w) {
  if (v.algebra_ptr() != w.algebra_ptr() && v.algebra().dim() != w.algebra().dim()) {
    throw std::invalid_argument("direct sum: different algebras");
  }
  std::size_t n = v.dim() + w.dim();
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < v.dim(); ++i)
      for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = v.action(b)(i, j);
    for (std::size_t i = 0; i < w.dim(); ++i)
      for (std::size_t j = 0; j < w.dim(); ++j) m(v.dim() + i, v.dim() + j) = w.action(b)(i, j);
    act.push_back(std::move(m));
  }
  std::vector<GroupElem> deg = v.degrees();
  deg.insert(deg.end(), w.degrees().begin(), w.degrees().end());
  GradedModule out(v.algebra_ptr(), v.grading(), deg, act);
  out.raise_field_order(std::max(v.field_order(), w.field_order()));
  return out;
}

GradedModule submodule(const GradedModule& w, const std::vector<Vec>& basis) {
  EchelonBasis eb(w.dim(), true);
  std::vector<GroupElem> deg;
  for (const auto& v : basis) {
    auto d = w.degree_of(v);
    if (!d) throw std::invalid_argument("submodule: basis vectors must be homogeneous and nonzero");
    if (!eb.insert(v)) throw std::invalid_argument("submodule: dependent basis");
    deg.push_back(*d);
  }
  std::vector<Matrix> act;
  for (const auto& m : w.actions()) {
    Matrix s(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = eb.coordinates(m * basis[j]);
      if (!c) throw std::invalid_argument("submodule: span is not invariant");
      for (std::size_t i = 0; i < basis.size(); ++i) s(i, j) = (*c)[i];
    }
    act.push_back(std::move(s));
  }
  GradedModule out(w.algebra_ptr(), w.grading(), deg, act);
  out.raise_field_order(w.field_order());
  return out;
}

GradedModule shift(const GradedModule& w, GroupElem g) {
  std::vector<GroupElem> deg;
  for (auto d : w.degrees()) deg.push_back(w.grading_group().mul(d, g));
  GradedModule out(w.algebra_ptr(), w.grading(), deg, w.actions());
  out.raise_field_order(w.field_order());
  return out;
}

GradedModule coarsen(const GradedModule& w, const QuotientMap& further) {
  std::vector<GroupElem> deg;
  for (auto d : w.degrees()) deg.push_back(further.apply(d));
  GradedModule out(w.algebra_ptr(), QuotientMap::composite(w.grading(), further), deg, w.actions());
  out.raise_field_order(w.field_order());
  return out;
}

GradedModule with_grading(const GradedModule& w, const QuotientMap& grading) {
  GradedModule out(w.algebra_ptr(), grading, w.degrees(), w.actions());
  out.raise_field_order(w.field_order());
  return out;
}

GradedModule change_basis(const GradedModule& w, const Matrix& basis, const std::vector<GroupElem>& degrees) {
  Matrix inv = inverse(basis);
  std::vector<Matrix> act;
  for (const auto& m : w.actions()) act.push_back(inv * m * basis);
  GradedModule out(w.algebra_ptr(), w.grading(), degrees, act);
  out.raise_field_order(w.field_order());
  return out;
}

namespace {

// Maps F supported on `allowed` with F A_b = A'_b F for every b. Each entry of F A_b - A'_b F gives one
// sparse equation in the unknown entries of F.
std::vector<Matrix> commuting_maps(const GradedModule& v, const GradedModule& vp,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& allowed) {
  const GradedAlgebra& a = v.algebra();
  if (a.dim() != vp.algebra().dim()) throw std::invalid_argument("intertwiners: different algebras");
  const std::size_t rows = vp.dim();
  const std::size_t cols = v.dim();
  const std::size_t m = allowed.size();
  SparseSystem sys(m);
  for (std::size_t b = 0; b < a.dim() && sys.rank() < m; ++b) {
    const Matrix& src = v.action(b);
    const Matrix& dst = vp.action(b);
    std::unordered_map<std::size_t, SparseSystem::Row> eqs;
    auto put = [&](std::size_t entry, std::size_t u, const Cyc& c) {
      auto& row = eqs[entry];
      if (!row.empty() && row.back().first == u) {
        row.back().second += c;
        if (row.back().second.is_zero()) row.pop_back();
      } else {
        row.push_back({u, c});
      }
    };
    for (std::size_t u = 0; u < m; ++u) {
      auto [i, k] = allowed[u];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!src(k, j).is_zero()) put(i * cols + j, u, src(k, j));
      }
      for (std::size_t r = 0; r < rows; ++r) {
        if (!dst(r, i).is_zero()) put(r * cols + k, u, -dst(r, i));
      }
    }
    std::vector<std::size_t> order;
    order.reserve(eqs.size());
    for (const auto& [entry, row] : eqs) order.push_back(entry);
    std::sort(order.begin(), order.end());
    for (auto entry : order) sys.add(std::move(eqs[entry]));
  }
  std::vector<Matrix> out;
  for (const auto& s : sys.kernel()) {
    Matrix f(rows, cols);
    for (std::size_t u = 0; u < m; ++u) f(allowed[u].first, allowed[u].second) = s[u];
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<Matrix> intertwiners(const GradedModule& v, const GradedModule& vp, GroupElem g) {
  if (!(v.grading_group() == vp.grading_group())) throw std::invalid_argument("intertwiners: different grading groups");
  const FinAbGroup& q = v.grading_group();
  std::vector<std::pair<std::size_t, std::size_t>> allowed;
  for (std::size_t i = 0; i < vp.dim(); ++i) {
    for (std::size_t j = 0; j < v.dim(); ++j) {
      if (vp.degree(i) == q.mul(g, v.degree(j))) allowed.emplace_back(i, j);
    }
  }
  return commuting_maps(v, vp, allowed);
}

std::vector<Matrix> intertwiners_ungraded(const GradedModule& v, const GradedModule& vp) {
  std::vector<std::pair<std::size_t, std::size_t>> allowed;
  for (std::size_t i = 0; i < vp.dim(); ++i) {
    for (std::size_t j = 0; j < v.dim(); ++j) allowed.emplace_back(i, j);
  }
  return commuting_maps(v, vp, allowed);
}

std::vector<GroupElem> Centralizer::support() const {
  std::vector<GroupElem> out;
  for (const auto& m : maps) {
    if (std::find(out.begin(), out.end(), m.degree) == out.end()) out.push_back(m.degree);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MatrixAlgebra Centralizer::algebra() const {
  std::vector<Matrix> mats;
  std::vector<GroupElem> degs;
  for (const auto& m : maps) {
    mats.push_back(m.matrix);
    degs.push_back(m.degree);
  }
  return matrix_algebra(group, mats, degs, true);
}

Centralizer graded_centralizer(const GradedModule& w) {
  Centralizer out;
  out.group = w.grading_group();
  for (auto g : w.grading_group().elements()) {
    for (auto& m : intertwiners(w, w, g)) out.maps.push_back({g, std::move(m)});
  }
  return out;
}

std::vector<Matrix> ungraded_centralizer(const GradedModule& w) { return intertwiners_ungraded(w, w); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

std::optional<Integer> squarefree_part(Integer v) {
  if (v == 0) return Integer(0);
  Integer sign = v < 0 ? -1 : 1;
  v = abs(v);
  Integer out = 1;
  for (unsigned long p = 2; Integer(p) * p <= v; ++p) {
    if (p > 2000000) return std::nullopt;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  return sign * out * v;
}

}  // namespace

std::optional<bool> is_square_in(const Cyc& d, int n) {
  if (d.is_zero()) return true;
  if (d.is_rational()) {
    Rational q = d.rational_value();
    auto s = squarefree_part(q.get_num() * q.get_den());
    if (!s) return std::nullopt;
    if (*s == 1) return true;
    Integer abs_s = abs(*s);
    Integer r = *s % 4;
    if (r < 0) r += 4;
    Integer conductor = r == 1 ? abs_s : 4 * abs_s;
    long field = n % 2 == 1 ? 2L * n : n;
    return Integer(field) % conductor == 0;
  }
  try {
    Cyc root = d.kth_root(2);
    return root.lowered(n).has_value();
  } catch (const FieldNotSplit&) {
    return std::nullopt;
  }
}

namespace {

bool is_scalar(const Matrix& m) { return (m - Matrix::identity(m.rows()).scaled(m(0, 0))).is_zero(); }

// Coefficients c with x^k = sum_{i<k} c_i x^i for the least such k.
Vec minimal_polynomial(const Matrix& x) {
  const std::size_t n = x.rows();
  EchelonBasis eb(n * n, true);
  Matrix p = Matrix::identity(n);
  while (eb.insert(p.flat())) p = p * x;
  return *eb.coordinates(p.flat());
}

// A nonzero singular element of the span, which commutes with the action.
std::optional<Matrix> find_singular(const std::vector<Matrix>& e, int field) {
  for (const auto& x : e) {
    if (!is_scalar(x) && det(x).is_zero()) return x;
  }
  for (const auto& x : e) {
    if (is_scalar(x)) continue;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      Matrix y = x - Matrix::identity(x.rows()).scaled(x(i, i));
      if (det(y).is_zero()) return y;
    }
    Vec mp = minimal_polynomial(x);
    const std::size_t k = mp.size();
    bool pure_power = k > 1 && std::all_of(mp.begin() + 1, mp.end(), [](const Cyc& c) { return c.is_zero(); });
    if (pure_power && k > 2) {
      // x^k = c: try every k-th root of c.
      try {
        Cyc r = mp[0].kth_root(static_cast<long>(k));
        for (std::size_t j = 0; j < k; ++j) {
          Cyc root = r * Cyc::from_phase(Phase(static_cast<long>(j), static_cast<long>(k)));
          if (root.lowered(field)) return x - Matrix::identity(x.rows()).scaled(root);
        }
      } catch (const FieldNotSplit&) {
      }
      continue;
    }
    if (k != 2) continue;
    // x^2 = c0 + c1 x: roots (c1 +- sqrt(c1^2 + 4 c0)) / 2.
    Cyc disc = mp[1] * mp[1] + Cyc(4) * mp[0];
    try {
      Cyc s = disc.kth_root(2);
      if (!s.lowered(field)) continue;
      Cyc root = (mp[1] + s) * Cyc(Rational(1, 2));
      return x - Matrix::identity(x.rows()).scaled(root);
    } catch (const FieldNotSplit&) {
    }
  }
  return std::nullopt;
}

// yes: the commutant is a field of degree at most 2; no: it has zero divisors; otherwise undecided.
Verdict commutant_is_division(const std::vector<Matrix>& e, int field) {
  if (e.size() == 1) return Verdict::yes;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (!(e[i] * e[j] == e[j] * e[i])) return Verdict::indeterminate;
    }
  if (e.size() != 2) return Verdict::indeterminate;
  const Matrix& x = is_scalar(e[0]) ? e[1] : e[0];
  Vec mp = minimal_polynomial(x);
  if (mp.size() != 2) return Verdict::indeterminate;
  auto sq = is_square_in(mp[1] * mp[1] + Cyc(4) * mp[0], field);
  if (!sq) return Verdict::indeterminate;
  return *sq ? Verdict::no : Verdict::yes;
}

// Explicit basis of the image algebra; graded adds the component projections.
std::vector<Matrix> image_algebra_basis(const GradedModule& w, bool graded) {
  const std::size_t n = w.dim();
  EchelonBasis eb(n * n);
  std::vector<Matrix> out;
  auto add = [&](const Matrix& m) {
    if (!m.is_zero() && eb.insert(m.flat())) out.push_back(m);
  };
  for (const auto& a : w.actions()) {
    if (!graded) {
      add(a);
      continue;
    }
    for (auto g : w.support()) {
      Matrix p(n, n);
      for (auto i : w.component(g))
        for (std::size_t j = 0; j < n; ++j) p(i, j) = a(i, j);
      add(p);
    }
  }
  if (out.empty() || !eb.contains(Matrix::identity(n).flat())) add(Matrix::identity(n));
  return out;
}

bool proper(const std::vector<Vec>& s, std::size_t n) { return !s.empty() && s.size() < n; }

std::vector<Vec> find_witness(const GradedModule& w, bool graded, const std::vector<Matrix>& commutant, int field) {
  const std::size_t n = w.dim();
  auto homogeneous_span = [&](const std::vector<Vec>& vs) {
    std::vector<Vec> seeds;
    for (const auto& v : vs) {
      if (!graded) {
        seeds.push_back(v);
        continue;
      }
      for (auto g : w.support()) {
        Vec p = w.project(v, g);
        if (!is_zero_vec(p)) seeds.push_back(p);
      }
    }
    return spin_all(w, seeds);
  };
  if (auto x = find_singular(commutant, field)) {
    auto k = homogeneous_span(kernel(*x));
    if (proper(k, n)) return k;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n);
    e[j] = Cyc(1);
    auto s = spin_all(w, {e});
    if (proper(s, n)) return s;
  }
  std::mt19937_64 rng(n * 7919 + 17);
  std::uniform_int_distribution<long> coef(-4, 4);
  auto supp = w.support();
  for (int trial = 0; trial < 8; ++trial) {
    GroupElem g = supp[static_cast<std::size_t>(trial) % supp.size()];
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!graded || w.degree(i) == g) v[i] = Cyc(coef(rng));
    }
    if (is_zero_vec(v)) continue;
    auto s = spin_all(w, {v});
    if (proper(s, n)) return s;
  }
  auto rad = radical_via_trace(image_algebra_basis(w, graded));
  if (!rad.empty()) {
    std::vector<Vec> images;
    for (const auto& r : rad)
      for (std::size_t j = 0; j < n; ++j) images.push_back(r.column(j));
    auto s = homogeneous_span(images);
    if (proper(s, n)) return s;
  }
  return {};
}

SimplicityResult simplicity(const GradedModule& w, bool graded) {
  SimplicityResult res;
  const std::size_t n = w.dim();
  if (n == 0) {
    res.verdict = Verdict::no;
    res.reason = "zero module";
    return res;
  }
  int field = w.field_order();
  auto e = graded ? intertwiners(w, w, w.grading_group().identity()) : intertwiners_ungraded(w, w);
  std::size_t dim_b = image_algebra_dim(w, graded);
  bool dims_match = dim_b * e.size() == n * n;
  bool singular = find_singular(e, field).has_value();
  if (!singular && !graded && e.size() > 1) {
    // Graded endomorphisms of each degree are module maps too, and often have pure-power minimal polynomials.
    for (auto g : w.grading_group().elements()) {
      if (find_singular(intertwiners(w, w, g), field)) {
        singular = true;
        break;
      }
    }
  }
  Verdict division = singular ? Verdict::no : commutant_is_division(e, field);
  if (division == Verdict::yes && dims_match) {
    res.verdict = Verdict::yes;
    res.reason = e.size() == 1 ? "image algebra is the full endomorphism algebra" : "commutant is a quadratic field";
    return res;
  }
  if (division == Verdict::indeterminate && dims_match) {
    res.reason = "commutant of dimension " + std::to_string(e.size()) + " not certified as a division algebra";
    return res;
  }
  res.verdict = Verdict::no;
  res.reason = division == Verdict::no ? "commutant has zero divisors" : "image algebra too small";
  res.witness = find_witness(w, graded, e, field);
  return res;
}

}  // namespace

SimplicityResult is_graded_simple(const GradedModule& w) { return simplicity(w, true); }
SimplicityResult is_simple_ungraded(const GradedModule& w) { return simplicity(w, false); }

std::size_t image_algebra_dim(const GradedModule& w, bool graded) {
  const FinAbGroup& q = w.grading_group();
  const GradedAlgebra& a = w.algebra();
  std::size_t total = 0;
  auto supp = w.support();
  if (graded) {
    for (auto g : supp) {
      auto rows = w.component(g);
      for (auto h : supp) {
        auto cols = w.component(h);
        GroupElem t = q.div(g, h);
        EchelonBasis eb(rows.size() * cols.size());
        for (std::size_t b = 0; b < a.dim(); ++b) {
          if (w.algebra_degree(b) != t) continue;
          Vec block;
          block.reserve(rows.size() * cols.size());
          for (auto i : rows)
            for (auto j : cols) block.push_back(w.action(b)(i, j));
          if (!is_zero_vec(block)) eb.insert(block);
        }
        total += eb.size();
      }
    }
    return total;
  }
  for (auto t : q.elements()) {
    std::vector<std::pair<std::size_t, std::size_t>> pattern;
    for (std::size_t i = 0; i < w.dim(); ++i)
      for (std::size_t j = 0; j < w.dim(); ++j) {
        if (w.degree(i) == q.mul(t, w.degree(j))) pattern.emplace_back(i, j);
      }
    EchelonBasis eb(pattern.size());
    for (std::size_t b = 0; b < a.dim(); ++b) {
      if (w.algebra_degree(b) != t) continue;
      Vec entries;
      entries.reserve(pattern.size());
      for (auto [i, j] : pattern) entries.push_back(w.action(b)(i, j));
      if (!is_zero_vec(entries)) eb.insert(entries);
    }
    total += eb.size();
  }
  return total;
}

std::optional<Matrix> find_invertible(const std::vector<Matrix>& span, unsigned seed, int tries) {
  if (span.empty() || span[0].rows() != span[0].cols()) return std::nullopt;
  for (const auto& m : span) {
    if (!det(m).is_zero()) return m;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int t = 0; t < tries; ++t) {
    Matrix m(span[0].rows(), span[0].cols());
    for (const auto& s : span) m = m + s.scaled(Cyc(coef(rng)));
    if (!det(m).is_zero()) return m;
  }
  return std::nullopt;
}

namespace {

IsoResult iso_from_homs(const std::vector<Matrix>& homs, const std::function<std::pair<std::size_t, std::size_t>()>& end_dims) {
  IsoResult r;
  if (homs.empty()) {
    r.outcome = IsoOutcome::not_isomorphic;
    r.reason = "no nonzero homomorphism";
    return r;
  }
  if (auto m = find_invertible(homs)) {
    r.outcome = IsoOutcome::isomorphic;
    r.map = std::move(m);
    return r;
  }
  auto [end_v, end_w] = end_dims();
  if (homs.size() != end_v || homs.size() != end_w) {
    r.outcome = IsoOutcome::not_isomorphic;
    r.reason = "hom space and endomorphism algebras have different dimensions";
    return r;
  }
  r.reason = "hom-space nonzero but no invertible witness found";
  return r;
}

}  // namespace

IsoResult is_isomorphic_graded(const GradedModule& v, const GradedModule& vp) {
  auto dv = v.degrees();
  auto dw = vp.degrees();
  std::sort(dv.begin(), dv.end());
  std::sort(dw.begin(), dw.end());
  if (dv != dw) return {IsoOutcome::not_isomorphic, std::nullopt, "homogeneous components have different dimensions"};
  GroupElem e = v.grading_group().identity();
  return iso_from_homs(intertwiners(v, vp, e), [&] {
    return std::pair{intertwiners(v, v, e).size(), intertwiners(vp, vp, e).size()};
  });
}

IsoResult is_isomorphic_ungraded(const GradedModule& v, const GradedModule& vp) {
  if (v.dim() != vp.dim()) return {IsoOutcome::not_isomorphic, std::nullopt, "dimensions differ"};
  return iso_from_homs(intertwiners_ungraded(v, vp), [&] {
    return std::pair{intertwiners_ungraded(v, v).size(), intertwiners_ungraded(vp, vp).size()};
  });
}

std::vector<Vec> spin_all(const GradedModule& w, const std::vector<Vec>& seeds) {
  EchelonBasis eb(w.dim());
  std::vector<Vec> basis;
  for (const auto& s : seeds) {
    if (eb.insert(s)) basis.push_back(s);
  }
  for (std::size_t k = 0; k < basis.size() && basis.size() < w.dim(); ++k) {
    for (const auto& m : w.actions()) {
      Vec u = m * basis[k];
      if (eb.insert(u)) basis.push_back(std::move(u));
    }
  }
  if (basis.size() == w.dim()) {
    basis.clear();
    for (std::size_t i = 0; i < w.dim(); ++i) {
      Vec e(w.dim());
      e[i] = Cyc(1);
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

std::vector<Vec> spin(const GradedModule& w, const Vec& v, bool homogeneous_only) {
  if (!homogeneous_only) return spin_all(w, {v});
  std::vector<Vec> seeds;
  for (auto g : w.support()) {
    Vec p = w.project(v, g);
    if (!is_zero_vec(p)) seeds.push_back(std::move(p));
  }
  return spin_all(w, seeds);
}

DensityResult solve_density(const GradedModule& v, const std::vector<Vec>& sources, const std::vector<Vec>& targets) {
  DensityResult out;
  if (sources.size() != targets.size()) {
    out.error = "sources and targets differ in number";
    return out;
  }
  for (const auto& s : sources) {
    if (!v.degree_of(s)) {
      out.error = "source vectors must be nonzero and homogeneous";
      return out;
    }
  }
  const std::size_t n = v.dim();
  const std::size_t k = sources.size();
  auto cent = ungraded_centralizer(v);
  std::vector<Vec> images;
  for (const auto& s : sources) {
    for (const auto& c : cent) images.push_back(c * s);
  }
  if (!relations(images, n).empty()) {
    out.error = "source vectors are dependent over the centralizer";
    return out;
  }
  const std::size_t m = v.algebra().dim();
  Matrix sys(n * k, m);
  Vec rhs(n * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t b = 0; b < m; ++b) {
      Vec img = v.action(b) * sources[i];
      for (std::size_t r = 0; r < n; ++r) sys(i * n + r, b) = img[r];
    }
    for (std::size_t r = 0; r < n; ++r) rhs[i * n + r] = targets[i][r];
  }
  SolveResult s = solve(sys, rhs);
  if (!s.consistent()) {
    out.error = "no algebra element maps the sources to the targets";
    return out;
  }
  out.element = s.solution;
  return out;
}

}  // namespace loopmod
