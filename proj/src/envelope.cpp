#include "loopmod/envelope.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "loopmod/loopfun.hpp"

namespace loopmod {

namespace {

struct HomogeneousSpan {
  std::vector<Matrix> basis;
  std::vector<GroupElem> degrees;
  std::size_t size() const { return basis.size(); }
};

// Left ideal A X of a graded matrix algebra, for X homogeneous of degree dx.
HomogeneousSpan left_ideal(const FinAbGroup& q, const std::vector<Matrix>& a, const std::vector<GroupElem>& deg,
                           const Matrix& x, GroupElem dx) {
  const std::size_t n2 = x.rows() * x.cols();
  std::map<GroupElem, EchelonBasis> comps;
  HomogeneousSpan out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Matrix p = a[i] * x;
    if (p.is_zero()) continue;
    GroupElem d = q.mul(deg[i], dx);
    if (comps.try_emplace(d, n2).first->second.insert(p.flat())) {
      out.basis.push_back(std::move(p));
      out.degrees.push_back(d);
    }
  }
  return out;
}

// Action of the given matrices on the span by left multiplication, in span coordinates.
std::vector<Matrix> left_action(const HomogeneousSpan& s, const std::vector<Matrix>& ops) {
  EchelonBasis eb(s.basis[0].rows() * s.basis[0].cols(), true);
  for (const auto& m : s.basis) eb.insert(m.flat());
  std::vector<Matrix> out;
  for (const auto& op : ops) {
    Matrix a(s.size(), s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto c = eb.coordinates((op * s.basis[j]).flat());
      if (!c) throw std::logic_error("left action: span is not invariant");
      for (std::size_t i = 0; i < s.size(); ++i) a(i, j) = (*c)[i];
    }
    out.push_back(std::move(a));
  }
  return out;
}

int entry_order(const std::vector<Matrix>& ms) {
  long n = 1;
  for (const auto& m : ms)
    for (const auto& x : m.flat()) n = std::lcm(n, static_cast<long>(x.order()));
  return static_cast<int>(n);
}

}  // namespace

SimpleInertia inertia_of_simple(const GradedModule& v) {
  const FinAbGroup& a = v.algebra().group();
  SimpleInertia out;
  std::vector<GroupElem> exps;
  for (const auto& chi : characters(a)) {
    auto maps = intertwiners_ungraded(v, twist_by_automorphism(v, chi));
    if (maps.empty()) continue;
    out.members.push_back(chi);
    out.witnesses.push_back(maps.front());
    exps.push_back(chi.exponents());
  }
  out.group = Subgroup::generated(a, exps);
  if (out.group.order() != out.members.size()) throw std::logic_error("inertia: members do not form a subgroup");
  return out;
}

InertiaGrading grade_by_inertia(const GradedModule& v, const SimpleInertia& k) {
  const FinAbGroup& a = v.algebra().group();
  InertiaGrading out;
  out.to_az = QuotientMap(a, orthogonal_complement(k.group));
  const std::size_t n = v.dim();
  std::vector<std::size_t> gens;
  SubgroupPresentation kp(k.group);
  for (auto x : kp.generators()) {
    for (std::size_t m = 0; m < k.members.size(); ++m) {
      if (k.members[m].exponents() == x) gens.push_back(m);
    }
  }
  std::map<GroupElem, EchelonBasis> comps;
  for (auto gbar : out.to_az.target().elements()) {
    GroupElem g = out.to_az.section(gbar);
    SparseSystem sys(n * n);
    // phi f - chi(g) f phi = 0, entry (i, j), unknown f(r, c) at r * n + c.
    for (auto m : gens) {
      const Matrix& phi = k.witnesses[m];
      Cyc s = k.members[m].value(g);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::map<std::size_t, Cyc> row;
          for (std::size_t t = 0; t < n; ++t) {
            if (!phi(i, t).is_zero()) row[t * n + j] += phi(i, t);
            if (!phi(t, j).is_zero()) row[i * n + t] -= s * phi(t, j);
          }
          SparseSystem::Row r;
          for (auto& [c, x] : row) {
            if (!x.is_zero()) r.emplace_back(c, x);
          }
          if (!r.empty()) sys.add(std::move(r));
        }
    }
    auto& eb = comps.try_emplace(gbar, n * n).first->second;
    for (auto& f : sys.kernel()) {
      eb.insert(f);
      out.basis.push_back(Matrix::from_flat(n, n, f));
      out.degrees.push_back(gbar);
    }
  }
  out.dimensions_ok = out.basis.size() == n * n;
  out.action_graded = true;
  for (std::size_t b = 0; b < v.algebra().dim(); ++b) {
    auto it = comps.find(out.to_az.apply(v.algebra().degree(b)));
    if (it == comps.end() || !it->second.contains(v.action(b).flat())) out.action_graded = false;
  }
  const FinAbGroup& q = out.to_az.target();
  out.closed = true;
  for (std::size_t i = 0; out.closed && i < out.basis.size(); ++i)
    for (std::size_t j = 0; out.closed && j < out.basis.size(); ++j) {
      Matrix p = out.basis[i] * out.basis[j];
      out.closed = p.is_zero() || comps.at(q.mul(out.degrees[i], out.degrees[j])).contains(p.flat());
    }
  return out;
}

WedderburnSplit graded_wedderburn_split(const FinAbGroup& q, const std::vector<Matrix>& basis,
                                        const std::vector<GroupElem>& degrees) {
  auto alg = std::make_shared<const GradedAlgebra>(matrix_algebra(q, basis, degrees, false).algebra);
  std::vector<std::size_t> order(basis.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> ranks;
  for (const auto& m : basis) ranks.push_back(rank(m));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ranks[x] < ranks[y]; });

  HomogeneousSpan best;
  for (auto i : order) {
    if (ranks[i] != ranks[order.front()] && !best.basis.empty()) break;
    HomogeneousSpan s = left_ideal(q, basis, degrees, basis[i], degrees[i]);
    if (best.basis.empty() || s.size() < best.size()) best = std::move(s);
  }
  auto shrink = [&](HomogeneousSpan& cur) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        HomogeneousSpan s = left_ideal(q, basis, degrees, cur.basis[j], cur.degrees[j]);
        if (s.size() < cur.size()) {
          cur = std::move(s);
          changed = true;
          break;
        }
      }
    }
  };
  shrink(best);

  WedderburnSplit out;
  const int field = std::max({entry_order(basis), static_cast<int>(q.exponent()), alg->field_order()});
  for (;;) {
    out.ideal_module = GradedModule(alg, QuotientMap::identity(q), best.degrees, left_action(best, basis));
    out.ideal_module.raise_field_order(field);
    SimplicityResult sr = is_graded_simple(out.ideal_module);
    if (sr.verdict != Verdict::no) {
      out.minimal = sr.simple();
      break;
    }
    // Re-seed from a homogeneous vector of the proper graded submodule.
    const Vec& wv = sr.witness.front();
    Matrix x(basis[0].rows(), basis[0].cols());
    GroupElem dx{};
    bool found = false;
    for (std::size_t j = 0; j < best.size() && !found; ++j) {
      if (wv[j].is_zero()) continue;
      dx = best.degrees[j];
      found = true;
    }
    for (std::size_t j = 0; j < best.size(); ++j) {
      if (!wv[j].is_zero() && best.degrees[j] == dx) x = x + best.basis[j].scaled(wv[j]);
    }
    HomogeneousSpan s = left_ideal(q, basis, degrees, x, dx);
    if (s.size() >= best.size()) throw std::logic_error("wedderburn split: graded submodule did not shrink the ideal");
    best = std::move(s);
    shrink(best);
  }
  out.ideal = best.basis;
  out.ideal_degrees = best.degrees;
  out.division = graded_centralizer(out.ideal_module);
  out.division_ok = graded_division_check(out.division.algebra().algebra).is_division();
  EchelonBasis faithful(best.size() * best.size());
  for (const auto& m : out.ideal_module.actions()) faithful.insert(m.flat());
  out.double_centralizer = faithful.size() == basis.size() &&
                           basis.size() * out.division.dim() == best.size() * best.size();
  return out;
}

EnvelopeResult graded_envelope(const GradedModule& v) {
  EnvelopeResult r;
  const FinAbGroup& a = v.algebra().group();
  GradedModule v0 = v;
  v0.raise_field_order(static_cast<int>(a.exponent()));
  r.inertia = inertia_of_simple(v0);
  r.grading = grade_by_inertia(v0, r.inertia);
  r.z = r.grading.to_az.kernel();
  const QuotientMap& to_az = r.grading.to_az;
  r.split = graded_wedderburn_split(to_az.target(), r.grading.basis, r.grading.degrees);

  HomogeneousSpan ideal{r.split.ideal, r.split.ideal_degrees};
  r.w_prime = GradedModule(v.algebra_ptr(), to_az, r.split.ideal_degrees, left_action(ideal, v.actions()));
  r.w_prime.raise_field_order(std::max(v0.field_order(), r.split.ideal_module.field_order()));
  r.w = induce(r.w_prime, to_az, default_transversal(to_az)).module;
  r.w.raise_field_order(r.w_prime.field_order());

  r.graded_simple = is_graded_simple(r.w).simple();
  auto maps = intertwiners_ungraded(v0, r.w);
  if (!maps.empty()) {
    r.embedding = maps.front();
    r.contains_v = rank(r.embedding) == v.dim();
  }
  r.inertia_matches = inertia_group(r.w).group == r.inertia.group;
  r.dimension_ok = r.w.dim() == r.w_prime.dim() * r.z.order();
  return r;
}

}  // namespace loopmod
