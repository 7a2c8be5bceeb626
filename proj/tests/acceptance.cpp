// Acceptance checks: one PASS/FAIL line per criterion. Oracles are computed here, from raw matrices and
// structure constants, and compared with what the library reports.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "loopmod/central.hpp"
#include "loopmod/corpus.hpp"
#include "loopmod/envelope.hpp"
#include "loopmod/fixtures.hpp"
#include "loopmod/invars.hpp"

using namespace loopmod;
namespace fx = loopmod::fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

// Product skipping zero entries; action matrices and loop maps are very sparse.
Matrix sparse_mul(const Matrix& x, const Matrix& y) {
  std::vector<std::vector<std::pair<std::size_t, const Cyc*>>> rows(y.rows());
  for (std::size_t k = 0; k < y.rows(); ++k)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      if (!y(k, j).is_zero()) rows[k].emplace_back(j, &y(k, j));
    }
  Matrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k).is_zero()) continue;
      for (const auto& [j, c] : rows[k]) out(i, j) += x(i, k) * *c;
    }
  return out;
}

// map: source -> target with map * a_b = b_b * map for every algebra basis element.
bool intertwines(const Matrix& map, const std::vector<Matrix>& source, const std::vector<Matrix>& target) {
  for (std::size_t b = 0; b < source.size(); ++b) {
    if (!(sparse_mul(map, source[b]) == sparse_mul(target[b], map))) return false;
  }
  return true;
}

bool degree_preserving(const Matrix& map, const GradedModule& source, const GradedModule& target) {
  for (std::size_t c = 0; c < map.cols(); ++c)
    for (std::size_t r = 0; r < map.rows(); ++r) {
      if (!map(r, c).is_zero() && !(target.degree(r) == source.degree(c))) return false;
    }
  return true;
}

bool graded_isomorphism(const Matrix& map, const GradedModule& source, const GradedModule& target) {
  return map.rows() == target.dim() && map.cols() == source.dim() && rank(map) == source.dim() &&
         source.dim() == target.dim() && degree_preserving(map, source, target) &&
         intertwines(map, source.actions(), target.actions());
}

bool commute(const Matrix& a, const Matrix& b) { return sparse_mul(a, b) == sparse_mul(b, a); }

// Support elements whose centralizer component commutes with every component.
std::set<std::size_t> centre_of_centralizer(const Centralizer& c) {
  std::set<std::size_t> z;
  for (auto t : c.support()) {
    bool central = true;
    for (const auto& m : c.maps) {
      if (!(m.degree == t)) continue;
      for (const auto& o : c.maps) central = central && commute(m.matrix, o.matrix);
    }
    if (central) z.insert(t.index);
  }
  return z;
}

const std::vector<CorpusInstance>& shared_corpus() {
  static const std::vector<CorpusInstance> c = corpus(2026, 50, CorpusLimits{8, 12});
  return c;
}

struct Prepared {
  const CorpusInstance* inst;
  GradedSubfield field;
  CentralImage image;
};

const std::vector<Prepared>& prepared() {
  static const std::vector<Prepared> p = [] {
    std::vector<Prepared> out;
    for (const auto& inst : shared_corpus()) {
      SubfieldSearch s = maximal_graded_subfields(inst.module);
      if (s.subfields.empty()) continue;
      const GradedSubfield& f = s.subfields.front();
      out.push_back({&inst, f, central_image(inst.module, f, Character::trivial(inst.module.grading_group()))});
    }
    return out;
  }();
  return p;
}

// ---------------------------------------------------------------------------------------------------

void pauli_fixture(Outcome& o) {
  auto t0 = Clock::now();
  GradedModule w = fx::pauli_regular();
  const FinAbGroup& g = w.grading_group();
  o.require(g.order() == 4 && g.exponent() == 2, "grading group is not Z2 x Z2");
  o.require(is_graded_simple(w).simple(), "W not graded simple");

  Centralizer c = graded_centralizer(w);
  o.require(c.dim() == 4, "dim C(W) = " + std::to_string(c.dim()));
  o.require(Subgroup::generated(g, c.support()).order() == 4 && c.support().size() == 4, "support is not all of G");
  std::set<std::size_t> z = centre_of_centralizer(c);
  o.require(z.size() == 1 && z.count(g.identity().index), "Z is not trivial");

  // Maximal graded subfields: exactly the three subgroups of order two, each commuting.
  std::set<std::size_t> order_two;
  for (auto x : g.elements()) {
    if (!(x == g.identity())) order_two.insert(x.index);
  }
  SubfieldSearch s = maximal_graded_subfields(w);
  o.require(s.split && s.subfields.size() == 3, "expected 3 maximal graded subfields");
  std::set<std::size_t> seen;
  for (const auto& f : s.subfields) {
    o.require(f.support.order() == 2, "subfield support not of order 2");
    for (auto x : f.support.elements()) {
      if (!(x == g.identity())) seen.insert(x.index);
    }
    for (auto a : f.support.elements())
      for (auto b : f.support.elements()) o.require(commute(f.at(a), f.at(b)), "subfield is not commutative");
  }
  o.require(seen == order_two, "subfield supports are not the three subgroups of order two");

  o.require(schur_index(w) == 2, "Schur index differs from 2");
  o.require(inertia_group(w).group.order() == 4, "inertia group not of order 4");

  // W = V + V ungraded, through columns: (u, u') -> [u u'] in the matrix basis of the algebra.
  GradedModule v = fx::pauli_natural();
  auto mats = fx::pauli_matrices();
  bool natural = v.dim() == 2;
  for (std::size_t b = 0; b < mats.size(); ++b) natural = natural && v.action(b) == mats[b];
  o.require(natural, "natural module does not act by the fixture matrices");
  o.require(is_simple_ungraded(v).simple(), "V not simple");
  EchelonBasis coords(4, true);
  for (const auto& m : mats) coords.insert(m.flat());
  Matrix map(4, 4);
  for (std::size_t copy = 0; copy < 2; ++copy)
    for (std::size_t i = 0; i < 2; ++i) {
      Matrix e(2, 2);
      e(i, copy) = Cyc(1);
      Vec x = *coords.coordinates(e.flat());
      for (std::size_t r = 0; r < 4; ++r) map(r, copy * 2 + i) = x[r];
    }
  std::vector<Matrix> doubled;
  for (const auto& m : mats) {
    Matrix d(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) d(i, j) = d(i + 2, j + 2) = m(i, j);
    doubled.push_back(d);
  }
  o.require(rank(map) == 4 && intertwines(map, doubled, w.actions()), "column map V + V -> W fails");
  o.require(intertwiners_ungraded(v, w).size() == 2, "Hom(V, W) is not two-dimensional");

  double secs = seconds_since(t0);
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  o.detail << "dim C = 4, |T| = 4, |Z| = 1, 3 subfields, index 2, |inertia| = 4, W = 2 V";
}

void roundtrip(Outcome& o) {
  auto t0 = Clock::now();
  std::size_t n = 0;
  for (const auto& inst : shared_corpus()) {
    const GradedModule& w = inst.module;
    SubfieldSearch s = maximal_graded_subfields(w);
    if (s.subfields.empty()) {
      o.require(false, "no subfield for seed " + std::to_string(inst.seed));
      continue;
    }
    const GradedSubfield& f = s.subfields.front();
    CentralImage ci = central_image(w, f, Character::trivial(w.grading_group()));
    PairIsomorphism p = pair_isomorphism(w, f, ci);
    // The map must be a graded module isomorphism W -> L(V) carrying c_h to delta_h.
    bool ok = graded_isomorphism(p.map, w, p.loop.module);
    for (std::size_t k = 0; k < p.loop.kernel.size(); ++k) {
      ok = ok && sparse_mul(p.map, f.at(p.loop.kernel[k])) == sparse_mul(p.loop.delta[k], p.map);
    }
    o.require(ok, "pair isomorphism fails for seed " + std::to_string(inst.seed));
    o.require(w.dim() <= 12 && w.grading_group().order() <= 8, "instance outside the size limits");
    ++n;
  }
  double secs = seconds_since(t0);
  o.require(n >= 50, "only " + std::to_string(n) + " instances");
  o.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  o.detail << n << " instances";
}

void phi_psi(Outcome& o) {
  std::size_t n = 0, changed = 0;
  std::mt19937_64 rng(5);
  for (const auto& p : prepared()) {
    const GradedModule& v = p.image.module;
    const QuotientMap& pi = p.image.pi;
    auto tr = default_transversal(pi);
    LoopModule l = loop(v, pi);
    Matrix ph = phi(l, tr);
    Matrix ps = psi(l, tr);
    o.require(sparse_mul(ph, ps).is_identity() && sparse_mul(ps, ph).is_identity(), "phi psi not inverse");
    // Multiply each transversal character by an element of H^perp; the raw basis vector chi_j (x) e_i then
    // becomes theta_j(deg e_i) times the old one.
    Subgroup perp = orthogonal_complement(p.field.support);
    std::uniform_int_distribution<std::size_t> pick(0, perp.order() - 1);
    std::vector<Character> other;
    std::vector<Character> theta;
    for (const auto& chi : tr) {
      theta.emplace_back(chi.group(), perp.elements()[pick(rng)]);
      other.push_back(chi * theta.back());
    }
    const std::size_t d = v.dim();
    Matrix change(d * tr.size(), d * tr.size());
    for (std::size_t j = 0; j < tr.size(); ++j)
      for (std::size_t i = 0; i < d; ++i) change(j * d + i, j * d + i) = theta[j].value(pi.section(v.degree(i)));
    Matrix ph2 = phi(l, other);
    changed += !(ph2 == ph);
    o.require(sparse_mul(change, ph2) == ph, "phi depends on the transversal");
    o.require(transversal_change(v, pi, other, tr) == change, "library change of transversal disagrees");
    ++n;
  }
  o.require(n >= 50, "only " + std::to_string(n) + " instances");
  o.detail << n << " instances, " << changed << " with a nontrivial change of raw basis";
}

void order_identity(Outcome& o) {
  std::mt19937_64 rng(64);
  std::size_t algebras = 0, subgroups = 0, nondegenerate = 0;
  const long choices[] = {2, 2, 2, 3, 4, 4, 5, 6, 8};
  for (int attempt = 0; algebras < 60 && attempt < 500; ++attempt) {
    std::vector<long> factors;
    long order = 1;
    std::uniform_int_distribution<int> pick(0, 8);
    std::uniform_int_distribution<int> rank_pick(1, 4);
    for (int r = rank_pick(rng); r > 0; --r) {
      long d = choices[pick(rng)];
      if (order * d > 64) break;
      factors.push_back(d);
      order *= d;
    }
    if (order < 4) continue;
    FinAbGroup g(factors);
    SubgroupPresentation pres(Subgroup::whole(g));
    Bicharacter beta = random_alternating(rng, pres.abstract());
    GradedAlgebra d = twisted_group_algebra(Cocycle::from_bicharacter(pres, beta));

    // Commutation read from structure constants: x_s x_t versus x_t x_s.
    const std::size_t n = d.dim();
    std::vector<std::size_t> basis_of(g.order());
    for (std::size_t i = 0; i < n; ++i) basis_of[d.degree(i).index] = i;
    std::vector<std::vector<bool>> comm(g.order(), std::vector<bool>(g.order()));
    for (auto s : g.elements())
      for (auto t : g.elements()) {
        const auto& st = d.product(basis_of[s.index], basis_of[t.index]);
        const auto& ts = d.product(basis_of[t.index], basis_of[s.index]);
        comm[s.index][t.index] = st.size() == 1 && ts.size() == 1 && st[0].coeff == ts[0].coeff;
      }
    std::size_t z = 0;
    for (auto t : g.elements()) {
      bool all = true;
      for (auto s : g.elements()) all = all && comm[t.index][s.index];
      z += all;
    }
    std::vector<Subgroup> isotropic;
    for (const auto& h : all_subgroups(g)) {
      auto el = h.elements();
      bool iso = true;
      for (std::size_t a = 0; iso && a < el.size(); ++a)
        for (std::size_t b = a + 1; iso && b < el.size(); ++b) iso = comm[el[a].index][el[b].index];
      if (iso) isotropic.push_back(h);
    }
    std::vector<Subgroup> maximal;
    for (const auto& h : isotropic) {
      bool top = true;
      for (const auto& k : isotropic) top = top && !(h.is_subset_of(k) && k.order() > h.order());
      if (top) maximal.push_back(h);
    }

    DivisionAlgebraProfile prof = profile(d);
    o.require(prof.center.order() == z, "center differs from the commutation oracle");
    o.require(prof.all_maximal_isotropic.size() == maximal.size(), "maximal isotropic count differs");
    for (const auto& h : maximal) {
      bool listed = false;
      for (const auto& k : prof.all_maximal_isotropic) listed = listed || k == h;
      o.require(listed, "a maximal isotropic subgroup is missing");
      o.require(g.order() * z == h.order() * h.order(), "|T||Z| != |H|^2 on " + g.describe());
      ++subgroups;
    }
    nondegenerate += z == 1;
    ++algebras;
  }
  o.require(algebras >= 50, "only " + std::to_string(algebras) + " algebras");
  o.detail << algebras << " algebras (" << nondegenerate << " with trivial center), " << subgroups
           << " maximal isotropic subgroups";
}

void decompositions(Outcome& o) {
  std::size_t n = 0, pieces = 0;
  for (const auto& p : prepared()) {
    const GradedModule& w = p.inst->module;
    Decomposition d = decompose(w, p.field);
    const std::size_t z = centre_of_centralizer(graded_centralizer(w)).size();
    const std::size_t index = p.field.support.order() / z;
    std::string tag = " (seed " + std::to_string(p.inst->seed) + ")";
    o.require(d.z.order() == z, "Z differs from the oracle" + tag);
    o.require(d.pieces.size() == z, "number of pieces is not |Z|" + tag);
    // Classes of characters of H: same restriction to Z, equivalently central images isomorphic as ungraded modules.
    const auto zs = d.z.elements();
    for (std::size_t j = 0; j < d.characters.size(); ++j)
      for (std::size_t k = 0; k < j; ++k) {
        bool same = true;
        for (auto x : zs) same = same && d.characters[j](x) == d.characters[k](x);
        o.require(same == (d.class_of[j] == d.class_of[k]), "classes differ from restrictions to Z" + tag);
        o.require(same == is_isomorphic_ungraded(d.images[j].module, d.images[k].module).isomorphic(),
                  "classes differ from isomorphism of central images" + tag);
      }
    std::size_t total = 0;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
      o.require(d.multiplicities.at(i) == index, "multiplicity differs from |H/Z|" + tag);
      std::size_t members = 0;
      for (auto c : d.class_of) members += c == i;
      o.require(members == index, "class size differs from |H/Z|" + tag);
      total += d.multiplicities[i] * d.images.at(d.pieces[i].members.front()).module.dim();
      const GradedModule& m = d.pieces[i].module;
      o.require(m.grading_group().order() * z == w.grading_group().order(), "piece not graded by G/Z" + tag);
      o.require(is_graded_simple(m).simple(), "piece not graded simple" + tag);
      for (std::size_t j = 0; j < i; ++j) {
        o.require(is_isomorphic_ungraded(m, d.pieces[j].module).outcome == IsoOutcome::not_isomorphic,
                  "two pieces are isomorphic" + tag);
      }
    }
    o.require(total == w.dim(), "sum n_i dim V^i != dim W" + tag);
    pieces += d.pieces.size();
    ++n;
  }
  o.detail << n << " decompositions, " << pieces << " pieces";
}

// Loop of the graded centralizer of v, built from its maps, against the centralizer of the deltas.
void centralizer_identity_one(Outcome& o, const GradedModule& v, const QuotientMap& pi, const std::string& tag) {
  LoopModule l = loop(v, pi);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> where;
  for (std::size_t k = 0; k < l.module.dim(); ++k) where[{l.group_part[k].index, l.source[k]}] = k;
  const FinAbGroup& g = pi.source();
  Centralizer cv = graded_centralizer(v);
  std::vector<Matrix> looped;
  for (const auto& m : cv.maps)
    for (auto x : g.elements()) {
      if (!(pi.apply(x) == m.degree)) continue;
      Matrix big(l.module.dim(), l.module.dim());
      for (std::size_t k = 0; k < l.module.dim(); ++k)
        for (std::size_t r = 0; r < v.dim(); ++r) {
          const Cyc& e = m.matrix(r, l.source[k]);
          if (!e.is_zero()) big(where.at({g.mul(x, l.group_part[k]).index, r}), k) = e;
        }
      looped.push_back(std::move(big));
    }
  const std::size_t n2 = l.module.dim() * l.module.dim();
  EchelonBasis loop_span(n2);
  for (const auto& m : looped) {
    loop_span.insert(m.flat());
    o.require(intertwines(m, l.module.actions(), l.module.actions()), "looped map is not a module map" + tag);
    for (const auto& d : l.delta) o.require(commute(m, d), "looped map does not commute with delta" + tag);
  }

  Centralizer cl = graded_centralizer(l.module);
  std::vector<Vec> images;
  for (const auto& m : cl.maps) {
    Vec img;
    for (const auto& d : l.delta) {
      Vec part = (sparse_mul(m.matrix, d) - sparse_mul(d, m.matrix)).flat();
      img.insert(img.end(), part.begin(), part.end());
    }
    images.push_back(std::move(img));
  }
  EchelonBasis commutant(n2);
  for (const auto& a : relations(images, n2 * l.delta.size())) {
    Matrix s(l.module.dim(), l.module.dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero()) s = s + cl.maps[i].matrix.scaled(a[i]);
    }
    commutant.insert(s.flat());
  }
  o.require(commutant.size() == loop_span.size(), "dimensions differ" + tag);
  for (const auto& m : looped) o.require(commutant.contains(m.flat()), "looped map outside the commutant" + tag);

  const bool self = commutant.size() == l.delta.size();
  o.require(self == (cv.dim() == 1), "self-centralization does not match centrality" + tag);
  CentralizerLoopReport rep = centralizer_loop_identity(v, pi);
  o.require(rep.equal && rep.self_centralized == self && rep.centralizer_of_subfield_dim == commutant.size(),
            "library report disagrees" + tag);
}

void centralizer_identity(Outcome& o) {
  std::size_t n = 0;
  for (const auto& p : prepared()) {
    std::string tag = " (seed " + std::to_string(p.inst->seed) + ")";
    centralizer_identity_one(o, p.image.module, p.image.pi, tag);
    centralizer_identity_one(o, direct_sum(p.image.module, p.image.module), p.image.pi, tag + " doubled");
    n += 2;
  }
  o.detail << n << " modules (central images and their doubles)";
}

void transitivity(Outcome& o) {
  std::size_t chains = 0;
  for (const auto& inst : shared_corpus()) {
    const GradedModule& w = inst.module;
    const FinAbGroup& g = w.grading_group();
    if (g.order() > 8) continue;
    auto subs = all_subgroups(g);
    for (const auto& h : subs) {
      QuotientMap pi(g, h);
      GradedModule v = forgetful(w, pi);
      for (const auto& k : subs) {
        if (!k.is_subset_of(h)) continue;
        TransitivityResult t = loop_transitivity_iso(v, pi, k);
        o.require(t.verified && graded_isomorphism(t.map, t.direct.module, t.outer.module),
                  "transitivity fails for seed " + std::to_string(inst.seed));
        ++chains;
      }
    }
  }
  o.detail << chains << " chains K <= H <= G";
}

void twists(Outcome& o) {
  std::size_t pairs = 0, iso_pairs = 0;
  for (const auto& p : prepared()) {
    const GradedModule& w = p.inst->module;
    const GradedModule& v = p.image.module;
    const QuotientMap& pi = p.image.pi;
    std::string tag = " (seed " + std::to_string(p.inst->seed) + ")";
    auto hchars = subgroup_characters(p.field.support);
    std::vector<GradedModule> twisted;
    for (const auto& chi : hchars) twisted.push_back(twist_by_character(v, w.grading(), pi, chi));

    auto twist_of = [&](const GradedModule& x) {
      std::optional<std::size_t> found;
      for (std::size_t i = 0; i < twisted.size() && !found; ++i) {
        IsoResult r = is_isomorphic_graded(twisted[i], x);
        if (r.isomorphic() && r.map && graded_isomorphism(*r.map, twisted[i], x)) found = i;
      }
      return found;
    };

    // Candidates: every central image of the pair and every shift of V.
    std::vector<GradedModule> others;
    std::vector<GradedModule> images;
    for (const auto& chi : hchars) images.push_back(central_image(w, p.field, chi).module);
    others = images;
    for (auto x : pi.target().elements()) {
      if (!(x == pi.target().identity())) others.push_back(shift(v, x));
    }

    for (const auto& vp : others) {
      TwistSearch ts = loop_iso_implies_twist(v, vp, w.grading(), pi);
      std::optional<std::size_t> oracle = twist_of(vp);
      o.require(!ts.violation, "isomorphic loops without a twist" + tag);
      o.require(ts.loops != IsoOutcome::inconclusive, "loop comparison inconclusive" + tag);
      o.require((ts.loops == IsoOutcome::isomorphic) == oracle.has_value(), "twist oracle disagrees with loops" + tag);
      if (ts.witness) {
        GradedModule tw = twist_by_character(v, w.grading(), pi, *ts.witness);
        IsoResult r = is_isomorphic_graded(tw, vp);
        o.require(r.isomorphic() && r.map && graded_isomorphism(*r.map, tw, vp), "twist witness is wrong" + tag);
        ++iso_pairs;
      }
      ++pairs;
    }
    // The central images are exactly the twists: each image is a twist and each twist is an image.
    for (const auto& im : images) o.require(twist_of(im).has_value(), "central image is not a twist" + tag);
    for (const auto& tw : twisted) {
      bool hit = false;
      for (const auto& im : images) hit = hit || is_isomorphic_graded(tw, im).isomorphic();
      o.require(hit, "twist is not a central image" + tag);
    }
  }
  o.detail << pairs << " pairs compared, " << iso_pairs << " with isomorphic loops";
}

void envelopes(Outcome& o) {
  std::size_t n = 0;
  double slowest = 0;
  auto check = [&](const GradedModule& v, const std::string& tag) -> std::optional<EnvelopeResult> {
    if (!is_simple_ungraded(v).simple()) return std::nullopt;
    auto t0 = Clock::now();
    EnvelopeResult e = graded_envelope(v);
    double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    o.require(secs < 10.0, "envelope took " + std::to_string(secs) + " s" + tag);
    o.require(e.ok(), "envelope certificates fail" + tag);
    o.require(is_graded_simple(e.w).simple(), "envelope not graded simple" + tag);
    o.require(rank(e.embedding) == v.dim() && intertwines(e.embedding, v.actions(), e.w.actions()),
              "embedding of V fails" + tag);
    // K_V by exhaustive twisting of V.
    const FinAbGroup& a = v.algebra().group();
    std::vector<GroupElem> k;
    for (const auto& chi : characters(a)) {
      if (is_isomorphic_ungraded(v, twist_by_automorphism(v, chi)).isomorphic()) k.push_back(chi.exponents());
    }
    o.require(inertia_group(e.w).group == Subgroup::generated(a, k), "inertia of W differs from K_V" + tag);
    ++n;
    return e;
  };
  for (const auto& p : prepared()) {
    check(p.image.module, " (seed " + std::to_string(p.inst->seed) + ")");
  }
  auto pauli = check(fx::pauli_natural(), " (Pauli)");
  o.require(pauli.has_value(), "Pauli natural module not certified simple");
  if (pauli) {
    GradedModule reg = fx::pauli_regular();
    o.require(pauli->w.grading_group() == reg.grading_group(), "Pauli envelope graded by another group");
    IsoResult r = is_isomorphic_graded(pauli->w, reg);
    o.require(r.isomorphic() && r.map && graded_isomorphism(*r.map, pauli->w, reg), "Pauli envelope is not regular");
  }
  o.require(n >= 10, "only " + std::to_string(n) + " certified-simple modules");
  o.detail << n << " envelopes, slowest " << slowest << " s";
}

// Phi_n from the Moebius product of (x^d - 1)^{mu(n/d)}.
RationalPolynomial moebius_cyclotomic(int n) {
  auto mu = [](int m) {
    int r = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      r = -r;
    }
    return m > 1 ? -r : r;
  };
  auto xd1 = [](int d) {
    std::vector<Rational> c(d + 1);
    c[0] = -1;
    c[d] = 1;
    return RationalPolynomial(c);
  };
  RationalPolynomial num(std::vector<Rational>{1}), den(std::vector<Rational>{1});
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    int m = mu(n / d);
    if (m == 1) num = num * xd1(d);
    if (m == -1) den = den * xd1(d);
  }
  auto [q, r] = num.divmod(den);
  if (!(r == RationalPolynomial())) throw std::logic_error("Moebius quotient is not exact");
  return q;
}

void exact_arithmetic(Outcome& o) {
  for (int n = 1; n <= 64; ++n) {
    RationalPolynomial prod(std::vector<Rational>{1});
    for (int d = 1; d <= n; ++d) {
      if (n % d) continue;
      o.require(cyclotomic_polynomial(d) == moebius_cyclotomic(d), "Phi_" + std::to_string(d) + " differs");
      prod = prod * cyclotomic_polynomial(d);
    }
    std::vector<Rational> target(n + 1);
    target[0] = -1;
    target[n] = 1;
    o.require(prod == RationalPolynomial(target), "product of Phi_d != x^N - 1 for N = " + std::to_string(n));
  }

  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> size(1, 7);
  const int fields[] = {1, 3, 4, 5, 8, 12};
  auto random_cyc = [&](int n) {
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = Rational(small(rng), 1 + std::abs(small(rng)));
    return Cyc::from_coeffs(n, c);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = fields[trial % 6];
    std::size_t rows = static_cast<std::size_t>(size(rng)), cols = static_cast<std::size_t>(size(rng));
    // Low-rank products as well as generic matrices.
    Matrix m(rows, cols);
    if (trial % 2) {
      std::size_t inner = static_cast<std::size_t>(size(rng)) % 3 + 1;
      Matrix a(rows, inner), b(inner, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < inner; ++j) a(i, j) = random_cyc(n);
      for (std::size_t i = 0; i < inner; ++i)
        for (std::size_t j = 0; j < cols; ++j) b(i, j) = random_cyc(n);
      m = a * b;
    } else {
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_cyc(n);
    }
    auto ker = kernel(m);
    o.require(rank(m) + ker.size() == cols, "rank-nullity fails");
    for (const auto& v : ker) {
      Matrix col(cols, 1);
      for (std::size_t i = 0; i < cols; ++i) col(i, 0) = v[i];
      o.require((m * col).is_zero(), "kernel vector not in the kernel");
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = fields[trial % 6];
    Cyc a = random_cyc(n), b = random_cyc(n), c = random_cyc(n);
    o.require(a + b == b + a && a * b == b * a, "commutativity");
    o.require((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c), "associativity");
    o.require(a * (b + c) == a * b + a * c, "distributivity");
    o.require(a + Cyc(0) == a && a * Cyc(1) == a && a - a == Cyc(0), "identities");
    if (!a.is_zero()) o.require(a * a.inverse() == Cyc(1), "inverse");
  }
  o.detail << "N <= 64, 100 matrices, 200 triples";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion all[] = {
      {1, "Pauli fixture", pauli_fixture},
      {2, "roundtrip (L(central image), L(F 1)) = (W, F)", roundtrip},
      {3, "phi/psi inverse and transversal independence", phi_psi},
      {4, "|T||Z| = |H|^2 on random graded division algebras", order_identity},
      {5, "isotypic decompositions", decompositions},
      {6, "loop of the centralizer equals the centralizer of the loop subfield", centralizer_identity},
      {7, "loop transitivity", transitivity},
      {8, "isomorphic loops and twists", twists},
      {9, "graded envelope", envelopes},
      {10, "exact arithmetic", exact_arithmetic},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s  %s  [%s; %.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str(),
                seconds_since(t0));
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
