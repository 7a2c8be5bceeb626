#include "loopmod/corpus.hpp"

#include <map>

namespace loopmod {

namespace {

std::vector<std::vector<long>> shapes_up_to(std::size_t max_order) {
  static const std::vector<std::vector<long>> all = {{1},    {2},       {3},    {4},       {2, 2},    {5},
                                                      {6},    {7},       {8},    {2, 4},    {2, 2, 2}, {9},
                                                      {3, 3}, {2, 6},    {4, 4}, {2, 2, 4}, {2, 8},    {16},
                                                      {2, 2, 2, 2}};
  std::vector<std::vector<long>> out;
  for (const auto& s : all) {
    std::size_t n = 1;
    for (long f : s) n *= static_cast<std::size_t>(f);
    if (n <= max_order) out.push_back(s);
  }
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

}  // namespace

Bicharacter random_alternating(std::mt19937_64& rng, const FinAbGroup& t) {
  std::size_t r = t.rank();
  std::vector<std::vector<Phase>> m(r, std::vector<Phase>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      long g = gcd_long(t.factors()[i], t.factors()[j]);
      std::uniform_int_distribution<long> k(0, g - 1);
      m[i][j] = Phase(k(rng), g);
      m[j][i] = -m[i][j];
    }
  }
  return Bicharacter(t, m);
}

GradedModule scramble(std::mt19937_64& rng, const GradedModule& w) {
  std::uniform_int_distribution<long> entry(-2, 2);
  Matrix basis(w.dim(), w.dim());
  for (auto d : w.support()) {
    auto idx = w.component(d);
    Matrix block(idx.size(), idx.size());
    do {
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = Cyc(entry(rng));
    } while (rank(block) != idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) basis(idx[a], idx[b]) = block(a, b);
  }
  return change_basis(w, basis, w.degrees());
}

CorpusInstance random_instance(std::uint64_t seed, const CorpusLimits& limits) {
  std::mt19937_64 rng(seed);
  CorpusInstance inst;
  inst.seed = seed;
  // Noncyclic groups two times in three, so that D is often noncommutative.
  auto shapes = shapes_up_to(limits.max_order);
  std::vector<std::vector<long>> noncyclic;
  for (const auto& s : shapes) {
    if (s.size() > 1) noncyclic.push_back(s);
  }
  std::uniform_int_distribution<int> third(0, 2);
  bool want_noncyclic = !noncyclic.empty() && third(rng) != 0;
  inst.group = FinAbGroup(pick(rng, want_noncyclic ? noncyclic : shapes));
  const FinAbGroup& g = inst.group;
  std::vector<Subgroup> subs;
  std::vector<Subgroup> wide;
  for (const auto& s : all_subgroups(g)) {
    if (s.order() > limits.max_dim) continue;
    subs.push_back(s);
    if (SubgroupPresentation(s).abstract().rank() > 1) wide.push_back(s);
  }
  inst.support = pick(rng, want_noncyclic && !wide.empty() ? wide : subs);
  SubgroupPresentation pres(inst.support);
  for (int attempt = 0; attempt < 8; ++attempt) {
    inst.beta = random_alternating(rng, pres.abstract());
    if (!(inst.beta == Bicharacter::trivial(pres.abstract()))) break;
  }
  Cocycle sigma = Cocycle::from_bicharacter(pres, inst.beta);
  std::uniform_int_distribution<long> scale(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Cyc> lambda;
  for (auto t : inst.support.elements()) lambda.push_back(t == g.identity() ? Cyc(1) : Cyc(sign(rng) ? scale(rng) : -scale(rng)));
  sigma = sigma.rescaled(lambda);

  const std::size_t tn = inst.support.order();
  std::uniform_int_distribution<std::size_t> copies(1, std::max<std::size_t>(1, std::min<std::size_t>(4, limits.max_dim / tn)));
  inst.copies = copies(rng);
  const std::size_t k = inst.copies;
  std::vector<GroupElem> all = g.elements();
  inst.shifts.push_back(g.identity());
  for (std::size_t i = 1; i < k; ++i) inst.shifts.push_back(pick(rng, all));

  // E_ij (x) x_t acting on w_l (x) x_s, basis index l * |T| + s.
  const auto& te = inst.support.elements();
  const std::size_t n = k * tn;
  std::vector<Matrix> mats;
  std::vector<GroupElem> degrees;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t a = 0; a < tn; ++a) {
        Matrix m(n, n);
        for (std::size_t b = 0; b < tn; ++b) {
          GroupElem prod = g.mul(te[a], te[b]);
          m(i * tn + inst.support.position(prod), j * tn + b) = sigma(te[a], te[b]);
        }
        mats.push_back(std::move(m));
        degrees.push_back(g.div(g.mul(inst.shifts[i], te[a]), inst.shifts[j]));
      }
  auto alg = std::make_shared<const GradedAlgebra>(matrix_algebra(g, mats, degrees, false).algebra);
  std::vector<GroupElem> wdeg;
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t b = 0; b < tn; ++b) wdeg.push_back(g.mul(inst.shifts[l], te[b]));
  GradedModule w(alg, QuotientMap::identity(g), wdeg, mats);
  w.raise_field_order(static_cast<int>(g.exponent()));
  inst.module = scramble(rng, w);
  return inst;
}

std::vector<CorpusInstance> corpus(std::uint64_t seed, std::size_t count, const CorpusLimits& limits) {
  std::vector<CorpusInstance> out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_instance(rng(), limits));
  return out;
}

}  // namespace loopmod
