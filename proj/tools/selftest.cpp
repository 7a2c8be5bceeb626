#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "loopmod/central.hpp"
#include "loopmod/corpus.hpp"
#include "loopmod/envelope.hpp"
#include "loopmod/invars.hpp"
#include "report.hpp"

namespace cli {

using namespace loopmod;
using nlohmann::json;

namespace {

enum class Outcome { pass, fail, skip };

struct InstanceResult {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, Outcome>> outcomes;
  std::string error;
};

void record(InstanceResult& out, const std::string& name, bool ok) {
  out.outcomes.emplace_back(name, ok ? Outcome::pass : Outcome::fail);
}

InstanceResult run_instance(const CorpusInstance& inst) {
  InstanceResult out;
  out.seed = inst.seed;
  const GradedModule& w = inst.module;
  try {
    record(out, "valid", validate(w).ok());
    record(out, "graded_simple", is_graded_simple(w).simple());
    Centralizer c = graded_centralizer(w);
    record(out, "division_profile", profile(c.algebra().algebra).ok());
    record(out, "inertia", inertia_group(w).cross_checked);

    SubfieldSearch s = maximal_graded_subfields(w);
    if (s.subfields.empty()) {
      out.outcomes.emplace_back("roundtrip", Outcome::skip);
      return out;
    }
    const GradedSubfield& f = s.subfields.front();
    const Character one = Character::trivial(w.grading_group());
    CentralImage ci = central_image(w, f, one);
    record(out, "roundtrip", verify_central_image(w, f, ci).ok() && pair_isomorphism(w, f, ci).ok());
    record(out, "decomposition", decompose(w, f).ok());

    if (!w.grading().is_identity()) {
      out.outcomes.emplace_back("phi_psi", Outcome::skip);
      return out;
    }
    const GradedModule& v = ci.module;
    const QuotientMap& pi = ci.pi;
    const Subgroup& h = f.support;
    auto tr = default_transversal(pi);
    LoopModule l = loop(v, pi);
    Matrix ph = phi(l, tr);
    Matrix ps = psi(l, tr);
    bool inverse_pair = (ph * ps).is_identity() && (ps * ph).is_identity();
    std::mt19937_64 rng(inst.seed);
    Subgroup perp = orthogonal_complement(h);
    std::uniform_int_distribution<std::size_t> pick(0, perp.order() - 1);
    std::vector<Character> other;
    for (const auto& chi : tr) other.push_back(chi * Character(chi.group(), perp.elements()[pick(rng)]));
    bool unchanged = transversal_change(v, pi, other, tr) * phi(l, other) == ph;
    record(out, "phi_psi", inverse_pair && unchanged);

    CentralizerLoopReport cl = centralizer_loop_identity(v, pi);
    record(out, "centralizer_identity", cl.equal && cl.self_centralized);

    bool chains = true;
    for (const auto& k : all_subgroups(w.grading_group())) {
      if (k.is_subset_of(h)) chains = chains && loop_transitivity_iso(v, pi, k).verified;
    }
    record(out, "transitivity", chains);

    bool twists = true;
    for (const auto& chi : subgroup_characters(h)) {
      TwistSearch ts = loop_iso_implies_twist(v, central_image(w, f, chi).module, w.grading(), pi);
      twists = twists && ts.loops == IsoOutcome::isomorphic && ts.witness && !ts.violation;
    }
    record(out, "twists", twists);

    if (is_simple_ungraded(v).simple()) {
      record(out, "envelope", graded_envelope(v).ok());
    } else {
      out.outcomes.emplace_back("envelope", Outcome::skip);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

int run_selftest(const Options& o, Report& r) {
  r.inputs["seed"] = o.seed;
  r.inputs["instances"] = o.instances;
  r.inputs["max_order"] = o.max_order;
  CorpusLimits lim;
  lim.max_order = static_cast<std::size_t>(o.max_order);
  const auto insts = corpus(o.seed, o.instances, lim);

  std::vector<InstanceResult> results(insts.size());
  std::atomic<std::size_t> next{0};
  unsigned threads = o.threads > 0 ? static_cast<unsigned>(o.threads) : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, insts.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < insts.size(); i = next++) results[i] = run_instance(insts[i]);
    });
  }
  for (auto& t : pool) t.join();

  std::map<std::string, std::array<std::size_t, 3>> counts;
  json failures = json::array();
  for (const auto& res : results) {
    for (const auto& [name, oc] : res.outcomes) {
      counts[name][static_cast<std::size_t>(oc)]++;
      if (oc == Outcome::fail) failures.push_back({{"seed", res.seed}, {"property", name}});
    }
    if (!res.error.empty()) {
      r.diagnose("instance_error", "seed " + std::to_string(res.seed) + ": " + res.error);
      r.fail(Exit::indeterminate);
    }
  }
  json props = json::object();
  for (const auto& [name, c] : counts) props[name] = {{"passed", c[0]}, {"failed", c[1]}, {"skipped", c[2]}};
  r.results["instances"] = insts.size();
  r.results["properties"] = props;
  r.results["failures"] = failures;
  r.results["all_passed"] = failures.empty() && r.exit == Exit::ok;
  if (!failures.empty()) r.fail(Exit::counterexample);
  return r.exit;
}

}  // namespace cli
