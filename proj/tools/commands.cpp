#include <sstream>

#include "loopmod/central.hpp"
#include "loopmod/corpus.hpp"
#include "loopmod/envelope.hpp"
#include "loopmod/fixtures.hpp"
#include "loopmod/invars.hpp"
#include "report.hpp"

namespace cli {

using namespace loopmod;
using nlohmann::json;
namespace fx = loopmod::fixtures;

void Report::diagnose(const std::string& kind, const std::string& message) {
  diagnostics.push_back({{"kind", kind}, {"message", message}});
}

void Report::fail(int code) {
  if (code > exit) exit = code;
}

json Report::to_json() const {
  return {{"command", command}, {"inputs", inputs}, {"results", results}, {"certificates", certificates},
          {"diagnostics", diagnostics}, {"exit_code", exit}};
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command << "\n";
  for (const auto& [k, v] : results.items()) {
    if (k == "document") continue;
    if (v.is_object() && !v.empty() && v.begin()->is_object()) {
      out << "  " << k << ":\n";
      for (const auto& [k2, v2] : v.items()) out << "    " << k2 << ": " << v2.dump() << "\n";
      continue;
    }
    out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  for (const auto& d : diagnostics) out << "  ! " << d["kind"].get<std::string>() << ": " << d["message"].get<std::string>() << "\n";
  if (!certificates.empty()) out << "  (" << certificates.size() << " certificate groups; use --json)\n";
  return out.str();
}

json matrix_json(const Matrix& m, int n) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) entries.push_back({i, j, scalar_to_string(m(i, j), n)});
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json elements_json(const FinAbGroup& g, const std::vector<GroupElem>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(element_to_json(g, x));
  return out;
}

json subgroup_json(const Subgroup& s) {
  return {{"order", s.order()}, {"generators", elements_json(s.parent(), SubgroupPresentation(s).generators())}};
}

std::string verdict_name(Verdict v) { return to_string(v); }

std::string outcome_name(IsoOutcome o) {
  switch (o) {
    case IsoOutcome::isomorphic: return "isomorphic";
    case IsoOutcome::not_isomorphic: return "not_isomorphic";
    default: return "inconclusive";
  }
}

namespace {

struct Input {
  Workspace ws;
  std::string name;
  const GradedModule* module = nullptr;
  std::string algebra;
};

Input load(const Options& o, Report& r, std::size_t which = 0) {
  if (o.document.empty()) throw ReferenceError("a document path is required");
  Input in;
  in.ws = load_workspace(o.document);
  if (o.modules.size() <= which) throw ReferenceError("--module is required");
  in.name = o.modules[which];
  in.module = &in.ws.module(in.name);
  in.algebra = in.ws.module_algebra.at(in.name);
  r.inputs["document"] = o.document;
  r.inputs["cyclotomic_order"] = in.ws.cyclotomic_order;
  r.inputs["module"] = in.name;
  return in;
}

// A subgroup of g; names defined on the algebra's group are pushed through the grading map.
Subgroup resolve_subgroup(const Workspace& ws, const std::string& name, const FinAbGroup& g, const QuotientMap& q) {
  auto it = ws.subgroups.find(name);
  if (it != ws.subgroups.end() && !(it->second.parent() == g) && it->second.parent() == q.source()) {
    return q.image(it->second);
  }
  try {
    return ws.subgroup(name, g);
  } catch (const ParseError& e) {
    throw ReferenceError(e.what());
  }
}

Character resolve_character(const Workspace& ws, const std::string& name, const FinAbGroup& g) {
  try {
    return ws.character(name.empty() ? "trivial" : name, g);
  } catch (const ParseError& e) {
    throw ReferenceError(e.what());
  }
}

json module_document(const Input& in, const std::string& name, const GradedModule& m, Report& r) {
  DocumentWriter out(in.ws.cyclotomic_order);
  out.add_algebra(in.algebra, m.algebra());
  out.add_module(name, m, in.algebra);
  if (out.order() != in.ws.cyclotomic_order) {
    r.diagnose("field_raised", "cyclotomic order raised from " + std::to_string(in.ws.cyclotomic_order) + " to " +
                                   std::to_string(out.order()));
    r.results["cyclotomic_order"] = out.order();
  }
  return out.finish();
}

// Quotient G -> G/H where V is graded by G/H; H taken from --subgroup or the grading of V.
QuotientMap quotient_for(const Input& in, const Options& o, Report& r) {
  const GradedModule& v = *in.module;
  const FinAbGroup& g = v.algebra().group();
  Subgroup h = o.subgroup.empty() ? v.grading().kernel() : resolve_subgroup(in.ws, o.subgroup, g, QuotientMap::identity(g));
  QuotientMap pi(g, h);
  if (!same_quotient(v.grading(), pi)) throw ReferenceError("module '" + in.name + "' is not graded by G/H");
  r.inputs["subgroup"] = o.subgroup.empty() ? "grading kernel" : o.subgroup;
  r.results["h"] = subgroup_json(h);
  return pi;
}

const GradedSubfield* pick_subfield(const Input& in, const Options& o, const SubfieldSearch& s, Report& r) {
  if (!s.split) r.diagnose("non_split", "centralizer components exceed one dimension; subfield list is heuristic");
  if (s.subfields.empty()) {
    r.diagnose("no_subfield", "no maximal graded subfield found");
    r.fail(Exit::indeterminate);
    return nullptr;
  }
  if (o.subgroup.empty()) return &s.subfields.front();
  const GradedModule& w = *in.module;
  Subgroup h = resolve_subgroup(in.ws, o.subgroup, w.grading_group(), w.grading());
  r.inputs["subgroup"] = o.subgroup;
  for (const auto& f : s.subfields) {
    if (f.support == h) return &f;
  }
  r.diagnose("counterexample", "no maximal graded subfield is supported on '" + o.subgroup + "'");
  r.fail(Exit::counterexample);
  return nullptr;
}

}  // namespace

int run_validate(const Options& o, Report& r) {
  Input in = load(o, r);
  ValidationReport a = validate(in.module->algebra());
  ValidationReport m = validate(*in.module);
  r.results["algebra_valid"] = a.ok();
  r.results["module_valid"] = m.ok();
  json v = json::array();
  for (const auto& s : a.violations) v.push_back("algebra: " + s);
  for (const auto& s : m.violations) v.push_back("module: " + s);
  r.results["violations"] = v;
  if (!a.ok() || !m.ok()) r.fail(Exit::counterexample);
  return r.exit;
}

int run_centralizer(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& w = *in.module;
  const int n = in.ws.cyclotomic_order;
  Centralizer c = graded_centralizer(w);
  r.results["dim"] = c.dim();
  r.results["support"] = elements_json(c.group, c.support());
  json comps = json::array();
  for (auto g : c.support()) {
    std::size_t k = 0;
    for (const auto& m : c.maps) k += m.degree == g;
    comps.push_back({{"degree", element_to_json(c.group, g)}, {"dim", k}});
  }
  r.results["components"] = comps;
  MatrixAlgebra alg = c.algebra();
  r.results["division"] = graded_division_check(alg.algebra).is_division();
  try {
    CommutationData cd = commutation_bicharacter(alg.algebra);
    json beta = json::array();
    auto gens = cd.presentation.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t k = i + 1; k < gens.size(); ++k) {
        beta.push_back({c.group.format(gens[i]), c.group.format(gens[k]),
                        scalar_to_string(Cyc::from_phase(cd(gens[i], gens[k])), n)});
      }
    r.results["commutation"] = beta;
    r.results["split"] = true;
  } catch (const FieldNotSplit&) {
    r.results["split"] = false;
    r.diagnose("non_split", "some centralizer component has dimension above one");
  }
  json maps = json::array();
  for (const auto& m : c.maps) maps.push_back({{"degree", element_to_json(c.group, m.degree)}, {"matrix", matrix_json(m.matrix, std::max(n, w.field_order()))}});
  r.certificates["basis"] = maps;
  return r.exit;
}

int run_simple(const Options& o, Report& r) {
  Input in = load(o, r);
  SimplicityResult s = o.ungraded ? is_simple_ungraded(*in.module) : is_graded_simple(*in.module);
  r.inputs["ungraded"] = o.ungraded;
  r.results["verdict"] = verdict_name(s.verdict);
  if (!s.reason.empty()) r.results["reason"] = s.reason;
  if (s.verdict == Verdict::no) {
    json wit = json::array();
    for (const auto& v : s.witness) {
      json col = json::array();
      for (const auto& x : v) col.push_back(scalar_to_string(x, std::max(in.ws.cyclotomic_order, in.module->field_order())));
      wit.push_back(col);
    }
    r.certificates["proper_submodule"] = wit;
    if (o.assert_result) r.fail(Exit::counterexample);
  } else if (s.verdict == Verdict::indeterminate) {
    r.diagnose("indeterminate", s.reason.empty() ? "simplicity could not be decided over this field" : s.reason);
    r.fail(Exit::indeterminate);
  }
  return r.exit;
}

int run_loop(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& v = *in.module;
  QuotientMap pi = quotient_for(in, o, r);
  LoopModule l = loop(v, pi);
  r.results["dim"] = l.module.dim();
  r.results["thin"] = verdict_name(is_thin_associated(v, pi));
  CentralizerLoopReport cl = centralizer_loop_identity(v, pi);
  r.results["centralizer_identity"] = cl.equal;
  r.results["self_centralized"] = cl.self_centralized;
  if (pi.kernel().order() == 1) {
    IsoResult iso = is_isomorphic_graded(l.module, v);
    r.results["isomorphic_to_input"] = outcome_name(iso.outcome);
    if (iso.map) r.certificates["isomorphism"] = matrix_json(*iso.map, std::max(in.ws.cyclotomic_order, v.field_order()));
    if (iso.outcome == IsoOutcome::not_isomorphic) r.fail(Exit::counterexample);
    if (iso.outcome == IsoOutcome::inconclusive) r.fail(Exit::indeterminate);
  }
  if (!cl.equal) r.fail(Exit::counterexample);
  r.results["document"] = module_document(in, "L", l.module, r);
  return r.exit;
}

int run_induce(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& v = *in.module;
  QuotientMap pi = quotient_for(in, o, r);
  auto tr = default_transversal(pi);
  InducedModule ind = induce(v, pi, tr);
  LoopModule l = loop(v, pi);
  Matrix f = phi(l, tr);
  Matrix s = psi(l, tr);
  bool inverse_pair = (f * s).is_identity() && (s * f).is_identity();
  r.results["dim"] = ind.module.dim();
  r.results["phi_psi_inverse"] = inverse_pair;
  json t = json::array();
  for (const auto& chi : tr) t.push_back(element_to_json(chi.group(), chi.exponents()));
  r.results["transversal"] = t;
  const int n = std::max(in.ws.cyclotomic_order, ind.raw.field_order());
  r.certificates["phi"] = matrix_json(f, n);
  r.certificates["psi"] = matrix_json(s, n);
  if (!inverse_pair) r.fail(Exit::counterexample);
  r.results["document"] = module_document(in, "I", ind.module, r);
  return r.exit;
}

int run_central_image(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& w = *in.module;
  SubfieldSearch s = maximal_graded_subfields(w);
  const GradedSubfield* f = pick_subfield(in, o, s, r);
  if (!f) return r.exit;
  Character chi = resolve_character(in.ws, o.character, w.grading_group());
  r.inputs["character"] = o.character.empty() ? "trivial" : o.character;
  CentralImage ci = central_image(w, *f, chi);
  CentralImageReport rep = verify_central_image(w, *f, ci);
  PairIsomorphism pair = pair_isomorphism(w, *f, ci);
  r.results["subfield_support"] = subgroup_json(f->support);
  r.results["dim"] = ci.module.dim();
  r.results["gamma_module_map"] = rep.gamma_module_map;
  r.results["gamma_twisted"] = rep.gamma_twisted;
  r.results["simple"] = verdict_name(rep.simple);
  r.results["graded_simple"] = verdict_name(rep.graded_simple);
  r.results["central"] = rep.central;
  r.results["loop_pair_isomorphic"] = pair.ok();
  const int n = std::max(in.ws.cyclotomic_order, ci.module.field_order());
  r.certificates["gamma"] = matrix_json(ci.gamma, n);
  r.certificates["pair_isomorphism"] = matrix_json(pair.map, n);
  if (rep.simple == Verdict::indeterminate || rep.graded_simple == Verdict::indeterminate) {
    r.diagnose("indeterminate", "simplicity of the central image could not be decided");
    r.fail(Exit::indeterminate);
  } else if (!rep.ok() || !pair.ok()) {
    r.fail(Exit::counterexample);
  }
  r.results["document"] = module_document(in, "V", ci.module, r);
  return r.exit;
}

int run_decompose(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& w = *in.module;
  SubfieldSearch s = maximal_graded_subfields(w);
  const GradedSubfield* f = pick_subfield(in, o, s, r);
  if (!f) return r.exit;
  Decomposition d = decompose(w, *f);
  r.results["h"] = subgroup_json(d.h);
  r.results["z"] = subgroup_json(d.z);
  r.results["multiplicities"] = d.multiplicities;
  json pieces = json::array();
  for (const auto& p : d.pieces) {
    pieces.push_back({{"restriction", element_to_json(p.restriction.group(), p.restriction.exponents())},
                      {"dim", p.module.dim()},
                      {"characters", p.members.size()}});
  }
  r.results["pieces"] = pieces;
  r.results["multiplicities_equal_index"] = d.multiplicities_ok;
  r.results["dimension_sum"] = d.dimension_ok;
  r.results["pieces_graded_simple"] = d.pieces_graded_simple;
  r.results["pieces_distinct"] = d.pieces_distinct;
  r.results["splitting_invertible"] = d.splitting_invertible;
  json idem = json::array();
  for (const auto& p : d.pieces) idem.push_back(matrix_json(p.idempotent, std::max(in.ws.cyclotomic_order, w.field_order())));
  r.certificates["idempotents"] = idem;
  if (!d.ok()) r.fail(Exit::counterexample);
  return r.exit;
}

int run_invariants(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& w = *in.module;
  SimplicityResult gs = is_graded_simple(w);
  r.results["graded_simple"] = verdict_name(gs.verdict);
  if (gs.verdict != Verdict::yes) {
    r.diagnose(gs.verdict == Verdict::no ? "not_graded_simple" : "indeterminate",
               "invariants are defined for graded simple modules");
    r.fail(gs.verdict == Verdict::no ? Exit::counterexample : Exit::indeterminate);
    return r.exit;
  }
  Centralizer c = graded_centralizer(w);
  r.results["centralizer_dim"] = c.dim();
  r.results["support"] = elements_json(c.group, c.support());
  try {
    DivisionAlgebraProfile p = profile(c.algebra().algebra);
    r.results["center"] = subgroup_json(p.center);
    r.results["center_order"] = p.center.order();
    r.results["maximal_isotropic_count"] = p.all_maximal_isotropic.size();
    r.results["order_identity"] = p.order_identity;
  } catch (const FieldNotSplit& e) {
    r.diagnose("field_not_split", e.what());
    r.fail(Exit::indeterminate);
  }
  SubfieldSearch s = maximal_graded_subfields(w);
  r.results["maximal_subfields"] = s.subfields.size();
  try {
    InertiaResult ir = inertia_group(w);
    r.results["inertia_order"] = ir.group.order();
    r.results["inertia"] = subgroup_json(ir.group);
    r.results["inertia_cross_checked"] = ir.cross_checked;
    BrauerReport b = brauer_invariant(w);
    r.results["schur_index"] = b.schur_index;
    r.results["brauer_invariant"] = json::parse(b.invariant().to_json());
    r.results["brauer_independent_of_idempotent"] = b.independent_of_idempotent;
    if (!b.ok() || !ir.cross_checked) r.fail(Exit::counterexample);
  } catch (const FieldNotSplit& e) {
    r.diagnose("field_not_split", e.what());
    r.fail(Exit::indeterminate);
  }
  if (!s.subfields.empty()) {
    // Ungraded structure through the central image for the trivial character.
    CentralImage ci = central_image(w, s.subfields.front(), Character::trivial(w.grading_group()));
    SimplicityResult us = is_simple_ungraded(ci.module);
    if (us.simple()) {
      std::size_t mult = intertwiners_ungraded(ci.module, w).size();
      r.results["ungraded"] = {{"simple_dim", ci.module.dim()},
                               {"multiplicity", mult},
                               {"isotypic", mult * ci.module.dim() == w.dim()}};
    } else {
      r.diagnose("ungraded", "central image is not certified simple; ungraded decomposition skipped");
    }
  }
  return r.exit;
}

int run_iso(const Options& o, Report& r) {
  Input in = load(o, r);
  if (o.modules.size() < 2) throw ReferenceError("iso needs two --module names");
  const GradedModule& b = in.ws.module(o.modules[1]);
  r.inputs["other"] = o.modules[1];
  r.inputs["ungraded"] = o.ungraded;
  if (!o.ungraded && !(b.grading_group() == in.module->grading_group()))
    throw ReferenceError("modules are graded by different groups");
  IsoResult iso = o.ungraded ? is_isomorphic_ungraded(*in.module, b) : is_isomorphic_graded(*in.module, b);
  r.results["outcome"] = outcome_name(iso.outcome);
  if (!iso.reason.empty()) r.results["reason"] = iso.reason;
  if (iso.map) r.certificates["isomorphism"] = matrix_json(*iso.map, std::max({in.ws.cyclotomic_order, in.module->field_order(), b.field_order()}));
  if (iso.outcome == IsoOutcome::inconclusive) {
    r.diagnose("indeterminate", iso.reason);
    r.fail(Exit::indeterminate);
  } else if (iso.outcome == IsoOutcome::not_isomorphic && o.assert_result) {
    r.fail(Exit::counterexample);
  }
  return r.exit;
}

int run_envelope(const Options& o, Report& r) {
  Input in = load(o, r);
  const GradedModule& v = *in.module;
  SimplicityResult s = is_simple_ungraded(v);
  r.results["input_simple"] = verdict_name(s.verdict);
  if (s.verdict != Verdict::yes) {
    r.diagnose(s.verdict == Verdict::no ? "not_simple" : "indeterminate", "the envelope needs a simple module");
    r.fail(s.verdict == Verdict::no ? Exit::counterexample : Exit::indeterminate);
    return r.exit;
  }
  EnvelopeResult e = graded_envelope(v);
  r.results["inertia_order"] = e.inertia.group.order();
  r.results["z"] = subgroup_json(e.z);
  r.results["dim"] = e.w.dim();
  r.results["graded_simple"] = e.graded_simple;
  r.results["contains_input"] = e.contains_v;
  r.results["inertia_matches"] = e.inertia_matches;
  r.results["grading_ok"] = e.grading.ok();
  r.results["split_ok"] = e.split.ok();
  r.certificates["embedding"] = matrix_json(e.embedding, std::max(in.ws.cyclotomic_order, e.w.field_order()));
  if (!e.ok()) r.fail(Exit::counterexample);
  r.results["document"] = module_document(in, "W", e.w, r);
  return r.exit;
}

std::vector<std::string> fixture_names() {
  return {"pauli", "m2rz2", "torus", "z4z4", "smash2", "smash3", "smash4"};
}

json fixture_document(const std::string& name) {
  if (name == "pauli") {
    DocumentWriter out(2);
    GradedModule w = fx::pauli_regular();
    out.add_algebra("R", w.algebra());
    out.add_module("W", w, "R");
    out.add_module("V", fx::pauli_natural(), "R");
    return out.finish();
  }
  if (name == "m2rz2") {
    DocumentWriter out(2);
    GradedModule w = fx::m2rz2_regular();
    out.add_algebra("R", w.algebra());
    out.add_module("W", w, "R");
    return out.finish();
  }
  if (name == "torus") {
    auto a = fx::group_algebra_z2();
    DocumentWriter out(2);
    out.add_algebra("A", *a);
    out.add_module("W", regular_module(a), "A");
    out.add_module("Vplus", fx::z2_sign_module(1), "A");
    out.add_module("Vminus", fx::z2_sign_module(-1), "A");
    return out.finish();
  }
  auto regular_doc = [](std::shared_ptr<const GradedAlgebra> a) {
    DocumentWriter out(static_cast<int>(a->group().exponent()));
    out.add_algebra("D", *a);
    out.add_module("W", regular_module(a), "D");
    return out.finish();
  };
  if (name == "z4z4") return regular_doc(fx::z4z4_algebra());
  if (name.rfind("smash", 0) == 0 && name.size() == 6 && name[5] >= '2' && name[5] <= '4') {
    return regular_doc(fx::smash_algebra(name[5] - '0'));
  }
  throw ReferenceError("unknown fixture '" + name + "'");
}

int run_generate(const Options& o, Report& r) {
  if (!o.fixture.empty()) {
    r.inputs["fixture"] = o.fixture;
    r.results["document"] = fixture_document(o.fixture);
    return r.exit;
  }
  r.inputs["seed"] = o.seed;
  r.inputs["instances"] = o.instances;
  r.inputs["max_order"] = o.max_order;
  CorpusLimits lim;
  lim.max_order = static_cast<std::size_t>(o.max_order);
  auto insts = corpus(o.seed, o.instances, lim);
  DocumentWriter out(1);
  json seeds = json::array();
  for (std::size_t i = 0; i < insts.size(); ++i) {
    std::string suffix = insts.size() == 1 ? "" : std::to_string(i);
    out.add_algebra("A" + suffix, insts[i].module.algebra());
    out.add_module("W" + suffix, insts[i].module, "A" + suffix);
    seeds.push_back(insts[i].seed);
  }
  r.results["instance_seeds"] = seeds;
  r.results["document"] = out.finish();
  return r.exit;
}

}  // namespace cli
