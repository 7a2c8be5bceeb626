#include <doctest.h>

#include "loopmod/corpus.hpp"
#include "loopmod/fixtures.hpp"
#include "loopmod/io.hpp"

using namespace loopmod;
namespace fx = loopmod::fixtures;
using nlohmann::json;

namespace {

bool same_algebra(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (!(a.group() == b.group()) || a.dim() != b.dim() || a.degrees() != b.degrees() || a.unit() != b.unit())
    return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const auto& x = a.product(i, j);
      const auto& y = b.product(i, j);
      if (x.size() != y.size()) return false;
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].index != y[k].index || !(x[k].coeff == y[k].coeff)) return false;
      }
    }
  return true;
}

bool same_module(const GradedModule& a, const GradedModule& b) {
  if (a.dim() != b.dim() || !(a.grading().kernel() == b.grading().kernel())) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!(a.grading().section(a.degree(i)) == b.grading().section(b.degree(i)))) return false;
  }
  for (std::size_t x = 0; x < a.algebra().dim(); ++x) {
    if (!(a.action(x) == b.action(x))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Pauli document survives a write and read") {
  GradedModule w = fx::pauli_regular();
  DocumentWriter out(2);
  out.add_algebra("R", w.algebra());
  out.add_module("W", w, "R");
  Subgroup h = Subgroup::generated(w.grading_group(), {w.grading_group().generator(0)});
  out.add_module("Wbar", coarsen(w, QuotientMap(w.grading_group(), h)), "R");
  out.add_character("chi", Character(w.grading_group(), w.grading_group().generator(1)));
  json doc = out.finish();

  Workspace ws = parse_workspace(json::parse(doc.dump()));
  CHECK(ws.cyclotomic_order == 2);
  CHECK(same_algebra(*ws.algebras.at("R"), w.algebra()));
  CHECK(same_module(ws.module("W"), w));
  CHECK(ws.module("Wbar").grading().kernel().order() == 2);
  CHECK(validate(ws.module("Wbar")).ok());
  CHECK(ws.character("chi", w.grading_group()).exponents() == w.grading_group().generator(1));

  DocumentWriter again(ws.cyclotomic_order);
  again.add_algebra("R", *ws.algebras.at("R"));
  again.add_module("W", ws.module("W"), "R");
  again.add_module("Wbar", ws.module("Wbar"), "R");
  again.add_character("chi", ws.character("chi", w.grading_group()));
  CHECK(again.finish() == doc);
}

TEST_CASE("Corpus modules round-trip through documents") {
  for (const auto& inst : corpus(7, 12, CorpusLimits{})) {
    const GradedModule& w = inst.module;
    DocumentWriter out(w.field_order());
    out.add_algebra("A", w.algebra());
    out.add_module("W", w, "A");
    json doc = out.finish();
    Workspace ws = parse_workspace(json::parse(doc.dump()));
    CHECK(same_algebra(*ws.algebras.at("A"), w.algebra()));
    CHECK(same_module(ws.module("W"), w));
  }
}

TEST_CASE("Built-in subgroup and character names") {
  Workspace ws = parse_workspace(json::parse(R"({"cyclotomic_order": 2})"));
  FinAbGroup g({2, 2});
  CHECK(ws.subgroup("trivial", g).order() == 1);
  CHECK(ws.subgroup("whole", g).order() == 4);
  CHECK(ws.character("trivial", g) == Character::trivial(g));
  CHECK_THROWS_AS(ws.subgroup("H", g), ParseError);
  CHECK_THROWS_AS(ws.module("W"), ParseError);
}

TEST_CASE("Malformed documents raise parse errors") {
  const char* base = R"({
    "cyclotomic_order": 2,
    "groups": {"G": {"invariant_factors": [2]}},
    "algebras": {"A": {"group": "G", "dim": 2, "degrees": [[0], [1]], "unit": ["1", "0"],
                       "structure": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]]}},
    "modules": {"V": {"algebra_ref": "A", "dim": 1, "grading_group": "G/whole", "degrees": [[0]],
                      "action": [[0,0,0,"1"],[1,0,0,"-1"]]}}
  })";
  json ok = json::parse(base);
  Workspace ws = parse_workspace(ok);
  CHECK(validate(ws.module("V")).ok());

  auto broken = [&](auto edit) {
    json d = ok;
    edit(d);
    return d;
  };
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["cyclotomic_order"] = 3; })), ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["algebras"]["A"].erase("unit"); })), ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["algebras"]["A"]["structure"][0][3] = "1+"; })),
                  ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["algebras"]["A"]["structure"][0][2] = 5; })), ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["modules"]["V"]["algebra_ref"] = "B"; })), ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["modules"]["V"]["grading_group"] = "G/K"; })), ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["modules"]["V"]["degrees"] = json::array({{0, 1}}); })),
                  ParseError);
  CHECK_THROWS_AS(parse_workspace(broken([](json& d) { d["algebras"]["A"]["group"] = "H"; })), ParseError);
}
