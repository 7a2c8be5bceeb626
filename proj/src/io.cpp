#include "loopmod/io.hpp"

#include <fstream>
#include <sstream>

namespace loopmod {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

long as_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<long>();
}

std::size_t as_index(const json& j, std::size_t bound, const std::string& where) {
  long v = as_long(j, where);
  if (v < 0 || static_cast<std::size_t>(v) >= bound) fail(where + ": index " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

FinAbGroup group_literal(const json& j, const std::string& where) {
  const json& f = field(j, "invariant_factors", where);
  if (!f.is_array()) fail(where + ": invariant_factors must be an array");
  std::vector<long> factors;
  for (const auto& x : f) {
    long d = as_long(x, where);
    if (d < 1) fail(where + ": invariant factors must be positive");
    factors.push_back(d);
  }
  if (factors.empty()) factors.push_back(1);
  return FinAbGroup(factors);
}

GroupElem element(const FinAbGroup& g, const json& j, const std::string& where) {
  std::vector<long> c;
  if (j.is_number_integer()) {
    c.push_back(j.get<long>());
  } else if (j.is_array()) {
    for (const auto& x : j) c.push_back(as_long(x, where));
  } else {
    fail(where + ": group element must be an integer tuple");
  }
  if (c.size() != g.rank()) fail(where + ": element has " + std::to_string(c.size()) + " coordinates, group rank " + std::to_string(g.rank()));
  return g.from_coords(c);
}

Cyc scalar(const json& j, int n, const std::string& where) {
  if (j.is_number_integer()) return Cyc(j.get<long>()).lifted(n);
  if (!j.is_string()) fail(where + ": scalar must be a string or integer");
  try {
    return Cyc::parse(j.get<std::string>(), n);
  } catch (const ParseError& e) {
    fail(where + ": " + e.what());
  }
}

}  // namespace

std::string scalar_to_string(const Cyc& c, int n) {
  if (c.is_zero()) return "0";
  return (n % c.order() == 0 ? c.lifted(n) : c).to_string();
}

json group_to_json(const FinAbGroup& g) { return json{{"invariant_factors", g.factors()}}; }

json element_to_json(const FinAbGroup& g, GroupElem x) { return json(g.coords(x)); }

const GradedModule& Workspace::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) fail("unknown module '" + name + "'");
  return it->second;
}

Subgroup Workspace::subgroup(const std::string& name, const FinAbGroup& group) const {
  auto it = subgroups.find(name);
  if (it == subgroups.end()) {
    if (name == "trivial") return Subgroup::trivial(group);
    if (name == "whole") return Subgroup::whole(group);
    fail("unknown subgroup '" + name + "'");
  }
  if (!(it->second.parent() == group)) fail("subgroup '" + name + "' lives in " + it->second.parent().describe());
  return it->second;
}

Character Workspace::character(const std::string& name, const FinAbGroup& group) const {
  auto it = characters.find(name);
  if (it == characters.end()) {
    if (name == "trivial") return Character::trivial(group);
    fail("unknown character '" + name + "'");
  }
  if (!(it->second.group() == group)) fail("character '" + name + "' lives on " + it->second.group().describe());
  return it->second;
}

Workspace parse_workspace(const json& doc) {
  Workspace ws;
  if (!doc.is_object()) fail("document must be a JSON object");
  long n = as_long(field(doc, "cyclotomic_order", "document"), "cyclotomic_order");
  if (n < 1) fail("cyclotomic_order must be positive");
  ws.cyclotomic_order = static_cast<int>(n);
  auto check_exponent = [&](const FinAbGroup& g, const std::string& where) {
    if (ws.cyclotomic_order % g.exponent() != 0) {
      fail(where + ": cyclotomic_order " + std::to_string(n) + " is not a multiple of the group exponent " +
           std::to_string(g.exponent()));
    }
  };
  auto group_ref = [&](const json& j, const std::string& where) -> FinAbGroup {
    if (j.is_string()) {
      auto it = ws.groups.find(j.get<std::string>());
      if (it == ws.groups.end()) fail(where + ": unknown group '" + j.get<std::string>() + "'");
      return it->second;
    }
    FinAbGroup g = group_literal(j, where);
    check_exponent(g, where);
    return g;
  };

  if (doc.contains("groups")) {
    for (const auto& [name, g] : doc.at("groups").items()) {
      ws.groups[name] = group_literal(g, "group " + name);
      check_exponent(ws.groups[name], "group " + name);
    }
  }
  if (doc.contains("subgroups")) {
    for (const auto& [name, s] : doc.at("subgroups").items()) {
      std::string where = "subgroup " + name;
      FinAbGroup g = group_ref(field(s, "group", where), where);
      std::vector<GroupElem> gens;
      for (const auto& x : field(s, "generators", where)) gens.push_back(element(g, x, where));
      ws.subgroups[name] = Subgroup::generated(g, gens);
    }
  }
  if (doc.contains("characters")) {
    for (const auto& [name, c] : doc.at("characters").items()) {
      std::string where = "character " + name;
      FinAbGroup g = group_ref(field(c, "group", where), where);
      ws.characters[name] = Character(g, element(g, field(c, "exponents", where), where));
    }
  }
  if (doc.contains("algebras")) {
    for (const auto& [name, a] : doc.at("algebras").items()) {
      std::string where = "algebra " + name;
      FinAbGroup g = group_ref(field(a, "group", where), where);
      std::size_t dim = static_cast<std::size_t>(as_long(field(a, "dim", where), where));
      const json& degs = field(a, "degrees", where);
      if (!degs.is_array() || degs.size() != dim) fail(where + ": need one degree per basis element");
      std::vector<GroupElem> degrees;
      for (const auto& d : degs) degrees.push_back(element(g, d, where));
      const json& u = field(a, "unit", where);
      if (!u.is_array() || u.size() != dim) fail(where + ": unit must list dim scalars");
      Vec unit;
      for (const auto& x : u) unit.push_back(scalar(x, ws.cyclotomic_order, where));
      std::vector<std::string> labels;
      if (a.contains("labels")) labels = a.at("labels").get<std::vector<std::string>>();
      GradedAlgebra alg(g, degrees, labels, unit);
      std::vector<std::vector<Term>> prods(dim * dim);
      for (const auto& t : field(a, "structure", where)) {
        if (!t.is_array() || t.size() != 4) fail(where + ": structure entries are [i, j, k, scalar]");
        std::size_t i = as_index(t[0], dim, where);
        std::size_t j = as_index(t[1], dim, where);
        std::size_t k = as_index(t[2], dim, where);
        Cyc c = scalar(t[3], ws.cyclotomic_order, where);
        if (!c.is_zero()) prods[i * dim + j].push_back({k, c});
      }
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          auto& terms = prods[i * dim + j];
          std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
          for (std::size_t p = 1; p < terms.size(); ++p) {
            if (terms[p].index == terms[p - 1].index) fail(where + ": repeated structure entry");
          }
          alg.set_product(i, j, std::move(terms));
        }
      ws.algebras[name] = std::make_shared<const GradedAlgebra>(std::move(alg));
    }
  }
  if (doc.contains("modules")) {
    for (const auto& [name, m] : doc.at("modules").items()) {
      std::string where = "module " + name;
      const json& ref = field(m, "algebra_ref", where);
      if (!ref.is_string() || !ws.algebras.count(ref.get<std::string>())) fail(where + ": unknown algebra_ref");
      auto alg = ws.algebras.at(ref.get<std::string>());
      const FinAbGroup& g = alg->group();
      std::string grading = m.contains("grading_group") ? m.at("grading_group").get<std::string>() : "G";
      QuotientMap q;
      if (grading == "G") {
        q = QuotientMap::identity(g);
      } else if (grading.rfind("G/", 0) == 0) {
        q = QuotientMap(g, ws.subgroup(grading.substr(2), g));
      } else {
        fail(where + ": grading_group must be \"G\" or \"G/H\"");
      }
      std::size_t dim = static_cast<std::size_t>(as_long(field(m, "dim", where), where));
      const json& degs = field(m, "degrees", where);
      if (!degs.is_array() || degs.size() != dim) fail(where + ": need one degree per basis vector");
      std::vector<GroupElem> degrees;
      for (const auto& d : degs) degrees.push_back(q.apply(element(g, d, where)));
      std::vector<Matrix> act(alg->dim(), Matrix(dim, dim));
      for (const auto& t : field(m, "action", where)) {
        if (!t.is_array() || t.size() != 4) fail(where + ": action entries are [b, i, j, scalar]");
        std::size_t b = as_index(t[0], alg->dim(), where);
        std::size_t i = as_index(t[1], dim, where);
        std::size_t j = as_index(t[2], dim, where);
        act[b](i, j) = scalar(t[3], ws.cyclotomic_order, where);
      }
      GradedModule mod(alg, q, degrees, act);
      mod.raise_field_order(ws.cyclotomic_order);
      ws.modules.emplace(name, std::move(mod));
      ws.module_algebra[name] = ref.get<std::string>();
    }
  }
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
  try {
    return parse_workspace(doc);
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
}

void DocumentWriter::raise_order(int n) { order_ = static_cast<int>(std::lcm(static_cast<long>(order_), static_cast<long>(n))); }

void DocumentWriter::add_algebra(const std::string& name, const GradedAlgebra& a) {
  raise_order(a.field_order());
  raise_order(static_cast<int>(a.group().exponent()));
  algebras_.emplace_back(name, a);
}

void DocumentWriter::add_module(const std::string& name, const GradedModule& m, const std::string& algebra_name) {
  raise_order(m.field_order());
  modules_.emplace_back(name, m, algebra_name);
}

void DocumentWriter::add_subgroup(const std::string& name, const Subgroup& s) { subgroups_.emplace_back(name, s); }

void DocumentWriter::add_character(const std::string& name, const Character& c) {
  raise_order(static_cast<int>(c.group().exponent()));
  characters_.emplace_back(name, c);
}

json DocumentWriter::finish() const {
  const int n = order_;
  json doc;
  doc["cyclotomic_order"] = n;
  json subs = json::object();
  auto put_subgroup = [&](const std::string& name, const Subgroup& s) {
    json gens = json::array();
    SubgroupPresentation pres(s);
    for (auto x : pres.generators()) gens.push_back(element_to_json(s.parent(), x));
    subs[name] = {{"group", group_to_json(s.parent())}, {"generators", gens}};
  };
  for (const auto& [name, s] : subgroups_) put_subgroup(name, s);
  json chars = json::object();
  for (const auto& [name, c] : characters_) {
    chars[name] = {{"group", group_to_json(c.group())}, {"exponents", element_to_json(c.group(), c.exponents())}};
  }
  json algs = json::object();
  for (const auto& [name, a] : algebras_) {
    json degs = json::array();
    for (auto d : a.degrees()) degs.push_back(element_to_json(a.group(), d));
    json unit = json::array();
    for (const auto& x : a.unit()) unit.push_back(scalar_to_string(x, n));
    json st = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (const auto& t : a.product(i, j)) st.push_back({i, j, t.index, scalar_to_string(t.coeff, n)});
    algs[name] = {{"group", group_to_json(a.group())}, {"dim", a.dim()}, {"degrees", degs}, {"unit", unit},
                  {"structure", st}};
    if (!a.labels().empty()) algs[name]["labels"] = a.labels();
  }
  json mods = json::object();
  for (const auto& [name, m, alg] : modules_) {
    const QuotientMap& q = m.grading();
    std::string grading = "G";
    if (!q.is_identity()) {
      grading = "G/" + name + "_kernel";
      put_subgroup(name + "_kernel", q.kernel());
    }
    json degs = json::array();
    for (auto d : m.degrees()) degs.push_back(element_to_json(q.source(), q.section(d)));
    json act = json::array();
    for (std::size_t b = 0; b < m.algebra().dim(); ++b)
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) {
          if (!m.action(b)(i, j).is_zero()) act.push_back({b, i, j, scalar_to_string(m.action(b)(i, j), n)});
        }
    mods[name] = {{"algebra_ref", alg}, {"dim", m.dim()}, {"grading_group", grading}, {"degrees", degs}, {"action", act}};
  }
  if (!subs.empty()) doc["subgroups"] = subs;
  if (!chars.empty()) doc["characters"] = chars;
  doc["algebras"] = algs;
  doc["modules"] = mods;
  return doc;
}

}  // namespace loopmod
