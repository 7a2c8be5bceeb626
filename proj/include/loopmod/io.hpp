// JSON workspace documents: groups, subgroups, characters, algebras and modules with sparse tensors.
#pragma once

#include <json.hpp>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "loopmod/gmod.hpp"

namespace loopmod {

struct Workspace {
  int cyclotomic_order = 1;
  std::map<std::string, FinAbGroup> groups;
  std::map<std::string, Subgroup> subgroups;
  std::map<std::string, Character> characters;
  std::map<std::string, std::shared_ptr<const GradedAlgebra>> algebras;
  std::map<std::string, GradedModule> modules;
  std::map<std::string, std::string> module_algebra;  // module name -> algebra name

  const GradedModule& module(const std::string& name) const;
  // "trivial" and "whole" resolve to the obvious subgroups unless the document defines them.
  Subgroup subgroup(const std::string& name, const FinAbGroup& group) const;
  // "trivial" resolves to the trivial character unless the document defines it.
  Character character(const std::string& name, const FinAbGroup& group) const;
};

// Throws ParseError on malformed input or unresolved references.
Workspace parse_workspace(const nlohmann::json& doc);
Workspace load_workspace(const std::string& path);

nlohmann::json group_to_json(const FinAbGroup& g);
nlohmann::json element_to_json(const FinAbGroup& g, GroupElem x);
std::string scalar_to_string(const Cyc& c, int n);

// Builds a self-contained document; quotient gradings get generated subgroup entries.
class DocumentWriter {
 public:
  explicit DocumentWriter(int cyclotomic_order) : order_(cyclotomic_order) {}
  void raise_order(int n);
  int order() const { return order_; }
  void add_algebra(const std::string& name, const GradedAlgebra& a);
  void add_module(const std::string& name, const GradedModule& m, const std::string& algebra_name);
  void add_subgroup(const std::string& name, const Subgroup& s);
  void add_character(const std::string& name, const Character& c);
  nlohmann::json finish() const;

 private:
  int order_;
  std::vector<std::pair<std::string, GradedAlgebra>> algebras_;
  std::vector<std::tuple<std::string, GradedModule, std::string>> modules_;
  std::vector<std::pair<std::string, Subgroup>> subgroups_;
  std::vector<std::pair<std::string, Character>> characters_;
};

}  // namespace loopmod
