// Report object shared by all commands, plus JSON encoders for certificates.
#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "loopmod/io.hpp"

namespace cli {

enum Exit : int { ok = 0, counterexample = 2, indeterminate = 3, reference = 4 };

// Parse or reference problems found while interpreting command inputs.
struct ReferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json certificates = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::array();
  int exit = Exit::ok;

  void diagnose(const std::string& kind, const std::string& message);
  void fail(int code);  // keeps the most severe code
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct Options {
  std::string document;
  std::vector<std::string> modules;
  std::string subgroup;
  std::string character;
  std::string fixture;
  std::uint64_t seed = 1;
  std::size_t instances = 1;
  long max_order = 8;
  bool ungraded = false;
  bool assert_result = false;
  int threads = 0;
};

nlohmann::json matrix_json(const loopmod::Matrix& m, int n);
nlohmann::json elements_json(const loopmod::FinAbGroup& g, const std::vector<loopmod::GroupElem>& xs);
nlohmann::json subgroup_json(const loopmod::Subgroup& s);
std::string verdict_name(loopmod::Verdict v);
std::string outcome_name(loopmod::IsoOutcome o);

int run_validate(const Options& o, Report& r);
int run_centralizer(const Options& o, Report& r);
int run_simple(const Options& o, Report& r);
int run_loop(const Options& o, Report& r);
int run_induce(const Options& o, Report& r);
int run_central_image(const Options& o, Report& r);
int run_decompose(const Options& o, Report& r);
int run_invariants(const Options& o, Report& r);
int run_iso(const Options& o, Report& r);
int run_envelope(const Options& o, Report& r);
int run_generate(const Options& o, Report& r);
int run_selftest(const Options& o, Report& r);

// Fixture documents by name; throws ReferenceError for unknown names.
nlohmann::json fixture_document(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace cli
