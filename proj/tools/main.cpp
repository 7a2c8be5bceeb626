#include <CLI11.hpp>
#include <functional>
#include <iostream>

#include "report.hpp"

namespace {

struct Command {
  const char* name;
  const char* help;
  int (*run)(const cli::Options&, cli::Report&);
  bool takes_document;
};

const Command kCommands[] = {
    {"validate", "check algebra and module axioms", cli::run_validate, true},
    {"centralizer", "graded centralizer with its support and commutation data", cli::run_centralizer, true},
    {"simple", "graded (or with --ungraded, ungraded) simplicity", cli::run_simple, true},
    {"loop", "loop module along G -> G/H", cli::run_loop, true},
    {"induce", "induced module along G -> G/H with the phi/psi certificates", cli::run_induce, true},
    {"central-image", "central image for a maximal graded subfield and a character", cli::run_central_image, true},
    {"decompose", "isotypic decomposition through a maximal graded subfield", cli::run_decompose, true},
    {"invariants", "support, center, inertia group, Brauer invariant and Schur index", cli::run_invariants, true},
    {"iso", "isomorphism test between two modules", cli::run_iso, true},
    {"envelope", "graded simple module containing an ungraded simple module", cli::run_envelope, true},
    {"generate", "random instance document, or a fixture with --fixture", cli::run_generate, false},
    {"selftest", "property suite over a seeded random corpus", cli::run_selftest, false},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop modules, central images and graded invariants over cyclotomic fields"};
  app.require_subcommand(1);
  cli::Options opt;
  bool as_json = false;
  const Command* chosen = nullptr;

  for (const auto& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    if (c.takes_document) sub->add_option("document", opt.document, "workspace document (JSON)")->required();
    sub->add_flag("--json", as_json, "print the full report as JSON");
    sub->add_option("--module", opt.modules, "module name; iso takes two")->take_all();
    sub->add_option("--subgroup", opt.subgroup, "subgroup name, or trivial / whole");
    sub->add_option("--character", opt.character, "character name, or trivial");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--instances", opt.instances, "number of random instances");
    sub->add_option("--max-order", opt.max_order, "largest group order for random instances");
    sub->add_flag("--assert", opt.assert_result, "exit 2 when the computed property is false");
    if (std::string(c.name) == "simple" || std::string(c.name) == "iso") {
      sub->add_flag("--ungraded", opt.ungraded, "ignore the grading");
    }
    if (std::string(c.name) == "generate") {
      sub->add_option("--fixture", opt.fixture, "pauli, m2rz2, torus, z4z4, smash2, smash3 or smash4");
    }
    if (std::string(c.name) == "selftest") sub->add_option("--threads", opt.threads, "worker threads (0: all cores)");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::Exit::reference;
  }

  cli::Report report;
  report.command = chosen->name;
  try {
    chosen->run(opt, report);
  } catch (const cli::ReferenceError& e) {
    report.diagnose("reference_error", e.what());
    report.fail(cli::Exit::reference);
  } catch (const loopmod::ParseError& e) {
    report.diagnose("parse_error", e.what());
    report.fail(cli::Exit::reference);
  } catch (const loopmod::FieldNotSplit& e) {
    report.diagnose("field_not_split", e.what());
    report.fail(cli::Exit::indeterminate);
  }

  if (as_json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else if (report.command == "generate" && report.results.contains("document")) {
    std::cout << report.results["document"].dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.exit;
}
