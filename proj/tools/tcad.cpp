// Command-line front end: ccd, cad, check, bench.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcad/bench.hpp"
#include "tcad/cad.hpp"
#include "tcad/ccd.hpp"
#include "tcad/checks.hpp"
#include "tcad/serialize.hpp"
#include "tcad/system_file.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kCheckFailed = 2, kInternal = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tcad::InputSystem load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tcad::parse_system(ss.str());
}

std::string history_text(const tcad::CylindricalTree& t) {
  std::ostringstream os;
  os << "history:\n";
  for (tcad::NodeKey k : t.past_nodes()) {
    const tcad::Node& n = t.node(k);
    if (n.level == 0) continue;
    os << "  #" << k << ' ' << tcad::constraint_text(n.constraint, t.order(), n.level) << " ->";
    for (tcad::NodeKey r : n.replacing) os << " #" << r;
    os << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cylindrical decompositions of complex and real space"};
  app.require_subcommand(1);

  std::string file;
  bool eqs = false;
  bool json = false;
  bool text = false;
  bool history = false;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::string dir;
  int repeat = 1;

  auto* ccd = app.add_subcommand("ccd", "complex cylindrical tree");
  ccd->add_option("file", file, "system file")->required();
  ccd->add_flag("--eqs", eqs, "partial tree of the solution set");
  auto* cj = ccd->add_flag("--json", json);
  ccd->add_flag("--text", text)->excludes(cj);
  ccd->add_flag("--history", history, "include replaced nodes");

  auto* cad = app.add_subcommand("cad", "real cylindrical algebraic decomposition");
  cad->add_option("file", file, "system file")->required();
  cad->add_flag("--eqs", eqs, "cells of the solution set only");
  auto* dj = cad->add_flag("--json", json);
  cad->add_flag("--text", text)->excludes(dj);

  auto* check = app.add_subcommand("check", "sampling property suites");
  check->add_option("file", file, "system file")->required();
  check->add_option("--samples", samples)->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "overridden by CCD_SEED");

  auto* bench = app.add_subcommand("bench", "time every .sys file in a directory, CSV on stdout");
  bench->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  bench->add_option("--repeat", repeat)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ccd) {
      const tcad::InputSystem sys = load(file);
      const tcad::CylindricalTree tree =
          eqs ? tcad::solve_system(sys) : tcad::cylindrical_decompose(tcad::plain_part(sys));
      if (json) {
        std::cout << tcad::tree_to_json(tree, eqs ? "eqs" : "plain", history).dump(2) << '\n';
      } else {
        std::cout << tcad::render_tree_text(tree);
        if (history) std::cout << history_text(tree);
      }
    } else if (*cad) {
      const tcad::InputSystem sys = load(file);
      const tcad::Cad result =
          eqs ? tcad::make_semi_algebraic(tcad::solve_system(sys), sys, true)
              : tcad::make_semi_algebraic(tcad::cylindrical_decompose(tcad::plain_part(sys)),
                                          tcad::plain_part(sys));
      if (json) {
        std::cout << tcad::cad_to_json(result).dump(2) << '\n';
      } else {
        std::cout << tcad::render_cad_text(result);
      }
    } else if (*check) {
      if (const char* env = std::getenv("CCD_SEED")) seed = std::stoull(env);
      const tcad::InputSystem sys = load(file);
      const tcad::CheckReport rep = tcad::run_checks(sys, samples, seed);
      for (const auto& r : rep.results) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " trials=" << r.trials
                  << " failures=" << r.failures;
        if (r.skipped) std::cout << " skipped=" << r.skipped;
        if (!r.first_failure.empty()) std::cout << " first: " << r.first_failure;
        std::cout << '\n';
      }
      return rep.passed() ? kOk : kCheckFailed;
    } else if (*bench) {
      tcad::write_csv(std::cout, tcad::bench_directory(dir, repeat));
    }
  } catch (const tcad::ParseError& e) {
    std::cerr << (file.empty() ? dir : file) << ": " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const tcad::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
