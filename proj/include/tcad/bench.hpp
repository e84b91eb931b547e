#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tcad/cad.hpp"
#include "tcad/ccd.hpp"
#include "tcad/serialize.hpp"
#include "tcad/system_file.hpp"

namespace tcad {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex_digest(std::string_view s) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(s);
  return os.str();
}

struct RunReport {
  std::string system;
  std::string mode;  // "plain" or "eqs"
  std::string input_digest;
  std::size_t nvars = 0;
  std::size_t npolys = 0;
  std::size_t paths = 0;
  std::size_t cells = 0;  // plain mode only
  double ccd_ms = 0;
  double cad_ms = 0;
  std::string output_digest;
};

namespace detail {

template <class F>
double best_ms(int repeat, F&& run) {
  double best = 0;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    run();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = i == 0 ? ms : std::min(best, ms);
  }
  return best;
}

}  // namespace detail

/// Plain mode always; eqs mode too when the system has constraints.
inline std::vector<RunReport> bench_system(const std::string& name, const InputSystem& sys, int repeat) {
  std::vector<RunReport> out;
  const std::string digest = hex_digest(print_system(sys));
  {
    RunReport r{name, "plain", digest, sys.order.size(), sys.items.size()};
    const InputSystem plain = plain_part(sys);
    CylindricalTree tree(sys.order);
    r.ccd_ms = detail::best_ms(repeat, [&] { tree = cylindrical_decompose(plain); });
    std::vector<Polynomial> polys;
    for (const auto& it : plain.items) polys.push_back(it.poly);
    Cad cad;
    r.cad_ms = detail::best_ms(repeat, [&] { cad = make_semi_algebraic(tree, polys); });
    r.paths = tree.paths().size();
    r.cells = cad.cells().size();
    r.output_digest = hex_digest(render_tree_text(tree) + render_cad_text(cad));
    out.push_back(r);
  }
  if (has_constraints(sys)) {
    RunReport r{name, "eqs", digest, sys.order.size(), sys.items.size()};
    CylindricalTree tree(sys.order);
    r.ccd_ms = detail::best_ms(repeat, [&] { tree = solve_system(sys); });
    r.paths = tree.paths().size();
    r.output_digest = hex_digest(render_tree_text(tree));
    out.push_back(r);
  }
  return out;
}

/// Every *.sys file under dir, in name order.
inline std::vector<RunReport> bench_directory(const std::filesystem::path& dir, int repeat) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".sys") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RunReport> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    for (auto& r : bench_system(f.stem().string(), parse_system(ss.str()), repeat)) out.push_back(std::move(r));
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<RunReport>& rows) {
  os << "system,mode,vars,polys,paths,cells,ccd_ms,cad_ms,input_digest,output_digest\n";
  for (const auto& r : rows) {
    os << r.system << ',' << r.mode << ',' << r.nvars << ',' << r.npolys << ',' << r.paths << ',';
    if (r.mode == "plain") os << r.cells;
    os << ',' << std::fixed << std::setprecision(3) << r.ccd_ms << ',';
    if (r.mode == "plain") os << r.cad_ms;
    os << ',' << r.input_digest << ',' << r.output_digest << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

}  // namespace tcad
