// Command-line front end: load -> verify -> compute -> report.
//
// Exit codes: 0 success, 1 computation or verification failure, 2 usage or
// parse failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "okapain/cartan.hpp"
#include "okapain/cech.hpp"
#include "okapain/delta_io.hpp"
#include "okapain/errors.hpp"
#include "okapain/sheaf.hpp"

namespace {

using namespace okapain;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ParseError(0, 0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  out << text;
}

cech::SolverOptions solver_options() {
  cech::SolverOptions opts;
  if (const char* cap = std::getenv("OKAPAIN_SOLVER_CAP")) {
    int value = std::atoi(cap);
    if (value > 0) opts.degree_cap = value;
  }
  return opts;
}

// Load plus the full verification battery; appends one line per report.
atlas::Atlas load_verified(const std::string& path, int twist, std::ostream& log, bool* all_ok) {
  atlas::Atlas a = atlas::load_atlas(read_file(path));
  atlas::Report transitions = atlas::verify_transitions(a);
  atlas::Report okamoto = atlas::okamoto_painleve_check(a);
  log << transitions.render();
  log << okamoto.render();
  bool ok = transitions.ok() && okamoto.ok();

  atlas::Atlas inst = a.has_formal_twist() ? atlas::instantiate_twist(a, twist) : a;
  for (const auto& comp : inst.components) {
    atlas::Report theta = sheaf::cocycle_check_theta(inst, comp.id, twist);
    log << theta.render();
    ok &= theta.ok();
    try {
      cech::Cochain1Along eta = cech::eta_cochain(inst, comp.id, twist);
      bool nonzero = !eta.is_zero();
      log << "eta-cochain " << comp.id << ": " << (nonzero ? "pass" : "FAIL (zero cochain)")
          << "\n";
      ok &= nonzero;
    } catch (const EngineError& e) {
      log << "eta-cochain " << comp.id << ": FAIL (" << e.what() << ")\n";
      ok = false;
    }
  }
  *all_ok = ok;
  return a;
}

int cmd_verify_atlas(const std::string& path, int twist, const std::string& output) {
  std::ostringstream log;
  bool ok = false;
  load_verified(path, twist, log, &ok);
  log << (ok ? "atlas verified\n" : "atlas verification FAILED\n");
  write_output(log.str(), output);
  return ok ? kExitOk : kExitFailure;
}

int cmd_compute_delta(const std::string& path, int twist, const std::string& output,
                      const std::string& format, bool kernel_only) {
  std::ostringstream log;
  bool ok = false;
  atlas::Atlas a = load_verified(path, twist, log, &ok);
  if (!ok) {
    std::cerr << log.str();
    std::cerr << "atlas verification failed; not computing\n";
    return kExitFailure;
  }
  cech::DeltaMatrix m = cech::assemble_delta(a, twist, solver_options());
  cech::KernelReport k = cech::kernel_report(m);
  std::string doc;
  if (kernel_only) {
    std::ostringstream out;
    if (format == "structured") {
      out << "kernel-report\natlas " << m.atlas_name << "\ntype " << m.type_label << "\ntwist "
          << m.twist << "\nsize " << m.size() << "\n";
      out << "rank " << k.rank << "\nkernel-dimension " << k.kernel_dimension << "\ndet "
          << k.determinant.render() << "\nkernel-basis:\n";
      if (k.kernel_basis.empty()) out << "  (trivial)\n";
      for (const auto& vec : k.kernel_basis) {
        out << " ";
        for (const auto& v : vec) out << " " << v.render();
        out << "\n";
      }
    } else {
      out << "kernel report for " << m.atlas_name << " (twist " << m.twist << ")\n";
      out << "rank " << k.rank << ", kernel dimension " << k.kernel_dimension
          << ", det = " << k.determinant.render() << "\n";
      for (const auto& vec : k.kernel_basis) {
        out << "  kernel vector:";
        for (const auto& v : vec) out << " " << v.render();
        out << "\n";
      }
    }
    doc = out.str();
  } else {
    doc = format == "structured" ? io::render_structured(m, &k) : io::render_text(m, &k);
  }
  write_output(doc, output);
  return kExitOk;
}

int cmd_vanishing_scan(const std::string& path, int n_max, const std::string& output,
                       const std::string& format) {
  atlas::Atlas a = atlas::load_atlas(read_file(path));
  cech::VanishingReport rep = cech::vanishing_scan(a, n_max, solver_options());
  write_output(format == "structured" ? io::render_structured(rep) : io::render_text(rep),
               output);
  if (!rep.all_match()) {
    for (const auto& row : rep.rows)
      if (!row.matches_closed_form) {
        std::cerr << "determinant mismatch at n = " << row.twist << "\n";
        break;
      }
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_cartan(const std::string& label, const std::string& output, const std::string& format) {
  cartan::AffineType type = cartan::parse_label(label);
  const cartan::TypeInfo& info = cartan::info(type);
  cartan::IntMatrix m = cartan::cartan_matrix(type);
  cartan::RankReport rank = cartan::affine_rank_check(type);
  write_output(format == "structured" ? io::render_structured(info, m, rank)
                                      : io::render_text(info, m, rank),
               output);
  return rank.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cech-cohomology engine for rational surface pairs"};
  app.require_subcommand(1);

  std::string atlas_path, output, format = "text", type_label;
  int twist = 1, n_max = 1;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", output, "write the report to a file instead of stdout");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
  };

  CLI::App* verify = app.add_subcommand("verify-atlas", "load and verify an atlas document");
  verify->add_option("atlas", atlas_path, "atlas file")->required();
  verify->add_option("--twist", twist, "twist for the generator checks")
      ->check(CLI::PositiveNumber);
  add_format(verify);

  CLI::App* compute =
      app.add_subcommand("compute-delta", "assemble the connecting-homomorphism matrix");
  compute->add_option("atlas", atlas_path, "atlas file")->required();
  compute->add_option("--twist", twist, "twist n")->check(CLI::PositiveNumber);
  add_format(compute);

  CLI::App* kernel = app.add_subcommand("kernel", "rank / kernel / determinant of delta");
  kernel->add_option("atlas", atlas_path, "atlas file")->required();
  kernel->add_option("--twist", twist, "twist n")->check(CLI::PositiveNumber);
  add_format(kernel);

  CLI::App* scan =
      app.add_subcommand("vanishing-scan", "determinants of delta_n for n = 1..n-max");
  scan->add_option("atlas", atlas_path, "atlas file")->required();
  scan->add_option("--n-max", n_max, "largest twist to test")->check(CLI::PositiveNumber);
  add_format(scan);

  CLI::App* cartan_cmd = app.add_subcommand("cartan", "affine intersection matrix library");
  cartan_cmd->add_option("type", type_label, "type label, e.g. E7~ or D4~")->required();
  add_format(cartan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify_atlas(atlas_path, twist, output);
    if (*compute) return cmd_compute_delta(atlas_path, twist, output, format, false);
    if (*kernel) return cmd_compute_delta(atlas_path, twist, output, format, true);
    if (*scan) return cmd_vanishing_scan(atlas_path, n_max, output, format);
    if (*cartan_cmd) return cmd_cartan(type_label, output, format);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownType& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedAtlasClass& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const EngineError& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
