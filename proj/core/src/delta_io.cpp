#include "okapain/delta_io.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace okapain::io {

using cas::RationalFunction;

namespace {

std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t j = 0; j < row.size(); ++j) widths[j] = std::max(widths[j], row[j].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    out << " ";
    for (size_t j = 0; j < row.size(); ++j)
      out << " " << std::setw(static_cast<int>(widths[j])) << row[j];
    out << "\n";
  }
  return out.str();
}

void append_kernel_block(std::ostringstream& out, const cech::KernelReport& k) {
  out << "rank " << k.rank << "\n";
  out << "kernel-dimension " << k.kernel_dimension << "\n";
  out << "det " << k.determinant.render() << "\n";
  out << "kernel-basis:\n";
  if (k.kernel_basis.empty()) out << "  (trivial)\n";
  for (const auto& vec : k.kernel_basis) {
    out << " ";
    for (const auto& v : vec) out << " " << v.render();
    out << "\n";
  }
}

}  // namespace

std::string render_structured(const cech::DeltaMatrix& m, const cech::KernelReport* kernel) {
  std::ostringstream out;
  out << "delta-matrix\n";
  out << "atlas " << m.atlas_name << "\n";
  out << "type " << m.type_label << "\n";
  out << "twist " << m.twist << "\n";
  out << "size " << m.size() << "\n";
  out << "theta";
  for (const auto& l : m.theta_labels) out << " " << l;
  out << "\n";
  out << "eta";
  for (const auto& l : m.eta_labels) out << " " << l;
  out << "\n";
  out << "entries:\n";
  for (const auto& row : m.entries) {
    out << " ";
    for (const auto& e : row) out << " " << e.render();
    out << "\n";
  }
  if (kernel != nullptr) append_kernel_block(out, *kernel);
  return out.str();
}

std::string render_structured(const cartan::TypeInfo& info, const cartan::IntMatrix& m,
                              const cartan::RankReport& rank) {
  std::ostringstream out;
  out << "cartan-matrix\n";
  out << "type " << info.label << "\n";
  if (info.painleve_tag) out << "painleve " << *info.painleve_tag << "\n";
  out << "size " << info.node_count << "\n";
  out << "entries:\n";
  for (const auto& row : m) {
    out << " ";
    for (long v : row) out << " " << v;
    out << "\n";
  }
  out << "rank " << rank.rank << "\n";
  out << "kernel-dimension " << rank.kernel_dimension << "\n";
  out << "kernel-basis:\n ";
  for (long v : rank.kernel_generator) out << " " << v;
  out << "\n";
  return out.str();
}

std::string render_structured(const cech::VanishingReport& rep) {
  std::ostringstream out;
  out << "vanishing-scan\n";
  out << "rows " << rep.rows.size() << "\n";
  for (const auto& r : rep.rows) {
    out << "n " << r.twist << " det " << r.determinant.render() << " closed-form "
        << (r.matches_closed_form ? "match" : "MISMATCH") << " kernel-dimension "
        << r.kernel_dimension << " locus " << r.vanishing_locus << "\n";
  }
  out << "conclusion "
      << (rep.all_match() ? "H0 vanishes for every tested twist away from the locus; the local "
                            "cohomology vanishes up to the tested range when -t is not a root "
                            "of unity"
                          : "closed form violated")
      << "\n";
  return out.str();
}

std::string render_text(const cech::DeltaMatrix& m, const cech::KernelReport* kernel) {
  std::ostringstream out;
  out << "delta matrix for " << m.atlas_name << " (type " << m.type_label << ", twist "
      << m.twist << ")\n";
  out << "entry (i,j) = coefficient of eta_i in delta(theta_j)\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : m.entries) {
    std::vector<std::string> cells;
    for (const auto& e : row) cells.push_back(e.render());
    rows.push_back(std::move(cells));
  }
  out << aligned(rows);
  if (kernel != nullptr) {
    out << "\n";
    out << "rank " << kernel->rank << ", kernel dimension " << kernel->kernel_dimension
        << ", det = " << kernel->determinant.render() << "\n";
    if (!kernel->kernel_basis.empty()) {
      out << "kernel basis:\n";
      std::vector<std::vector<std::string>> basis_rows;
      for (const auto& vec : kernel->kernel_basis) {
        std::vector<std::string> cells;
        for (const auto& v : vec) cells.push_back(v.render());
        basis_rows.push_back(std::move(cells));
      }
      out << aligned(basis_rows);
    }
  }
  return out.str();
}

std::string render_text(const cartan::TypeInfo& info, const cartan::IntMatrix& m,
                        const cartan::RankReport& rank) {
  std::ostringstream out;
  out << "affine intersection matrix of type " << info.label;
  if (info.painleve_tag) out << " (Painleve tag " << *info.painleve_tag << ")";
  out << "\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : m) {
    std::vector<std::string> cells;
    for (long v : row) cells.push_back(std::to_string(v));
    rows.push_back(std::move(cells));
  }
  out << aligned(rows);
  out << "\nrank " << rank.rank << ", kernel dimension " << rank.kernel_dimension
      << ", kernel generator (";
  for (size_t i = 0; i < rank.kernel_generator.size(); ++i) {
    if (i) out << ", ";
    out << rank.kernel_generator[i];
  }
  out << ")\n";
  return out.str();
}

std::string render_text(const cech::VanishingReport& rep) {
  std::ostringstream out;
  out << "vanishing scan\n\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"n", "det", "closed form", "ker dim", "det = 0 exactly on"});
  for (const auto& r : rep.rows)
    rows.push_back({std::to_string(r.twist), r.determinant.render(),
                    r.matches_closed_form ? "match" : "MISMATCH",
                    std::to_string(r.kernel_dimension), r.vanishing_locus});
  out << aligned(rows);
  out << "\n"
      << (rep.all_match()
              ? "every determinant matches ((-t)^n-1)^2/(-t)^n; H0 of the twisted log tangent "
                "sheaf vanishes for the tested range when -t is not a root of unity"
              : "closed-form mismatch detected")
      << "\n";
  return out.str();
}

}  // namespace okapain::io
