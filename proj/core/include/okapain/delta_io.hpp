#pragma once

#include <string>

#include "okapain/cartan.hpp"
#include "okapain/cech.hpp"

namespace okapain::io {

// Machine-readable documents; byte-stable across runs.
std::string render_structured(const cech::DeltaMatrix& m, const cech::KernelReport* kernel);
std::string render_structured(const cartan::TypeInfo& info, const cartan::IntMatrix& m,
                              const cartan::RankReport& rank);
std::string render_structured(const cech::VanishingReport& rep);

// Aligned human-readable output.
std::string render_text(const cech::DeltaMatrix& m, const cech::KernelReport* kernel);
std::string render_text(const cartan::TypeInfo& info, const cartan::IntMatrix& m,
                        const cartan::RankReport& rank);
std::string render_text(const cech::VanishingReport& rep);

}  // namespace okapain::io
