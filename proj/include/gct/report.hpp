#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gct/equivariant.hpp"

namespace gct {

using ordered_json = nlohmann::ordered_json;

// Values below this magnitude are written as exact zeros.
constexpr double kPrintFloor = 1e-13;

ordered_json morphism_json(const Morphism& f);
// Throws ValidationError("schema") when the shape does not match source -> target.
Morphism morphism_from_json(const nlohmann::json& j, const Calculus& calc, const Object& source, const Object& target);

ordered_json setting_json(const TubeSetting& s);
TubeSetting setting_from_json(const Category& cat, const nlohmann::json& j);

ordered_json tube_json(const TubeAlgebra& tube, const std::vector<WedderburnData>& blocks, std::uint64_t seed);

struct CenterSummary {
  std::vector<std::vector<int>> hom;                      // dim Hom_Z(i, j)
  std::vector<std::vector<std::vector<int>>> fusion;      // N[i][j][k]
  std::vector<double> residuals;                          // verify_half_braiding per simple
  std::optional<OrbitReport> orbits;
  std::optional<GBraidingReport> braiding;
};

ordered_json center_json(const CenterData& center, const CenterSummary& summary);
// The simples of a center report, in order, for the setting recorded in it.
std::vector<HalfBraiding> simples_from_json(const nlohmann::json& report, const TubeSetting& s);

ordered_json braiding_json(const GBraidingData& br, std::uint64_t seed);
GBraidingData braiding_from_json(const nlohmann::json& j, const SimpleCatalog& cat);

// Two-space indented dump with a trailing newline.
std::string render(const ordered_json& j);

}  // namespace gct
