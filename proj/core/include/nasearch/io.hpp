#pragma once

// On-disk formats.
//
// Trajectory CSV: header t,P_s,P_p,re_as,im_as,re_ap,im_ap, one row per
// sample, 17 significant digits, '\n' line endings. t is divided by the
// trajectory's time unit.
//
// Grid JSON: {"a_values": [...], "b_values": [...], "p": [[...], ...],
// "N": <int or "inf">, "meta": {...}} with one row of p per b value.

#include "nasearch/propagator.hpp"
#include "nasearch/sweep.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace nasearch {

std::string code_version();

// Shortest general-format rendering with 17 significant digits.
std::string format_double(double v);

void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
std::string trajectory_csv(const Trajectory& traj);

// Label, schedule parameters, integrator settings and statistics.
nlohmann::json trajectory_meta(const Trajectory& traj);

nlohmann::json grid_json(const ProbabilityGrid& grid, const nlohmann::json& meta);

// Counts and worst estimated error over the provenance table.
nlohmann::json grid_provenance_summary(const ProbabilityGrid& grid);

// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nasearch
