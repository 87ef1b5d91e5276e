#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "nlheat/evolution.hpp"
#include "nlheat/mesh.hpp"

namespace nlheat::io {

/// Grid metadata block shared by field and trajectory exports.
nlohmann::json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::json& j);

/// {"dim", "lengths", "n", "h", "values": [...]}
nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

/// One row per node: x[,y],value.
void write_field_csv(const std::filesystem::path& path, const Field& f);
void write_field_json(const std::filesystem::path& path, const Field& f);

/// Reads a field written by write_field_csv / write_field_json onto `grid`.
/// The format follows the extension; node coordinates must match the grid.
Field read_field(const std::filesystem::path& path, const Grid& grid);

/// Columns t,node,value.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Little-endian layout:
///   uint32 dims, uint64 K (stored samples minus one), uint64 n[dims],
///   then K+1 rows of float64 [t, u_0, ..., u_{N-1}].
void write_trajectory_bin(const std::filesystem::path& path, const Trajectory& traj);

/// Inverse of write_trajectory_bin; the grid lengths are not stored and must
/// be supplied.
Trajectory read_trajectory_bin(const std::filesystem::path& path, const std::vector<double>& lengths);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace nlheat::io
