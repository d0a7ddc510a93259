#pragma once
#include <filesystem>
#include <string>

#include "gravistoch/config.hpp"
#include "gravistoch/sde.hpp"

namespace gravistoch::cli {

// Trajectory files written by `simulate` and read back by `wick-check`.
// csv: metadata lines, header row, one row per step (t, re/im per entry).
// json: {"meta": ..., "times": ..., "comps": [[...], ...]}.
// binary: "GSTB" magic, u32 version, then u64 config_hash, grid_hash, seed,
//   member, n_entries, steps, f64 t0, dt, followed by (steps+1) frames of
//   n_entries (re, im) little-endian doubles.
void write_trajectory(const sde::Trajectory& traj, const std::filesystem::path& path,
                      const std::string& format, std::uint64_t config_hash,
                      std::uint64_t grid_hash);
sde::Trajectory read_trajectory(const std::filesystem::path& path);

int cmd_polarization(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_simulate(const RunConfig& cfg);
int cmd_covariance(const RunConfig& cfg);
int cmd_radiation(const RunConfig& cfg);
int cmd_wick_check(const RunConfig& cfg);
int cmd_retarded(const RunConfig& cfg);
int cmd_acceleration_check(const RunConfig& cfg);

}  // namespace gravistoch::cli
