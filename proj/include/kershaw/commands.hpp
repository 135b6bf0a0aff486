#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "kershaw/config.hpp"

namespace kershaw {

/// Environment variable overriding the number of parallel sweep jobs.
inline constexpr const char* kJobsEnv = "KERSHAW_JOBS";

/// KERSHAW_JOBS if set to a positive integer, else 1.
std::size_t job_count_from_env();

/// One model run: profile.csv and diagnostics.csv, plus errors.csv when
/// the config names a reference model. Returns the written paths.
std::vector<std::filesystem::path> run_command(const RunConfig& config,
                                               const std::filesystem::path& out);

/// The model at every order in `orders`: profile_<name>.csv and
/// diagnostics_<name>.csv per order, and errors.csv (ascending N) against
/// the reference. Requires a reference model.
std::vector<std::filesystem::path> sweep_command(const RunConfig& config,
                                                 const std::filesystem::path& out,
                                                 std::size_t jobs = 1);

/// surface_<name>.csv for an order-2 Kershaw or M_N model.
std::vector<std::filesystem::path> surface_command(const RunConfig& config,
                                                   const std::filesystem::path& out);

}  // namespace kershaw
