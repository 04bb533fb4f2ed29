#pragma once

// Randomized library-versus-oracle comparisons shared by the unit and
// acceptance suites. Each check returns an empty string on success, otherwise
// a description of the first mismatch.

#include <cstddef>
#include <cstdint>
#include <string>

namespace oracle_checks {

std::string mae(std::size_t instances, std::uint64_t seed);
std::string r2(std::size_t instances, std::uint64_t seed);
std::string smape(std::size_t instances, std::uint64_t seed);
std::string sr(std::size_t instances, std::uint64_t seed);
std::string uniformity(std::size_t instances, std::uint64_t seed);
std::string r_spatial(std::size_t instances, std::uint64_t seed);
std::string r_light(std::size_t instances, std::uint64_t seed);
std::string rep(std::size_t instances, std::uint64_t seed);

/// Accuracy is non-decreasing over 0..1.5 mm and 1 at 1.5 mm.
std::string sr_monotone(std::size_t pair_sets, std::uint64_t seed);

}  // namespace oracle_checks
