#pragma once

#include "orthoqmc/estimator.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace orthoqmc::cli {

// Seed of the random-baseline oracle runs, kept apart from the experiment seeds.
inline constexpr std::uint64_t kOracleSeed = 0x0DDBA11;
inline constexpr std::uint64_t kDefaultReferenceSamples = 1'000'000;

// Closed-form values of I_{n,k}: the cubes via Cauchy/mean-width formulas and the
// 3-simplex for k = 1 via its surface area.
std::optional<double> analytic_reference(const std::string& label, int n, int k);

// High-N random-baseline estimates persisted as a JSON object keyed by
// "label|n|k|samples|seed". Safe to share between threads.
class ReferenceCache {
public:
    explicit ReferenceCache(std::filesystem::path path);

    double oracle(const Polytope& polytope, int k, std::uint64_t samples, std::uint64_t seed = kOracleSeed);
    // Analytic value when one exists, otherwise the cached oracle.
    double reference(const Polytope& polytope, int k, std::uint64_t samples);

    const std::filesystem::path& path() const { return path_; }

private:
    void save() const;

    std::filesystem::path path_;
    std::map<std::string, double> values_;
    mutable std::mutex mutex_;
};

// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

} // namespace orthoqmc::cli
