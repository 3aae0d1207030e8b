#pragma once

#include "orthoqmc/estimator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orthoqmc::cli {

// Every parameter of a command. Loaded from --config JSON, then overridden by flags.
struct RunConfig {
    std::string command;                   // estimate | gen | reproduce-tables
    std::string kind;                      // gen: sphere | ortho | grassmann | udsg
    std::string polytope = "3-cube";
    std::string polytope_file;
    int n = 0;                             // 0: taken from the polytope (estimate) or 3 (gen)
    int k = 1;
    std::uint64_t samples = 1000;
    std::string mode = "qmc";
    std::string sequence = "scrambled-halton"; // gen sphere: halton | scrambled-halton
    std::uint64_t seed = kDefaultRandomSeed;
    std::uint64_t permutation_seed = kDefaultPermutationSeed;
    std::uint64_t polytope_seed = kDefaultPolytopeSeed;
    std::vector<std::uint64_t> trace_points;
    std::uint64_t count = 10;
    std::uint32_t target_digit = 5;
    std::uint32_t digit_base = 10;
    std::optional<double> reference;
    std::uint64_t reference_samples = 1'000'000;
    bool fresh_seed = false;
    unsigned jobs = 1;
    std::string output;                    // file (estimate, gen) or directory (reproduce-tables)

    bool operator==(const RunConfig&) const = default;
};

std::string config_to_json(const RunConfig& config);
// Missing keys keep their defaults; unknown keys and wrong types are rejected.
RunConfig config_from_json(const std::string& text);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

// Entry point shared by the executable and the tests. `args` excludes the program name.
// Errors are reported on `err` as one JSON line {"error": code, "message": text}.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace orthoqmc::cli
