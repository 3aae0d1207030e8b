#pragma once

#include "reference.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace orthoqmc::cli {

struct TablesOptions {
    std::filesystem::path out_dir = "tables";
    std::uint64_t seed = kDefaultRandomSeed;              // random-mode cells
    std::uint64_t permutation_seed = kDefaultPermutationSeed; // scrambled Halton inputs
    std::uint64_t polytope_seed = kDefaultPolytopeSeed;   // random spherical polytopes
    std::uint64_t reference_samples = kDefaultReferenceSamples;
    std::filesystem::path reference_cache;                // defaults to out_dir/reference_cache.json
    unsigned jobs = 1;
};

inline const std::vector<std::string> kTable1Bodies{"3-simplex", "3-cube", "k-icosahedron", "r-polytope-3-50",
                                                    "r-polytope-3-150"};
inline const std::vector<std::uint64_t> kTable1Samples{10, 100, 1000};
inline const std::vector<std::string> kTable2Bodies{"4-simplex", "4-cube", "r-polytope-4-50"};
inline const std::vector<std::uint64_t> kTable2Samples{10, 100, 1000, 10000};

// Runs every cell of both tables and the icosahedron convergence traces, writing
// table1.csv, table2.csv, figure1.csv and summary.json into out_dir.
void reproduce_tables(const TablesOptions& options);

} // namespace orthoqmc::cli
