#pragma once

#include "orthoqmc/convex_geometry.hpp"
#include "orthoqmc/orthogonal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orthoqmc {

enum class Mode { Random, Qmc, QmcNoVeech };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

// Seed of the pseudo-random baseline when none is given.
inline constexpr std::uint64_t kDefaultRandomSeed = 5489;

struct ExperimentSpec {
    Polytope polytope;
    int n = 3;
    int k = 1;
    std::uint64_t samples = 1000;
    Mode mode = Mode::Qmc;
    std::uint64_t seed = kDefaultRandomSeed;          // random mode
    std::optional<OrthoSequenceSpec> sequence;        // quasi modes; defaults per n when empty
    std::vector<std::uint64_t> trace_points;          // sorted, each <= samples

    // 1 <= k <= n-1, samples >= 1, polytope in R^n, trace points sorted and in range.
    void validate() const;
    OrthoSequenceSpec resolved_sequence() const;
};

struct TracePoint {
    std::uint64_t m;
    double value; // mean of the first m evaluations
};

struct ConvergenceTrace {
    Mode mode = Mode::Qmc;
    int n = 3;
    int k = 1;
    std::string polytope;
    std::vector<TracePoint> points;
    double estimate = 0.0;       // I_{n,k}^N
    double intrinsic = 0.0;      // c_{k,n} * I
    double max_sample = 0.0;
    double min_sample = 0.0;
    std::size_t repairs = 0;     // re-orthonormalisations in the quasi sequence
};

// Compensated running sum.
class KahanSum {
public:
    void add(double x)
    {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// f(L) = vol(K | L^perp) for the subspace spanned by the first k columns of g,
// with L^perp spanned by the trailing n-k columns.
double projection_measure(const Polytope& polytope, const OrthoMatrix& g, int k);

ConvergenceTrace run(const ExperimentSpec& spec);

// V_{n-k} = c_{k,n} * I.
double intrinsic_volume(const ConvergenceTrace& trace, int n, int k);

struct ComparisonRow {
    Mode mode;
    std::uint64_t m;
    double value;
    double intrinsic;
    std::optional<double> abs_error;
};

struct ComparisonReport {
    std::string polytope;
    int n = 0;
    int k = 0;
    std::optional<double> reference;
    std::vector<std::uint64_t> trace_points; // common to every trace
    std::vector<ComparisonRow> rows;         // grouped by mode, then m
};

// Runs every spec and tabulates the trace points they share. All specs must use
// the same polytope and (n, k); throws DomainError on mismatch or when no trace point is shared.
ComparisonReport compare(const std::vector<ExperimentSpec>& specs, std::optional<double> reference = std::nullopt);

// Tabulates already computed traces under the same rules.
ComparisonReport compare_traces(const std::vector<ConvergenceTrace>& traces, std::optional<double> reference = std::nullopt);

} // namespace orthoqmc
