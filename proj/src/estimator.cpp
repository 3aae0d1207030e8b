#include "orthoqmc/estimator.hpp"

#include "orthoqmc/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace orthoqmc {

std::string to_string(Mode mode)
{
    switch (mode) {
    case Mode::Random: return "random";
    case Mode::Qmc: return "qmc";
    case Mode::QmcNoVeech: return "qmc-noveech";
    }
    return "unknown";
}

Mode mode_from_string(const std::string& name)
{
    if (name == "random") return Mode::Random;
    if (name == "qmc" || name == "qr") return Mode::Qmc;
    if (name == "qmc-noveech" || name == "qr-noveech") return Mode::QmcNoVeech;
    throw DomainError("unknown mode '" + name + "'");
}

void ExperimentSpec::validate() const
{
    if (n < 2) throw DomainError("experiment needs n >= 2");
    if (k < 1 || k > n - 1) throw DomainError("experiment needs 1 <= k <= n-1");
    if (n - k > 3) throw DomainError("projection dimension n-k must be at most 3");
    if (samples < 1) throw DomainError("experiment needs N >= 1");
    polytope.validate();
    if (polytope.n() != n) throw DimensionMismatch("polytope lives in R^" + std::to_string(polytope.n()) + ", not R^" + std::to_string(n));
    if (!std::is_sorted(trace_points.begin(), trace_points.end()))
        throw DomainError("trace points must be sorted");
    for (auto m : trace_points)
        if (m < 1 || m > samples) throw DomainError("trace points must lie in [1, N]");
    if (sequence) {
        sequence->validate();
        if (sequence->n != static_cast<std::size_t>(n)) throw DimensionMismatch("sequence spec is for a different n");
    }
}

OrthoSequenceSpec ExperimentSpec::resolved_sequence() const
{
    OrthoSequenceSpec s = sequence ? *sequence : OrthoSequenceSpec::defaults(static_cast<std::size_t>(n));
    s.veech = mode == Mode::Qmc;
    return s;
}

double projection_measure(const Polytope& polytope, const OrthoMatrix& g, int k)
{
    const auto n = g.n();
    return hull_measure(project(polytope, g.matrix().rightCols(n - k)));
}

ConvergenceTrace run(const ExperimentSpec& spec)
{
    spec.validate();

    ConvergenceTrace trace;
    trace.mode = spec.mode;
    trace.n = spec.n;
    trace.k = spec.k;
    trace.polytope = spec.polytope.label;

    std::optional<OrthoSequence> quasi;
    std::optional<RandomOrthoSequence> random;
    if (spec.mode == Mode::Random)
        random.emplace(static_cast<std::size_t>(spec.n), spec.seed);
    else
        quasi.emplace(spec.resolved_sequence());

    KahanSum sum;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    auto next_trace = spec.trace_points.begin();
    for (std::uint64_t m = 1; m <= spec.samples; ++m) {
        const OrthoMatrix g = random ? random->next() : quasi->next();
        const double f = projection_measure(spec.polytope, g, spec.k);
        sum.add(f);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
        while (next_trace != spec.trace_points.end() && *next_trace == m) {
            trace.points.push_back({m, sum.value() / static_cast<double>(m)});
            ++next_trace;
        }
    }

    trace.estimate = sum.value() / static_cast<double>(spec.samples);
    trace.intrinsic = intrinsic_volume(trace, spec.n, spec.k);
    trace.min_sample = lo;
    trace.max_sample = hi;
    trace.repairs = quasi ? quasi->repair_count() : 0;
    return trace;
}

double intrinsic_volume(const ConvergenceTrace& trace, int n, int k)
{
    return crofton_constant(n, k) * trace.estimate;
}

ComparisonReport compare_traces(const std::vector<ConvergenceTrace>& traces, std::optional<double> reference)
{
    if (traces.empty()) throw DomainError("compare: no experiments given");
    ComparisonReport report;
    report.polytope = traces.front().polytope;
    report.n = traces.front().n;
    report.k = traces.front().k;
    report.reference = reference;

    std::set<std::uint64_t> shared;
    for (const auto& p : traces.front().points) shared.insert(p.m);
    for (const auto& t : traces) {
        if (t.polytope != report.polytope || t.n != report.n || t.k != report.k)
            throw DomainError("compare: experiments differ in polytope or (n, k)");
        std::set<std::uint64_t> mine;
        for (const auto& p : t.points) mine.insert(p.m);
        std::erase_if(shared, [&](std::uint64_t m) { return mine.count(m) == 0; });
    }
    if (shared.empty()) throw DomainError("compare: experiments share no trace point");
    report.trace_points.assign(shared.begin(), shared.end());

    const double c = crofton_constant(report.n, report.k);
    for (const auto& t : traces) {
        for (const auto& p : t.points) {
            if (shared.count(p.m) == 0) continue;
            ComparisonRow row{t.mode, p.m, p.value, c * p.value, std::nullopt};
            if (reference) row.abs_error = std::abs(p.value - *reference);
            report.rows.push_back(row);
        }
    }
    return report;
}

ComparisonReport compare(const std::vector<ExperimentSpec>& specs, std::optional<double> reference)
{
    if (specs.empty()) throw DomainError("compare: no experiments given");
    const auto& first = specs.front();
    std::set<std::uint64_t> shared(first.trace_points.begin(), first.trace_points.end());
    for (const auto& s : specs) {
        if (s.n != first.n || s.k != first.k || s.polytope.label != first.polytope.label ||
            s.polytope.vertices.rows() != first.polytope.vertices.rows() ||
            s.polytope.vertices.cols() != first.polytope.vertices.cols() ||
            s.polytope.vertices != first.polytope.vertices)
            throw DomainError("compare: experiments differ in polytope or (n, k)");
        std::set<std::uint64_t> mine(s.trace_points.begin(), s.trace_points.end());
        std::erase_if(shared, [&](std::uint64_t m) { return mine.count(m) == 0; });
    }
    if (shared.empty()) throw DomainError("compare: experiments share no trace point");

    std::vector<ConvergenceTrace> traces;
    traces.reserve(specs.size());
    for (const auto& s : specs) traces.push_back(run(s));
    return compare_traces(traces, reference);
}

} // namespace orthoqmc
