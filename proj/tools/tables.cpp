#include "tables.hpp"

#include "csv.hpp"

#include <json.hpp>

#include <atomic>
#include <exception>
#include <functional>
#include <thread>

namespace orthoqmc::cli {

namespace {

struct Cell {
    Polytope polytope;
    int k;
    Mode mode;
    std::uint64_t samples;
    std::uint64_t seed;
    std::vector<std::uint64_t> trace;
    ConvergenceTrace result;
};

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<std::uint64_t> every_step(std::uint64_t last)
{
    std::vector<std::uint64_t> v(last);
    for (std::uint64_t m = 1; m <= last; ++m) v[m - 1] = m;
    return v;
}

double value_at(const ConvergenceTrace& t, std::uint64_t m)
{
    for (const auto& p : t.points)
        if (p.m == m) return p.value;
    throw std::logic_error("trace point missing");
}

} // namespace

void reproduce_tables(const TablesOptions& options)
{
    std::filesystem::create_directories(options.out_dir);
    ReferenceCache cache(options.reference_cache.empty() ? options.out_dir / "reference_cache.json"
                                                         : options.reference_cache);
    const Mode modes[] = {Mode::Random, Mode::Qmc};

    // Cells in output order: table 1 by (body, mode, k), then table 2 by (body, mode).
    std::vector<Cell> cells;
    auto add_cell = [&](const Polytope& p, int k, Mode mode, std::uint64_t samples, std::vector<std::uint64_t> trace) {
        Cell c{p, k, mode, samples, 0, std::move(trace), {}};
        c.seed = mode == Mode::Random ? options.seed + cells.size() : options.permutation_seed;
        cells.push_back(std::move(c));
    };
    std::vector<Polytope> bodies1;
    for (const auto& label : kTable1Bodies) bodies1.push_back(named_polytope(label, options.polytope_seed));
    std::vector<Polytope> bodies2;
    for (const auto& label : kTable2Bodies) bodies2.push_back(named_polytope(label, options.polytope_seed));

    for (const auto& p : bodies1)
        for (Mode mode : modes)
            for (int k : {1, 2}) add_cell(p, k, mode, kTable1Samples.back(), every_step(kTable1Samples.back()));
    const std::size_t table2_start = cells.size();
    for (const auto& p : bodies2)
        for (Mode mode : modes) add_cell(p, 3, mode, kTable2Samples.back(), kTable2Samples);

    // References: one per (body, k), computed before the cells so the cache fills deterministically.
    struct RefTask {
        const Polytope* polytope;
        int k;
        double value = 0.0;
    };
    std::vector<RefTask> refs;
    for (const auto& p : bodies1)
        for (int k : {1, 2}) refs.push_back({&p, k});
    for (const auto& p : bodies2) refs.push_back({&p, 3});
    parallel_for(refs.size(), options.jobs,
                 [&](std::size_t i) { refs[i].value = cache.reference(*refs[i].polytope, refs[i].k, options.reference_samples); });
    auto reference_for = [&](const Polytope& p, int k) {
        for (const auto& r : refs)
            if (r.polytope->label == p.label && r.k == k) return r.value;
        throw std::logic_error("reference missing");
    };

    parallel_for(cells.size(), options.jobs, [&](std::size_t i) {
        auto& c = cells[i];
        ExperimentSpec spec;
        spec.polytope = c.polytope;
        spec.n = static_cast<int>(c.polytope.n());
        spec.k = c.k;
        spec.samples = c.samples;
        spec.mode = c.mode;
        spec.trace_points = c.trace;
        if (c.mode == Mode::Random)
            spec.seed = c.seed;
        else
            spec.sequence = OrthoSequenceSpec::defaults(static_cast<std::size_t>(spec.n), true,
                                                        SequenceKind::ScrambledHalton, c.seed);
        c.result = run(spec);
    });

    nlohmann::json summary;
    summary["seed"] = options.seed;
    summary["permutation_seed"] = options.permutation_seed;
    summary["polytope_seed"] = options.polytope_seed;
    summary["reference_samples"] = options.reference_samples;

    CsvWriter t1({"polytope", "vertices", "mode", "N", "seed", "I_k1", "I_k2", "ref_k1", "ref_k2", "abs_err_k1",
                  "abs_err_k2"});
    nlohmann::json rows1 = nlohmann::json::array();
    for (std::size_t i = 0; i < table2_start; i += 2) {
        const auto& c1 = cells[i];
        const auto& c2 = cells[i + 1];
        const double r1 = reference_for(c1.polytope, 1);
        const double r2 = reference_for(c1.polytope, 2);
        for (auto big_n : kTable1Samples) {
            const double v1 = value_at(c1.result, big_n);
            const double v2 = value_at(c2.result, big_n);
            t1.row(c1.polytope.label, c1.polytope.vertex_count(), to_string(c1.mode), big_n, c1.seed, v1, v2, r1, r2,
                   std::abs(v1 - r1), std::abs(v2 - r2));
            rows1.push_back({{"polytope", c1.polytope.label},
                             {"vertices", c1.polytope.vertex_count()},
                             {"mode", to_string(c1.mode)},
                             {"N", big_n},
                             {"seed", c1.seed},
                             {"I", {v1, v2}},
                             {"reference", {r1, r2}},
                             {"abs_error", {std::abs(v1 - r1), std::abs(v2 - r2)}}});
        }
    }
    summary["table1"] = rows1;

    CsvWriter t2({"polytope", "vertices", "mode", "N", "seed", "I", "ref", "abs_err"});
    nlohmann::json rows2 = nlohmann::json::array();
    for (std::size_t i = table2_start; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const double r = reference_for(c.polytope, 3);
        for (auto big_n : kTable2Samples) {
            const double v = value_at(c.result, big_n);
            t2.row(c.polytope.label, c.polytope.vertex_count(), to_string(c.mode), big_n, c.seed, v, r, std::abs(v - r));
            rows2.push_back({{"polytope", c.polytope.label},
                             {"vertices", c.polytope.vertex_count()},
                             {"mode", to_string(c.mode)},
                             {"N", big_n},
                             {"seed", c.seed},
                             {"I", v},
                             {"reference", r},
                             {"abs_error", std::abs(v - r)}});
        }
    }
    summary["table2"] = rows2;

    CsvWriter f1({"k", "mode", "m", "I", "reference", "lower", "upper"});
    nlohmann::json fig = nlohmann::json::array();
    for (const auto& c : cells) {
        if (c.polytope.label != "k-icosahedron") continue;
        const double r = reference_for(c.polytope, c.k);
        for (const auto& p : c.result.points) f1.row(c.k, to_string(c.mode), p.m, p.value, r, 0.995 * r, 1.005 * r);
        fig.push_back({{"k", c.k}, {"mode", to_string(c.mode)}, {"final", c.result.estimate}, {"reference", r}});
    }
    summary["figure1"] = fig;

    write_atomically(options.out_dir / "table1.csv", t1.str());
    write_atomically(options.out_dir / "table2.csv", t2.str());
    write_atomically(options.out_dir / "figure1.csv", f1.str());
    write_atomically(options.out_dir / "summary.json", summary.dump(2) + "\n");
}

} // namespace orthoqmc::cli
