// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Pass a criterion number to run only that one.

#include "reference.hpp"
#include "tables.hpp"

#include "orthoqmc/estimator.hpp"
#include "orthoqmc/grassmann.hpp"
#include "orthoqmc/sphere_map.hpp"
#include "orthoqmc/udsg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace orthoqmc;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what)
    {
        pass = pass && ok;
        if (!ok) detail << "[fail: " << what << "] ";
    }
};

constexpr std::uint64_t kOracleSamples = 1'000'000;

cli::ReferenceCache& oracle_cache()
{
    static cli::ReferenceCache cache(ORTHOQMC_REFERENCE_CACHE);
    return cache;
}

std::function<OrthoMatrix()> source(std::size_t n, Mode mode)
{
    if (mode == Mode::Random) {
        auto seq = std::make_shared<RandomOrthoSequence>(n, kDefaultRandomSeed);
        return [seq] { return seq->next(); };
    }
    auto seq = std::make_shared<OrthoSequence>(OrthoSequenceSpec::defaults(n, mode == Mode::Qmc));
    return [seq] { return seq->next(); };
}

double estimate(const std::string& label, int k, std::uint64_t samples, Mode mode)
{
    ExperimentSpec s;
    s.polytope = named_polytope(label);
    s.n = static_cast<int>(s.polytope.n());
    s.k = k;
    s.samples = samples;
    s.mode = mode;
    return run(s).estimate;
}

void orthogonality(Outcome& o, const std::vector<Mode>& modes)
{
    for (Mode mode : modes) {
        double worst_defect = 0.0;
        double worst_det = 0.0;
        for (std::size_t n : {2, 3, 4, 5}) {
            auto next = source(n, mode);
            for (int m = 1; m <= 10'000; ++m) {
                const auto g = next();
                worst_defect = std::max(worst_defect, g.orthogonality_defect());
                worst_det = std::max(worst_det, std::abs(std::abs(g.determinant()) - 1.0));
            }
        }
        o.detail << to_string(mode) << ": defect " << worst_defect << ", |det|-1 " << worst_det << "; ";
        o.check(worst_defect < 1e-10 && worst_det < 1e-8, to_string(mode));
    }
}

void moments(Outcome& o, const std::vector<Mode>& modes)
{
    const int count = 100'000;
    for (Mode mode : modes) {
        for (std::size_t n : {3, 4}) {
            auto next = source(n, mode);
            double sum = 0.0;
            for (int m = 1; m <= count; ++m) sum += std::pow(next()(0, 0), 2);
            const double dev = std::abs(sum / count - 1.0 / static_cast<double>(n));
            o.detail << to_string(mode) << " E[G11^2] n=" << n << " dev " << dev << "; ";
            o.check(dev < 1e-2, to_string(mode) + " G11 n=" + std::to_string(n));
        }
        const std::pair<std::size_t, int> cases[] = {{3, 1}, {3, 2}, {4, 2}, {4, 3}};
        for (auto [n, k] : cases) {
            auto next = source(n, mode);
            const auto dim = static_cast<Eigen::Index>(n);
            Matrix mean = Matrix::Zero(dim, dim);
            for (int m = 1; m <= count; ++m) mean += beta_k(next(), k).projector();
            mean /= count;
            const double dev =
                (mean - (static_cast<double>(k) / static_cast<double>(n)) * Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
            o.detail << to_string(mode) << " projector (" << n << "," << k << ") dev " << dev << "; ";
            o.check(dev < 1e-2, to_string(mode) + " projector (" + std::to_string(n) + "," + std::to_string(k) + ")");
        }
    }
}

void cube(Outcome& o, Mode mode)
{
    for (int k : {1, 2}) {
        const double v = estimate("3-cube", k, 1000, mode);
        o.detail << to_string(mode) << " I_3," << k << " = " << v << "; ";
        o.check(std::abs(v - 1.5) <= 0.02, "k=" + std::to_string(k));
    }
}

Outcome c1()
{
    Outcome o;
    orthogonality(o, {Mode::Random, Mode::Qmc, Mode::QmcNoVeech});
    return o;
}

Outcome c2()
{
    Outcome o;
    double image = 0.0;
    double involution = 0.0;
    for (std::size_t n : {3, 4, 5}) {
        SphereSequence seq(n, OrthoSequenceSpec::defaults(n).sphere_spec(n));
        Eigen::VectorXd e1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        e1(0) = 1.0;
        for (std::uint64_t m = 1; m <= 10'000; ++m) {
            const auto x = seq.point(m);
            const Matrix phi = coset_rep(x).matrix();
            image = std::max(image, (phi * e1 - x.coords).cwiseAbs().maxCoeff());
            involution = std::max(involution, (phi * phi - Matrix::Identity(phi.rows(), phi.cols())).cwiseAbs().maxCoeff());
        }
        const bool exact = coset_rep(SpherePoint{e1}).matrix() == Matrix::Identity(e1.size(), e1.size());
        o.check(exact, "coset_rep(e1) != I for n=" + std::to_string(n));
    }
    o.detail << "max |phi(x)e1 - x| " << image << ", max |phi^2 - I| " << involution << ", phi(e1) == I exactly";
    o.check(image < 1e-12, "image");
    o.check(involution < 1e-10, "involution");
    return o;
}

Outcome c3()
{
    Outcome o;
    const std::pair<std::uint64_t, std::uint64_t> printed[] = {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1},
                                                               {1, 3}, {3, 2}, {2, 3}, {3, 3}};
    for (std::uint64_t m = 1; m <= 9; ++m) {
        const auto c = convolution_index(m);
        o.check(c.i == printed[m - 1].first && c.j == printed[m - 1].second, "pair m=" + std::to_string(m));
    }
    for (std::uint64_t k = 1; k <= 30; ++k) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
        for (std::uint64_t m = 1; m <= k * k; ++m) {
            const auto c = convolution_index(m);
            o.check(c.i >= 1 && c.i <= k && c.j >= 1 && c.j <= k, "range k=" + std::to_string(k));
            seen.insert({c.i, c.j});
        }
        o.check(seen.size() == k * k, "bijection k=" + std::to_string(k));
    }
    o.detail << "first nine pairs as printed; bijection onto {1..k}^2 for k <= 30";
    return o;
}

Outcome c4()
{
    Outcome o;
    const auto q = occurrence_positions({}, 2);
    const auto r = r_sequence({}, 2);
    o.detail << "(q1,q2,r1,r2) = (" << q[0] << "," << q[1] << "," << r[0] << "," << r[1] << "); ";
    o.check(q[0] == 5 && q[1] == 21 && r[0] == 4 && r[1] == 16, "q/r");

    std::string naive;
    for (int i = 1; naive.size() < 500'000; ++i) naive += std::to_string(i);
    std::size_t mismatches = 0;
    for (std::size_t pos = 1; pos <= 500'000; ++pos)
        mismatches += champernowne_digit(pos) != static_cast<std::uint32_t>(naive[pos - 1] - '0');
    o.detail << "digit mismatches in 5e5 positions: " << mismatches;
    o.check(mismatches == 0, "digits");
    return o;
}

Outcome c5()
{
    Outcome o;
    for (std::size_t n : {3, 4}) {
        SphereSequence seq(n, OrthoSequenceSpec::defaults(n).sphere_spec(n));
        double sum = 0.0;
        for (std::uint64_t m = 1; m <= 100'000; ++m) sum += std::pow(seq.point(m).coords(0), 2);
        const double dev = std::abs(sum / 1e5 - 1.0 / static_cast<double>(n));
        o.detail << "sphere E[x1^2] n=" << n << " dev " << dev << "; ";
        o.check(dev < 5e-3, "sphere n=" + std::to_string(n));
    }
    moments(o, {Mode::Qmc, Mode::Random});
    return o;
}

Outcome c6()
{
    Outcome o;
    cube(o, Mode::Qmc);
    return o;
}

Outcome c7()
{
    Outcome o;
    const double cauchy = (1.5 + std::sqrt(3.0) / 2.0) / 4.0;
    const double v1 = estimate("3-simplex", 1, 10'000, Mode::Qmc);
    const double ref2 = oracle_cache().oracle(builtin("3-simplex"), 2, kOracleSamples);
    const double v2 = estimate("3-simplex", 2, 10'000, Mode::Qmc);
    o.detail << "I_3,1 = " << v1 << " vs " << cauchy << " (rel " << std::abs(v1 / cauchy - 1) << "); I_3,2 = " << v2
             << " vs oracle " << ref2 << " (rel " << std::abs(v2 / ref2 - 1) << ")";
    o.check(std::abs(v1 / cauchy - 1) < 0.01, "k=1");
    o.check(std::abs(v2 / ref2 - 1) < 0.01, "k=2");
    return o;
}

Outcome c8()
{
    Outcome o;
    for (int k : {1, 2}) {
        const double ref = oracle_cache().oracle(builtin("k-icosahedron"), k, kOracleSamples);
        const double v = estimate("k-icosahedron", k, 1000, Mode::Qmc);
        o.detail << "I_3," << k << " = " << v << " vs oracle " << ref << " (rel " << std::abs(v / ref - 1) << "); ";
        o.check(std::abs(v / ref - 1) < 0.01, "k=" + std::to_string(k));
    }
    return o;
}

Outcome c9()
{
    Outcome o;
    const double exact = 16.0 / (3.0 * std::numbers::pi);
    const double v = estimate("4-cube", 3, 10'000, Mode::Qmc);
    o.detail << "I_4,3 = " << v << " vs 16/(3pi) = " << exact << " (rel " << std::abs(v / exact - 1)
             << "); published range 1.665-1.682 shown for comparison only";
    o.check(std::abs(v / exact - 1) < 0.01, "4-cube");
    return o;
}

Outcome c10()
{
    Outcome o;
    for (Mode mode : {Mode::Random, Mode::Qmc, Mode::QmcNoVeech}) {
        for (int k : {1, 2}) {
            ExperimentSpec s;
            s.polytope = builtin("3-cube");
            s.n = 3;
            s.k = k;
            s.samples = 1000;
            s.mode = mode;
            const double base = run(s).estimate;
            s.polytope = s.polytope.scaled(2.0);
            const double ratio = run(s).estimate / base;
            const double want = k == 1 ? 4.0 : 2.0;
            o.detail << to_string(mode) << " k=" << k << " ratio-" << want << " " << ratio - want << "; ";
            o.check(std::abs(ratio - want) < 1e-12, to_string(mode) + " k=" + std::to_string(k));
        }
    }
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome c11()
{
    Outcome o;
    const auto root = std::filesystem::temp_directory_path() / "orthoqmc_acceptance_determinism";
    std::filesystem::remove_all(root);
    for (const char* run_dir : {"a", "b"}) {
        cli::TablesOptions opts;
        opts.out_dir = root / run_dir;
        opts.reference_samples = 20'000;
        cli::reproduce_tables(opts);
    }
    for (const char* file : {"table1.csv", "table2.csv", "figure1.csv", "summary.json"}) {
        const auto a = slurp(root / "a" / file);
        const auto b = slurp(root / "b" / file);
        o.detail << file << " " << a.size() << " bytes " << (a == b ? "identical" : "DIFFER") << "; ";
        o.check(!a.empty() && a == b, file);
    }
    std::filesystem::remove_all(root);
    return o;
}

Outcome c12()
{
    Outcome o;
    o.detail << "[1] ";
    orthogonality(o, {Mode::QmcNoVeech});
    o.detail << "[5] ";
    moments(o, {Mode::QmcNoVeech});
    o.detail << "[6] ";
    cube(o, Mode::QmcNoVeech);
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"orthogonality invariant, all modes", c1},
        {"coset map correctness", c2},
        {"convolution indexing", c3},
        {"Veech generator and Champernowne digits", c4},
        {"sphere, group and Grassmann moments", c5},
        {"3-cube Crofton, qmc N=1000", c6},
        {"3-simplex Crofton, N=10000", c7},
        {"Kirkman icosahedron, N=1000", c8},
        {"4-cube mean width, N=10000", c9},
        {"scaling equivariance", c10},
        {"reproduce-tables determinism", c11},
        {"qmc-noveech under criteria 1, 5, 6", c12},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && only != static_cast<int>(i + 1)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("%s  criterion %2zu  %-42s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d failed, total %.1fs\n", failures, total);
    return failures == 0 ? 0 : 1;
}
