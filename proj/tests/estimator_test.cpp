#include "orthoqmc/error.hpp"
#include "orthoqmc/estimator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace orthoqmc;

namespace {

ExperimentSpec spec_for(const std::string& label, int k, std::uint64_t samples, Mode mode,
                        std::vector<std::uint64_t> trace = {})
{
    ExperimentSpec s;
    s.polytope = named_polytope(label);
    s.n = static_cast<int>(s.polytope.n());
    s.k = k;
    s.samples = samples;
    s.mode = mode;
    s.trace_points = std::move(trace);
    return s;
}

} // namespace

TEST(Mode, Names)
{
    EXPECT_EQ(mode_from_string("qr"), Mode::Qmc);
    EXPECT_EQ(mode_from_string("qmc-noveech"), Mode::QmcNoVeech);
    EXPECT_EQ(mode_from_string("qr-noveech"), Mode::QmcNoVeech);
    EXPECT_EQ(to_string(Mode::Random), "random");
    EXPECT_THROW(mode_from_string("sobol"), DomainError);
}

TEST(ExperimentSpec, Validation)
{
    auto s = spec_for("3-cube", 1, 10, Mode::Qmc);
    EXPECT_NO_THROW(s.validate());
    s.k = 3;
    EXPECT_THROW(s.validate(), DomainError);
    s.k = 1;
    s.samples = 0;
    EXPECT_THROW(s.validate(), DomainError);
    s.samples = 10;
    s.trace_points = {5, 2};
    EXPECT_THROW(s.validate(), DomainError);
    s.trace_points = {11};
    EXPECT_THROW(s.validate(), DomainError);
    s.trace_points = {};
    s.n = 4;
    s.k = 2;
    EXPECT_THROW(s.validate(), DimensionMismatch);
}

TEST(ExperimentSpec, ResolvedSequenceFollowsMode)
{
    auto s = spec_for("3-cube", 1, 10, Mode::QmcNoVeech);
    EXPECT_FALSE(s.resolved_sequence().veech);
    s.mode = Mode::Qmc;
    EXPECT_TRUE(s.resolved_sequence().veech);
}

TEST(Run, CubeQmcK1)
{
    const auto t = run(spec_for("3-cube", 1, 1000, Mode::Qmc));
    EXPECT_NEAR(t.estimate, 1.5, 0.02);
    EXPECT_EQ(t.repairs, 0u);
}

TEST(Run, CubeQmcK2)
{
    EXPECT_NEAR(run(spec_for("3-cube", 2, 1000, Mode::Qmc)).estimate, 1.5, 0.02);
}

TEST(Run, SimplexMatchesCauchy)
{
    const double cauchy = (1.5 + std::sqrt(3.0) / 2.0) / 4.0;
    EXPECT_NEAR(run(spec_for("3-simplex", 1, 1000, Mode::Qmc)).estimate, cauchy, 0.01);
}

TEST(Run, FourCubeMeanWidth)
{
    const double exact = 16.0 / (3.0 * std::numbers::pi);
    EXPECT_NEAR(run(spec_for("4-cube", 3, 10000, Mode::Qmc)).estimate, exact, 0.01 * exact);
}

TEST(Run, DeterministicForEveryMode)
{
    for (Mode mode : {Mode::Random, Mode::Qmc, Mode::QmcNoVeech}) {
        const auto s = spec_for("k-icosahedron", 2, 300, mode, {10, 100, 300});
        const auto a = run(s);
        const auto b = run(s);
        EXPECT_EQ(a.estimate, b.estimate);
        ASSERT_EQ(a.points.size(), b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].value, b.points[i].value);
    }
}

TEST(Run, SeedChangesRandomMode)
{
    auto s = spec_for("3-cube", 1, 100, Mode::Random);
    const double a = run(s).estimate;
    s.seed = 99;
    EXPECT_NE(run(s).estimate, a);
}

TEST(Run, EstimateLiesWithinSampleRange)
{
    for (Mode mode : {Mode::Random, Mode::Qmc, Mode::QmcNoVeech}) {
        const auto t = run(spec_for("r-polytope-3-50", 1, 500, mode));
        EXPECT_GE(t.min_sample, 0.0);
        EXPECT_LE(t.min_sample, t.estimate);
        EXPECT_LE(t.estimate, t.max_sample);
    }
}

TEST(Run, ScalingIsExactlyHomogeneous)
{
    for (int k : {1, 2}) {
        for (Mode mode : {Mode::Random, Mode::Qmc, Mode::QmcNoVeech}) {
            auto s = spec_for("3-cube", k, 200, mode);
            const double base = run(s).estimate;
            s.polytope = s.polytope.scaled(2.0);
            const double ratio = run(s).estimate / base;
            EXPECT_NEAR(ratio, std::pow(2.0, 3 - k), 1e-12);
        }
    }
}

TEST(Run, TraceHoldsPartialMeans)
{
    auto s = spec_for("3-simplex", 2, 50, Mode::Qmc, {1, 7, 50});
    const auto t = run(s);
    ASSERT_EQ(t.points.size(), 3u);
    EXPECT_EQ(t.points.back().value, t.estimate);

    OrthoSequence seq(s.resolved_sequence());
    double sum = 0.0;
    for (int m = 1; m <= 7; ++m) {
        const double f = projection_measure(s.polytope, seq.next(), 2);
        sum += f;
        if (m == 1) EXPECT_EQ(t.points[0].value, f);
    }
    EXPECT_NEAR(t.points[1].value, sum / 7.0, 1e-15);
}

TEST(IntrinsicVolume, CubeExamples)
{
    ConvergenceTrace t;
    t.estimate = 1.5;
    EXPECT_NEAR(intrinsic_volume(t, 3, 1), 3.0, 1e-14);
    EXPECT_NEAR(intrinsic_volume(t, 3, 2), 3.0, 1e-14);
    t.estimate = 16.0 / (3.0 * std::numbers::pi);
    EXPECT_NEAR(intrinsic_volume(t, 4, 3), 4.0, 1e-14);
}

TEST(Compare, TableShape)
{
    std::vector<ExperimentSpec> specs{spec_for("k-icosahedron", 1, 1000, Mode::Random, {10, 100, 1000}),
                                      spec_for("k-icosahedron", 1, 1000, Mode::Qmc, {10, 100, 1000})};
    const auto r = compare(specs);
    EXPECT_EQ(r.rows.size(), 6u);
    EXPECT_EQ(r.trace_points, (std::vector<std::uint64_t>{10, 100, 1000}));
    EXPECT_EQ(r.rows[0].mode, Mode::Random);
    EXPECT_EQ(r.rows[3].mode, Mode::Qmc);
    EXPECT_FALSE(r.rows[0].abs_error.has_value());
}

TEST(Compare, CubeErrorsAgainstReference)
{
    std::vector<ExperimentSpec> specs{spec_for("3-cube", 1, 1000, Mode::Random, {10, 100, 1000}),
                                      spec_for("3-cube", 1, 1000, Mode::Qmc, {10, 100, 1000})};
    const auto r = compare(specs, 1.5);
    for (const auto& row : r.rows) {
        ASSERT_TRUE(row.abs_error);
        EXPECT_NEAR(row.intrinsic, 2.0 * row.value, 1e-14);
        if (row.m == 1000) EXPECT_LT(*row.abs_error, 0.03);
    }
}

TEST(Compare, RejectsMismatches)
{
    EXPECT_THROW(compare({}), DomainError);
    EXPECT_THROW(compare({spec_for("3-cube", 1, 10, Mode::Qmc, {5}), spec_for("3-cube", 1, 10, Mode::Random, {10})}),
                 DomainError);
    EXPECT_THROW(compare({spec_for("3-cube", 1, 10, Mode::Qmc, {5}), spec_for("3-cube", 2, 10, Mode::Random, {5})}),
                 DomainError);
    EXPECT_THROW(compare({spec_for("3-cube", 1, 10, Mode::Qmc, {5}), spec_for("3-simplex", 1, 10, Mode::Random, {5})}),
                 DomainError);
}

TEST(ModeAgreement, QmcAndRandomWithinThreePercent)
{
    const std::pair<const char*, int> cases[] = {
        {"3-simplex", 1}, {"3-simplex", 2}, {"3-cube", 1}, {"3-cube", 2}, {"k-icosahedron", 1},
        {"k-icosahedron", 2}, {"r-polytope-3-50", 1}, {"r-polytope-3-50", 2}, {"r-polytope-3-150", 1},
        {"r-polytope-3-150", 2}};
    for (auto [label, k] : cases) {
        const double q = run(spec_for(label, k, 10000, Mode::Qmc)).estimate;
        const double r = run(spec_for(label, k, 10000, Mode::Random)).estimate;
        EXPECT_LT(std::abs(q - r), 0.03 * r) << label << " k=" << k;
    }
}
