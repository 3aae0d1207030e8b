#include "orthoqmc/error.hpp"
#include "orthoqmc/sphere_map.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace orthoqmc;

namespace {

const double kInvE = std::exp(-1.0);

void expect_coords(const SpherePoint& p, std::initializer_list<double> want)
{
    ASSERT_EQ(p.dim(), static_cast<Eigen::Index>(want.size()));
    Eigen::Index i = 0;
    for (double w : want) EXPECT_NEAR(p.coords[i++], w, 1e-14);
}

SequenceSpec sphere_spec(std::size_t n, SequenceKind kind = SequenceKind::ScrambledHalton)
{
    SequenceSpec s;
    s.kind = kind;
    s.dims = sphere_input_dims(n);
    s.permutation_seed = 5;
    return s;
}

} // namespace

TEST(ToSphereEven, HandValues)
{
    expect_coords(to_sphere_even({{kInvE, 0.0}}), {1.0, 0.0});
    expect_coords(to_sphere_even({{kInvE, 0.25}}), {0.0, 1.0});
    expect_coords(to_sphere_even({{kInvE, 0.0, kInvE, 0.0}}), {1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), 0.0});
}

TEST(ToSphereOdd, HandValues)
{
    expect_coords(to_sphere_odd({{kInvE, 0.0, kInvE, 0.0}}), {0.0, 1.0, 0.0});
    expect_coords(to_sphere_odd({{kInvE, 0.25, kInvE, 0.0}}), {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0});
}

TEST(ToSphere, RejectsWrongDimensions)
{
    EXPECT_THROW(to_sphere_even({{0.3}}), DomainError);
    EXPECT_THROW(to_sphere_even({{0.3, 0.2, 0.1}}), DomainError);
    EXPECT_THROW(to_sphere_odd({{0.3, 0.2}}), DomainError);
}

TEST(ToSphere, ClampsZeroRadiusCoordinate)
{
    // p = 0 would give log(0); p is clamped so the result stays finite and unit length.
    const auto p = to_sphere_even({{0.0, 0.1, 0.5, 0.7}});
    EXPECT_TRUE(p.coords.allFinite());
    EXPECT_NEAR(p.coords.norm(), 1.0, 1e-12);
}

TEST(ToSphere, UpperClampKeepsUnitNorm)
{
    const auto p = to_sphere_odd({{1.0 - kBoxMullerClamp, 0.0, 1.0 - kBoxMullerClamp, 0.0}});
    EXPECT_TRUE(p.coords.allFinite());
    EXPECT_NEAR(p.coords.norm(), 1.0, 1e-12);
}

TEST(SphereSequence, DispatchesOnParity)
{
    const auto s2 = sphere_spec(2);
    const auto u2 = point_at(s2, 7);
    EXPECT_EQ(sphere_sequence(2, s2, 7).coords, to_sphere_even(u2).coords);

    const auto s3 = sphere_spec(3);
    const auto u3 = point_at(s3, 7);
    EXPECT_EQ(sphere_sequence(3, s3, 7).coords, to_sphere_odd(u3).coords);
}

TEST(SphereSequence, RejectsMismatchedSpec)
{
    EXPECT_THROW(SphereSequence(3, sphere_spec(2)), DimensionMismatch);
    EXPECT_THROW(SphereSequence(1, sphere_spec(2)), DomainError);
}

TEST(SphereSequence, UnitNormForHaltonInputs)
{
    for (std::size_t n : {2, 3, 4, 5}) {
        const SphereSequence seq(n, sphere_spec(n, SequenceKind::Halton));
        for (std::uint64_t i = 1; i <= 1000; ++i) ASSERT_NEAR(seq.point(i).coords.norm(), 1.0, 1e-12);
    }
}

TEST(SphereSequence, MeanOnTwoSphereIsNearZero)
{
    const SphereSequence seq(3, sphere_spec(3));
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    const int count = 100'000;
    for (int i = 1; i <= count; ++i) mean += seq.point(static_cast<std::uint64_t>(i)).coords;
    mean /= count;
    EXPECT_LT(mean.cwiseAbs().maxCoeff(), 0.01);
}

class SphereUniformity : public ::testing::TestWithParam<std::size_t> {};

TEST_P(SphereUniformity, SecondMomentAndHemisphereBalance)
{
    const std::size_t n = GetParam();
    for (auto kind : {SequenceKind::Halton, SequenceKind::ScrambledHalton}) {
        const SphereSequence seq(n, sphere_spec(n, kind));
        const int count = 100'000;
        double second = 0.0;
        int upper = 0;
        for (int i = 1; i <= count; ++i) {
            const auto x = seq.point(static_cast<std::uint64_t>(i));
            ASSERT_NEAR(x.coords.norm(), 1.0, 1e-12);
            second += x.coords[0] * x.coords[0];
            upper += x.coords[0] > 0.0;
        }
        EXPECT_LT(std::abs(second / count - 1.0 / static_cast<double>(n)), 5e-3) << to_string(kind);
        EXPECT_LT(std::abs(static_cast<double>(upper) / count - 0.5), 0.01) << to_string(kind);
    }
}

INSTANTIATE_TEST_SUITE_P(Spheres, SphereUniformity, ::testing::Values(2, 3, 4, 5));
