#pragma once

#include "orthoqmc/lowdisc.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace orthoqmc {

// Unit vector in R^n, n >= 2.
struct SpherePoint {
    Eigen::VectorXd coords;

    Eigen::Index dim() const { return coords.size(); }
};

// Smallest p accepted by the Box-Muller radius; p is clamped to [eps, 1 - eps].
inline constexpr double kBoxMullerClamp = 0x1p-53;

// Box-Muller map of an even-dimensional cube point (p1,q1,...,pk,qk) onto S^{2k-1}.
SpherePoint to_sphere_even(const UnitPoint& u);

// As to_sphere_even with xi_1 dropped, giving a point on S^{2k-2}. Requires 2k >= 4.
SpherePoint to_sphere_odd(const UnitPoint& u);

// Cube dimension consumed by a point on S^{n-1}: n for even n, n + 1 for odd n.
std::size_t sphere_input_dims(std::size_t n);

// Index-th point of the sphere sequence on S^{n-1} driven by `spec`.
SpherePoint sphere_sequence(std::size_t n, const SequenceSpec& spec, std::uint64_t index);

// Same map with a prebuilt low-discrepancy generator.
class SphereSequence {
public:
    SphereSequence(std::size_t n, SequenceSpec spec);

    std::size_t n() const { return n_; }
    const SequenceSpec& spec() const { return source_.spec(); }
    SpherePoint point(std::uint64_t index) const;

private:
    std::size_t n_;
    LowDiscrepancySequence source_;
};

} // namespace orthoqmc
