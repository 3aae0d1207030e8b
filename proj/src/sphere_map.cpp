#include "orthoqmc/sphere_map.hpp"

#include "orthoqmc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orthoqmc {

namespace {

// Gaussian-like components (xi_1, eta_1, ..., xi_k, eta_k) before normalisation.
Eigen::VectorXd box_muller(const UnitPoint& u)
{
    const auto d = static_cast<Eigen::Index>(u.dim());
    Eigen::VectorXd out(d);
    for (Eigen::Index i = 0; i < d; i += 2) {
        const double p = std::clamp(u[i], kBoxMullerClamp, 1.0 - kBoxMullerClamp);
        const double q = u[i + 1];
        const double radius = std::sqrt(-std::log(p));
        const double angle = 2.0 * std::numbers::pi * q;
        out[i] = radius * std::cos(angle);
        out[i + 1] = radius * std::sin(angle);
    }
    return out;
}

SpherePoint normalised(Eigen::VectorXd v)
{
    const double r = v.norm();
    if (!(r > 0.0) || !std::isfinite(r)) throw DegenerateInput("Box-Muller radius vanished");
    return SpherePoint{v / r};
}

} // namespace

SpherePoint to_sphere_even(const UnitPoint& u)
{
    if (u.dim() < 2 || u.dim() % 2 != 0) throw DomainError("to_sphere_even: input dimension must be even and >= 2");
    return normalised(box_muller(u));
}

SpherePoint to_sphere_odd(const UnitPoint& u)
{
    if (u.dim() < 4 || u.dim() % 2 != 0) throw DomainError("to_sphere_odd: input dimension must be even and >= 4");
    const Eigen::VectorXd full = box_muller(u);
    return normalised(full.tail(full.size() - 1));
}

std::size_t sphere_input_dims(std::size_t n)
{
    return n % 2 == 0 ? n : n + 1;
}

SpherePoint sphere_sequence(std::size_t n, const SequenceSpec& spec, std::uint64_t index)
{
    return SphereSequence(n, spec).point(index);
}

SphereSequence::SphereSequence(std::size_t n, SequenceSpec spec)
    : n_(n), source_(std::move(spec))
{
    if (n_ < 2) throw DomainError("sphere dimension n must be >= 2");
    if (source_.dims() != sphere_input_dims(n_))
        throw DimensionMismatch("sphere S^{n-1} needs a sequence of dimension " + std::to_string(sphere_input_dims(n_)));
}

SpherePoint SphereSequence::point(std::uint64_t index) const
{
    const UnitPoint u = source_.point(index);
    return n_ % 2 == 0 ? to_sphere_even(u) : to_sphere_odd(u);
}

} // namespace orthoqmc
