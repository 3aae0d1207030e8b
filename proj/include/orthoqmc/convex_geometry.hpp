#pragma once

#include "orthoqmc/grassmann.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace orthoqmc {

// Convex polytope given by its vertices (convex hull implied).
struct Polytope {
    std::string label;
    Matrix vertices; // n x count, one vertex per column

    Eigen::Index n() const { return vertices.rows(); }
    Eigen::Index vertex_count() const { return vertices.cols(); }

    // Finite coordinates, n >= 1, at least n + 1 vertices.
    void validate() const;
    Polytope scaled(double s) const { return Polytope{label, vertices * s}; }
};

// Points in a d-dimensional subspace, d in {1,2,3}.
struct ProjectedPoints {
    Matrix points; // d x count

    Eigen::Index dim() const { return points.rows(); }
};

// Builtin labels: 3-cube, 4-cube, 3-simplex, 4-simplex, k-icosahedron.
std::vector<std::string> builtin_labels();
bool is_builtin(const std::string& label);
Polytope builtin(const std::string& label);

// `count` independent uniform points on S^{n-1}; the seed is recorded in the label.
Polytope random_spherical_polytope(std::size_t n, std::size_t count, std::uint64_t seed);

// JSON document {"n": int, "label": str, "vertices": [[...], ...]}.
Polytope polytope_from_json(const std::string& text);
std::string polytope_to_json(const Polytope& p);
Polytope load_polytope(const std::string& path);

// Coordinates of every vertex in the orthonormal basis of s: B^T v.
ProjectedPoints project(const Polytope& p, const Subspace& s);

// Same, with a raw n x d orthonormal basis (used on the estimator hot path).
ProjectedPoints project(const Polytope& p, const Eigen::Ref<const Matrix>& basis);

// Lebesgue measure of the convex hull: length (d=1), area (d=2) or volume (d=3).
// Degenerate (lower-dimensional) inputs give 0.
double hull_measure(const ProjectedPoints& pts);

double hull_length_1d(const Matrix& pts);
double hull_area_2d(const Matrix& pts);
double hull_volume_3d(const Matrix& pts);

// Volume of the j-dimensional unit ball, pi^{j/2} / Gamma(j/2 + 1).
double ball_volume(int j);

// c_{k,n} = binom(n,k) b_n / (b_k b_{n-k}), 0 <= k <= n-1.
double crofton_constant(int n, int k);

} // namespace orthoqmc

namespace orthoqmc {

// Default seed for random spherical polytopes named without an explicit seed.
inline constexpr std::uint64_t kDefaultPolytopeSeed = 1729;

// Resolves a builtin label or a random polytope name "r-polytope-<n>-<count>[-s<seed>]".
// Throws DomainError for anything else.
Polytope named_polytope(const std::string& label, std::uint64_t default_seed = kDefaultPolytopeSeed);

} // namespace orthoqmc
