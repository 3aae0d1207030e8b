#pragma once

#include "orthoqmc/lowdisc.hpp"
#include "orthoqmc/sphere_map.hpp"
#include "orthoqmc/udsg.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace orthoqmc {

using Matrix = Eigen::MatrixXd;

// Orthogonality defect above which an accumulated product is re-orthonormalised.
inline constexpr double kRepairThreshold = 1e-10;

// Element of O(n), n >= 2.
class OrthoMatrix {
public:
    // Validates max|G^T G - I| <= tol; throws DegenerateInput otherwise.
    static OrthoMatrix checked(Matrix m, double tol = kRepairThreshold);
    // Caller guarantees orthogonality (products of orthogonal factors).
    static OrthoMatrix unchecked(Matrix m) { return OrthoMatrix(std::move(m)); }
    static OrthoMatrix identity(Eigen::Index n) { return OrthoMatrix(Matrix::Identity(n, n)); }

    const Matrix& matrix() const { return m_; }
    Eigen::Index n() const { return m_.rows(); }
    double operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    double orthogonality_defect() const;
    double determinant() const { return m_.determinant(); }

    OrthoMatrix operator*(const OrthoMatrix& rhs) const { return OrthoMatrix(m_ * rhs.m_); }

private:
    explicit OrthoMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

// max_{ij} |(G^T G - I)_{ij}|
double orthogonality_defect(const Matrix& m);

// Modified Gram-Schmidt on the columns, in place.
void reorthonormalize(Matrix& m);

// [[cos phi, sin phi], [-t sin phi, t cos phi]] with t = +1 or -1.
OrthoMatrix o2_from_angle(double phi, int sign);

// O(2) element from the m-th point of a 2-D sequence: phi = 2 pi u_0, t = +1 iff u_1 < 1/2.
OrthoMatrix o2_element(const SequenceSpec& spec, std::uint64_t m);

// Coset representative phi(x): I if x == e_1, else the reflection I - 2 v v^T / (v^T v), v = e_1 - x.
// phi(x) e_1 == x. Throws DegenerateInput if |x| deviates from 1 by more than 1e-8.
OrthoMatrix coset_rep(const SpherePoint& x);

struct ConvolutionIndex {
    std::uint64_t m;
    std::uint64_t i; // index into the sphere sequence
    std::uint64_t j; // index into the subgroup sequence
};

// Index pair of the m-th term of the convolution (x_i) * (y_j):
// with (k-1)^2 < m <= k^2, m = (k-1)^2 + 2i - 1 -> (k, i) and m = (k-1)^2 + 2i -> (i, k).
ConvolutionIndex convolution_index(std::uint64_t m);

// Block embedding of h in O(n-1) as the stabiliser of e_1 in O(n).
Matrix embed_stabilizer(const Matrix& h);

// T^{-1}(x, h) = phi(x) * embed(h). Requires dim x == h.n() + 1.
OrthoMatrix t_inverse(const SpherePoint& x, const OrthoMatrix& h);

// Default permutation seed for scrambled-Halton inputs.
inline constexpr std::uint64_t kDefaultPermutationSeed = 20140521;

struct OrthoSequenceSpec {
    std::size_t n = 3;
    // sphere_specs[i - 3] drives the sphere S^{i-1} used at recursion level i, 3 <= i <= n.
    std::vector<SequenceSpec> sphere_specs;
    SequenceSpec o2_spec;
    bool veech = true;
    GeneratorSpec generator;

    // Every level draws on the first primes of its own dimension.
    static OrthoSequenceSpec defaults(std::size_t n, bool veech = true,
                                      SequenceKind kind = SequenceKind::ScrambledHalton,
                                      std::uint64_t permutation_seed = kDefaultPermutationSeed);

    void validate() const;
    const SequenceSpec& sphere_spec(std::size_t level) const { return sphere_specs.at(level - 3); }
};

// Quasi-random sequence in O(n) built by the subgroup recursion. Streaming and
// memoised random access share the same arithmetic. Not thread-safe; use one
// instance per consumer.
class OrthoSequence {
public:
    explicit OrthoSequence(OrthoSequenceSpec spec);

    const OrthoSequenceSpec& spec() const { return spec_; }

    // Elements 1, 2, 3, ... in order.
    OrthoMatrix next();
    // Element m >= 1. Requests behind the top-level accumulator restart it.
    OrthoMatrix element(std::uint64_t m);

    std::uint64_t position() const { return position_; }
    // Number of re-orthonormalisations applied so far.
    std::size_t repair_count() const { return repairs_; }

private:
    struct Level {
        std::size_t dim = 2;
        std::optional<SphereSequence> sphere;
        std::optional<LowDiscrepancySequence> plane; // level 2 only
        std::vector<std::optional<Matrix>> z_cache;
        std::vector<Matrix> prefix;                  // outputs 1..size, lower levels
        Matrix acc;                                  // top level accumulator
        std::uint64_t acc_index = 0;
    };

    const Matrix& level_output(std::size_t level, std::uint64_t m);
    Matrix level_output_top(std::uint64_t m);
    Matrix raw_element(std::size_t level, std::uint64_t m);
    const Matrix& cached_raw(std::size_t level, std::uint64_t m);
    std::uint64_t r_at(std::uint64_t j);
    Matrix multiply(const Matrix& a, const Matrix& b);

    OrthoSequenceSpec spec_;
    std::vector<Level> levels_; // levels_[i] serves O(i); entries 0 and 1 unused
    VeechGenerator veech_;
    std::vector<std::uint64_t> r_;
    std::uint64_t position_ = 0;
    std::size_t repairs_ = 0;
};

// Random-access element m of the sequence, recomputed from scratch with no shared state.
// With veech set the level products are rebuilt through udsg::generate in O(m).
OrthoMatrix ortho_element(const OrthoSequenceSpec& spec, std::uint64_t m);

// Uniform random element of O(n) by the same subgroup recursion with pseudo-random inputs.
OrthoMatrix random_ortho(std::size_t n, std::mt19937_64& rng);

// Uniform random point of S^{n-1} (normalised standard normals).
SpherePoint random_sphere_point(std::size_t n, std::mt19937_64& rng);

class RandomOrthoSequence {
public:
    RandomOrthoSequence(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {}
    OrthoMatrix next() { return random_ortho(n_, rng_); }

private:
    std::size_t n_;
    std::mt19937_64 rng_;
};

} // namespace orthoqmc
