#pragma once

#include "orthoqmc/orthogonal.hpp"

#include <Eigen/Dense>

#include <optional>

namespace orthoqmc {

// k-dimensional linear subspace of R^n, 1 <= k <= n-1, held by an orthonormal basis.
class Subspace {
public:
    // Validates B^T B = I_k within 1e-10.
    static Subspace from_basis(Matrix basis);

    Eigen::Index n() const { return basis_.rows(); }
    Eigen::Index k() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

    // P = B B^T; independent of the chosen basis.
    Matrix projector() const { return basis_ * basis_.transpose(); }

private:
    friend Subspace beta_k(const OrthoMatrix& g, Eigen::Index k);
    friend Subspace complement(const Subspace& l);

    Subspace(Matrix basis, std::optional<Matrix> frame) : basis_(std::move(basis)), frame_(std::move(frame)) {}

    Matrix basis_;
    // Full orthonormal frame whose leading k columns are basis_, when known.
    std::optional<Matrix> frame_;
};

// Image of L_k = span(e_1..e_k) under g: the first k columns of g.
Subspace beta_k(const OrthoMatrix& g, Eigen::Index k);

// Orthogonal complement; uses the trailing columns of the generating frame when available.
Subspace complement(const Subspace& l);

// max |P_a - P_b|; zero iff both spans agree.
double projector_distance(const Subspace& a, const Subspace& b);

// Principal angles in [0, pi/2], ascending. Requires equal n.
Eigen::VectorXd principal_angles(const Subspace& a, const Subspace& b);

} // namespace orthoqmc
