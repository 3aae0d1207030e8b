#include "orthoqmc/grassmann.hpp"

#include "orthoqmc/error.hpp"

#include <algorithm>
#include <cmath>

namespace orthoqmc {

Subspace Subspace::from_basis(Matrix basis)
{
    if (basis.cols() < 1 || basis.cols() >= basis.rows())
        throw DomainError("subspace dimension k must satisfy 1 <= k <= n-1");
    if (!basis.allFinite() || orthogonality_defect(basis) > 1e-10)
        throw DegenerateInput("subspace basis must have orthonormal columns");
    return Subspace(std::move(basis), std::nullopt);
}

Subspace beta_k(const OrthoMatrix& g, Eigen::Index k)
{
    if (k < 1 || k > g.n() - 1) throw DomainError("beta_k: k must satisfy 1 <= k <= n-1");
    return Subspace(g.matrix().leftCols(k), g.matrix());
}

Subspace complement(const Subspace& l)
{
    const Eigen::Index n = l.n();
    const Eigen::Index k = l.k();
    if (l.frame_) {
        Matrix frame(n, n);
        frame << l.frame_->rightCols(n - k), l.frame_->leftCols(k);
        return Subspace(l.frame_->rightCols(n - k), std::move(frame));
    }
    Eigen::HouseholderQR<Matrix> qr(l.basis_);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix frame(n, n);
    frame << q.rightCols(n - k), l.basis_;
    return Subspace(q.rightCols(n - k), std::move(frame));
}

double projector_distance(const Subspace& a, const Subspace& b)
{
    if (a.n() != b.n()) throw DimensionMismatch("projector_distance: ambient dimensions differ");
    return (a.projector() - b.projector()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd principal_angles(const Subspace& a, const Subspace& b)
{
    if (a.n() != b.n()) throw DimensionMismatch("principal_angles: ambient dimensions differ");
    const Matrix cross = a.basis().transpose() * b.basis();
    Eigen::JacobiSVD<Matrix> svd(cross);
    Eigen::VectorXd s = svd.singularValues();
    Eigen::VectorXd angles(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) angles[i] = std::acos(std::clamp(s[i], -1.0, 1.0));
    std::sort(angles.begin(), angles.end());
    return angles;
}

} // namespace orthoqmc
