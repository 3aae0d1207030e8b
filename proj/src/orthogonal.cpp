#include "orthoqmc/orthogonal.hpp"

#include "orthoqmc/error.hpp"

#include <cmath>
#include <numbers>

namespace orthoqmc {

namespace {

constexpr double kUnitTolerance = 1e-8;
constexpr double kAtPoleTolerance = 1e-12;

Matrix coset_matrix(const Eigen::VectorXd& x)
{
    const Eigen::Index n = x.size();
    const double norm = x.norm();
    if (std::abs(norm - 1.0) > kUnitTolerance)
        throw DegenerateInput("coset_rep: sphere point is not a unit vector (norm " + std::to_string(norm) + ")");

    Eigen::VectorXd v = -x;
    v[0] += 1.0;
    if (v.norm() < kAtPoleTolerance) return Matrix::Identity(n, n);
    const double c = v.squaredNorm();
    return Matrix::Identity(n, n) - (2.0 / c) * v * v.transpose();
}

Matrix t_inverse_matrix(const Eigen::VectorXd& x, const Matrix& h)
{
    if (x.size() != h.rows() + 1)
        throw DimensionMismatch("t_inverse: sphere point must have dimension h.n() + 1");
    return coset_matrix(x) * embed_stabilizer(h);
}

Matrix o2_matrix(double phi, int sign)
{
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Matrix m(2, 2);
    m << c, s, -sign * s, sign * c;
    return m;
}

Matrix o2_from_point(const UnitPoint& u)
{
    return o2_matrix(2.0 * std::numbers::pi * u[0], u[1] < 0.5 ? 1 : -1);
}

// Product with drift repair; the streaming and reconstruction paths both go through here.
Matrix repaired_product(const Matrix& a, const Matrix& b, std::size_t* repairs)
{
    Matrix p = a * b;
    if (orthogonality_defect(p) > kRepairThreshold) {
        reorthonormalize(p);
        if (repairs) ++*repairs;
    }
    return p;
}

} // namespace

double orthogonality_defect(const Matrix& m)
{
    return (m.transpose() * m - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

void reorthonormalize(Matrix& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < j; ++i) m.col(j) -= m.col(i).dot(m.col(j)) * m.col(i);
        m.col(j).normalize();
    }
}

double OrthoMatrix::orthogonality_defect() const
{
    return orthoqmc::orthogonality_defect(m_);
}

OrthoMatrix OrthoMatrix::checked(Matrix m, double tol)
{
    if (m.rows() != m.cols() || m.rows() < 2) throw DimensionMismatch("orthogonal matrix must be square with n >= 2");
    if (!m.allFinite()) throw DegenerateInput("orthogonal matrix has non-finite entries");
    if (orthoqmc::orthogonality_defect(m) > tol) throw DegenerateInput("matrix is not orthogonal");
    return OrthoMatrix(std::move(m));
}

OrthoMatrix o2_from_angle(double phi, int sign)
{
    if (sign != 1 && sign != -1) throw DomainError("o2_from_angle: sign must be +1 or -1");
    return OrthoMatrix::unchecked(o2_matrix(phi, sign));
}

OrthoMatrix o2_element(const SequenceSpec& spec, std::uint64_t m)
{
    if (spec.dims != 2) throw DimensionMismatch("o2_element needs a 2-D sequence");
    return OrthoMatrix::unchecked(o2_from_point(point_at(spec, m)));
}

OrthoMatrix coset_rep(const SpherePoint& x)
{
    if (x.dim() < 2) throw DomainError("coset_rep: dimension must be >= 2");
    return OrthoMatrix::unchecked(coset_matrix(x.coords));
}

ConvolutionIndex convolution_index(std::uint64_t m)
{
    if (m < 1) throw DomainError("convolution_index: m must be >= 1");
    // k - 1 = floor(sqrt(m - 1))
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m - 1)));
    while (root * root > m - 1) --root;
    while ((root + 1) * (root + 1) <= m - 1) ++root;
    const std::uint64_t k = root + 1;
    const std::uint64_t d = m - root * root;
    if (d % 2 == 1) return {m, k, (d + 1) / 2};
    return {m, d / 2, k};
}

Matrix embed_stabilizer(const Matrix& h)
{
    const Eigen::Index n = h.rows() + 1;
    Matrix e = Matrix::Zero(n, n);
    e(0, 0) = 1.0;
    e.bottomRightCorner(n - 1, n - 1) = h;
    return e;
}

OrthoMatrix t_inverse(const SpherePoint& x, const OrthoMatrix& h)
{
    return OrthoMatrix::unchecked(t_inverse_matrix(x.coords, h.matrix()));
}

OrthoSequenceSpec OrthoSequenceSpec::defaults(std::size_t n, bool veech, SequenceKind kind, std::uint64_t permutation_seed)
{
    if (n < 2) throw DomainError("O(n) needs n >= 2");
    OrthoSequenceSpec spec;
    spec.n = n;
    spec.veech = veech;
    auto make = [&](std::size_t dims) {
        SequenceSpec s;
        s.kind = kind;
        s.dims = dims;
        s.bases = first_primes(dims);
        s.permutation_seed = permutation_seed;
        return s;
    };
    spec.o2_spec = make(2);
    for (std::size_t level = 3; level <= n; ++level) spec.sphere_specs.push_back(make(sphere_input_dims(level)));
    return spec;
}

void OrthoSequenceSpec::validate() const
{
    if (n < 2) throw DomainError("O(n) needs n >= 2");
    if (sphere_specs.size() != (n >= 3 ? n - 2 : 0))
        throw DimensionMismatch("one sphere sequence per recursion level 3..n is required");
    for (std::size_t level = 3; level <= n; ++level) {
        const auto& s = sphere_spec(level);
        s.validate();
        if (s.dims != sphere_input_dims(level))
            throw DimensionMismatch("sphere sequence for level " + std::to_string(level) + " has wrong dimension");
    }
    o2_spec.validate();
    if (o2_spec.dims != 2) throw DimensionMismatch("O(2) sequence must be two-dimensional");
    generator.validate();
}

// --- streaming sequence -----------------------------------------------------

OrthoSequence::OrthoSequence(OrthoSequenceSpec spec)
    : spec_(std::move(spec)), veech_(spec_.generator)
{
    spec_.validate();
    levels_.resize(spec_.n + 1);
    levels_[2].plane.emplace(spec_.o2_spec);
    for (std::size_t level = 3; level <= spec_.n; ++level) {
        levels_[level].dim = level;
        levels_[level].sphere.emplace(level, spec_.sphere_spec(level));
    }
}

std::uint64_t OrthoSequence::r_at(std::uint64_t j)
{
    while (r_.size() < j) r_.push_back(veech_.next().r);
    return r_[j - 1];
}

Matrix OrthoSequence::multiply(const Matrix& a, const Matrix& b)
{
    return repaired_product(a, b, &repairs_);
}

Matrix OrthoSequence::raw_element(std::size_t level, std::uint64_t m)
{
    if (level == 2) return o2_from_point(levels_[2].plane->point(m));
    const auto idx = convolution_index(m);
    const Matrix& h = level_output(level - 1, idx.j);
    const SpherePoint x = levels_[level].sphere->point(idx.i);
    return t_inverse_matrix(x.coords, h);
}

const Matrix& OrthoSequence::cached_raw(std::size_t level, std::uint64_t m)
{
    auto& cache = levels_[level].z_cache;
    if (cache.size() < m) cache.resize(m);
    if (!cache[m - 1]) {
        Matrix z = raw_element(level, m);
        levels_[level].z_cache[m - 1] = std::move(z);
    }
    return *levels_[level].z_cache[m - 1];
}

const Matrix& OrthoSequence::level_output(std::size_t level, std::uint64_t m)
{
    if (level == 2 || !spec_.veech) return cached_raw(level, m);
    auto& prefix = levels_[level].prefix;
    while (prefix.size() < m) {
        const std::uint64_t j = prefix.size() + 1;
        const Matrix& z = cached_raw(level, r_at(j));
        Matrix w = prefix.empty() ? multiply(Matrix::Identity(level, level), z) : multiply(prefix.back(), z);
        prefix.push_back(std::move(w));
    }
    return prefix[m - 1];
}

Matrix OrthoSequence::level_output_top(std::uint64_t m)
{
    const std::size_t top = spec_.n;
    if (top == 2 || !spec_.veech) return raw_element(top, m);
    Level& L = levels_[top];
    if (L.acc_index == 0 || m < L.acc_index) {
        L.acc = Matrix::Identity(top, top);
        L.acc_index = 0;
    }
    while (L.acc_index < m) {
        const Matrix& z = cached_raw(top, r_at(L.acc_index + 1));
        L.acc = multiply(L.acc, z);
        ++L.acc_index;
    }
    return L.acc;
}

OrthoMatrix OrthoSequence::element(std::uint64_t m)
{
    if (m < 1) throw DomainError("sequence index must be >= 1");
    return OrthoMatrix::unchecked(level_output_top(m));
}

OrthoMatrix OrthoSequence::next()
{
    return element(++position_);
}

// --- pure reconstruction ----------------------------------------------------

namespace {

class Reconstruction {
public:
    explicit Reconstruction(const OrthoSequenceSpec& spec)
        : spec_(spec), plane_(spec.o2_spec), veech_(spec.generator)
    {
        for (std::size_t level = 3; level <= spec.n; ++level) spheres_.emplace_back(level, spec.sphere_spec(level));
    }

    Matrix level(std::size_t i, std::uint64_t m)
    {
        if (i == 2) return o2_from_point(plane_.point(m));
        if (!spec_.veech) return z(i, m);
        while (r_.size() < m) r_.push_back(veech_.next().r);
        // The recursion below may grow r_.
        const std::vector<std::uint64_t> r(r_.begin(), r_.begin() + static_cast<std::ptrdiff_t>(m));
        return generate(
            std::span<const std::uint64_t>(r), m,
            [&](std::uint64_t j) { return z(i, j); },
            [](const Matrix& a, const Matrix& b) { return repaired_product(a, b, nullptr); },
            Matrix(Matrix::Identity(i, i)));
    }

private:
    Matrix z(std::size_t i, std::uint64_t m)
    {
        const auto idx = convolution_index(m);
        const Matrix h = level(i - 1, idx.j);
        return t_inverse_matrix(spheres_[i - 3].point(idx.i).coords, h);
    }

    const OrthoSequenceSpec& spec_;
    LowDiscrepancySequence plane_;
    std::vector<SphereSequence> spheres_;
    VeechGenerator veech_;
    std::vector<std::uint64_t> r_;
};

} // namespace

OrthoMatrix ortho_element(const OrthoSequenceSpec& spec, std::uint64_t m)
{
    if (m < 1) throw DomainError("sequence index must be >= 1");
    spec.validate();
    Reconstruction rec(spec);
    return OrthoMatrix::unchecked(rec.level(spec.n, m));
}

// --- random baseline --------------------------------------------------------

SpherePoint random_sphere_point(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    double norm = 0.0;
    do {
        for (auto& c : v) c = normal(rng);
        norm = v.norm();
    } while (norm == 0.0);
    return SpherePoint{v / norm};
}

OrthoMatrix random_ortho(std::size_t n, std::mt19937_64& rng)
{
    if (n < 2) throw DomainError("O(n) needs n >= 2");
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::bernoulli_distribution coin(0.5);
    const double phi = angle(rng);
    Matrix g = o2_matrix(phi, coin(rng) ? 1 : -1);
    for (std::size_t level = 3; level <= n; ++level) {
        const SpherePoint x = random_sphere_point(level, rng);
        g = t_inverse_matrix(x.coords, g);
    }
    return OrthoMatrix::unchecked(std::move(g));
}

} // namespace orthoqmc
