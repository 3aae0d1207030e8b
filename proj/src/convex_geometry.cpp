#include "orthoqmc/convex_geometry.hpp"

#include "orthoqmc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

namespace orthoqmc {

namespace {

std::string lowercase(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Polytope unit_cube(int n)
{
    const Eigen::Index count = Eigen::Index{1} << n;
    Matrix v(n, count);
    for (Eigen::Index c = 0; c < count; ++c)
        for (int i = 0; i < n; ++i) v(i, c) = (c >> i) & 1 ? 1.0 : 0.0;
    return Polytope{std::to_string(n) + "-cube", v};
}

Polytope standard_simplex(int n)
{
    Matrix v = Matrix::Zero(n, n + 1);
    for (int i = 0; i < n; ++i) v(i, i + 1) = 1.0;
    return Polytope{std::to_string(n) + "-simplex", v};
}

// (+-9, +-6, +-6), (+-12, +-4, 0), (0, +-12, +-8), (+-6, 0, +-12)
Polytope kirkman_icosahedron()
{
    std::vector<std::array<double, 3>> pts;
    for (double a : {9.0, -9.0})
        for (double b : {6.0, -6.0})
            for (double c : {6.0, -6.0}) pts.push_back({a, b, c});
    for (double a : {12.0, -12.0})
        for (double b : {4.0, -4.0}) pts.push_back({a, b, 0.0});
    for (double b : {12.0, -12.0})
        for (double c : {8.0, -8.0}) pts.push_back({0.0, b, c});
    for (double a : {6.0, -6.0})
        for (double c : {12.0, -12.0}) pts.push_back({a, 0.0, c});

    Matrix v(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j)
        for (int i = 0; i < 3; ++i) v(i, static_cast<Eigen::Index>(j)) = pts[j][i];
    return Polytope{"k-icosahedron", v};
}

} // namespace

void Polytope::validate() const
{
    if (n() < 1) throw DomainError("polytope dimension must be >= 1");
    if (!vertices.allFinite()) throw DomainError("polytope '" + label + "' has non-finite coordinates");
    if (vertex_count() < n() + 1)
        throw DomainError("polytope '" + label + "' needs at least n+1 vertices");
}

std::vector<std::string> builtin_labels()
{
    return {"3-cube", "3-simplex", "k-icosahedron", "4-cube", "4-simplex"};
}

bool is_builtin(const std::string& label)
{
    const auto labels = builtin_labels();
    return std::find(labels.begin(), labels.end(), lowercase(label)) != labels.end();
}

Polytope builtin(const std::string& label)
{
    const std::string key = lowercase(label);
    if (key == "3-cube") return unit_cube(3);
    if (key == "4-cube") return unit_cube(4);
    if (key == "3-simplex") return standard_simplex(3);
    if (key == "4-simplex") return standard_simplex(4);
    if (key == "k-icosahedron") return kirkman_icosahedron();
    throw DomainError("unknown polytope label '" + label + "'");
}

Polytope random_spherical_polytope(std::size_t n, std::size_t count, std::uint64_t seed)
{
    if (n < 2) throw DomainError("random_spherical_polytope: n must be >= 2");
    if (count < n + 1) throw DomainError("random_spherical_polytope: count must be >= n+1");
    std::mt19937_64 rng(seed);
    Matrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(count));
    for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j) = random_sphere_point(n, rng).coords;
    std::ostringstream label;
    label << "r-polytope-" << n << "-" << count << "-s" << seed;
    return Polytope{label.str(), v};
}

Polytope named_polytope(const std::string& label, std::uint64_t default_seed)
{
    if (is_builtin(label)) return builtin(label);
    static const std::regex pattern(R"(r-polytope-(\d+)-(\d+)(?:-s(\d+))?)");
    std::smatch match;
    if (std::regex_match(label, match, pattern)) {
        const auto n = std::stoull(match[1].str());
        const auto count = std::stoull(match[2].str());
        const auto seed = match[3].matched ? std::stoull(match[3].str()) : default_seed;
        return random_spherical_polytope(n, count, seed);
    }
    throw DomainError("unknown polytope label '" + label + "'");
}

Polytope polytope_from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("polytope JSON does not parse: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("vertices"))
        throw DomainError("polytope JSON needs keys 'n' and 'vertices'");
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
        throw DomainError("polytope 'n' must be a positive integer");
    const auto n = doc["n"].get<Eigen::Index>();
    const auto& verts = doc["vertices"];
    if (!verts.is_array()) throw DomainError("polytope 'vertices' must be an array");

    Polytope p;
    p.label = doc.value("label", std::string("custom"));
    p.vertices.resize(n, static_cast<Eigen::Index>(verts.size()));
    for (std::size_t j = 0; j < verts.size(); ++j) {
        const auto& v = verts[j];
        if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != n)
            throw DomainError("vertex " + std::to_string(j) + " must be an array of n numbers");
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!v[i].is_number()) throw DomainError("vertex coordinates must be numbers");
            p.vertices(i, static_cast<Eigen::Index>(j)) = v[i].get<double>();
        }
    }
    p.validate();
    return p;
}

std::string polytope_to_json(const Polytope& p)
{
    nlohmann::json doc;
    doc["n"] = p.n();
    doc["label"] = p.label;
    doc["vertices"] = nlohmann::json::array();
    for (Eigen::Index j = 0; j < p.vertex_count(); ++j) {
        std::vector<double> v(p.vertices.col(j).data(), p.vertices.col(j).data() + p.n());
        doc["vertices"].push_back(v);
    }
    return doc.dump();
}

Polytope load_polytope(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open polytope file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return polytope_from_json(buf.str());
}

ProjectedPoints project(const Polytope& p, const Eigen::Ref<const Matrix>& basis)
{
    if (basis.rows() != p.n()) throw DimensionMismatch("project: subspace and polytope dimensions differ");
    if (basis.cols() < 1 || basis.cols() > 3) throw DomainError("project: target dimension must be 1, 2 or 3");
    return ProjectedPoints{basis.transpose() * p.vertices};
}

ProjectedPoints project(const Polytope& p, const Subspace& s)
{
    return project(p, s.basis());
}

double hull_measure(const ProjectedPoints& pts)
{
    switch (pts.dim()) {
    case 1: return hull_length_1d(pts.points);
    case 2: return hull_area_2d(pts.points);
    case 3: return hull_volume_3d(pts.points);
    default: throw DomainError("hull_measure: dimension must be 1, 2 or 3");
    }
}

double ball_volume(int j)
{
    if (j < 0) throw DomainError("ball_volume: dimension must be >= 0");
    return std::pow(std::numbers::pi, j / 2.0) / std::tgamma(j / 2.0 + 1.0);
}

double crofton_constant(int n, int k)
{
    if (n < 1 || k < 0 || k > n - 1) throw DomainError("crofton_constant: need 0 <= k <= n-1");
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
    return binom * ball_volume(n) / (ball_volume(k) * ball_volume(n - k));
}

} // namespace orthoqmc
