#include "orthoqmc/convex_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace orthoqmc {

namespace {

// Cross products (and triple products) below kFlatTolerance * scale^2 (scale^3) count as degenerate.
constexpr double kFlatTolerance = 1e-12;

double extent(const Matrix& pts)
{
    if (pts.cols() == 0) return 0.0;
    return (pts.rowwise().maxCoeff() - pts.rowwise().minCoeff()).maxCoeff();
}

using P2 = std::array<double, 2>;

double cross2(const P2& o, const P2& a, const P2& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

using P3 = Eigen::Vector3d;

struct Face {
    std::array<int, 3> v;
    bool alive = true;
};

double orient(const P3& a, const P3& b, const P3& c, const P3& p)
{
    return (b - a).cross(c - a).dot(p - a);
}

} // namespace

double hull_length_1d(const Matrix& pts)
{
    if (pts.cols() == 0) return 0.0;
    return pts.row(0).maxCoeff() - pts.row(0).minCoeff();
}

// Andrew's monotone chain, then the shoelace formula over the hull polygon.
double hull_area_2d(const Matrix& pts)
{
    const auto count = static_cast<std::size_t>(pts.cols());
    if (count < 3) return 0.0;
    const double scale = extent(pts);
    const double tol = kFlatTolerance * scale * scale;

    std::vector<P2> p(count);
    for (std::size_t i = 0; i < count; ++i) p[i] = {pts(0, i), pts(1, i)};
    std::sort(p.begin(), p.end());

    std::vector<P2> hull(2 * count);
    std::size_t h = 0;
    for (std::size_t i = 0; i < count; ++i) {
        while (h >= 2 && cross2(hull[h - 2], hull[h - 1], p[i]) <= tol) --h;
        hull[h++] = p[i];
    }
    for (std::size_t i = count - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross2(hull[h - 2], hull[h - 1], p[i]) <= tol) --h;
        hull[h++] = p[i];
    }
    if (h < 4) return 0.0; // closing point repeats the first one
    --h;

    double twice = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        const P2& a = hull[i];
        const P2& b = hull[(i + 1) % h];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return std::abs(twice) * 0.5;
}

// Incremental hull; volume as a fan of tetrahedra from the centroid of the seed tetrahedron.
double hull_volume_3d(const Matrix& pts)
{
    const auto count = static_cast<int>(pts.cols());
    if (count < 4) return 0.0;
    const double scale = extent(pts);
    const double tol2 = kFlatTolerance * scale * scale;
    const double tol3 = kFlatTolerance * scale * scale * scale;

    std::vector<P3> p(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = pts.col(i);

    // Seed tetrahedron: extreme point, farthest point, farthest from the line, farthest from the plane.
    int i0 = 0;
    for (int i = 1; i < count; ++i)
        if (p[i][0] < p[i0][0]) i0 = i;
    int i1 = -1;
    double best = 0.0;
    for (int i = 0; i < count; ++i) {
        const double d = (p[i] - p[i0]).squaredNorm();
        if (d > best) best = d, i1 = i;
    }
    if (i1 < 0) return 0.0;
    int i2 = -1;
    best = tol2;
    for (int i = 0; i < count; ++i) {
        const double d = (p[i1] - p[i0]).cross(p[i] - p[i0]).norm();
        if (d > best) best = d, i2 = i;
    }
    if (i2 < 0) return 0.0;
    int i3 = -1;
    best = tol3;
    for (int i = 0; i < count; ++i) {
        const double d = std::abs(orient(p[i0], p[i1], p[i2], p[i]));
        if (d > best) best = d, i3 = i;
    }
    if (i3 < 0) return 0.0;

    const P3 interior = (p[i0] + p[i1] + p[i2] + p[i3]) / 4.0;
    std::vector<Face> faces;
    auto add_face = [&](int a, int b, int c) {
        if (orient(p[a], p[b], p[c], interior) > 0.0) std::swap(b, c);
        faces.push_back(Face{{a, b, c}});
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    std::vector<int> visible;
    std::map<std::pair<int, int>, int> edges;
    for (int i = 0; i < count; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        visible.clear();
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            const Face& face = faces[f];
            if (face.alive && orient(p[face.v[0]], p[face.v[1]], p[face.v[2]], p[i]) > tol3) visible.push_back(f);
        }
        if (visible.empty()) continue;

        // Horizon: directed edges of visible faces whose reverse is not on a visible face.
        edges.clear();
        for (int f : visible) {
            const auto& v = faces[f].v;
            for (int e = 0; e < 3; ++e) edges[{v[e], v[(e + 1) % 3]}] = f;
            faces[f].alive = false;
        }
        for (const auto& [edge, face] : edges) {
            if (edges.count({edge.second, edge.first}) == 0) faces.push_back(Face{{edge.first, edge.second, i}});
        }
    }

    double volume = 0.0;
    for (const Face& face : faces) {
        if (!face.alive) continue;
        volume += orient(p[face.v[0]], p[face.v[1]], p[face.v[2]], interior);
    }
    // Outward faces see the interior point on their negative side.
    return std::abs(volume) / 6.0;
}

} // namespace orthoqmc
