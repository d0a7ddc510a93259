#pragma once
#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <vector>

#include "gravistoch/constants.hpp"
#include "gravistoch/linalg.hpp"

namespace gravistoch::linear_field {

// Metric signature diag(-1, +1, +1, +1); indices are raised by sign flips.
inline constexpr double metric_sign(int mu) { return mu == 0 ? -1.0 : 1.0; }
inline constexpr double minkowski(int mu, int nu) {
    return mu == nu ? metric_sign(mu) : 0.0;
}

// Symmetric 4x4 tensor stored as its 10 independent components.
struct Sym4 {
    std::array<double, 10> v{};

    static int index(int mu, int nu);
    double& at(int mu, int nu) { return v[index(mu, nu)]; }
    double at(int mu, int nu) const { return v[index(mu, nu)]; }

    // n^{mu nu} T_{mu nu}
    double invariant_trace() const;
    static Sym4 minkowski_metric();
};

// Regular 4D grid (t, x, y, z); spatial spacing is isotropic.
struct GridGeometry {
    std::array<std::size_t, 4> shape{};  // nodes per axis
    double dt = 0.0;
    double dx = 0.0;
    std::array<double, 4> origin{};

    std::size_t nodes() const { return shape[0] * shape[1] * shape[2] * shape[3]; }
    std::size_t index(std::size_t it, std::size_t ix, std::size_t iy, std::size_t iz) const {
        return ((it * shape[1] + ix) * shape[2] + iy) * shape[3] + iz;
    }
    double spacing(int axis) const { return axis == 0 ? dt : dx; }
    std::array<double, 4> coords(std::size_t it, std::size_t ix, std::size_t iy,
                                 std::size_t iz) const;
    bool operator==(const GridGeometry&) const = default;
};

// Symmetric tensor field on a regular grid.
class GridField {
  public:
    GridField() = default;
    explicit GridField(const GridGeometry& geom);

    const GridGeometry& geometry() const { return geom_; }
    Sym4& node(std::size_t i) { return nodes_[i]; }
    const Sym4& node(std::size_t i) const { return nodes_[i]; }
    Sym4& node(std::size_t it, std::size_t ix, std::size_t iy, std::size_t iz) {
        return nodes_[geom_.index(it, ix, iy, iz)];
    }
    const Sym4& node(std::size_t it, std::size_t ix, std::size_t iy, std::size_t iz) const {
        return nodes_[geom_.index(it, ix, iy, iz)];
    }
    std::size_t size() const { return nodes_.size(); }

    using TensorFn = std::function<double(int mu, int nu, const std::array<double, 4>& x)>;
    static GridField sample(const GridGeometry& geom, const TensorFn& fn);

  private:
    GridGeometry geom_;
    std::vector<Sym4> nodes_;
};

using SourceField = GridField;  // energy-momentum density on the same carrier

// 4-vector field on the same grids (gauge generators, residuals).
struct VectorGridField {
    GridGeometry geom;
    std::vector<std::array<double, 4>> values;

    using VectorFn = std::function<double(int mu, const std::array<double, 4>& x)>;
    static VectorGridField sample(const GridGeometry& geom, const VectorFn& fn);
};

enum class TraceDirection { to_bar, from_bar };

// Nodewise trace reversal T -> T - (1/2) n tr(T); its own inverse, the
// direction tag documents intent.
Sym4 trace_reverse_node(const Sym4& t);
GridField trace_reverse(const GridField& h, TraceDirection direction);

// h_{mu nu} - d_nu C_mu - d_mu C_nu with central differences; only interior
// nodes are updated (boundary nodes copy the input).
GridField gauge_transform(const GridField& h, const VectorGridField& c_field);

struct Residual4Field {
    GridGeometry geom;
    std::vector<std::array<double, 4>> values;  // zero on the boundary
    double max_norm = 0.0;                      // over interior nodes
};

// Divergence d^alpha h_{mu alpha} per interior node; vanishes in the
// transverse gauge.
Residual4Field lorentz_residual(const GridField& hbar);

// The linearized field operator
//   -box h_{mu nu} - n_{mu nu} d^a d^b h_{ab} + d^a d_nu h_{mu a}
//                                             + d^a d_mu h_{nu a}
// with second-order central differences; interior nodes only (boundary zero).
// Equals 16 pi G T_{mu nu} on solutions.
GridField einstein_lhs(const GridField& hbar);

struct PointMass {
    double mass = 0.0;
    Vec3 position{};
};

// Retarded trace-reversed field of static point masses, in closed form:
// h_00 = sum 4 G m / r, other components zero.
Sym4 retarded_solution(const std::vector<PointMass>& sources, const Vec3& x, double t,
                       const PhysicalConstants& c);

// Midpoint quadrature of the retarded integral over the source grid's
// spatial cells, with the retarded time linearly interpolated between time
// slices (a single slice means a static source). Throws guard_error when the
// field point comes within exclusion_radius of a cell holding source density.
Sym4 retarded_solution(const SourceField& source, const Vec3& x, double t,
                       const PhysicalConstants& c, double exclusion_radius);

// Spread point masses uniformly over balls of the given radius on a static
// (single-time-slice) source grid; total mass is conserved exactly.
SourceField discretize_point_masses(const std::vector<PointMass>& sources,
                                    const GridGeometry& geom, double ball_radius);

// Flat CSV: node indices plus the 10 independent components per row.
void write_csv(const GridField& field, const std::filesystem::path& path,
               std::uint64_t config_hash, std::uint64_t seed);
GridField read_csv(const std::filesystem::path& path);

}  // namespace gravistoch::linear_field
