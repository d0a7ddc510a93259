#include "gravistoch/linear_field.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gravistoch/errors.hpp"
#include "gravistoch/io.hpp"

namespace gravistoch::linear_field {

int Sym4::index(int mu, int nu) {
    if (mu > nu) std::swap(mu, nu);
    // row-major upper triangle: 00 01 02 03 11 12 13 22 23 33
    static constexpr int row_start[4] = {0, 4, 7, 9};
    return row_start[mu] + (nu - mu);
}

double Sym4::invariant_trace() const {
    return -at(0, 0) + at(1, 1) + at(2, 2) + at(3, 3);
}

Sym4 Sym4::minkowski_metric() {
    Sym4 n;
    n.at(0, 0) = -1.0;
    n.at(1, 1) = n.at(2, 2) = n.at(3, 3) = 1.0;
    return n;
}

std::array<double, 4> GridGeometry::coords(std::size_t it, std::size_t ix, std::size_t iy,
                                           std::size_t iz) const {
    return {origin[0] + static_cast<double>(it) * dt, origin[1] + static_cast<double>(ix) * dx,
            origin[2] + static_cast<double>(iy) * dx, origin[3] + static_cast<double>(iz) * dx};
}

GridField::GridField(const GridGeometry& geom) : geom_(geom), nodes_(geom.nodes()) {
    if (geom.nodes() == 0 || !(geom.dx > 0.0) || !(geom.dt > 0.0))
        throw config_error("grid field: geometry must have positive extent and spacings");
}

GridField GridField::sample(const GridGeometry& geom, const TensorFn& fn) {
    GridField f(geom);
    for (std::size_t it = 0; it < geom.shape[0]; ++it)
        for (std::size_t ix = 0; ix < geom.shape[1]; ++ix)
            for (std::size_t iy = 0; iy < geom.shape[2]; ++iy)
                for (std::size_t iz = 0; iz < geom.shape[3]; ++iz) {
                    const auto x = geom.coords(it, ix, iy, iz);
                    Sym4& node = f.node(it, ix, iy, iz);
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = mu; nu < 4; ++nu) node.at(mu, nu) = fn(mu, nu, x);
                }
    return f;
}

VectorGridField VectorGridField::sample(const GridGeometry& geom, const VectorFn& fn) {
    VectorGridField f;
    f.geom = geom;
    f.values.resize(geom.nodes());
    for (std::size_t it = 0; it < geom.shape[0]; ++it)
        for (std::size_t ix = 0; ix < geom.shape[1]; ++ix)
            for (std::size_t iy = 0; iy < geom.shape[2]; ++iy)
                for (std::size_t iz = 0; iz < geom.shape[3]; ++iz) {
                    const auto x = geom.coords(it, ix, iy, iz);
                    auto& node = f.values[geom.index(it, ix, iy, iz)];
                    for (int mu = 0; mu < 4; ++mu) node[mu] = fn(mu, x);
                }
    return f;
}

Sym4 trace_reverse_node(const Sym4& t) {
    const double tr = t.invariant_trace();
    Sym4 out = t;
    out.at(0, 0) -= 0.5 * (-1.0) * tr;
    out.at(1, 1) -= 0.5 * tr;
    out.at(2, 2) -= 0.5 * tr;
    out.at(3, 3) -= 0.5 * tr;
    return out;
}

GridField trace_reverse(const GridField& h, TraceDirection) {
    GridField out(h.geometry());
    for (std::size_t i = 0; i < h.size(); ++i) out.node(i) = trace_reverse_node(h.node(i));
    return out;
}

namespace {

struct Stencil {
    const GridGeometry& geom;
    std::array<std::size_t, 4> idx;

    std::size_t shifted(int axis, int offset) const {
        auto s = idx;
        s[axis] = static_cast<std::size_t>(static_cast<long>(s[axis]) + offset);
        return geom.index(s[0], s[1], s[2], s[3]);
    }
};

bool interior(const GridGeometry& geom, const std::array<std::size_t, 4>& idx, int margin) {
    for (int a = 0; a < 4; ++a) {
        if (idx[a] < static_cast<std::size_t>(margin)) return false;
        if (idx[a] + margin >= geom.shape[a]) return false;
    }
    return true;
}

template <typename Fn>
void for_each_node(const GridGeometry& geom, Fn&& fn) {
    for (std::size_t it = 0; it < geom.shape[0]; ++it)
        for (std::size_t ix = 0; ix < geom.shape[1]; ++ix)
            for (std::size_t iy = 0; iy < geom.shape[2]; ++iy)
                for (std::size_t iz = 0; iz < geom.shape[3]; ++iz)
                    fn(std::array<std::size_t, 4>{it, ix, iy, iz});
}

}  // namespace

GridField gauge_transform(const GridField& h, const VectorGridField& c_field) {
    if (!(h.geometry() == c_field.geom))
        throw config_error("gauge transform: field and generator grids do not match");
    const GridGeometry& geom = h.geometry();
    for (int a = 0; a < 4; ++a)
        if (geom.shape[a] < 3)
            throw config_error("gauge transform: need at least 3 nodes per axis");

    GridField out = h;
    for_each_node(geom, [&](const std::array<std::size_t, 4>& idx) {
        if (!interior(geom, idx, 1)) return;
        const Stencil st{geom, idx};
        Sym4& node = out.node(geom.index(idx[0], idx[1], idx[2], idx[3]));
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = mu; nu < 4; ++nu) {
                const double dmu_cnu = (c_field.values[st.shifted(mu, +1)][nu] -
                                        c_field.values[st.shifted(mu, -1)][nu]) /
                                       (2.0 * geom.spacing(mu));
                const double dnu_cmu = (c_field.values[st.shifted(nu, +1)][mu] -
                                        c_field.values[st.shifted(nu, -1)][mu]) /
                                       (2.0 * geom.spacing(nu));
                node.at(mu, nu) -= dnu_cmu + dmu_cnu;
            }
        }
    });
    return out;
}

Residual4Field lorentz_residual(const GridField& hbar) {
    const GridGeometry& geom = hbar.geometry();
    for (int a = 0; a < 4; ++a)
        if (geom.shape[a] < 3)
            throw config_error("lorentz residual: need at least 3 nodes per axis");

    Residual4Field res;
    res.geom = geom;
    res.values.assign(geom.nodes(), {0, 0, 0, 0});
    for_each_node(geom, [&](const std::array<std::size_t, 4>& idx) {
        if (!interior(geom, idx, 1)) return;
        const Stencil st{geom, idx};
        auto& node = res.values[geom.index(idx[0], idx[1], idx[2], idx[3])];
        for (int mu = 0; mu < 4; ++mu) {
            double div = 0.0;
            for (int alpha = 0; alpha < 4; ++alpha) {
                const double d = (hbar.node(st.shifted(alpha, +1)).at(mu, alpha) -
                                  hbar.node(st.shifted(alpha, -1)).at(mu, alpha)) /
                                 (2.0 * geom.spacing(alpha));
                div += metric_sign(alpha) * d;
            }
            node[mu] = div;
            res.max_norm = std::max(res.max_norm, std::abs(div));
        }
    });
    return res;
}

GridField einstein_lhs(const GridField& hbar) {
    const GridGeometry& geom = hbar.geometry();
    for (int a = 0; a < 4; ++a)
        if (geom.shape[a] < 5)
            throw config_error("einstein lhs: need at least 5 nodes per axis");

    GridField out(geom);
    for_each_node(geom, [&](const std::array<std::size_t, 4>& idx) {
        if (!interior(geom, idx, 1)) return;
        const Stencil st{geom, idx};
        const std::size_t center = geom.index(idx[0], idx[1], idx[2], idx[3]);

        // central second derivative of component (mu, nu) along (a, b)
        const auto d2 = [&](int a, int b, int mu, int nu) {
            if (a == b) {
                const double num = hbar.node(st.shifted(a, +1)).at(mu, nu) -
                                   2.0 * hbar.node(center).at(mu, nu) +
                                   hbar.node(st.shifted(a, -1)).at(mu, nu);
                return num / (geom.spacing(a) * geom.spacing(a));
            }
            auto pp = st.idx, pm = st.idx, mp = st.idx, mm = st.idx;
            ++pp[a], ++pp[b];
            ++pm[a], --pm[b];
            --mp[a], ++mp[b];
            --mm[a], --mm[b];
            const double num = hbar.node(geom.index(pp[0], pp[1], pp[2], pp[3])).at(mu, nu) -
                               hbar.node(geom.index(pm[0], pm[1], pm[2], pm[3])).at(mu, nu) -
                               hbar.node(geom.index(mp[0], mp[1], mp[2], mp[3])).at(mu, nu) +
                               hbar.node(geom.index(mm[0], mm[1], mm[2], mm[3])).at(mu, nu);
            return num / (4.0 * geom.spacing(a) * geom.spacing(b));
        };

        double dd_trace = 0.0;  // d^a d^b h_{ab}
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                dd_trace += metric_sign(a) * metric_sign(b) * d2(a, b, a, b);

        Sym4& node = out.node(center);
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = mu; nu < 4; ++nu) {
                double box = 0.0;
                double div_nu = 0.0;  // d^a d_nu h_{mu a}
                double div_mu = 0.0;  // d^a d_mu h_{nu a}
                for (int a = 0; a < 4; ++a) {
                    box += metric_sign(a) * d2(a, a, mu, nu);
                    div_nu += metric_sign(a) * d2(a, nu, mu, a);
                    div_mu += metric_sign(a) * d2(a, mu, nu, a);
                }
                node.at(mu, nu) = -box - minkowski(mu, nu) * dd_trace + div_nu + div_mu;
            }
        }
    });
    return out;
}

Sym4 retarded_solution(const std::vector<PointMass>& sources, const Vec3& x, double /*t*/,
                       const PhysicalConstants& c) {
    Sym4 out;
    for (const auto& src : sources) {
        const double r = norm(sub(x, src.position));
        if (r == 0.0) throw guard_error("retarded solution: field point on a point mass");
        out.at(0, 0) += 4.0 * c.G * src.mass / r;
    }
    return out;
}

Sym4 retarded_solution(const SourceField& source, const Vec3& x, double t,
                       const PhysicalConstants& c, double exclusion_radius) {
    const GridGeometry& geom = source.geometry();
    const double cell_volume = geom.dx * geom.dx * geom.dx;
    const bool is_static = geom.shape[0] == 1;

    Sym4 out;
    for (std::size_t ix = 0; ix < geom.shape[1]; ++ix) {
        for (std::size_t iy = 0; iy < geom.shape[2]; ++iy) {
            for (std::size_t iz = 0; iz < geom.shape[3]; ++iz) {
                const auto xp = geom.coords(0, ix, iy, iz);
                const double r = norm(sub(x, Vec3{xp[1], xp[2], xp[3]}));

                // Fetch T at the retarded time.
                Sym4 value;
                if (is_static) {
                    value = source.node(0, ix, iy, iz);
                } else {
                    const double tr = t - r;
                    const double s = (tr - geom.origin[0]) / geom.dt;
                    if (s < 0.0 || s > static_cast<double>(geom.shape[0] - 1)) {
                        continue;  // source vanishes outside its recorded window
                    }
                    const auto lo = static_cast<std::size_t>(s);
                    const std::size_t hi = std::min(lo + 1, geom.shape[0] - 1);
                    const double w = s - static_cast<double>(lo);
                    const Sym4& a = source.node(lo, ix, iy, iz);
                    const Sym4& b = source.node(hi, ix, iy, iz);
                    for (int i = 0; i < 10; ++i) value.v[i] = (1.0 - w) * a.v[i] + w * b.v[i];
                }

                bool nonzero = false;
                for (double v : value.v) nonzero = nonzero || v != 0.0;
                if (!nonzero) continue;
                if (r < exclusion_radius)
                    throw guard_error(
                        "retarded solution: field point inside a source cell; move the point or "
                        "regularize the source");
                for (int i = 0; i < 10; ++i) out.v[i] += 4.0 * c.G * value.v[i] / r * cell_volume;
            }
        }
    }
    return out;
}

SourceField discretize_point_masses(const std::vector<PointMass>& sources,
                                    const GridGeometry& geom, double ball_radius) {
    if (geom.shape[0] != 1)
        throw config_error("discretize: static sources need a single time slice");
    SourceField field(geom);
    for (const auto& src : sources) {
        std::vector<std::size_t> covered;
        for (std::size_t ix = 0; ix < geom.shape[1]; ++ix)
            for (std::size_t iy = 0; iy < geom.shape[2]; ++iy)
                for (std::size_t iz = 0; iz < geom.shape[3]; ++iz) {
                    const auto xp = geom.coords(0, ix, iy, iz);
                    if (norm(sub(Vec3{xp[1], xp[2], xp[3]}, src.position)) <= ball_radius)
                        covered.push_back(geom.index(0, ix, iy, iz));
                }
        if (covered.empty())
            throw config_error("discretize: source ball covers no grid cells; refine the grid");
        const double density =
            src.mass / (static_cast<double>(covered.size()) * geom.dx * geom.dx * geom.dx);
        for (std::size_t i : covered) field.node(i).at(0, 0) += density;
    }
    return field;
}

void write_csv(const GridField& field, const std::filesystem::path& path,
               std::uint64_t config_hash, std::uint64_t seed) {
    const GridGeometry& geom = field.geometry();
    io::CsvWriter csv(path, config_hash, seed);
    csv.raw_meta("shape", std::to_string(geom.shape[0]) + "x" + std::to_string(geom.shape[1]) +
                              "x" + std::to_string(geom.shape[2]) + "x" +
                              std::to_string(geom.shape[3]));
    csv.raw_meta("dt", io::format_double(geom.dt));
    csv.raw_meta("dx", io::format_double(geom.dx));
    csv.header({"it", "ix", "iy", "iz", "h00", "h01", "h02", "h03", "h11", "h12", "h13", "h22",
                "h23", "h33"});
    for (std::size_t it = 0; it < geom.shape[0]; ++it)
        for (std::size_t ix = 0; ix < geom.shape[1]; ++ix)
            for (std::size_t iy = 0; iy < geom.shape[2]; ++iy)
                for (std::size_t iz = 0; iz < geom.shape[3]; ++iz) {
                    const Sym4& node = field.node(it, ix, iy, iz);
                    std::vector<double> row{static_cast<double>(it), static_cast<double>(ix),
                                            static_cast<double>(iy), static_cast<double>(iz)};
                    row.insert(row.end(), node.v.begin(), node.v.end());
                    csv.row(row);
                }
}

GridField read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path.string());
    std::string line;
    GridGeometry geom;
    geom.dt = geom.dx = 1.0;
    std::vector<std::array<double, 14>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            if (line.rfind("# dt=", 0) == 0) geom.dt = std::stod(line.substr(5));
            if (line.rfind("# dx=", 0) == 0) geom.dx = std::stod(line.substr(5));
            if (line.rfind("# shape=", 0) == 0) {
                std::istringstream ss(line.substr(8));
                char sep;
                ss >> geom.shape[0] >> sep >> geom.shape[1] >> sep >> geom.shape[2] >> sep >>
                    geom.shape[3];
            }
            continue;
        }
        if (line.rfind("it,", 0) == 0) continue;  // header row
        std::array<double, 14> row{};
        std::istringstream ss(line);
        std::string cell;
        for (int i = 0; i < 14 && std::getline(ss, cell, ','); ++i) row[i] = std::stod(cell);
        rows.push_back(row);
    }
    if (geom.nodes() != rows.size())
        throw config_error("grid csv: row count does not match declared shape");
    GridField field(geom);
    for (const auto& row : rows) {
        Sym4& node = field.node(static_cast<std::size_t>(row[0]), static_cast<std::size_t>(row[1]),
                                static_cast<std::size_t>(row[2]), static_cast<std::size_t>(row[3]));
        for (int i = 0; i < 10; ++i) node.v[i] = row[4 + i];
    }
    return field;
}

}  // namespace gravistoch::linear_field
