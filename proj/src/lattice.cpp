#include "gravistoch/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gravistoch/errors.hpp"
#include "gravistoch/io.hpp"

namespace gravistoch::lattice {

namespace {

bool is_representative(int n0, int n1, int n2) {
    if (n0 != 0) return n0 > 0;
    if (n1 != 0) return n1 > 0;
    return n2 > 0;
}

}  // namespace

ModeGrid ModeGrid::enumerate(double box_length, int n_max) {
    if (!(box_length > 0.0))
        throw config_error("lattice: box length must be > 0 (got " + std::to_string(box_length) + ")");
    if (n_max < 1)
        throw config_error("lattice: n_max must be >= 1 (got " + std::to_string(n_max) + ")");

    ModeGrid grid;
    grid.box_length_ = box_length;
    grid.n_max_ = n_max;
    const std::size_t pairs = (static_cast<std::size_t>(2 * n_max + 1) *
                                   (2 * n_max + 1) * (2 * n_max + 1) - 1) / 2;
    grid.entries_.reserve(2 * pairs);

    const double dk = 2.0 * kPi / box_length;
    for (int n0 = -n_max; n0 <= n_max; ++n0) {
        for (int n1 = -n_max; n1 <= n_max; ++n1) {
            for (int n2 = -n_max; n2 <= n_max; ++n2) {
                if (!is_representative(n0, n1, n2)) continue;
                const Vec3 k{n0 * dk, n1 * dk, n2 * dk};
                const auto basis = polarization::basis_for(k);
                const double omega = norm(k);
                grid.entries_.push_back({{n0, n1, n2}, k, omega, Pol::plus, basis.plus.components});
                grid.entries_.push_back({{n0, n1, n2}, k, omega, Pol::cross, basis.cross.components});
            }
        }
    }
    return grid;
}

ModeGrid enumerate_modes(double box_length, int n_max) {
    return ModeGrid::enumerate(box_length, n_max);
}

double ModeGrid::max_omega() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.omega);
    return m;
}

std::uint64_t ModeGrid::hash() const {
    io::Fnv1a h;
    h.add(box_length_);
    h.add(static_cast<std::uint64_t>(n_max_));
    h.add(static_cast<std::uint64_t>(entries_.size()));
    return h.value();
}

FieldSample assemble_field(const ModeGrid& grid, const ModeState& state, const Vec3& x) {
    if (state.q.size() != grid.size())
        throw config_error("lattice: state size " + std::to_string(state.q.size()) +
                           " does not match grid with " + std::to_string(grid.size()) + " entries");

    std::complex<double> h[3][3] = {};
    for (std::size_t m = 0; m < grid.size(); ++m) {
        const ModeEntry& e = grid.entry(m);
        const std::complex<double> phase{std::cos(dot(e.k, x)), std::sin(dot(e.k, x))};
        // stored entry plus its conjugate partner at -k (same eps)
        const std::complex<double> amp = phase * state.q[m] + std::conj(phase * state.q[m]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h[i][j] += e.eps[i][j] * amp;
    }

    const double l = grid.box_length();
    const double scale = 1.0 / (std::sqrt(2.0) * l * std::sqrt(l));
    FieldSample out{zero_mat3(), 0.0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out.h[i][j] = scale * h[i][j].real();
            out.imag_residual = std::max(out.imag_residual, scale * std::abs(h[i][j].imag()));
        }
    }
    return out;
}

SpectrumResult vacuum_spectrum(const ModeGrid& grid, const PhysicalConstants& c,
                               double bin_width, bool require_fit,
                               std::size_t min_modes_per_bin) {
    if (!(bin_width > 0.0)) throw config_error("spectrum: bin width must be > 0");

    const double omega_max = grid.max_omega();
    const std::size_t n_bins = static_cast<std::size_t>(std::floor(omega_max / bin_width)) + 1;
    SpectrumResult res;
    res.bins.resize(n_bins);
    const double volume = std::pow(grid.box_length(), 3);

    for (std::size_t b = 0; b < n_bins; ++b) {
        res.bins[b].omega_lo = b * bin_width;
        res.bins[b].omega_hi = (b + 1) * bin_width;
        res.bins[b].omega_center = (b + 0.5) * bin_width;
    }
    std::vector<double> omega_sum(n_bins, 0.0);
    for (const auto& e : grid.entries()) {
        const std::size_t b = static_cast<std::size_t>(e.omega / bin_width);
        res.bins[b].count += 2;  // entry and its -k partner
        res.bins[b].rho += 2.0 * 0.5 * c.hbar * e.omega;
        omega_sum[b] += 2.0 * e.omega;
    }
    for (std::size_t b = 0; b < n_bins; ++b) {
        res.bins[b].rho /= volume * bin_width;
        res.bins[b].omega_mean = res.bins[b].count > 0
                                     ? omega_sum[b] / static_cast<double>(res.bins[b].count)
                                     : res.bins[b].omega_center;
    }

    res.reference_coefficient = c.hbar / (2.0 * kPi * kPi);

    // Count-weighted power-law fit against the mean mode frequency of each
    // bin, restricted to the inscribed sphere of the cubic cutoff; both
    // choices suppress the discrete-shell bias of the lowest bins.
    const double omega_sphere = 2.0 * kPi * grid.n_max() / grid.box_length();
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    std::size_t used = 0;
    for (const auto& bin : res.bins) {
        if (bin.omega_hi > omega_sphere) continue;
        if (bin.count < min_modes_per_bin) continue;
        const double w = static_cast<double>(bin.count);
        const double lx = std::log(bin.omega_mean);
        const double ly = std::log(bin.rho);
        sw += w;
        swx += w * lx;
        swy += w * ly;
        swxx += w * lx * lx;
        swxy += w * lx * ly;
        ++used;
    }
    if (used >= 10) {
        const double denom = sw * swxx - swx * swx;
        res.fit_exponent = (sw * swxy - swx * swy) / denom;
        res.fit_coefficient = std::exp((swy - res.fit_exponent * swx) / sw);
        res.fit_bins = used;
        res.fitted = true;
    } else if (require_fit) {
        throw guard_error("spectrum: insufficient modes for a fit (" + std::to_string(used) +
                          " usable bins, need 10 with >= " + std::to_string(min_modes_per_bin) +
                          " modes each); increase n_max or bin width");
    }
    return res;
}

}  // namespace gravistoch::lattice
