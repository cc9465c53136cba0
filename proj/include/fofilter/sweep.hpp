#pragma once
// Log-spaced frequency sweeps, parametric response surfaces, numeric
// peak/notch location with parabolic refinement, asymptotic slope estimation,
// and CSV emission at full round-trip precision.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "response.hpp"

namespace fofilter {

enum class GridSpacing { Log };

struct FrequencyGrid {
    double omega_min = 1.5e-3;
    double omega_max = 1.5e3;
    int points = 2000;
    GridSpacing spacing = GridSpacing::Log;
};

struct ResponseSample {
    double omega = 0.0;
    double magnitude = 0.0;
    double magnitude_db = 0.0;
    double phase_deg = 0.0;
    bool pole = false;
};

struct SurfaceGrid {
    std::string param_name;
    std::vector<double> param_values;
    FrequencyGrid grid;
    std::vector<std::vector<double>> values_db;  // [param index][omega index]
};

enum class PeakKind { Peak, Notch };

// Exported dB values are clamped here so notch nulls stay finite in files.
inline constexpr double kDbFloor = -300.0;

inline void validate(const FrequencyGrid& g) {
    if (!(g.omega_min > 0.0) || !(g.omega_max > g.omega_min) || !std::isfinite(g.omega_max)) {
        throw std::invalid_argument("frequency grid needs 0 < omega_min < omega_max, both finite");
    }
    if (g.points < 2) throw std::invalid_argument("frequency grid needs at least 2 points");
}

// The grid spanning three decades around a center frequency, matching the
// default export range.
inline FrequencyGrid default_grid(double omega0) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw std::invalid_argument("omega0 must be positive and finite");
    }
    return {omega0 / 1e3, omega0 * 1e3, 2000, GridSpacing::Log};
}

inline std::vector<double> grid_points(const FrequencyGrid& g) {
    validate(g);
    std::vector<double> w(static_cast<std::size_t>(g.points));
    const double ratio = std::log(g.omega_max / g.omega_min);
    for (int i = 0; i < g.points; ++i) {
        w[static_cast<std::size_t>(i)] = g.omega_min * std::exp(ratio * i / (g.points - 1));
    }
    w.front() = g.omega_min;
    w.back() = g.omega_max;
    return w;
}

inline double magnitude_to_db(double magnitude) { return 20.0 * std::log10(magnitude); }

namespace detail {

template <typename Magnitude, typename Phase>
inline std::vector<ResponseSample> sweep_impl(const FrequencyGrid& grid, Magnitude&& magnitude, Phase&& phase_of) {
    const std::vector<double> omegas = grid_points(grid);
    std::vector<ResponseSample> samples;
    samples.reserve(omegas.size());
    for (const double w : omegas) {
        ResponseSample s;
        s.omega = w;
        try {
            s.magnitude = magnitude(w);
            s.magnitude_db = magnitude_to_db(s.magnitude);
            s.phase_deg = phase_of(w) * 180.0 / std::numbers::pi;
        } catch (const pole_error&) {
            // Flag the sample instead of aborting the sweep.
            s.magnitude = std::numeric_limits<double>::quiet_NaN();
            s.magnitude_db = s.magnitude;
            s.phase_deg = s.magnitude;
            s.pole = true;
        }
        samples.push_back(s);
    }
    return samples;
}

}  // namespace detail

inline std::vector<ResponseSample> sweep(const FoFilterParams& p, const FrequencyGrid& grid,
                                         bool stability_guard = true) {
    validate(p, stability_guard);
    const auto magnitude = [&](double w) {
        return p.family == FilterFamily::BandPass ? magnitude_bp(p, w, stability_guard)
                                                  : magnitude_bs(p, w, stability_guard);
    };
    return detail::sweep_impl(grid, magnitude, [&](double w) { return phase(p, w, stability_guard); });
}

inline std::vector<ResponseSample> sweep(const FoSecondOrderBpParams& p, const FrequencyGrid& grid) {
    validate(p);
    return detail::sweep_impl(
        grid, [&](double w) { return magnitude_bp2(p, w); }, [&](double w) { return phase(p, w); });
}

// Sweeps one parameter of the first-order-generalized filter across
// param_values, holding the others at their base values. When the base filter
// is symmetric and beta is swept, alpha follows as 2*beta so every row stays in
// the symmetric family. Cells whose parameter combination is invalid or sits
// on a pole are flagged with NaN rather than aborting the surface.
inline SurfaceGrid surface(const FoFilterParams& base, std::string_view param_name,
                           const std::vector<double>& param_values, const FrequencyGrid& grid,
                           bool stability_guard = true) {
    validate(grid);
    if (param_values.empty()) throw std::invalid_argument("surface needs at least one parameter value");
    if (param_name != "a" && param_name != "b" && param_name != "alpha" && param_name != "beta") {
        throw std::invalid_argument("surface parameter must be one of a, b, alpha, beta");
    }
    const bool symmetric_base = is_symmetric(base);
    const std::vector<double> omegas = grid_points(grid);

    SurfaceGrid out;
    out.param_name = std::string(param_name);
    out.param_values = param_values;
    out.grid = grid;
    out.values_db.reserve(param_values.size());

    for (const double v : param_values) {
        FoFilterParams row = base;
        if (param_name == "a") row.a = v;
        if (param_name == "b") row.b = v;
        if (param_name == "alpha") row.alpha = v;
        if (param_name == "beta") {
            row.beta = v;
            if (symmetric_base) row.alpha = 2.0 * v;
        }
        std::vector<double> db_row;
        db_row.reserve(omegas.size());
        for (const double w : omegas) {
            double db = std::numeric_limits<double>::quiet_NaN();
            try {
                const double m = row.family == FilterFamily::BandPass ? magnitude_bp(row, w, stability_guard)
                                                                      : magnitude_bs(row, w, stability_guard);
                db = magnitude_to_db(m);
            } catch (const std::exception&) {
                // Leave the cell flagged as NaN.
            }
            db_row.push_back(db);
        }
        out.values_db.push_back(std::move(db_row));
    }
    return out;
}

// Grid argmax (Peak) or argmin (Notch) over the finite samples, refined by a
// parabola through the three neighboring (log10 omega, dB) points. Monotone
// data, where the extremum lands on a grid endpoint, is rejected.
inline PeakReport find_peak(const std::vector<ResponseSample>& samples, PeakKind kind = PeakKind::Peak) {
    std::vector<std::size_t> valid;
    valid.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i].pole && std::isfinite(samples[i].magnitude_db)) valid.push_back(i);
    }
    if (valid.size() < 3) throw std::invalid_argument("peak search needs at least 3 finite samples");

    std::size_t best = 0;
    for (std::size_t k = 1; k < valid.size(); ++k) {
        const double cur = samples[valid[k]].magnitude_db;
        const double inc = samples[valid[best]].magnitude_db;
        if (kind == PeakKind::Peak ? cur > inc : cur < inc) best = k;
    }
    if (best == 0 || best + 1 == valid.size()) {
        throw std::runtime_error("no interior peak: response is monotone over the sampled grid");
    }

    const auto& s0 = samples[valid[best - 1]];
    const auto& s1 = samples[valid[best]];
    const auto& s2 = samples[valid[best + 1]];
    const double x0 = std::log10(s0.omega), x1 = std::log10(s1.omega), x2 = std::log10(s2.omega);
    const double y0 = s0.magnitude_db, y1 = s1.magnitude_db, y2 = s2.magnitude_db;

    // Vertex of the quadratic through three (possibly unevenly spaced) points.
    double xv = x1;
    double yv = y1;
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (curvature != 0.0 && std::isfinite(curvature)) {
        xv = 0.5 * (x0 + x1 - d01 / curvature);
        yv = y1 + d01 * (xv - x1) + curvature * (xv - x0) * (xv - x1);
        // Keep the vertex inside the bracketing samples.
        if (xv < x0 || xv > x2 || !std::isfinite(yv)) {
            xv = x1;
            yv = y1;
        }
    }
    return {std::pow(10.0, xv), std::pow(10.0, yv / 20.0), PeakMethod::GridArgmax};
}

// Least-squares slope of magnitude_db against log10(omega) over
// [omega_lo, omega_hi]; the asymptotic roll-off in dB per decade.
inline double slope_db_per_decade(const std::vector<ResponseSample>& samples, double omega_lo, double omega_hi) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& s : samples) {
        if (s.omega < omega_lo || s.omega > omega_hi || s.pole || !std::isfinite(s.magnitude_db)) continue;
        const double x = std::log10(s.omega);
        sx += x;
        sy += s.magnitude_db;
        sxx += x * x;
        sxy += x * s.magnitude_db;
        ++n;
    }
    if (n < 2) throw std::runtime_error("slope window must contain at least 2 finite samples");
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::runtime_error("slope window has no frequency spread");
    return (n * sxy - sx * sy) / denom;
}

namespace detail {

// %.17g round-trips IEEE doubles exactly through strtod.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double clamp_db(double db) { return db < kDbFloor ? kDbFloor : db; }

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace detail

inline void write_csv(const std::vector<ResponseSample>& samples, const std::string& path) {
    auto out = detail::open_for_write(path);
    out << "omega,magnitude,magnitude_db,phase_deg\n";
    for (const auto& s : samples) {
        out << detail::fmt17(s.omega) << ',' << detail::fmt17(s.magnitude) << ','
            << detail::fmt17(detail::clamp_db(s.magnitude_db)) << ',' << detail::fmt17(s.phase_deg) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_csv(const SurfaceGrid& surface_grid, const std::string& path) {
    auto out = detail::open_for_write(path);
    const std::vector<double> omegas = grid_points(surface_grid.grid);
    out << "param_value,omega,magnitude_db\n";
    for (std::size_t r = 0; r < surface_grid.param_values.size(); ++r) {
        for (std::size_t c = 0; c < omegas.size(); ++c) {
            out << detail::fmt17(surface_grid.param_values[r]) << ',' << detail::fmt17(omegas[c]) << ','
                << detail::fmt17(detail::clamp_db(surface_grid.values_db[r][c])) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fofilter
