#pragma once
// Closed-form frequency responses of fractional-order band-pass/band-stop
// filters: complex evaluation of (jw)^r, magnitude/phase/Q-factor formulas,
// and the analytic peak of the symmetric band-pass form.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fofilter {

// Thrown when a magnitude denominator vanishes, i.e. the evaluation point
// coincides with a pole on the jw axis.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

enum class FilterFamily { BandPass, BandStop };

// Transfer function b*s^beta / (s^alpha + a) for BandPass, its reciprocal
// (s^alpha + a) / (b*s^beta) for BandStop.
struct FoFilterParams {
    double a = 1.0;
    double b = 1.0;
    double alpha = 1.0;
    double beta = 0.5;
    FilterFamily family = FilterFamily::BandPass;
};

// Fractional second-order band-pass d*s^alpha / (s^(2*alpha) + 2a*s^alpha + b).
struct FoSecondOrderBpParams {
    double a = 0.0;
    double b = 1.0;
    double d = 1.0;
    double alpha = 1.0;
};

struct ComplexValue {
    double re = 0.0;
    double im = 0.0;
};

enum class PeakMethod { ClosedForm, GridArgmax };

struct PeakReport {
    double omega_m = 0.0;
    double peak_magnitude = 0.0;
    PeakMethod method = PeakMethod::GridArgmax;
};

inline std::complex<double> to_complex(const ComplexValue& v) { return {v.re, v.im}; }

namespace detail {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

inline void require_omega(double omega) {
    require_finite(omega, "omega");
    if (omega <= 0.0) {
        throw std::domain_error("omega must be > 0 (rad/s); DC behavior is handled by asymptotes, not evaluation");
    }
}

}  // namespace detail

// The filter is symmetric (log-frequency magnitude symmetric about its peak)
// exactly when alpha = 2*beta; tolerance absorbs decode rounding.
inline bool is_symmetric(const FoFilterParams& p) {
    return std::abs(p.alpha - 2.0 * p.beta) <= 1e-12;
}

// stability_guard = true restricts alpha below 2, where s^alpha + a acquires
// poles on the jw axis; pass false to evaluate the wider box deliberately.
inline void validate(const FoFilterParams& p, bool stability_guard = true) {
    detail::require_finite(p.a, "a");
    detail::require_finite(p.b, "b");
    detail::require_finite(p.alpha, "alpha");
    detail::require_finite(p.beta, "beta");
    if (p.a <= 0.0) throw std::invalid_argument("pole coefficient a must be > 0");
    if (p.b <= 0.0) throw std::invalid_argument("gain coefficient b must be > 0");
    if (p.beta <= 0.0 || p.beta >= p.alpha) {
        throw std::invalid_argument("orders must satisfy 0 < beta < alpha for band-pass/band-stop behavior");
    }
    if (stability_guard && p.alpha >= 2.0) {
        throw std::invalid_argument("alpha must be < 2 while the stability guard is enabled");
    }
}

inline void validate(const FoSecondOrderBpParams& p) {
    detail::require_finite(p.a, "a");
    detail::require_finite(p.b, "b");
    detail::require_finite(p.d, "d");
    detail::require_finite(p.alpha, "alpha");
    if (p.a < 0.0) throw std::invalid_argument("coefficient a must be >= 0");
    if (p.b <= 0.0) throw std::invalid_argument("coefficient b must be > 0");
    if (p.d <= 0.0) throw std::invalid_argument("gain d must be > 0");
    if (p.alpha <= 0.0 || p.alpha > 1.0) {
        throw std::invalid_argument("base order alpha must satisfy 0 < alpha <= 1 (total order <= 2)");
    }
}

// (jw)^order on the principal branch: w^order * exp(j*order*pi/2).
inline ComplexValue jw_pow(double omega, double order) {
    detail::require_omega(omega);
    detail::require_finite(order, "order");
    const double mag = std::pow(omega, order);
    const double ang = order * std::numbers::pi / 2.0;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

namespace detail {

inline std::complex<double> jw(double omega, double order) {
    return to_complex(jw_pow(omega, order));
}

// Shared denominator radicand of the first-order-generalized magnitude:
// w^(2a) + 2a*w^a*cos(a*pi/2) + a^2. Strictly positive for 0 < alpha < 2;
// can only vanish at a jw-axis pole.
inline double bp_radicand(const FoFilterParams& p, double omega) {
    const double wa = std::pow(omega, p.alpha);
    return wa * wa + 2.0 * p.a * wa * std::cos(p.alpha * std::numbers::pi / 2.0) + p.a * p.a;
}

inline double checked_sqrt_radicand(double radicand) {
    if (std::isfinite(radicand) && radicand <= 0.0) {
        throw pole_error("evaluation point coincides with a pole on the jw axis");
    }
    return std::sqrt(radicand);
}

inline double bp2_radicand(const FoSecondOrderBpParams& p, double omega) {
    const double c1 = std::cos(p.alpha * std::numbers::pi / 2.0);
    const double c2 = std::cos(p.alpha * std::numbers::pi);
    const double wa = std::pow(omega, p.alpha);
    const double wa2 = wa * wa;
    return wa2 * wa2 + 4.0 * p.a * wa2 * wa * c1 + (4.0 * p.a * p.a + 2.0 * p.b * c2) * wa2 +
           4.0 * p.a * p.b * wa * c1 + p.b * p.b;
}

}  // namespace detail

inline std::complex<double> transfer_bp(const FoFilterParams& p, double omega, bool stability_guard = true) {
    validate(p, stability_guard);
    detail::require_omega(omega);
    detail::checked_sqrt_radicand(detail::bp_radicand(p, omega));  // pole detection shared with magnitude_bp
    const std::complex<double> num = p.b * detail::jw(omega, p.beta);
    const std::complex<double> den = detail::jw(omega, p.alpha) + p.a;
    return num / den;
}

inline std::complex<double> transfer_bs(const FoFilterParams& p, double omega, bool stability_guard = true) {
    validate(p, stability_guard);
    detail::require_omega(omega);
    detail::checked_sqrt_radicand(detail::bp_radicand(p, omega));  // the band-pass twin's pole is this zero
    const std::complex<double> num = detail::jw(omega, p.alpha) + p.a;
    const std::complex<double> den = p.b * detail::jw(omega, p.beta);
    return num / den;
}

inline std::complex<double> transfer_bp2(const FoSecondOrderBpParams& p, double omega) {
    validate(p);
    detail::require_omega(omega);
    detail::checked_sqrt_radicand(detail::bp2_radicand(p, omega));  // pole detection shared with magnitude_bp2
    const std::complex<double> sa = detail::jw(omega, p.alpha);
    const std::complex<double> num = p.d * sa;
    const std::complex<double> den = sa * sa + 2.0 * p.a * sa + p.b;
    return num / den;
}

inline double magnitude_bp(const FoFilterParams& p, double omega, bool stability_guard = true) {
    validate(p, stability_guard);
    detail::require_omega(omega);
    if (p.family != FilterFamily::BandPass) {
        throw std::invalid_argument("magnitude_bp expects band-pass parameters");
    }
    const double root = detail::checked_sqrt_radicand(detail::bp_radicand(p, omega));
    return p.b * std::pow(omega, p.beta) / root;
}

inline double magnitude_bs(const FoFilterParams& p, double omega, bool stability_guard = true) {
    validate(p, stability_guard);
    detail::require_omega(omega);
    if (p.family != FilterFamily::BandStop) {
        throw std::invalid_argument("magnitude_bs expects band-stop parameters");
    }
    const double root = detail::checked_sqrt_radicand(detail::bp_radicand(p, omega));
    return root / (p.b * std::pow(omega, p.beta));
}

inline double magnitude_bp2(const FoSecondOrderBpParams& p, double omega) {
    validate(p);
    detail::require_omega(omega);
    const double wa = std::pow(omega, p.alpha);
    return p.d * wa / detail::checked_sqrt_radicand(detail::bp2_radicand(p, omega));
}

// Principal-value phase in radians, in (-pi, pi].
inline double phase(const FoFilterParams& p, double omega, bool stability_guard = true) {
    const std::complex<double> t =
        p.family == FilterFamily::BandPass ? transfer_bp(p, omega, stability_guard) : transfer_bs(p, omega, stability_guard);
    return std::arg(t);
}

inline double phase(const FoSecondOrderBpParams& p, double omega) {
    return std::arg(transfer_bp2(p, omega));
}

// The quality factor convention used throughout: for band-pass, Q is the gain
// at the chosen center frequency; for band-stop, the reciprocal of the gain
// there (deeper notch -> larger Q). Both reduce to the same closed form.
inline double q_factor_bp(const FoFilterParams& p, double omega0, bool stability_guard = true) {
    return magnitude_bp(p, omega0, stability_guard);
}

inline double q_factor_bs(const FoFilterParams& p, double omega0, bool stability_guard = true) {
    return 1.0 / magnitude_bs(p, omega0, stability_guard);
}

// For the symmetric band-pass form (alpha = 2*beta) the magnitude peaks at
// w_m = a^(1/alpha) with value b / sqrt(2a*(1 + cos(alpha*pi/2))).
inline PeakReport peak_closed_form(const FoFilterParams& p, bool stability_guard = true) {
    validate(p, stability_guard);
    if (p.family != FilterFamily::BandPass) {
        throw std::invalid_argument("closed-form peak is defined for the band-pass family");
    }
    if (!is_symmetric(p)) {
        throw std::invalid_argument("closed-form peak requires symmetric orders (alpha = 2*beta)");
    }
    const double omega_m = std::pow(p.a, 1.0 / p.alpha);
    const double denom = 2.0 * p.a * (1.0 + std::cos(p.alpha * std::numbers::pi / 2.0));
    const double peak = p.b / detail::checked_sqrt_radicand(denom);
    return {omega_m, peak, PeakMethod::ClosedForm};
}

}  // namespace fofilter
