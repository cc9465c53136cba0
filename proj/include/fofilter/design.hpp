#pragma once
// Compiles the quality-factor design studies into (objective, bounds, decode)
// triples for the optimizer, plus the multi-seed design driver and the
// second-order degeneracy study.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "ga.hpp"
#include "response.hpp"
#include "sweep.hpp"

namespace fofilter {

enum class DesignFamily { BandPass, BandStop, SecondOrderBandPass };
enum class Symmetry { Symmetric, Asymmetric };

struct DesignProblem {
    DesignFamily family = DesignFamily::BandPass;
    Symmetry symmetry = Symmetry::Symmetric;  // ignored by SecondOrderBandPass
    double omega0 = 1.5;
    Bounds bounds;  // empty -> default_bounds(problem)
    bool stability_guard = true;
};

struct DesignReport {
    std::variant<FoFilterParams, FoSecondOrderBpParams> params;
    double q = 0.0;
    double omega_m = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<std::uint64_t, double>> seed_results;  // (seed, best Q) in input order
    std::uint64_t best_seed = 0;
};

struct DegeneracySeedResult {
    std::uint64_t seed = 0;
    FoSecondOrderBpParams params;
    double q = 0.0;
};

struct DegeneracyReport {
    std::vector<DegeneracySeedResult> runs;
    double median_a = 0.0;
    bool degenerate = false;
};

// Decision-vector layouts: Symmetric [a, b, beta] with alpha locked to 2*beta;
// Asymmetric [a, b, alpha, beta]; SecondOrderBandPass [a, b, d, alpha].
inline std::size_t dimension(const DesignProblem& p) {
    if (p.family == DesignFamily::SecondOrderBandPass) return 4;
    return p.symmetry == Symmetry::Symmetric ? 3 : 4;
}

inline void validate(const DesignProblem& p) {
    if (!(p.omega0 > 0.0) || !std::isfinite(p.omega0)) {
        throw std::invalid_argument("omega0 must be positive and finite");
    }
    if (!p.bounds.lower.empty()) {
        validate(p.bounds);
        if (p.bounds.lower.size() != dimension(p)) {
            throw std::invalid_argument("bounds dimension does not match the problem's decision vector");
        }
    }
}

// The studied parameter box: a, b in [1e-6, 20] and beta in [1e-6, 2 - 1e-6],
// with zero lower bounds nudged to 1e-6 because a = 0, b = 0, or beta = 0
// degenerates the transfer function. Symmetric mode under the stability guard
// tightens beta below 1 so alpha = 2*beta stays below 2. The second-order
// study keeps a's lower bound at exactly 0, the limit of interest.
inline Bounds default_bounds(const DesignProblem& p) {
    constexpr double eps = 1e-6;
    switch (p.family) {
        case DesignFamily::SecondOrderBandPass:
            return {{0.0, eps, eps, eps}, {20.0, 20.0, 20.0, 1.0}};
        case DesignFamily::BandPass:
        case DesignFamily::BandStop:
            break;
    }
    if (p.symmetry == Symmetry::Symmetric) {
        const double beta_hi = p.stability_guard ? 1.0 - eps : 2.0 - eps;
        return {{eps, eps, eps}, {20.0, 20.0, beta_hi}};
    }
    return {{eps, eps, eps, eps}, {20.0, 20.0, 2.0 - eps, 2.0 - eps}};
}

inline Bounds resolved_bounds(const DesignProblem& p) {
    validate(p);
    return p.bounds.lower.empty() ? default_bounds(p) : p.bounds;
}

inline FoFilterParams decode_symmetric(const std::vector<double>& x, FilterFamily family) {
    if (x.size() != 3) throw std::invalid_argument("symmetric decision vector must be [a, b, beta]");
    return {x[0], x[1], 2.0 * x[2], x[2], family};
}

inline FoFilterParams decode_asymmetric(const std::vector<double>& x, FilterFamily family) {
    if (x.size() != 4) throw std::invalid_argument("asymmetric decision vector must be [a, b, alpha, beta]");
    return {x[0], x[1], x[2], x[3], family};
}

inline FoSecondOrderBpParams decode_second_order(const std::vector<double>& x) {
    if (x.size() != 4) throw std::invalid_argument("second-order decision vector must be [a, b, d, alpha]");
    return {x[0], x[1], x[2], x[3]};
}

inline std::vector<double> encode(const FoFilterParams& p, Symmetry symmetry) {
    if (symmetry == Symmetry::Symmetric) {
        if (!is_symmetric(p)) throw std::invalid_argument("cannot encode non-symmetric parameters as [a, b, beta]");
        return {p.a, p.b, p.beta};
    }
    return {p.a, p.b, p.alpha, p.beta};
}

inline std::vector<double> encode(const FoSecondOrderBpParams& p) { return {p.a, p.b, p.d, p.alpha}; }

// Scalar objective: the quality factor at omega0. Infeasible candidates map to
// -infinity instead of throwing so the optimizer can treat the box as total.
inline std::function<double(const std::vector<double>&)> make_objective(const DesignProblem& p) {
    validate(p);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const double omega0 = p.omega0;
    const bool guard = p.stability_guard;

    if (p.family == DesignFamily::SecondOrderBandPass) {
        return [omega0](const std::vector<double>& x) {
            try {
                return magnitude_bp2(decode_second_order(x), omega0);
            } catch (const std::exception&) {
                return kNegInf;
            }
        };
    }

    const FilterFamily family = p.family == DesignFamily::BandPass ? FilterFamily::BandPass : FilterFamily::BandStop;
    const auto q_of = [family, omega0, guard](const FoFilterParams& params) {
        return family == FilterFamily::BandPass ? q_factor_bp(params, omega0, guard)
                                                : q_factor_bs(params, omega0, guard);
    };

    if (p.symmetry == Symmetry::Symmetric) {
        return [q_of, family](const std::vector<double>& x) {
            try {
                return q_of(decode_symmetric(x, family));
            } catch (const std::exception&) {
                return kNegInf;
            }
        };
    }
    return [q_of, family, guard](const std::vector<double>& x) {
        try {
            const FoFilterParams params = decode_asymmetric(x, family);
            if (params.alpha <= params.beta) return kNegInf;       // band-pass character needs alpha > beta
            if (guard && params.alpha >= 2.0) return kNegInf;
            return q_of(params);
        } catch (const std::exception&) {
            return kNegInf;
        }
    };
}

// Runs the optimizer once per seed and reports the best design found, with the
// quality factor recomputed from the decoded parameters and the peak (band
// pass) or notch (band stop) located numerically on the default export grid.
inline DesignReport design(const DesignProblem& p, const GaConfig& config, const std::vector<std::uint64_t>& seeds) {
    validate(p);
    validate(config);
    if (seeds.empty()) throw std::invalid_argument("design needs at least one seed");

    const Bounds bounds = resolved_bounds(p);
    const auto objective = make_objective(p);

    DesignReport report;
    OptimizationResult best;
    for (const std::uint64_t seed : seeds) {
        GaConfig cfg = config;
        cfg.seed = seed;
        OptimizationResult res = run(objective, bounds, cfg);
        report.seed_results.emplace_back(seed, res.best_fitness);
        if (best.best_vector.empty() || res.best_fitness > best.best_fitness) {
            best = std::move(res);
            report.best_seed = seed;
        }
    }

    const FrequencyGrid grid = default_grid(p.omega0);
    if (p.family == DesignFamily::SecondOrderBandPass) {
        const FoSecondOrderBpParams params = decode_second_order(best.best_vector);
        report.params = params;
        report.q = magnitude_bp2(params, p.omega0);
        try {
            report.omega_m = find_peak(sweep(params, grid), PeakKind::Peak).omega_m;
        } catch (const std::exception&) {
            // Peak outside the export grid; leave omega_m as NaN.
        }
        return report;
    }

    const FilterFamily family = p.family == DesignFamily::BandPass ? FilterFamily::BandPass : FilterFamily::BandStop;
    const FoFilterParams params = p.symmetry == Symmetry::Symmetric ? decode_symmetric(best.best_vector, family)
                                                                    : decode_asymmetric(best.best_vector, family);
    report.params = params;
    report.q = family == FilterFamily::BandPass ? q_factor_bp(params, p.omega0, p.stability_guard)
                                                : q_factor_bs(params, p.omega0, p.stability_guard);
    const PeakKind kind = family == FilterFamily::BandPass ? PeakKind::Peak : PeakKind::Notch;
    try {
        report.omega_m = find_peak(sweep(params, grid, p.stability_guard), kind).omega_m;
    } catch (const std::exception&) {
        // Monotone over the grid; leave omega_m as NaN.
    }
    return report;
}

// Optimizes the fractional second-order band-pass once per seed and reports
// where the coefficient a lands; the study is flagged degenerate when the
// median optimized a is at most 0.05, i.e. 0.25% of its [0, 20] range.
inline DegeneracyReport degeneracy_study(const GaConfig& config, double omega0,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::optional<Bounds>& bounds_override = std::nullopt) {
    validate(config);
    if (seeds.size() < 3) throw std::invalid_argument("degeneracy study needs at least 3 seeds");

    DesignProblem problem;
    problem.family = DesignFamily::SecondOrderBandPass;
    problem.omega0 = omega0;
    if (bounds_override) problem.bounds = *bounds_override;
    validate(problem);

    const Bounds bounds = resolved_bounds(problem);
    const auto objective = make_objective(problem);

    DegeneracyReport report;
    std::vector<double> a_values;
    for (const std::uint64_t seed : seeds) {
        GaConfig cfg = config;
        cfg.seed = seed;
        const OptimizationResult res = run(objective, bounds, cfg);
        const FoSecondOrderBpParams params = decode_second_order(res.best_vector);
        report.runs.push_back({seed, params, magnitude_bp2(params, omega0)});
        a_values.push_back(params.a);
    }

    std::sort(a_values.begin(), a_values.end());
    const std::size_t mid = a_values.size() / 2;
    report.median_a = a_values.size() % 2 ? a_values[mid] : 0.5 * (a_values[mid - 1] + a_values[mid]);
    report.degenerate = report.median_a <= 0.05;
    return report;
}

}  // namespace fofilter
