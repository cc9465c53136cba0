#pragma once
// Bounded real-coded genetic algorithm: tournament selection, per-gene blend
// crossover, two-scale Gaussian mutation that switches to uniform resampling
// once progress stalls, elitist replacement, and a deterministic pattern-search
// refinement of the incumbent after the evolutionary loop.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace fofilter {

struct GaConfig {
    int population_size = 20;
    double crossover_fraction = 0.8;
    double mutation_fraction = 0.2;
    int max_generations = 200;
    int elite_count = 2;
    int stall_generations = 50;
    double stall_tolerance = 1e-8;
    std::uint64_t seed = 1;
};

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

enum class Termination { MaxGenerations, Stall };

struct OptimizationResult {
    std::vector<double> best_vector;
    double best_fitness = -std::numeric_limits<double>::infinity();
    std::vector<double> history;  // best fitness reached by each generation, entry 0 = initial population
    int generations_run = 0;
    Termination terminated_by = Termination::MaxGenerations;
};

using Population = std::vector<std::vector<double>>;

inline void validate(const Bounds& b) {
    if (b.lower.empty() || b.lower.size() != b.upper.size()) {
        throw std::invalid_argument("bounds need matching non-empty lower/upper vectors");
    }
    for (std::size_t i = 0; i < b.lower.size(); ++i) {
        if (!std::isfinite(b.lower[i]) || !std::isfinite(b.upper[i]) || b.lower[i] > b.upper[i]) {
            throw std::invalid_argument("each bound must satisfy finite lower <= upper");
        }
    }
}

inline void validate(const GaConfig& c) {
    if (c.population_size < 4) throw std::invalid_argument("population_size must be >= 4");
    if (c.crossover_fraction < 0.0 || c.crossover_fraction > 1.0) {
        throw std::invalid_argument("crossover_fraction must lie in [0, 1]");
    }
    if (c.mutation_fraction < 0.0 || c.mutation_fraction > 1.0) {
        throw std::invalid_argument("mutation_fraction must lie in [0, 1]");
    }
    if (c.max_generations < 0) throw std::invalid_argument("max_generations must be >= 0");
    if (c.elite_count < 0 || c.elite_count >= c.population_size) {
        throw std::invalid_argument("elite_count must satisfy 0 <= elite_count < population_size");
    }
    if (c.stall_generations < 1) throw std::invalid_argument("stall_generations must be >= 1");
    if (!(c.stall_tolerance >= 0.0)) throw std::invalid_argument("stall_tolerance must be >= 0");
}

namespace detail {

// Hand-rolled draws keep results bit-identical across standard libraries;
// std::uniform_real_distribution is implementation-defined.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + uniform01(rng) * (hi - lo);
}

inline double standard_normal(std::mt19937_64& rng) {
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

inline std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    return i >= n ? n - 1 : i;
}

// Binary tournament; ties resolve to the lower index so runs stay reproducible.
inline std::size_t tournament(std::mt19937_64& rng, const std::vector<double>& fitnesses) {
    const std::size_t i = pick_index(rng, fitnesses.size());
    const std::size_t j = pick_index(rng, fitnesses.size());
    if (fitnesses[i] > fitnesses[j]) return i;
    if (fitnesses[j] > fitnesses[i]) return j;
    return std::min(i, j);
}

inline std::vector<double> random_vector(std::mt19937_64& rng, const Bounds& bounds) {
    std::vector<double> x(bounds.lower.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = uniform_in(rng, bounds.lower[k], bounds.upper[k]);
    }
    return x;
}

inline Population sample_population(const Bounds& bounds, const GaConfig& config, std::mt19937_64& rng) {
    Population population;
    population.reserve(static_cast<std::size_t>(config.population_size));
    for (int i = 0; i < config.population_size; ++i) {
        population.push_back(random_vector(rng, bounds));
    }
    return population;
}

inline bool improved(double now, double before, double tolerance) {
    if (!std::isfinite(before)) return now > before;
    return now - before > tolerance * std::max(std::abs(before), 1.0);
}

// Coordinate pattern search around the incumbent: per axis, halve the step
// from a quarter of the box width down to machine-level resolution, accepting
// only strict improvements. Deterministic and clamped to the bounds.
template <typename Eval>
inline void pattern_refine(Eval&& evaluate, const Bounds& bounds, std::vector<double>& x, double& fx) {
    constexpr int rounds = 3;
    int budget = 20000;
    for (int r = 0; r < rounds && budget > 0; ++r) {
        for (std::size_t k = 0; k < x.size() && budget > 0; ++k) {
            const double width = bounds.upper[k] - bounds.lower[k];
            if (width <= 0.0) continue;
            double h = width / 4.0;
            const double h_min = width * 1e-15;
            while (h > h_min && budget > 0) {
                bool moved = false;
                const double up = std::min(bounds.upper[k], x[k] + h);
                const double down = std::max(bounds.lower[k], x[k] - h);
                for (const double candidate : {up, down}) {
                    if (candidate == x[k]) continue;
                    const double previous = x[k];
                    x[k] = candidate;
                    const double fc = evaluate(x);
                    --budget;
                    if (fc > fx) {
                        fx = fc;
                        moved = true;
                        break;
                    }
                    x[k] = previous;
                }
                if (!moved) h *= 0.5;
            }
        }
    }
}

}  // namespace detail

// Uniformly sampled starting population; a fixed seed reproduces it exactly.
inline Population initialize(const Bounds& bounds, const GaConfig& config) {
    validate(bounds);
    validate(config);
    std::mt19937_64 rng(config.seed);
    return detail::sample_population(bounds, config, rng);
}

// One generation: copy the elites, fill round(crossover_fraction * rest) slots
// with blend-crossover children of tournament winners, and the remainder with
// mutants. A mutant perturbs each gene with probability mutation_fraction by a
// Gaussian whose deviation is 0.1 * range, half the time shrunk by a random
// factor of up to 1e12 so late generations can refine at fine scales. When the
// caller signals a stalled search, mutants are resampled uniformly instead to
// reintroduce diversity. All genes are clamped to the bounds.
inline Population step(const Population& population, const std::vector<double>& fitnesses, const Bounds& bounds,
                       const GaConfig& config, std::mt19937_64& rng, bool stagnant = false) {
    validate(bounds);
    validate(config);
    const auto n = static_cast<std::size_t>(config.population_size);
    if (population.size() != n || fitnesses.size() != n) {
        throw std::invalid_argument("population and fitnesses must match population_size");
    }
    const std::size_t dim = bounds.lower.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return fitnesses[i] > fitnesses[j]; });

    Population next;
    next.reserve(n);
    for (int e = 0; e < config.elite_count; ++e) {
        next.push_back(population[order[static_cast<std::size_t>(e)]]);
    }

    const int n_children = config.population_size - config.elite_count;
    const int n_crossover = static_cast<int>(std::lround(config.crossover_fraction * n_children));

    for (int c = 0; c < n_crossover; ++c) {
        const auto& p1 = population[detail::tournament(rng, fitnesses)];
        const auto& p2 = population[detail::tournament(rng, fitnesses)];
        std::vector<double> child(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const double lo = std::min(p1[k], p2[k]);
            const double hi = std::max(p1[k], p2[k]);
            const double d = hi - lo;
            // Blend crossover with 0.5 expansion on each side of the parents.
            child[k] = d == 0.0 ? lo : detail::uniform_in(rng, lo - 0.5 * d, lo + 1.5 * d);
            child[k] = std::clamp(child[k], bounds.lower[k], bounds.upper[k]);
        }
        next.push_back(std::move(child));
    }

    for (int m = 0; m < n_children - n_crossover; ++m) {
        std::vector<double> child;
        if (stagnant && config.mutation_fraction > 0.0) {
            child = detail::random_vector(rng, bounds);
        } else {
            child = population[detail::tournament(rng, fitnesses)];
            for (std::size_t k = 0; k < dim; ++k) {
                if (detail::uniform01(rng) < config.mutation_fraction) {
                    double sigma = 0.1 * (bounds.upper[k] - bounds.lower[k]);
                    if (detail::uniform01(rng) >= 0.5) {
                        sigma *= std::pow(10.0, -12.0 * detail::uniform01(rng));
                    }
                    child[k] += sigma * detail::standard_normal(rng);
                    child[k] = std::clamp(child[k], bounds.lower[k], bounds.upper[k]);
                }
            }
        }
        next.push_back(std::move(child));
    }
    return next;
}

// Maximizes the objective over the box. Non-finite objective values are
// treated as -infinity fitness so penalty encodings compose cleanly. The
// result is a pure function of (objective, bounds, config) including the seed.
template <typename Objective>
inline OptimizationResult run(Objective&& objective, const Bounds& bounds, const GaConfig& config) {
    validate(bounds);
    validate(config);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const auto evaluate = [&](const std::vector<double>& x) {
        const double f = objective(x);
        return std::isfinite(f) ? f : kNegInf;
    };

    std::mt19937_64 rng(config.seed);
    Population population = detail::sample_population(bounds, config, rng);
    std::vector<double> fitnesses(population.size());

    OptimizationResult result;
    result.history.reserve(static_cast<std::size_t>(config.max_generations) + 1);

    const auto absorb = [&]() {
        for (std::size_t i = 0; i < population.size(); ++i) {
            fitnesses[i] = evaluate(population[i]);
            if (fitnesses[i] > result.best_fitness || result.best_vector.empty()) {
                result.best_fitness = fitnesses[i];
                result.best_vector = population[i];
            }
        }
        result.history.push_back(result.best_fitness);
    };
    absorb();

    const int stagnation_trigger = std::max(1, config.stall_generations / 2);
    result.terminated_by = Termination::MaxGenerations;
    for (int g = 1; g <= config.max_generations; ++g) {
        const auto h = result.history.size();
        const bool stagnant =
            h > static_cast<std::size_t>(stagnation_trigger) &&
            !detail::improved(result.history[h - 1], result.history[h - 1 - static_cast<std::size_t>(stagnation_trigger)],
                              config.stall_tolerance);
        population = step(population, fitnesses, bounds, config, rng, stagnant);
        absorb();
        result.generations_run = g;
        if (g >= config.stall_generations) {
            const auto now = result.history[static_cast<std::size_t>(g)];
            const auto before = result.history[static_cast<std::size_t>(g - config.stall_generations)];
            if (!detail::improved(now, before, config.stall_tolerance)) {
                result.terminated_by = Termination::Stall;
                break;
            }
        }
    }

    if (std::isfinite(result.best_fitness)) {
        detail::pattern_refine(evaluate, bounds, result.best_vector, result.best_fitness);
    }
    result.best_fitness = evaluate(result.best_vector);
    return result;
}

}  // namespace fofilter
