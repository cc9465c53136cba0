// fofilter: command-line front end for the fractional-order filter toolkit.
// Designs band-pass/band-stop filters by maximizing the quality factor at a
// center frequency, evaluates responses, exports sweeps/surfaces as CSV/SVG,
// and runs the second-order degeneracy study. All frequencies are rad/s.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <fofilter/fofilter.hpp>

namespace {

void print_kv(const char* key, double value) { std::printf("%s=%.17g\n", key, value); }

void print_kv(const char* key, const std::string& value) { std::printf("%s=%s\n", key, value.c_str()); }

fofilter::FilterFamily parse_family(const std::string& name) {
    return name == "bs" ? fofilter::FilterFamily::BandStop : fofilter::FilterFamily::BandPass;
}

struct GridFlags {
    double omega_min = 1.5e-3;
    double omega_max = 1.5e3;
    int points = 2000;

    fofilter::FrequencyGrid grid() const { return {omega_min, omega_max, points, fofilter::GridSpacing::Log}; }
};

void add_grid_options(CLI::App* cmd, const std::shared_ptr<GridFlags>& g) {
    cmd->add_option("--omega-min", g->omega_min, "Sweep start frequency (rad/s)")->capture_default_str();
    cmd->add_option("--omega-max", g->omega_max, "Sweep end frequency (rad/s)")->capture_default_str();
    cmd->add_option("--points", g->points, "Number of log-spaced grid points")->capture_default_str();
}

struct GaFlags {
    fofilter::GaConfig config;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
};

void add_ga_options(CLI::App* cmd, const std::shared_ptr<GaFlags>& g) {
    cmd->add_option("--population", g->config.population_size, "GA population size")->capture_default_str();
    cmd->add_option("--crossover-fraction", g->config.crossover_fraction, "Fraction of children from crossover")
        ->capture_default_str();
    cmd->add_option("--mutation-fraction", g->config.mutation_fraction, "Per-gene mutation probability")
        ->capture_default_str();
    cmd->add_option("--generations", g->config.max_generations, "Maximum GA generations")->capture_default_str();
    cmd->add_option("--elite", g->config.elite_count, "Individuals copied unchanged each generation")
        ->capture_default_str();
    cmd->add_option("--stall-generations", g->config.stall_generations,
                    "Stop after this many generations without relative improvement")
        ->capture_default_str();
    cmd->add_option("--stall-tolerance", g->config.stall_tolerance, "Relative improvement counted as progress")
        ->capture_default_str();
    cmd->add_option("--seeds", g->seeds, "Comma-separated RNG seeds, one GA run each (default 1,2,3,4,5)")
        ->delimiter(',');
}

// First-order-generalized parameter flags shared by qfactor/response/peak.
struct ParamFlags {
    std::string family = "bp";
    double a = 1.0;
    double b = 1.0;
    double d = 1.0;
    double alpha = 1.0;
    double beta = 0.5;
    bool no_guard = false;
};

void add_param_options(CLI::App* cmd, const std::shared_ptr<ParamFlags>& p, bool allow_bp2) {
    std::vector<std::string> families = {"bp", "bs"};
    if (allow_bp2) families.push_back("bp2");
    cmd->add_option("--family", p->family, "Filter family")
        ->required()
        ->check(CLI::IsMember(families));
    cmd->add_option("--a", p->a, "Pole coefficient a");
    cmd->add_option("--b", p->b, "Coefficient b");
    if (allow_bp2) cmd->add_option("--d", p->d, "Numerator gain d (bp2 only)");
    cmd->add_option("--alpha", p->alpha, "Denominator order alpha (bp/bs default: 2*beta)");
    cmd->add_option("--beta", p->beta, "Numerator order beta (bp/bs)");
    cmd->add_flag("--no-stability-guard", p->no_guard, "Allow alpha >= 2 (jw-axis poles become reachable)");
}

void require_given(const CLI::App* cmd, std::initializer_list<const char*> names) {
    for (const char* name : names) {
        if (cmd->count(name) == 0) throw CLI::RequiredError(name);
    }
}

// Assembles validated parameters for bp/bs (first) or bp2 (second) usage.
std::variant<fofilter::FoFilterParams, fofilter::FoSecondOrderBpParams> resolve_params(const CLI::App* cmd,
                                                                                       const ParamFlags& p) {
    if (p.family == "bp2") {
        require_given(cmd, {"--a", "--b", "--d", "--alpha"});
        return fofilter::FoSecondOrderBpParams{p.a, p.b, p.d, p.alpha};
    }
    require_given(cmd, {"--a", "--b", "--beta"});
    const double alpha = cmd->count("--alpha") ? p.alpha : 2.0 * p.beta;
    return fofilter::FoFilterParams{p.a, p.b, alpha, p.beta, parse_family(p.family)};
}

std::vector<fofilter::ResponseSample> sample_params(
    const std::variant<fofilter::FoFilterParams, fofilter::FoSecondOrderBpParams>& params,
    const fofilter::FrequencyGrid& grid, bool guard) {
    if (const auto* fo = std::get_if<fofilter::FoFilterParams>(&params)) {
        return fofilter::sweep(*fo, grid, guard);
    }
    return fofilter::sweep(std::get<fofilter::FoSecondOrderBpParams>(params), grid);
}

void add_qfactor_command(CLI::App& app) {
    auto flags = std::make_shared<ParamFlags>();
    auto omega0 = std::make_shared<double>(1.5);
    auto* cmd = app.add_subcommand(
        "qfactor", "Quality factor at a center frequency: band-pass gain or reciprocal band-stop gain");
    add_param_options(cmd, flags, false);
    cmd->add_option("--omega0", *omega0, "Center frequency (rad/s)")->required();

    cmd->callback([cmd, flags, omega0]() {
        const auto params = resolve_params(cmd, *flags);
        const auto& p = std::get<fofilter::FoFilterParams>(params);
        const bool guard = !flags->no_guard;
        const bool bp = p.family == fofilter::FilterFamily::BandPass;
        const double q = bp ? fofilter::q_factor_bp(p, *omega0, guard) : fofilter::q_factor_bs(p, *omega0, guard);

        print_kv("family", flags->family);
        print_kv("a", p.a);
        print_kv("b", p.b);
        print_kv("alpha", p.alpha);
        print_kv("beta", p.beta);
        print_kv("omega0", *omega0);
        print_kv("q", q);
        if (fofilter::is_symmetric(p)) {
            fofilter::FoFilterParams twin = p;
            twin.family = fofilter::FilterFamily::BandPass;
            const fofilter::PeakReport peak = fofilter::peak_closed_form(twin, guard);
            print_kv("omega_m", peak.omega_m);
            print_kv("peak_magnitude", bp ? peak.peak_magnitude : 1.0 / peak.peak_magnitude);
            print_kv("method", std::string("closed_form"));
        } else {
            const auto kind = bp ? fofilter::PeakKind::Peak : fofilter::PeakKind::Notch;
            const auto samples = fofilter::sweep(p, fofilter::default_grid(*omega0), guard);
            const fofilter::PeakReport peak = fofilter::find_peak(samples, kind);
            print_kv("omega_m", peak.omega_m);
            print_kv("peak_magnitude", peak.peak_magnitude);
            print_kv("method", std::string("grid_argmax"));
        }
    });
}

void add_response_command(CLI::App& app) {
    auto flags = std::make_shared<ParamFlags>();
    auto grid = std::make_shared<GridFlags>();
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<std::string>();
    auto title = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand("response", "Sweep a filter's magnitude (dB) and phase over a log frequency grid");
    add_param_options(cmd, flags, true);
    add_grid_options(cmd, grid);
    cmd->add_option("--out", *out, "Write the sweep as CSV (omega,magnitude,magnitude_db,phase_deg)");
    cmd->add_option("--svg", *svg, "Render the sweep as an SVG chart");
    cmd->add_option("--title", *title, "Chart title for --svg");

    cmd->callback([cmd, flags, grid, out, svg, title]() {
        const auto params = resolve_params(cmd, *flags);
        const auto samples = sample_params(params, grid->grid(), !flags->no_guard);
        if (!out->empty()) fofilter::write_csv(samples, *out);
        if (!svg->empty()) {
            fofilter::SvgAxes axes;
            axes.title = title->empty() ? flags->family + " frequency response" : *title;
            fofilter::render_svg({{flags->family, samples}}, axes, *svg);
        }
        print_kv("samples", static_cast<double>(samples.size()));
        if (!out->empty()) print_kv("csv", *out);
        if (!svg->empty()) print_kv("svg", *svg);
    });
}

void add_peak_command(CLI::App& app) {
    auto flags = std::make_shared<ParamFlags>();
    auto grid = std::make_shared<GridFlags>();
    auto* cmd = app.add_subcommand("peak", "Locate the magnitude peak (bp/bp2) or notch (bs) on a log grid");
    add_param_options(cmd, flags, true);
    add_grid_options(cmd, grid);

    cmd->callback([cmd, flags, grid]() {
        const auto params = resolve_params(cmd, *flags);
        const auto samples = sample_params(params, grid->grid(), !flags->no_guard);
        const auto kind = flags->family == "bs" ? fofilter::PeakKind::Notch : fofilter::PeakKind::Peak;
        const fofilter::PeakReport peak = fofilter::find_peak(samples, kind);
        print_kv("omega_m", peak.omega_m);
        print_kv("peak_magnitude", peak.peak_magnitude);
        print_kv("method", std::string("grid_argmax"));
        if (const auto* fo = std::get_if<fofilter::FoFilterParams>(&params); fo && fofilter::is_symmetric(*fo)) {
            print_kv("closed_form_omega_m", std::pow(fo->a, 1.0 / fo->alpha));
        }
    });
}

struct BoundsOverrideFlags {
    double a_min = 0.0, a_max = 0.0, b_min = 0.0, b_max = 0.0, d_min = 0.0, d_max = 0.0;
    double alpha_min = 0.0, alpha_max = 0.0, beta_min = 0.0, beta_max = 0.0;
};

void add_bounds_options(CLI::App* cmd, const std::shared_ptr<BoundsOverrideFlags>& b) {
    cmd->add_option("--a-min", b->a_min, "Lower bound for a");
    cmd->add_option("--a-max", b->a_max, "Upper bound for a");
    cmd->add_option("--b-min", b->b_min, "Lower bound for b");
    cmd->add_option("--b-max", b->b_max, "Upper bound for b");
    cmd->add_option("--d-min", b->d_min, "Lower bound for d (bp2 only)");
    cmd->add_option("--d-max", b->d_max, "Upper bound for d (bp2 only)");
    cmd->add_option("--alpha-min", b->alpha_min, "Lower bound for alpha (asymmetric/bp2 only)");
    cmd->add_option("--alpha-max", b->alpha_max, "Upper bound for alpha (asymmetric/bp2 only)");
    cmd->add_option("--beta-min", b->beta_min, "Lower bound for beta (bp/bs only)");
    cmd->add_option("--beta-max", b->beta_max, "Upper bound for beta (bp/bs only)");
}

// Maps override flags onto the decision-vector layout of the problem,
// rejecting flags that name parameters the layout does not contain.
void apply_bounds_overrides(const CLI::App* cmd, const BoundsOverrideFlags& flags, const fofilter::DesignProblem& p,
                            fofilter::Bounds& bounds) {
    const bool second = p.family == fofilter::DesignFamily::SecondOrderBandPass;
    const bool asymmetric = !second && p.symmetry == fofilter::Symmetry::Asymmetric;
    const auto index_of = [&](const std::string& param) -> int {
        if (param == "a") return 0;
        if (param == "b") return 1;
        if (param == "d") return second ? 2 : -1;
        if (param == "alpha") return second ? 3 : (asymmetric ? 2 : -1);
        return second ? -1 : (asymmetric ? 3 : 2);  // beta
    };
    const std::pair<const char*, std::pair<std::string, double>> entries[] = {
        {"--a-min", {"a", flags.a_min}},         {"--a-max", {"a", flags.a_max}},
        {"--b-min", {"b", flags.b_min}},         {"--b-max", {"b", flags.b_max}},
        {"--d-min", {"d", flags.d_min}},         {"--d-max", {"d", flags.d_max}},
        {"--alpha-min", {"alpha", flags.alpha_min}}, {"--alpha-max", {"alpha", flags.alpha_max}},
        {"--beta-min", {"beta", flags.beta_min}},    {"--beta-max", {"beta", flags.beta_max}},
    };
    for (const auto& [name, target] : entries) {
        if (cmd->count(name) == 0) continue;
        const int idx = index_of(target.first);
        if (idx < 0) {
            throw CLI::ValidationError(std::string(name) + " does not apply to this family/symmetry");
        }
        const bool is_min = std::string(name).ends_with("-min");
        (is_min ? bounds.lower : bounds.upper)[static_cast<std::size_t>(idx)] = target.second;
    }
}

void print_design_params(const std::variant<fofilter::FoFilterParams, fofilter::FoSecondOrderBpParams>& params) {
    if (const auto* fo = std::get_if<fofilter::FoFilterParams>(&params)) {
        print_kv("a", fo->a);
        print_kv("b", fo->b);
        print_kv("alpha", fo->alpha);
        print_kv("beta", fo->beta);
    } else {
        const auto& p2 = std::get<fofilter::FoSecondOrderBpParams>(params);
        print_kv("a", p2.a);
        print_kv("b", p2.b);
        print_kv("d", p2.d);
        print_kv("alpha", p2.alpha);
    }
}

void add_design_command(CLI::App& app) {
    auto family = std::make_shared<std::string>("bp");
    auto omega0 = std::make_shared<double>(1.5);
    auto ga = std::make_shared<GaFlags>();
    auto bounds_flags = std::make_shared<BoundsOverrideFlags>();
    auto no_guard = std::make_shared<bool>(false);
    auto sweep_out = std::make_shared<std::string>();
    auto svg = std::make_shared<std::string>();
    auto title = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand(
        "design", "Maximize the quality factor at --omega0 (rad/s) with the genetic algorithm, best of all seeds");
    cmd->add_option("--family", *family, "Filter family")
        ->check(CLI::IsMember({"bp", "bs", "bp2"}))
        ->capture_default_str();
    auto* sym = cmd->add_flag("--symmetric", "Lock alpha = 2*beta (default)");
    auto* asym = cmd->add_flag("--asymmetric", "Optimize alpha and beta independently");
    sym->excludes(asym);
    cmd->add_option("--omega0", *omega0, "Center frequency (rad/s)")->capture_default_str();
    cmd->add_flag("--no-stability-guard", *no_guard, "Widen the symmetric box to beta < 2 (alpha up to 4)");
    add_ga_options(cmd, ga);
    add_bounds_options(cmd, bounds_flags);
    cmd->add_option("--sweep-out", *sweep_out, "Write the optimized filter's sweep as CSV");
    cmd->add_option("--svg", *svg, "Render the optimized filter's sweep as SVG");
    cmd->add_option("--title", *title, "Chart title for --svg");

    cmd->callback([cmd, family, omega0, ga, bounds_flags, no_guard, sweep_out, svg, title, asym]() {
        fofilter::DesignProblem problem;
        problem.family = *family == "bp" ? fofilter::DesignFamily::BandPass
                         : *family == "bs" ? fofilter::DesignFamily::BandStop
                                           : fofilter::DesignFamily::SecondOrderBandPass;
        if (problem.family == fofilter::DesignFamily::SecondOrderBandPass && asym->count() > 0) {
            throw CLI::ValidationError("--asymmetric does not apply to family bp2");
        }
        problem.symmetry = asym->count() > 0 ? fofilter::Symmetry::Asymmetric : fofilter::Symmetry::Symmetric;
        problem.omega0 = *omega0;
        problem.stability_guard = !*no_guard;
        fofilter::Bounds bounds = fofilter::default_bounds(problem);
        apply_bounds_overrides(cmd, *bounds_flags, problem, bounds);
        problem.bounds = bounds;

        const fofilter::DesignReport report = fofilter::design(problem, ga->config, ga->seeds);

        print_kv("family", *family);
        if (problem.family != fofilter::DesignFamily::SecondOrderBandPass) {
            print_kv("symmetry",
                     std::string(problem.symmetry == fofilter::Symmetry::Symmetric ? "symmetric" : "asymmetric"));
        }
        print_kv("omega0", *omega0);
        for (const auto& [seed, q] : report.seed_results) {
            std::printf("seed=%llu q=%.17g\n", static_cast<unsigned long long>(seed), q);
        }
        std::printf("best_seed=%llu\n", static_cast<unsigned long long>(report.best_seed));
        print_design_params(report.params);
        print_kv("best_q", report.q);
        print_kv("omega_m", report.omega_m);

        if (!sweep_out->empty() || !svg->empty()) {
            const auto samples = sample_params(report.params, fofilter::default_grid(*omega0), problem.stability_guard);
            if (!sweep_out->empty()) fofilter::write_csv(samples, *sweep_out);
            if (!svg->empty()) {
                fofilter::SvgAxes axes;
                axes.title = title->empty() ? "Optimized " + *family + " frequency response" : *title;
                fofilter::render_svg({{*family + " design", samples}}, axes, *svg);
            }
        }
    });
}

void add_surface_command(CLI::App& app) {
    auto flags = std::make_shared<ParamFlags>();
    auto grid = std::make_shared<GridFlags>();
    auto swept = std::make_shared<std::string>();
    auto values = std::make_shared<std::vector<double>>();
    auto out = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand(
        "surface", "Magnitude (dB) over frequency while one parameter steps through --values; long-format CSV");
    add_param_options(cmd, flags, false);
    add_grid_options(cmd, grid);
    cmd->add_option("--sweep", *swept, "Parameter to sweep: a, b, alpha, or beta")
        ->required()
        ->check(CLI::IsMember({"a", "b", "alpha", "beta"}));
    cmd->add_option("--values", *values, "Comma-separated parameter values")->required()->delimiter(',');
    cmd->add_option("--out", *out, "Destination CSV (param_value,omega,magnitude_db)")->required();

    cmd->callback([cmd, flags, grid, swept, values, out]() {
        const double alpha = cmd->count("--alpha") ? flags->alpha : 2.0 * flags->beta;
        const fofilter::FoFilterParams base{flags->a, flags->b, alpha, flags->beta, parse_family(flags->family)};
        const fofilter::SurfaceGrid surf =
            fofilter::surface(base, *swept, *values, grid->grid(), !flags->no_guard);
        fofilter::write_csv(surf, *out);
        print_kv("param", *swept);
        print_kv("rows", static_cast<double>(surf.param_values.size()));
        print_kv("points", static_cast<double>(surf.grid.points));
        print_kv("csv", *out);
    });
}

void add_degeneracy_command(CLI::App& app) {
    auto omega0 = std::make_shared<double>(1.5);
    auto ga = std::make_shared<GaFlags>();
    auto a_min = std::make_shared<double>(0.0);
    auto* cmd = app.add_subcommand(
        "degeneracy", "Optimize the fractional second-order band-pass per seed and report where a lands");
    cmd->add_option("--omega0", *omega0, "Center frequency (rad/s)")->capture_default_str();
    cmd->add_option("--a-min", *a_min, "Raise a's lower bound from its default of 0")->capture_default_str();
    add_ga_options(cmd, ga);

    cmd->callback([cmd, omega0, ga, a_min]() {
        std::optional<fofilter::Bounds> override_bounds;
        if (cmd->count("--a-min") > 0) {
            fofilter::DesignProblem problem;
            problem.family = fofilter::DesignFamily::SecondOrderBandPass;
            problem.omega0 = *omega0;
            fofilter::Bounds b = fofilter::default_bounds(problem);
            b.lower[0] = *a_min;
            override_bounds = b;
        }
        const fofilter::DegeneracyReport report =
            fofilter::degeneracy_study(ga->config, *omega0, ga->seeds, override_bounds);
        print_kv("omega0", *omega0);
        for (const auto& run : report.runs) {
            std::printf("seed=%llu a=%.17g q=%.17g\n", static_cast<unsigned long long>(run.seed), run.params.a,
                        run.q);
        }
        print_kv("median_a", report.median_a);
        print_kv("degenerate", std::string(report.degenerate ? "true" : "false"));
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fofilter: fractional-order band-pass/band-stop filter design and analysis.\n"
        "Frequencies are rad/s; magnitude_db fields are 20*log10 of linear gain."};
    app.require_subcommand(1);
    add_qfactor_command(app);
    add_response_command(app);
    add_design_command(app);
    add_surface_command(app);
    add_peak_command(app);
    add_degeneracy_command(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
