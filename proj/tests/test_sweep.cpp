#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fofilter/svg.hpp>
#include <fofilter/sweep.hpp>

using namespace fofilter;
using Catch::Approx;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream ss(text);
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
}

}  // namespace

TEST_CASE("log grid hits its endpoints with constant ratio") {
    const FrequencyGrid g{0.01, 100.0, 9, GridSpacing::Log};
    const std::vector<double> w = grid_points(g);
    REQUIRE(w.size() == 9);
    CHECK(w.front() == 0.01);
    CHECK(w.back() == 100.0);
    for (std::size_t i = 1; i < w.size(); ++i) {
        CHECK(w[i] / w[i - 1] == Approx(std::pow(10.0, 0.5)).epsilon(1e-12));
    }

    const std::vector<double> two = grid_points({0.5, 8.0, 2, GridSpacing::Log});
    CHECK(two == std::vector<double>{0.5, 8.0});

    CHECK_THROWS_AS(grid_points({1.0, 10.0, 1, GridSpacing::Log}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({-1.0, 10.0, 5, GridSpacing::Log}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({10.0, 1.0, 5, GridSpacing::Log}), std::invalid_argument);
}

TEST_CASE("sweep samples magnitude, dB, and phase consistently") {
    const FoFilterParams opt{0.996307, 18.2033, 2.0 * 0.924351, 0.924351, FilterFamily::BandPass};
    const FrequencyGrid grid{0.01, 100.0, 1000, GridSpacing::Log};
    const auto samples = sweep(opt, grid);
    REQUIRE(samples.size() == 1000);

    double max_db = -1e300;
    double max_mag = 0.0;
    for (const auto& s : samples) {
        CHECK(!s.pole);
        CHECK(s.magnitude_db == Approx(20.0 * std::log10(s.magnitude)).margin(1e-9));
        CHECK(s.phase_deg == Approx(phase(opt, s.omega) * 180.0 / std::numbers::pi).margin(1e-9));
        max_db = std::max(max_db, s.magnitude_db);
        max_mag = std::max(max_mag, s.magnitude);
    }
    CHECK(max_db == Approx(20.0 * std::log10(max_mag)).margin(1e-9));
    // The response peaks near w = 1 above the center-frequency gain at 1.5.
    CHECK(max_mag > q_factor_bp(opt, 1.5));

    FoFilterParams bs = opt;
    bs.family = FilterFamily::BandStop;
    const auto stop = sweep(bs, grid);
    for (std::size_t i = 0; i < stop.size(); ++i) {
        CHECK(stop[i].magnitude * samples[i].magnitude == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sweep flags pole hits instead of aborting") {
    // At alpha = 2 the pole sits on the jw axis at w = a^(1/2) = 1, the grid start.
    const FoFilterParams edge{1.0, 1.0, 2.0, 0.5, FilterFamily::BandPass};
    const auto samples = sweep(edge, {1.0, 10.0, 5, GridSpacing::Log}, false);
    REQUIRE(samples.size() == 5);
    CHECK(samples[0].pole);
    CHECK(std::isnan(samples[0].magnitude));
    for (std::size_t i = 1; i < samples.size(); ++i) {
        CHECK(!samples[i].pole);
        CHECK(std::isfinite(samples[i].magnitude));
    }
}

TEST_CASE("surface rows hold the base parameters and track the swept one") {
    const FoFilterParams base{1.0, 1.0, 1.0, 0.5, FilterFamily::BandPass};
    const FrequencyGrid grid{0.01, 100.0, 400, GridSpacing::Log};
    const std::vector<double> omegas = grid_points(grid);

    const SurfaceGrid by_a = surface(base, "a", {0.5, 1.0, 2.0, 5.0}, grid);
    REQUIRE(by_a.values_db.size() == 4);
    std::vector<std::size_t> argmax;
    for (const auto& row : by_a.values_db) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (row[c] > row[best]) best = c;
        }
        argmax.push_back(best);
    }
    for (std::size_t r = 1; r < argmax.size(); ++r) CHECK(argmax[r] > argmax[r - 1]);

    const SurfaceGrid by_b = surface(base, "b", {0.5, 1.0, 2.0, 5.0}, grid);
    std::size_t fixed_argmax = 0;
    for (std::size_t c = 1; c < by_b.values_db[0].size(); ++c) {
        if (by_b.values_db[0][c] > by_b.values_db[0][fixed_argmax]) fixed_argmax = c;
    }
    for (std::size_t r = 1; r < by_b.values_db.size(); ++r) {
        std::size_t best = 0;
        for (std::size_t c = 0; c < by_b.values_db[r].size(); ++c) {
            CHECK(by_b.values_db[r][c] > by_b.values_db[r - 1][c]);
            if (by_b.values_db[r][c] > by_b.values_db[r][best]) best = c;
        }
        CHECK(best == fixed_argmax);
    }

    // A symmetric base keeps alpha locked to 2*beta row by row.
    const SurfaceGrid by_beta = surface(base, "beta", {0.3, 0.7}, grid);
    for (std::size_t r = 0; r < 2; ++r) {
        const FoFilterParams row{1.0, 1.0, 2.0 * by_beta.param_values[r], by_beta.param_values[r],
                                 FilterFamily::BandPass};
        for (std::size_t c = 0; c < omegas.size(); ++c) {
            CHECK(by_beta.values_db[r][c] == Approx(magnitude_to_db(magnitude_bp(row, omegas[c]))).margin(1e-10));
        }
    }

    // Infeasible combinations flag their cells rather than aborting.
    const FoFilterParams fixed{1.0, 1.0, 1.0, 0.5, FilterFamily::BandPass};
    const SurfaceGrid bad = surface(fixed, "alpha", {0.25, 1.5}, grid);
    for (const double v : bad.values_db[0]) CHECK(std::isnan(v));  // alpha 0.25 < beta
    for (const double v : bad.values_db[1]) CHECK(std::isfinite(v));

    const SurfaceGrid one = surface(base, "b", {3.0}, grid);
    CHECK(one.values_db.size() == 1);

    CHECK_THROWS_AS(surface(base, "gamma", {1.0}, grid), std::invalid_argument);
    CHECK_THROWS_AS(surface(base, "a", {}, grid), std::invalid_argument);
}

TEST_CASE("find_peak locates interior extrema with parabolic refinement") {
    const FoFilterParams p{1.0, 1.0, 1.0, 0.5, FilterFamily::BandPass};
    const FrequencyGrid grid{0.01, 100.0, 1001, GridSpacing::Log};
    const double step = std::pow(10.0, 4.0 / 1000.0);

    const PeakReport peak = find_peak(sweep(p, grid));
    CHECK(peak.method == PeakMethod::GridArgmax);
    CHECK(peak.omega_m == Approx(1.0).epsilon(step - 1.0));
    CHECK(peak.peak_magnitude == Approx(magnitude_bp(p, 1.0)).epsilon(1e-3));

    FoFilterParams bs = p;
    bs.family = FilterFamily::BandStop;
    const PeakReport notch = find_peak(sweep(bs, grid), PeakKind::Notch);
    CHECK(notch.omega_m == Approx(1.0).epsilon(step - 1.0));

    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        FoFilterParams q;
        q.a = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
        q.b = 1.0;
        q.beta = uniform(rng, 0.25, 0.9);
        q.alpha = 2.0 * q.beta;
        q.family = FilterFamily::BandPass;
        const FrequencyGrid wide{1e-4, 1e4, 2001, GridSpacing::Log};
        const double ratio = std::pow(10.0, 8.0 / 2000.0);
        const PeakReport found = find_peak(sweep(q, wide));
        const double expected = peak_closed_form(q).omega_m;
        CHECK(found.omega_m / expected < ratio);
        CHECK(expected / found.omega_m < ratio);
    }

    std::vector<ResponseSample> ramp;
    for (int i = 0; i < 10; ++i) {
        ramp.push_back({std::pow(10.0, i), 1.0, static_cast<double>(i), 0.0, false});
    }
    CHECK_THROWS_AS(find_peak(ramp), std::runtime_error);
    CHECK_THROWS_AS(find_peak({ramp[0], ramp[1]}), std::invalid_argument);
}

TEST_CASE("slope estimation recovers the asymptotic roll-offs") {
    const FoFilterParams p{1.0, 1.0, 1.6, 0.8, FilterFamily::BandPass};
    const auto samples = sweep(p, {1e-5, 1e5, 2000, GridSpacing::Log});
    CHECK(slope_db_per_decade(samples, 1e3, 1e5) == Approx(-16.0).margin(0.5));
    CHECK(slope_db_per_decade(samples, 1e-5, 1e-3) == Approx(16.0).margin(0.5));

    std::vector<ResponseSample> flat;
    for (int i = 0; i < 5; ++i) flat.push_back({std::pow(10.0, i), 1.0, 3.0, 0.0, false});
    CHECK(slope_db_per_decade(flat, 0.5, 1e5) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(slope_db_per_decade(samples, 1e6, 1e7), std::runtime_error);
}

TEST_CASE("CSV export round-trips at full precision") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fofilter_sweep_test";
    fs::create_directories(dir);

    const FoFilterParams opt{0.996307, 18.2033, 2.0 * 0.924351, 0.924351, FilterFamily::BandPass};
    const auto samples = sweep(opt, {0.01, 100.0, 50, GridSpacing::Log});
    const std::string path = (dir / "sweep.csv").string();
    write_csv(samples, path);

    const auto lines = lines_of(read_file(path));
    REQUIRE(lines.size() == 51);
    CHECK(lines[0] == "omega,magnitude,magnitude_db,phase_deg");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double w = 0.0, m = 0.0, db = 0.0, ph = 0.0;
        REQUIRE(std::sscanf(lines[i + 1].c_str(), "%lf,%lf,%lf,%lf", &w, &m, &db, &ph) == 4);
        CHECK(w == samples[i].omega);
        CHECK(m == samples[i].magnitude);
        CHECK(db == samples[i].magnitude_db);
        CHECK(ph == samples[i].phase_deg);
    }

    // Two samples produce exactly three lines.
    write_csv(sweep(opt, {0.5, 2.0, 2, GridSpacing::Log}), (dir / "two.csv").string());
    CHECK(lines_of(read_file((dir / "two.csv").string())).size() == 3);

    // Deep notches are clamped to the dB floor on export.
    std::vector<ResponseSample> deep = {{1.0, 1e-20, -400.0, 0.0, false}};
    write_csv(deep, (dir / "deep.csv").string());
    const auto deep_lines = lines_of(read_file((dir / "deep.csv").string()));
    double w = 0.0, m = 0.0, db = 0.0, ph = 0.0;
    REQUIRE(std::sscanf(deep_lines[1].c_str(), "%lf,%lf,%lf,%lf", &w, &m, &db, &ph) == 4);
    CHECK(db == -300.0);

    const SurfaceGrid surf =
        surface({1.0, 1.0, 1.0, 0.5, FilterFamily::BandPass}, "b", {1.0, 2.0, 3.0}, {0.1, 10.0, 4, GridSpacing::Log});
    const std::string surf_path = (dir / "surface.csv").string();
    write_csv(surf, surf_path);
    const auto surf_lines = lines_of(read_file(surf_path));
    REQUIRE(surf_lines.size() == 13);
    CHECK(surf_lines[0] == "param_value,omega,magnitude_db");

    CHECK_THROWS_WITH(write_csv(samples, "/nonexistent_dir_xyz/out.csv"),
                      Catch::Matchers::ContainsSubstring("/nonexistent_dir_xyz/out.csv"));
}

TEST_CASE("SVG rendering is deterministic and structurally complete") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fofilter_svg_test";
    fs::create_directories(dir);

    const FoFilterParams opt{0.996307, 18.2033, 2.0 * 0.924351, 0.924351, FilterFamily::BandPass};
    const auto samples = sweep(opt, {0.01, 100.0, 200, GridSpacing::Log});

    SvgAxes axes;
    axes.title = "Optimized band-pass response";
    const std::string p1 = (dir / "one.svg").string();
    render_svg({{"optimized", samples}}, axes, p1);
    const std::string svg = read_file(p1);

    auto count = [&](const std::string& text, const std::string& needle) {
        std::size_t n = 0;
        for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
        return n;
    };
    CHECK(count(svg, "<polyline") == 1);
    CHECK(svg.find("ω (rad/s)") != std::string::npos);
    CHECK(svg.find("Magnitude (dB)") != std::string::npos);
    CHECK(svg.find("Optimized band-pass response") != std::string::npos);

    const std::string p2 = (dir / "one_again.svg").string();
    render_svg({{"optimized", samples}}, axes, p2);
    CHECK(read_file(p2) == svg);

    FoFilterParams bs = opt;
    bs.family = FilterFamily::BandStop;
    const std::string p3 = (dir / "two.svg").string();
    render_svg({{"band-pass", samples}, {"band-stop", sweep(bs, {0.01, 100.0, 200, GridSpacing::Log})}}, axes, p3);
    const std::string two = read_file(p3);
    CHECK(count(two, "<polyline") == 2);
    CHECK(two.find("band-pass") != std::string::npos);
    CHECK(two.find("band-stop") != std::string::npos);

    CHECK_THROWS_AS(render_svg({}, axes, (dir / "none.svg").string()), std::invalid_argument);
    CHECK_THROWS_AS(render_svg({{"empty", {}}}, axes, (dir / "none.svg").string()), std::invalid_argument);
}
