#include <doctest.h>

#include "illposed.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace kdvlab;

TEST_CASE("counterexample parameter validation") {
    const SymbolSpec spec = builtin_spec("kdvks");
    CounterexampleParams p{100.0, 1.0, -2.5, 0.1};
    CHECK_NOTHROW(p.validate(spec));
    CHECK(p.amplitude() == doctest::Approx(std::pow(100.0, 2.5)));
    CHECK(p.band_lo() == doctest::Approx(100.0));
    CHECK(p.band_hi() == doctest::Approx(102.0));

    CounterexampleParams bad = p;
    bad.gamma = 1.5;
    CHECK_THROWS_AS(bad.validate(spec), std::invalid_argument);
    bad = p;
    bad.t_eval = 1.5;
    CHECK_THROWS_AS(bad.validate(spec), std::invalid_argument);
    bad = p;
    bad.N = 12.0; // <= 10 * max(1, M) with M = sqrt(2)
    CHECK_THROWS_AS(bad.validate(spec), std::invalid_argument);
}

TEST_CASE("box data: support, boundary half-weights, symmetry, grid guards") {
    const CounterexampleParams p{20.0, 1.0, -2.0, 0.05};
    const FrequencyGrid g(24.0, 24 * 2 * 16); // dxi = 1/16, edges on nodes
    const SpectralField v0 = counterexample_data(p, g);
    CHECK(v0.real);
    CHECK(v0.hermitian_error() < 1e-12);
    const double amp = p.amplitude();
    for (int k = 0; k < g.n; ++k) {
        const double axi = std::abs(g.xi(k));
        const double val = v0.coeffs[static_cast<size_t>(k)].real();
        if (axi > 20.0 + 1e-9 && axi < 22.0 - 1e-9)
            REQUIRE(val == doctest::Approx(amp));
        else if (std::abs(axi - 20.0) < 1e-9 || std::abs(axi - 22.0) < 1e-9)
            REQUIRE(val == doctest::Approx(0.5 * amp));
        else
            REQUIRE(val == 0.0);
    }
    CHECK_THROWS_AS(counterexample_data(p, FrequencyGrid(22.5, 1024)), std::invalid_argument);
    CHECK_THROWS_AS(counterexample_data(p, FrequencyGrid(24.0, 128)), std::invalid_argument);
}

TEST_CASE("box-data Sobolev norm: closed form at s = 0 and grid cross-check") {
    const CounterexampleParams p{20.0, 1.0, -2.0, 0.05};
    // s = 0: ||v0||^2 = amp^2 * 4 gamma = 4 N^{-2s} -> norm = 2 N^{-s}
    CHECK(counterexample_hs_norm(p, 0.0) == doctest::Approx(2.0 * std::pow(20.0, 2.0)).epsilon(1e-12));
    // generic s against the gridded data's norm; the quarter-mass edge nodes
    // of the gridded indicator leave an O(dxi) defect
    const FrequencyGrid g(24.0, 24 * 2 * 128);
    const SpectralField v0 = counterexample_data(p, g);
    CHECK(counterexample_hs_norm(p, -2.0) == doctest::Approx(hs_norm(v0, -2.0)).epsilon(3e-3));
}

TEST_CASE("resonance cubic identity on 1e5 random pairs") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 100000; ++i) {
        const double xi = u(rng), xi1 = u(rng);
        const long double lxi = xi, lxi1 = xi1;
        const long double cubic = -lxi * lxi * lxi + lxi1 * lxi1 * lxi1 +
                                  (lxi - lxi1) * (lxi - lxi1) * (lxi - lxi1);
        const long double scale = std::max<long double>(
            1.0L, std::abs(lxi * lxi * lxi) + std::abs(lxi1 * lxi1 * lxi1));
        REQUIRE(std::abs(static_cast<double>((resonance(xi, xi1) - cubic) / scale)) < 1e-12);
    }
}

TEST_CASE("N_min solves its defining balance exactly") {
    const SymbolSpec spec = builtin_spec("kdvks");
    const CounterexampleParams p{100.0, 0.5, -2.5, 0.1};
    const double nmin = inflation_N_min(spec, p);
    const double lhs = std::exp(-p.t_eval * std::pow(nmin, spec.p));
    const double rhs = std::exp(-p.t_eval * std::pow(p.gamma, spec.p) / 2.0) / 2.0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CounterexampleParams starved{15.0, 1.0, -2.5, 1e-6}; // N_min ~ 29 > N
    CHECK_THROWS_AS(second_iterate(spec, starved, FrequencyGrid(20.0, 1024),
                                   Nonlinearity::DerivativeOfSquare),
                    std::invalid_argument);
}

// Independent oracle for the band quadrature: re-evaluate the closed form with
// a plain fine trapezoid rule in xi1 over [-band_hi, band_hi].
namespace {

cdouble trapezoid_second_iterate(const SymbolSpec& spec, const CounterexampleParams& p, double xi,
                                 Nonlinearity which, int steps_per_gamma) {
    const double t = p.t_eval;
    const double amp = p.amplitude();
    auto box = [&](double x) {
        const double ax = std::abs(x);
        if (ax > p.band_lo() && ax < p.band_hi()) return amp;
        if (ax == p.band_lo() || ax == p.band_hi()) return 0.5 * amp;
        return 0.0;
    };
    const double lo = -p.band_hi(), hi = p.band_hi();
    const int n = static_cast<int>((hi - lo) / p.gamma) * steps_per_gamma;
    const double h = (hi - lo) / n;
    cdouble acc{0.0, 0.0};
    const double phi_xi = eval_phi(spec, xi);
    for (int j = 0; j <= n; ++j) {
        const double xi1 = lo + h * j;
        const double a = box(xi1) * box(xi - xi1);
        if (a == 0.0) continue;
        const double phi1 = eval_phi(spec, xi1);
        const double phi2 = eval_phi(spec, xi - xi1);
        const double res = resonance(xi, xi1);
        const cdouble den{phi1 - phi_xi + phi2, res};
        cdouble bracket = std::exp(t * (phi1 + phi2)) * cdouble{std::cos(t * res), std::sin(t * res)} -
                          cdouble{std::exp(t * phi_xi), 0.0};
        if (which == Nonlinearity::SquareOfGradient) bracket *= -xi1 * (xi - xi1);
        const double w = (j == 0 || j == n) ? 0.5 * h : h;
        acc += w * a * bracket / den;
    }
    const cdouble outer = which == Nonlinearity::DerivativeOfSquare ? cdouble{0.0, xi} : cdouble{1.0, 0.0};
    const double ph = t * xi * xi * xi;
    return outer * cdouble{std::cos(ph), std::sin(ph)} * acc;
}

} // namespace

TEST_CASE("closed-form second iterate agrees with an independent trapezoid oracle") {
    const SymbolSpec spec = builtin_spec("kdvks");
    const CounterexampleParams p{20.0, 1.0, -2.0, 0.05};
    const FrequencyGrid out_grid(0.5, 8); // window nodes only
    for (Nonlinearity which : {Nonlinearity::DerivativeOfSquare, Nonlinearity::SquareOfGradient}) {
        const SpectralField f = second_iterate(spec, p, out_grid, which, {64, 4, true});
        for (int k = 0; k < out_grid.n; ++k) {
            // the edge handling leaves a first-order defect; one Richardson
            // step removes it
            const cdouble t1 = trapezoid_second_iterate(spec, p, out_grid.xi(k), which, 1024);
            const cdouble t2 = trapezoid_second_iterate(spec, p, out_grid.xi(k), which, 2048);
            const cdouble ref = 2.0 * t2 - t1;
            const double scale = std::max(1e-300, std::abs(ref));
            REQUIRE(std::abs(f.coeffs[static_cast<size_t>(k)] - ref) / scale < 1e-4);
        }
    }
}

TEST_CASE("derivative-variant second iterate vanishes at xi = 0") {
    const SymbolSpec spec = builtin_spec("kdvks");
    const CounterexampleParams p{20.0, 1.0, -2.0, 0.05};
    FrequencyGrid g(1.0, 8); // includes xi = 0 at node 4
    const SpectralField f = second_iterate(spec, p, g, Nonlinearity::DerivativeOfSquare);
    CHECK(std::abs(f.coeffs[4]) == 0.0);
}

TEST_CASE("inflation sweep recovers the predicted supercritical growth") {
    const SymbolSpec spec = builtin_spec("kdvks");
    const std::vector<double> Ns{100.0, 140.0, 200.0, 280.0};
    const SweepResult res = inflation_sweep(spec, -2.5, 1.0, 0.1, Ns,
                                            Nonlinearity::DerivativeOfSquare, {32, 4, true});
    CHECK(res.predicted_slope == doctest::Approx(1.0));
    CHECK(res.fitted_slope == doctest::Approx(1.0).epsilon(0.12));
    CHECK(!res.inconclusive);
    CHECK(res.denominator_band_ok);
    REQUIRE(res.norm_values.size() == 4);
    for (double v : res.norm_values) CHECK(v > 0.0);
}

TEST_CASE("sweep is deterministic across worker counts") {
    const SymbolSpec spec = builtin_spec("kdvks");
    const std::vector<double> Ns{60.0, 80.0, 100.0, 130.0};
    const SweepResult a = inflation_sweep(spec, -2.5, 1.0, 0.1, Ns,
                                          Nonlinearity::DerivativeOfSquare, {24, 4, true}, 1);
    const SweepResult b = inflation_sweep(spec, -2.5, 1.0, 0.1, Ns,
                                          Nonlinearity::DerivativeOfSquare, {24, 4, true}, 3);
    for (size_t i = 0; i < Ns.size(); ++i) {
        REQUIRE(a.norm_values[i] == b.norm_values[i]);
        REQUIRE(a.full_norm_values[i] == b.full_norm_values[i]);
    }
    CHECK(a.fitted_slope == b.fitted_slope);
}

TEST_CASE("sweep input guards") {
    const SymbolSpec spec = builtin_spec("kdvks");
    CHECK_THROWS_AS(inflation_sweep(spec, -2.5, 1.0, 0.1, {100.0, 200.0, 400.0},
                                    Nonlinearity::DerivativeOfSquare),
                    std::invalid_argument);
    CHECK_THROWS_AS(inflation_sweep(spec, -2.5, 1.0, 0.1, {400.0, 200.0, 100.0, 50.0},
                                    Nonlinearity::DerivativeOfSquare),
                    std::invalid_argument);
}

TEST_CASE("flow-map witness ratios grow with N below the critical index") {
    const SymbolSpec spec = builtin_spec("kdvks");
    const FlowmapWitnessReport rep = c2_flowmap_witness(spec, -2.5, 1.0, 0.1,
                                                        {60.0, 100.0, 170.0, 280.0},
                                                        Nonlinearity::DerivativeOfSquare, {24, 4, true});
    REQUIRE(rep.ratios.size() == 4);
    for (double r : rep.ratios) CHECK(r > 0.0);
    CHECK(rep.increasing);
}
