// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit if any
// criterion fails. All tolerances are pinned here.

#include "field.hpp"
#include "illposed.hpp"
#include "quadrature.hpp"
#include "semigroup.hpp"
#include "wellposed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace kdvlab;

namespace {

int g_failures = 0;

void report(int idx, const char* title, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- criteria 1-3: norm-inflation slopes -------------------------------------

void criterion_slope(int idx, const char* title, double s, Nonlinearity which,
                     bool expect_positive) {
    const SymbolSpec spec = builtin_spec("kdvks");
    const std::vector<double> Ns{100.0, 200.0, 400.0, 800.0};
    const SweepResult res = inflation_sweep(spec, s, 1.0, 0.1, Ns, which, {64, 4, true});
    if (expect_positive) {
        const bool pass = std::abs(res.fitted_slope - res.predicted_slope) <=
                          0.1 * std::abs(res.predicted_slope);
        report(idx, title, pass,
               "fitted slope " + fmt(res.fitted_slope) + " vs predicted " +
                   fmt(res.predicted_slope) + " +/-10%, fit residual " + fmt(res.fit_residual));
    } else {
        const bool pass = res.fitted_slope <= -0.5;
        report(idx, title, pass, "fitted slope " + fmt(res.fitted_slope) + " required <= -0.5");
    }
}

// --- criterion 4: closed-form second iterate vs generic Duhamel --------------

void criterion_oracle_equivalence() {
    const SymbolSpec spec = builtin_spec("kdvks");
    const CounterexampleParams params{20.0, 1.0, -2.0, 0.05};
    const FrequencyGrid grid(24.0, 768); // dxi = 1/16, band edges on nodes
    const SpectralField v0 = counterexample_data(params, grid);
    const double t = params.t_eval;

    // Linear-evolution trajectory sampled exactly at every time-quadrature
    // node the Duhamel integrator will visit, so its piecewise-linear
    // interpolation is exact there. The integrand has boundary layers of
    // width ~1/|Phi(N)| at both endpoints, so the mesh is strongly graded;
    // the built-in refinement check is off because this comparison against
    // the closed form IS the accuracy check.
    const QuadConfig quad{40, 8, 3.0, 1e-7, false};
    std::vector<double> tps{0.0, t};
    const GaussLegendre gl(quad.gl_order);
    {
        const auto breaks = graded_breaks_both_ends(t, quad.panels_per_half, quad.grading);
        for (size_t p = 0; p + 1 < breaks.size(); ++p) {
            const double a = breaks[p], b = breaks[p + 1];
            const double h = 0.5 * (b - a), c = 0.5 * (a + b);
            for (size_t q = 0; q < gl.nodes.size(); ++q) tps.push_back(c + h * gl.nodes[q]);
        }
    }
    std::sort(tps.begin(), tps.end());
    tps.erase(std::unique(tps.begin(), tps.end()), tps.end());
    Trajectory traj;
    for (double tp : tps) traj.push_back(tp, apply_semigroup(spec, v0, tp));

    const SpectralField numeric =
        duhamel_nl(spec, traj, t, Nonlinearity::DerivativeOfSquare, quad);

    // Closed-form time integral of the same discrete-in-xi1 bilinear term:
    // i xi e^{i t xi^3} sum_j w_j v0(xi_j) v0(xi_k - xi_j)
    //     [e^{t(Phi1+Phi2)} e^{i t res} - e^{t Phi}] / (Phi1 - Phi + Phi2 + i res).
    const int n = grid.n, half = n / 2;
    const double window = params.gamma / 2.0;
    double num2 = 0.0, den2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double xi = grid.xi(k);
        if (std::abs(xi) > window) continue;
        const double phi_xi = eval_phi(spec, xi);
        cdouble acc{0.0, 0.0};
        const int jlo = std::max(0, k - n + 1 + half);
        const int jhi = std::min(n - 1, k + half);
        for (int j = jlo; j <= jhi; ++j) {
            const cdouble a =
                v0.coeffs[static_cast<size_t>(k - j + half)] * v0.coeffs[static_cast<size_t>(j)];
            if (a == cdouble{0.0, 0.0}) continue;
            const double xi1 = grid.xi(j);
            const double phi1 = eval_phi(spec, xi1);
            const double phi2 = eval_phi(spec, xi - xi1);
            const double res = resonance(xi, xi1);
            const cdouble den{phi1 - phi_xi + phi2, res};
            const cdouble bracket =
                std::exp(t * (phi1 + phi2)) * cdouble{std::cos(t * res), std::sin(t * res)} -
                cdouble{std::exp(t * phi_xi), 0.0};
            acc += grid.weight(j) * a * bracket / den;
        }
        const double ph = t * xi * xi * xi;
        const cdouble closed =
            cdouble{0.0, xi} * cdouble{std::cos(ph), std::sin(ph)} * acc;
        num2 += std::norm(numeric.coeffs[static_cast<size_t>(k)] - closed);
        den2 += std::norm(closed);
    }
    const double rel = std::sqrt(num2 / den2);
    report(4, "closed-form second iterate equals the generic Duhamel integral", rel < 1e-6,
           "relative L2 discrepancy on |xi| <= gamma/2: " + fmt(rel) + " < 1e-6");
}

// --- criterion 5: contraction suite ------------------------------------------

void criterion_contraction() {
    const SymbolSpec spec = builtin_spec("kdvks");
    const FrequencyGrid grid(8.0, 128);
    const WeightedNormParams params{-1.0, 4.0, NormVariant::X};
    const SpectralField v0 = gaussian_spectrum_field(grid, 1.0, params.s, 0.1);

    PicardOptions opts; // defaults: tol 1e-9, seed 42
    // snapshot interpolation dominates the cross-check error; 256 snapshots
    // bring it well under the 1e-6 gate
    opts.snapshots = 256;
    bool pass = false;
    std::string detail;
    try {
        const auto [traj, rep] = picard_solve(spec, v0, params, opts);
        const Trajectory march =
            evolve(spec, v0, rep.T, rep.T / 4096.0, Nonlinearity::DerivativeOfSquare, true, 4096);
        const SpectralField& a = traj.fields.back();
        const SpectralField& b = march.fields.back();
        SpectralField diff = a;
        for (size_t k = 0; k < diff.coeffs.size(); ++k) diff.coeffs[k] -= b.coeffs[k];
        const double agree = l2_norm(diff) / l2_norm(a);
        pass = rep.converged && rep.ratio_max <= 0.6 && rep.residual < 1e-8 && agree < 1e-6;
        detail = "ratio_max " + fmt(rep.ratio_max) + " <= 0.6, residual " + fmt(rep.residual) +
                 " < 1e-8, evolve agreement " + fmt(agree) + " < 1e-6, T " + fmt(rep.T) +
                 ", c_hat " + fmt(rep.c_hat);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(5, "Picard contraction with independent time-marcher cross-check", pass, detail);
}

// --- criterion 6: smoothing-lemma stability ----------------------------------

void criterion_smoothing_stability() {
    const SymbolSpec spec = builtin_spec("kdvks");
    const double s = -1.0;
    auto log_grid = [](double lo, double hi, int pts) {
        std::vector<double> g;
        for (int i = 0; i < pts; ++i)
            g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (pts - 1)));
        return g;
    };
    const SmoothingReport base =
        kernel_weighted_l2(spec, s, KernelWeight::XiBracketS, log_grid(1e-5, 1.0, 50));
    const SmoothingReport deeper =
        kernel_weighted_l2(spec, s, KernelWeight::XiBracketS, log_grid(1e-6, 1.0, 60));
    const double change = std::abs(deeper.sup_constant - base.sup_constant) / base.sup_constant;
    report(6, "weighted kernel sup stable under a decade-lower tau floor", change < 0.01,
           "sup " + fmt(base.sup_constant) + " -> " + fmt(deeper.sup_constant) +
               ", relative change " + fmt(change) + " < 0.01");
}

// --- criterion 7: exact structural identities --------------------------------

void criterion_identities() {
    std::mt19937 rng(2024);
    bool pass = true;
    std::string detail;

    // semigroup composition
    {
        std::uniform_real_distribution<double> uxi(-30.0, 30.0), ut(0.0, 0.5);
        double worst = 0.0;
        for (const char* name : {"kdvb", "ost", "kdvks"}) {
            const SymbolSpec spec = builtin_spec(name);
            for (int i = 0; i < 2000; ++i) {
                const double xi = uxi(rng), t = ut(rng), u = ut(rng);
                const cdouble lhs =
                    semigroup_multiplier(spec, xi, t) * semigroup_multiplier(spec, xi, u);
                worst = std::max(worst, std::abs(lhs - semigroup_multiplier(spec, xi, t + u)));
            }
        }
        pass = pass && worst < 1e-12;
        detail += "composition " + fmt(worst) + " < 1e-12";
    }

    // resonance cubic identity, scale-relative
    {
        std::uniform_real_distribution<double> u(-100.0, 100.0);
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const long double xi = u(rng), xi1 = u(rng);
            const long double cubic =
                -xi * xi * xi + xi1 * xi1 * xi1 + (xi - xi1) * (xi - xi1) * (xi - xi1);
            const long double scale =
                std::max<long double>(1.0L, std::abs(xi * xi * xi) + std::abs(xi1 * xi1 * xi1));
            worst = std::max(worst, std::abs(static_cast<double>(
                                        (resonance(static_cast<double>(xi),
                                                   static_cast<double>(xi1)) -
                                         cubic) /
                                        scale)));
        }
        pass = pass && worst < 1e-12;
        detail += ", resonance " + fmt(worst) + " < 1e-12";
    }

    // transform round trip and Hermitian preservation
    {
        const FrequencyGrid g(5.0, 64);
        SpectralField f(g, true);
        std::normal_distribution<double> gauss;
        // band-limit strictly below half the grid so the convolution image
        // stays clear of the asymmetric half-open grid edge
        for (int k = g.n / 2; k < g.n; ++k) {
            if (std::abs(g.xi(k)) > 0.5 * g.xi_max - g.dxi()) continue;
            const cdouble c{gauss(rng), gauss(rng)};
            f.coeffs[static_cast<size_t>(k)] = c;
            if (k > g.n / 2) f.coeffs[static_cast<size_t>(g.n - k)] = std::conj(c);
        }
        f.coeffs[static_cast<size_t>(g.n / 2)] = {
            f.coeffs[static_cast<size_t>(g.n / 2)].real(), 0.0};
        const auto phys = to_physical(f, 128);
        const SpectralField back = from_physical(phys, g);
        double rt = 0.0;
        for (int k = 0; k < g.n; ++k)
            rt = std::max(rt, std::abs(back.coeffs[static_cast<size_t>(k)] -
                                       f.coeffs[static_cast<size_t>(k)]));
        pass = pass && rt < 1e-10;
        detail += ", round trip " + fmt(rt) + " < 1e-10";

        const double herm_conv = convolve(f, f).hermitian_error();
        const double herm_semi =
            apply_semigroup(builtin_spec("kdvks"), f, 0.3).hermitian_error();
        const double herm = std::max(herm_conv, herm_semi);
        pass = pass && herm < 1e-12;
        detail += ", hermitian " + fmt(herm) + " < 1e-12";
    }

    report(7, "exact structural identities", pass, detail);
}

// --- criterion 8: derivative relation between the two IVPs -------------------

void criterion_derivative_relation() {
    const SymbolSpec spec = builtin_spec("kdvks");
    const FrequencyGrid grid(8.0, 128);
    const double s = -0.5; // admissible for both variants at p = 4
    const SpectralField u0 = gaussian_spectrum_field(grid, 1.0, s, 0.05);
    const SpectralField v0 = derivative(u0);

    bool pass = false;
    std::string detail;
    try {
        const auto [u, urep] = picard_solve(spec, u0, {s, 4.0, NormVariant::Y}, {});
        PicardOptions vopts;
        vopts.horizon_override = urep.T; // compare both flows at the same horizon
        const auto [v, vrep] = picard_solve(spec, v0, {s, 4.0, NormVariant::X}, vopts);
        const SpectralField du = derivative(u.fields.back());
        SpectralField diff = du;
        for (size_t k = 0; k < diff.coeffs.size(); ++k)
            diff.coeffs[k] -= v.fields.back().coeffs[k];
        const double rel = l2_norm(diff) / l2_norm(v.fields.back());
        pass = urep.converged && vrep.converged && rel < 1e-6;
        detail = "relative L2 of d/dx u - v at T " + fmt(urep.T) + ": " + fmt(rel) + " < 1e-6";
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(8, "gradient-equation flow differentiates to the derivative-equation flow", pass,
           detail);
}

// --- criterion 9: threshold values -------------------------------------------

void criterion_thresholds() {
    const double m_kdvb = compute_threshold_M(builtin_spec("kdvb"));
    const double m_ost = compute_threshold_M(builtin_spec("ost"));
    const double m_kdvks = compute_threshold_M(builtin_spec("kdvks"));
    const double r2 = std::sqrt(2.0);
    const bool pass = std::abs(m_kdvb - 1.0) < 1e-9 && std::abs(m_ost - r2) < 1e-9 * r2 &&
                      std::abs(m_kdvks - r2) < 1e-9 * r2;
    report(9, "threshold frequencies match their closed forms", pass,
           "kdvb " + fmt(m_kdvb) + " ~ 1, ost " + fmt(m_ost) + " ~ sqrt(2), kdvks " +
               fmt(m_kdvks) + " ~ sqrt(2), tol 1e-9");
}

} // namespace

int main() {
    criterion_slope(1, "inflation slope, derivative nonlinearity, s = -2.5", -2.5,
                    Nonlinearity::DerivativeOfSquare, true);
    criterion_slope(2, "slope sign flips across s = -p/2 (s = -1.5)", -1.5,
                    Nonlinearity::DerivativeOfSquare, false);
    criterion_slope(3, "inflation slope, gradient nonlinearity, s = -1.5", -1.5,
                    Nonlinearity::SquareOfGradient, true);
    criterion_oracle_equivalence();
    criterion_contraction();
    criterion_smoothing_stability();
    criterion_identities();
    criterion_derivative_relation();
    criterion_thresholds();

    if (g_failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
