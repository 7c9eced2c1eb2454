#pragma once

#include "field.hpp"
#include "symbol.hpp"
#include "wellposed.hpp"

#include <vector>

namespace kdvlab {

/// Frequency-box data parameters: spectrum N^{-s} gamma^{-1/2} on
/// +/-[N, N+2*gamma], evaluated at time t_eval.
struct CounterexampleParams {
    double N = 100.0;
    double gamma = 1.0;
    double s = -2.0;
    double t_eval = 0.1;

    void validate(const SymbolSpec& spec) const;
    double amplitude() const;            // N^{-s} gamma^{-1/2}
    double band_lo() const { return N; }
    double band_hi() const { return N + 2.0 * gamma; }
};

struct SweepResult {
    std::vector<double> N_values;
    std::vector<double> norm_values;        // window H^s norm
    std::vector<double> full_norm_values;   // full-grid H^s norm, for context
    double fitted_slope = 0.0;
    double fit_residual = 0.0;              // max relative deviation from the fit
    double predicted_slope = 0.0;
    bool denominator_band_ok = true;
    bool inconclusive = false;              // residual above 15%
};

struct FlowmapWitnessReport {
    std::vector<double> N_values;
    std::vector<double> ratios;             // ||v2(t)||_{H^s} / ||v0||^2_{H^s}
    bool increasing = false;
};

/// Resolution knobs for the closed-form second iterate.
struct SecondIterateConfig {
    int nodes_per_gamma = 64;   // xi1 quadrature density inside the bands
    int gl_order = 4;
    bool band_check = true;     // verify the ~N^p / ~N^2 denominator bands on K
};

/// The box data on an explicit grid; indicator exact at nodes with
/// half-weight boundary values. Requires the grid to cover the bands with at
/// least 16 nodes per unit of gamma.
SpectralField counterexample_data(const CounterexampleParams& params, const FrequencyGrid& grid);

/// ||v0||_{H^s} by direct band quadrature (no global grid needed).
double counterexample_hs_norm(const CounterexampleParams& params, double s);

/// Resonance function 3 xi xi1 (xi1 - xi) = -xi^3 + xi1^3 + (xi - xi1)^3.
double resonance(double xi, double xi1);

/// Smallest N making the non-oscillatory numerator term dominant:
/// e^{-t N^p} <= e^{-t gamma^p / 2} / 2.
double inflation_N_min(const SymbolSpec& spec, const CounterexampleParams& params);

/// Closed-form second Picard iterate f-hat(t_eval) (or g-hat for the
/// gradient nonlinearity) evaluated on grid_out by direct xi1 quadrature
/// over the interaction bands.
SpectralField second_iterate(const SymbolSpec& spec, const CounterexampleParams& params,
                             const FrequencyGrid& grid_out, Nonlinearity which,
                             const SecondIterateConfig& cfg = {});

/// Window-norm sweep over N with log-log least-squares slope against the
/// sharpness prediction -2s-p (derivative) / -2s-p+2 (gradient).
SweepResult inflation_sweep(const SymbolSpec& spec, double s, double gamma, double t_eval,
                            const std::vector<double>& N_list, Nonlinearity which,
                            const SecondIterateConfig& cfg = {}, int jobs = 1);

/// Ratio ||v2||/||v0||^2 across the N sweep; v2 = 2 * second_iterate.
FlowmapWitnessReport c2_flowmap_witness(const SymbolSpec& spec, double s, double gamma,
                                        double t_eval, const std::vector<double>& N_list,
                                        Nonlinearity which, const SecondIterateConfig& cfg = {});

} // namespace kdvlab
