#pragma once

#include "field.hpp"
#include "symbol.hpp"

#include <optional>
#include <vector>

namespace kdvlab {

enum class NormVariant { X, Y };

/// Which bilinear nonlinearity feeds the Duhamel integral:
/// d/dx(u v) (multiplier i xi on the convolution) or u_x v_x.
enum class Nonlinearity { DerivativeOfSquare, SquareOfGradient };

struct WeightedNormParams {
    double s = 0.0;
    double p = 4.0;
    NormVariant variant = NormVariant::X;

    double alpha_or_theta() const;
    /// Solver-path admissibility: -p/2 < s <= 0 (X) or 1-p/2 < s <= 0 (Y).
    bool solver_admissible() const;
    Nonlinearity nonlinearity() const {
        return variant == NormVariant::X ? Nonlinearity::DerivativeOfSquare
                                         : Nonlinearity::SquareOfGradient;
    }
};

struct QuadConfig {
    int panels_per_half = 6;
    int gl_order = 6;
    double grading = 2.0;
    double tol = 1e-8;          // relative L2 tolerance of the refinement check
    bool check_convergence = true;
};

/// Grading exponent 2/(1 - (1/2 + s/p)) matched to the endpoint singularity
/// strength of the time kernel.
double singularity_grading(double s, double p);

struct ContractionReport {
    double r = 0.0;
    double T = 0.0;
    double c_hat = 0.0;
    double alpha_or_theta = 0.0;
    std::vector<std::pair<int, double>> iterates; // (iter, distance to previous)
    bool converged = false;
    double ratio_max = 0.0;
    double residual = 0.0;
};

struct PicardOptions {
    double tol = 1e-9;
    int max_iter = 40;
    int snapshots = 64;                 // m: grid t_j = T (j/m)^2
    // The iterate is interpolated linearly between snapshots, so the mesh
    // refinement check cannot agree beyond the interpolation-kink error;
    // the default tolerance reflects that, not the smooth-integrand 1e-8.
    QuadConfig quad{6, 6, 2.0, 1e-5, true};
    std::optional<double> horizon_override; // force T instead of the ball rule
    std::optional<double> c_hat_override;   // skip the bilinear-constant estimate
    int bilinear_trials = 12;
    unsigned seed = 42;
};

struct RegularityReport {
    std::vector<double> ts;
    std::vector<double> norms;          // ||L(f)(t)||_{H^{s+mu}}
    double max_adjacent_diff = 0.0;
    double max_adjacent_diff_refined = 0.0;
    double first_value = 0.0;           // at the smallest positive t
    bool all_finite = false;
};

double xts_norm(const Trajectory& traj, const WeightedNormParams& params);
double yts_norm(const Trajectory& traj, const WeightedNormParams& params);
double weighted_norm(const Trajectory& traj, const WeightedNormParams& params);

/// int_0^t V(t-t') N(u(t'), v(t')) dt' by composite Gauss-Legendre on a mesh
/// graded toward both endpoints. Throws on nonconvergence when the config
/// asks for the refinement check.
SpectralField duhamel_bilinear(const SymbolSpec& spec, const Trajectory& u, const Trajectory& v,
                               double t, Nonlinearity nl, const QuadConfig& quad);
SpectralField duhamel_nl(const SymbolSpec& spec, const Trajectory& traj, double t, Nonlinearity nl,
                         const QuadConfig& quad);

/// One bilinear Duhamel product field N(u, v) at a single time.
SpectralField bilinear_product(const SpectralField& u, const SpectralField& v, Nonlinearity nl);

/// Empirical constant of ||int V N(u,v)||_W <= c T^(alpha or theta) ||u|| ||v||
/// over random band-limited trial pairs evolved linearly. Deterministic for a
/// fixed seed.
double estimate_bilinear_constant(const SymbolSpec& spec, const WeightedNormParams& params,
                                  const FrequencyGrid& grid, int trials, unsigned seed = 42,
                                  const QuadConfig& quad = {6, 6, 2.0, 1e-8, false});

/// Picard iteration on the Duhamel map with ball radius r = 4c||v0||_{H^s}
/// and horizon from c T^a r = 1/4 (c = 2 * empirical c_hat).
std::pair<Trajectory, ContractionReport> picard_solve(const SymbolSpec& spec,
                                                      const SpectralField& v0,
                                                      const WeightedNormParams& params,
                                                      const PicardOptions& opts = {});

/// Independent order-2 exponential-integrator marcher (exact linear factor,
/// midpoint quadrature of the Duhamel increment). nonlinear=false reproduces
/// apply_semigroup exactly.
Trajectory evolve(const SymbolSpec& spec, const SpectralField& v0, double T, double dt,
                  Nonlinearity nl, bool nonlinear = true, int store_every = 1);

/// ||L(traj)(t)||_{H^{s+mu}} over t_grid plus the refinement diagnostics of
/// the regularity-gain statement (0 <= mu < p/2).
RegularityReport nonlinear_regularity_check(const SymbolSpec& spec, const Trajectory& traj,
                                            double s, double mu, const std::vector<double>& t_grid,
                                            Nonlinearity nl, const QuadConfig& quad);

/// Gaussian-spectrum real field exp(-xi^2/(2 sigma^2)) scaled to a target
/// H^s norm; the standard small-data test datum.
SpectralField gaussian_spectrum_field(const FrequencyGrid& grid, double sigma, double s,
                                      double target_hs_norm);

} // namespace kdvlab
