#pragma once

#include "field.hpp"
#include "symbol.hpp"

#include <vector>

namespace kdvlab {

/// Weight applied to the dissipative kernel e^{tau Phi} in the smoothing
/// estimates: xi<xi>^s, <xi>^s, or plain xi (with <.> = 1+|.|).
enum class KernelWeight { XiBracketS, BracketSOnly, XiOnly };

/// tau^a-weighted kernel-norm samples over a tau grid, plus the sup constant
/// and a stability flag from extending the grid a decade lower.
struct SmoothingReport {
    double a = 0.0;
    std::vector<double> tau_values;
    std::vector<double> kernel_norms;
    std::vector<double> weighted_values; // tau^a * kernel norm
    double sup_constant = 0.0;
    bool monotone_tail_ok = false;
};

struct LinearNormReport {
    double constant = 0.0;     // empirical K
    double constant_refined = 0.0;
    bool stable = false;       // refined K within 1% of K
};

/// Unit-modulus-dispersion multiplier e^{i t xi^3 + eta t Phi(xi)} applied
/// coefficient-wise. Phase computed with extended-precision reduction for
/// |t xi^3| beyond 1e8.
SpectralField apply_semigroup(const SymbolSpec& spec, const SpectralField& f, double t);

/// The multiplier itself at one frequency.
cdouble semigroup_multiplier(const SymbolSpec& spec, double xi, double t);

/// Empirical constant of the weighted linear estimate:
/// max over t_grid of [||V(t)f||_{H^s} + t^{w}||V(t)f||_{L2}] / ||f||_{H^s}
/// with w = |s|/p for s <= 0, else 0. Stability is checked by doubling the
/// t grid density.
LinearNormReport verify_linear_xnorm(const SymbolSpec& spec, const SpectralField& f, double s,
                                     double T, int t_samples = 32);

/// Quadrature of ||w(xi) e^{tau Phi(xi)}||_{L2_xi} over a tau grid, weighted
/// by tau^a. `a` defaults to the exponent the corresponding lemma assigns to
/// the weight; pass a >= 0 to override. eps realizes the "slightly above 3"
/// exponent of the xi-only case.
SmoothingReport kernel_weighted_l2(const SymbolSpec& spec, double s, KernelWeight weight,
                                   const std::vector<double>& tau_grid, double a_override = -1.0,
                                   double eps = 0.01);

/// The lemma exponent for a given weight choice.
double kernel_weight_exponent(const SymbolSpec& spec, double s, KernelWeight weight, double eps = 0.01);

/// Single kernel norm ||w(xi) e^{tau Phi(xi)}||_{L2_xi} (integral over all xi).
double kernel_l2_norm(const SymbolSpec& spec, double s, KernelWeight weight, double tau);

/// ||V(t)f0||_{H^{s+mu}} — finite for t > 0 even for rough f0.
double regularity_gain_demo(const SymbolSpec& spec, const SpectralField& f0, double s, double mu,
                            double t);

} // namespace kdvlab
