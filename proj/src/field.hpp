#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace kdvlab {

using cdouble = std::complex<double>;

/// Uniform symmetric frequency grid: nodes xi_k = -xi_max + k*dxi,
/// k = 0..n-1, dxi = 2*xi_max/n. The +xi_max endpoint is not stored;
/// -xi_k pairs with xi_{n-k} for k >= 1.
struct FrequencyGrid {
    double xi_max = 0.0;
    int n = 0;

    FrequencyGrid() = default;
    FrequencyGrid(double xi_max_, int n_);

    double dxi() const { return 2.0 * xi_max / n; }
    double xi(int k) const { return -xi_max + k * dxi(); }
    /// Trapezoid quadrature weight of node k (half weight at both grid ends).
    double weight(int k) const { return (k == 0 || k == n - 1) ? 0.5 * dxi() : dxi(); }

    bool operator==(const FrequencyGrid& o) const { return xi_max == o.xi_max && n == o.n; }
};

/// Samples of a Fourier transform v-hat on a FrequencyGrid. `real` flags
/// fields that are transforms of real-valued functions (Hermitian symmetry).
struct SpectralField {
    FrequencyGrid grid;
    std::vector<cdouble> coeffs;
    bool real = false;

    SpectralField() = default;
    SpectralField(FrequencyGrid g, bool real_flag = false)
        : grid(g), coeffs(static_cast<size_t>(g.n), cdouble{0.0, 0.0}), real(real_flag) {}

    int n() const { return grid.n; }

    /// Max deviation from Hermitian symmetry v(-xi) = conj(v(xi)) over paired
    /// nodes (plus |Im| at the unpaired -xi_max node).
    double hermitian_error() const;
    bool finite() const;
};

/// Time-stamped fields on one shared grid, t strictly increasing, t0 >= 0.
struct Trajectory {
    FrequencyGrid grid;
    std::vector<double> times;
    std::vector<SpectralField> fields;

    size_t size() const { return times.size(); }
    void push_back(double t, SpectralField f);
    /// Linear interpolation of coefficients at time t (clamped to the span).
    SpectralField at(double t) const;
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }
};

/// Sobolev norm sqrt( sum_k w_k (1+xi_k^2)^s |v_k|^2 ), trapezoid weights.
double hs_norm(const SpectralField& f, double s);
/// Same restricted to |xi| <= xi_window.
double hs_norm_window(const SpectralField& f, double s, double xi_window);
double l2_norm(const SpectralField& f);

/// Relative spectral tail mass: (1+xi^2)^s |v|^2 at the two boundary nodes
/// over the whole-grid quadrature sum (0 when the field vanishes).
double boundary_tail_fraction(const SpectralField& f, double s);

/// Discrete convolution (f*g)(xi_k) = sum_j f(xi_k - xi_j) g(xi_j) w_j with
/// lags outside the grid truncated. Direct O(n^2); this is the oracle path.
SpectralField convolve(const SpectralField& f, const SpectralField& g);

/// Multiply by (i xi)^order (order = 1 is d/dx).
SpectralField derivative(const SpectralField& f, int order = 1);

bool young_linf_bound_check(const SpectralField& f, const SpectralField& g);

/// Inverse transform to m >= n physical samples x_j = j*dx, dx = 2*pi/(m*dxi).
/// from_physical(to_physical(f), grid) reproduces f to rounding error.
std::vector<cdouble> to_physical(const SpectralField& f, int m);
SpectralField from_physical(const std::vector<cdouble>& samples, const FrequencyGrid& grid);

/// CSV with columns xi,re,im.
void write_field_csv(std::ostream& os, const SpectralField& f);
SpectralField read_field_csv(std::istream& is);

} // namespace kdvlab
