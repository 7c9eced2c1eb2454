#include "illposed.hpp"

#include "quadrature.hpp"
#include "semigroup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace kdvlab {

void CounterexampleParams::validate(const SymbolSpec& spec) const {
    if (!(N > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("CounterexampleParams: N, gamma must be positive");
    if (gamma > 1.0) throw std::invalid_argument("CounterexampleParams: gamma must be <= 1");
    if (!(t_eval > 0.0 && t_eval <= 1.0)) throw std::invalid_argument("CounterexampleParams: t_eval must lie in (0, 1]");
    const double M = compute_threshold_M(spec);
    if (!(N > 10.0 * std::max(1.0, M)))
        throw std::invalid_argument("CounterexampleParams: N must exceed 10*max(1, M)");
}

double CounterexampleParams::amplitude() const { return std::pow(N, -s) / std::sqrt(gamma); }

SpectralField counterexample_data(const CounterexampleParams& params, const FrequencyGrid& grid) {
    if (grid.xi_max < params.band_hi() + 1.0)
        throw std::invalid_argument("counterexample_data: grid does not cover the frequency band");
    if (grid.dxi() > params.gamma / 16.0)
        throw std::invalid_argument("counterexample_data: grid too coarse (need >= 16 nodes per gamma)");
    const double amp = params.amplitude();
    const double tol = 1e-9 * grid.dxi();
    SpectralField f(grid, true);
    for (int k = 0; k < grid.n; ++k) {
        const double axi = std::abs(grid.xi(k));
        if (axi > params.band_lo() + tol && axi < params.band_hi() - tol)
            f.coeffs[static_cast<size_t>(k)] = amp;
        else if (std::abs(axi - params.band_lo()) <= tol || std::abs(axi - params.band_hi()) <= tol)
            f.coeffs[static_cast<size_t>(k)] = 0.5 * amp;
    }
    return f;
}

double counterexample_hs_norm(const CounterexampleParams& params, double s) {
    const double amp2 = params.amplitude() * params.amplitude();
    std::vector<double> breaks;
    for (int i = 0; i <= 32; ++i)
        breaks.push_back(params.band_lo() + (params.band_hi() - params.band_lo()) * i / 32.0);
    const double half = composite_gl(breaks, 8, [&](double xi) {
        return amp2 * std::pow(1.0 + xi * xi, s);
    });
    return std::sqrt(2.0 * half);
}

double resonance(double xi, double xi1) { return 3.0 * xi * xi1 * (xi1 - xi); }

double inflation_N_min(const SymbolSpec& spec, const CounterexampleParams& params) {
    // e^{-t N^p} <= e^{-t gamma^p/2} / 2
    const double t = params.t_eval;
    const double rhs = t * std::pow(params.gamma, spec.p) / 2.0 + std::log(2.0);
    return std::pow(rhs / t, 1.0 / spec.p);
}

namespace {

cdouble cis(long double phase) {
    const long double two_pi = 6.283185307179586476925286766559L;
    if (phase > 1e8L || phase < -1e8L) phase = std::fmod(phase, two_pi);
    const double r = static_cast<double>(phase);
    return {std::cos(r), std::sin(r)};
}

struct BandInterval {
    double lo, hi;
    bool opposite; // xi1 and xi - xi1 in bands of opposite sign (the set K)
};

// xi1 ranges where both v0(xi1) and v0(xi - xi1) are supported.
std::vector<BandInterval> interaction_intervals(const CounterexampleParams& p, double xi) {
    std::vector<BandInterval> out;
    const double lo = p.band_lo(), hi = p.band_hi();
    const double b1lo[2] = {lo, -hi};
    const double b1hi[2] = {hi, -lo};
    for (int sb = 0; sb < 2; ++sb) {       // band of xi1
        for (int sa = 0; sa < 2; ++sa) {   // band of xi - xi1
            const double ilo = std::max(b1lo[sb], xi - b1hi[sa]);
            const double ihi = std::min(b1hi[sb], xi - b1lo[sa]);
            if (ihi > ilo) out.push_back({ilo, ihi, sa != sb});
        }
    }
    return out;
}

struct IterateContext {
    const SymbolSpec& spec;
    const CounterexampleParams& params;
    Nonlinearity which;
    SecondIterateConfig cfg;
    double N_min;
};

cdouble second_iterate_value(const IterateContext& ctx, double xi) {
    const auto& p = ctx.params;
    const double t = p.t_eval;
    const double amp2 = p.amplitude() * p.amplitude();
    const double phi_xi = eval_phi(ctx.spec, xi);
    const double e2 = std::exp(t * phi_xi);
    const double Np = std::pow(p.N, ctx.spec.p);
    const double N2 = p.N * p.N;
    const double band_grow = 1.0 + 2.0 * p.gamma / p.N;

    cdouble integral{0.0, 0.0};
    for (const auto& iv : interaction_intervals(p, xi)) {
        const int panels = std::max(1, static_cast<int>(std::ceil(
            (iv.hi - iv.lo) / p.gamma * ctx.cfg.nodes_per_gamma / ctx.cfg.gl_order)));
        std::vector<double> breaks;
        for (int i = 0; i <= panels; ++i) breaks.push_back(iv.lo + (iv.hi - iv.lo) * i / panels);
        const GaussLegendre gl(ctx.cfg.gl_order);
        for (size_t pp = 0; pp + 1 < breaks.size(); ++pp) {
            const double a = breaks[pp], b = breaks[pp + 1];
            const double h = 0.5 * (b - a), c = 0.5 * (a + b);
            for (size_t q = 0; q < gl.nodes.size(); ++q) {
                const double xi1 = c + h * gl.nodes[q];
                const double xi2 = xi - xi1;
                const double phi1 = eval_phi(ctx.spec, xi1);
                const double phi2 = eval_phi(ctx.spec, xi2);
                const double res = resonance(xi, xi1);
                const cdouble den{phi1 - phi_xi + phi2, res};

                if (ctx.cfg.band_check && iv.opposite && std::abs(xi) <= p.gamma / 2.0) {
                    const double re = std::abs(den.real());
                    if (!(re >= 0.25 * Np && re <= 4.0 * Np))
                        throw std::runtime_error("second_iterate: real denominator band ~N^p violated (N too small?)");
                    const double w = std::abs(xi1 * (xi1 - xi));
                    if (!(w >= 0.25 * N2 && w <= 4.0 * N2 * band_grow * band_grow))
                        throw std::runtime_error("second_iterate: oscillatory factor band ~N^2 violated");
                }

                const cdouble e1 = std::exp(t * (phi1 + phi2)) *
                                   cis(static_cast<long double>(t) * static_cast<long double>(res));
                cdouble bracket = e1 - cdouble{e2, 0.0};
                // (i xi1)(i xi2) from the two inner derivatives of the
                // gradient nonlinearity; no outer derivative in that case.
                if (ctx.which == Nonlinearity::SquareOfGradient) bracket *= -xi1 * xi2;
                integral += (h * gl.weights[q]) * amp2 * bracket / den;
            }
        }
    }
    const cdouble outer = ctx.which == Nonlinearity::DerivativeOfSquare ? cdouble{0.0, xi}
                                                                        : cdouble{1.0, 0.0};
    return outer * cis(static_cast<long double>(t) * static_cast<long double>(xi) *
                       static_cast<long double>(xi) * static_cast<long double>(xi)) *
           integral;
}

} // namespace

SpectralField second_iterate(const SymbolSpec& spec, const CounterexampleParams& params,
                             const FrequencyGrid& grid_out, Nonlinearity which,
                             const SecondIterateConfig& cfg) {
    params.validate(spec);
    if (params.N < inflation_N_min(spec, params))
        throw std::invalid_argument("second_iterate: N below N_min for the chosen t_eval (sign bound fails)");
    IterateContext ctx{spec, params, which, cfg, 0.0};
    SpectralField out(grid_out, spec.is_even());
    for (int k = 0; k < grid_out.n; ++k)
        out.coeffs[static_cast<size_t>(k)] = second_iterate_value(ctx, grid_out.xi(k));
    return out;
}

namespace {

// Window norm on |xi| <= gamma/2 plus the high-frequency image near +/-2N,
// each by direct quadrature of the closed form.
struct IterateNorms {
    double window = 0.0;
    double full = 0.0;
};

IterateNorms second_iterate_norms(const SymbolSpec& spec, const CounterexampleParams& params,
                                  double s, Nonlinearity which, const SecondIterateConfig& cfg) {
    params.validate(spec);
    if (params.N < inflation_N_min(spec, params))
        throw std::invalid_argument("inflation sweep: N below N_min for the chosen t_eval");
    IterateContext ctx{spec, params, which, cfg, 0.0};
    auto band_mass = [&](double lo, double hi, int panels) {
        std::vector<double> breaks;
        for (int i = 0; i <= panels; ++i) breaks.push_back(lo + (hi - lo) * i / panels);
        return composite_gl(breaks, 6, [&](double xi) {
            return std::pow(1.0 + xi * xi, s) * std::norm(second_iterate_value(ctx, xi));
        });
    };
    IterateNorms out;
    const double g2 = params.gamma / 2.0;
    const double window_mass = band_mass(-g2, g2, 24);
    out.window = std::sqrt(window_mass);
    // Interaction images near 0 (width 2*gamma) and near +/-2N.
    const double low_extra = band_mass(g2, 2.0 * params.gamma + g2, 24);
    const double hi_lo = 2.0 * params.band_lo() - params.gamma;
    const double hi_hi = 2.0 * params.band_hi() + params.gamma;
    const double high_mass = band_mass(hi_lo, hi_hi, 96);
    out.full = std::sqrt(window_mass + 2.0 * low_extra + 2.0 * high_mass);
    return out;
}

} // namespace

SweepResult inflation_sweep(const SymbolSpec& spec, double s, double gamma, double t_eval,
                            const std::vector<double>& N_list, Nonlinearity which,
                            const SecondIterateConfig& cfg, int jobs) {
    if (N_list.size() < 4) throw std::invalid_argument("inflation_sweep: need >= 4 N values");
    if (!std::is_sorted(N_list.begin(), N_list.end()))
        throw std::invalid_argument("inflation_sweep: N_list must be increasing");
    if (!(spec.p >= 2.0)) throw std::invalid_argument("inflation_sweep: requires p >= 2");

    SweepResult res;
    res.N_values = N_list;
    res.norm_values.resize(N_list.size());
    res.full_norm_values.resize(N_list.size());
    res.predicted_slope = which == Nonlinearity::DerivativeOfSquare ? -2.0 * s - spec.p
                                                                    : -2.0 * s - spec.p + 2.0;

    std::exception_ptr err;
    auto worker = [&](size_t i) {
        CounterexampleParams params{N_list[i], gamma, s, t_eval};
        const IterateNorms norms = second_iterate_norms(spec, params, s, which, cfg);
        res.norm_values[i] = norms.window;
        res.full_norm_values[i] = norms.full;
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < N_list.size(); ++i) worker(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::mutex err_mtx;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < N_list.size(); i = next.fetch_add(1)) {
                    try {
                        worker(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mtx);
                        if (!err) err = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    // Least-squares slope of log(norm) vs log(N).
    const size_t n = N_list.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(N_list[i]), y = std::log(res.norm_values[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    res.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - res.fitted_slope * sx) / n;
    for (size_t i = 0; i < n; ++i) {
        const double fit = std::exp(intercept + res.fitted_slope * std::log(N_list[i]));
        res.fit_residual = std::max(res.fit_residual,
                                    std::abs(res.norm_values[i] - fit) / res.norm_values[i]);
    }
    res.inconclusive = res.fit_residual > 0.15;
    return res;
}

FlowmapWitnessReport c2_flowmap_witness(const SymbolSpec& spec, double s, double gamma,
                                        double t_eval, const std::vector<double>& N_list,
                                        Nonlinearity which, const SecondIterateConfig& cfg) {
    FlowmapWitnessReport rep;
    rep.N_values = N_list;
    for (double N : N_list) {
        CounterexampleParams params{N, gamma, s, t_eval};
        const IterateNorms norms = second_iterate_norms(spec, params, s, which, cfg);
        const double v0n = counterexample_hs_norm(params, s);
        rep.ratios.push_back(2.0 * norms.full / (v0n * v0n));
    }
    rep.increasing = true;
    for (size_t i = 1; i < rep.ratios.size(); ++i)
        if (rep.ratios[i] <= rep.ratios[i - 1]) rep.increasing = false;
    return rep;
}

} // namespace kdvlab
