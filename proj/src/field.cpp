#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kdvlab {

FrequencyGrid::FrequencyGrid(double xi_max_, int n_) : xi_max(xi_max_), n(n_) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("FrequencyGrid: n must be even and >= 8");
    if (xi_max <= 0.0) throw std::invalid_argument("FrequencyGrid: xi_max must be positive");
}

double SpectralField::hermitian_error() const {
    double err = std::abs(coeffs[0].imag());
    for (int k = 1; k < n(); ++k)
        err = std::max(err, std::abs(coeffs[static_cast<size_t>(grid.n - k)] - std::conj(coeffs[static_cast<size_t>(k)])));
    return err;
}

bool SpectralField::finite() const {
    for (const auto& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

void Trajectory::push_back(double t, SpectralField f) {
    if (fields.empty()) {
        if (t < 0.0) throw std::invalid_argument("Trajectory: t0 must be >= 0");
        grid = f.grid;
    } else {
        if (!(t > times.back())) throw std::invalid_argument("Trajectory: times must be strictly increasing");
        if (!(f.grid == grid)) throw std::invalid_argument("Trajectory: grid mismatch");
    }
    times.push_back(t);
    fields.push_back(std::move(f));
}

SpectralField Trajectory::at(double t) const {
    if (fields.empty()) throw std::invalid_argument("Trajectory: empty");
    if (t <= times.front()) return fields.front();
    if (t >= times.back()) return fields.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const size_t hi = static_cast<size_t>(it - times.begin());
    const size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    SpectralField out(grid, fields[lo].real && fields[hi].real);
    for (size_t k = 0; k < out.coeffs.size(); ++k)
        out.coeffs[k] = (1.0 - w) * fields[lo].coeffs[k] + w * fields[hi].coeffs[k];
    return out;
}

double hs_norm(const SpectralField& f, double s) {
    return hs_norm_window(f, s, f.grid.xi_max + 1.0);
}

double hs_norm_window(const SpectralField& f, double s, double xi_window) {
    double acc = 0.0;
    for (int k = 0; k < f.n(); ++k) {
        const double xi = f.grid.xi(k);
        if (std::abs(xi) > xi_window) continue;
        acc += f.grid.weight(k) * std::pow(1.0 + xi * xi, s) * std::norm(f.coeffs[static_cast<size_t>(k)]);
    }
    return std::sqrt(acc);
}

double l2_norm(const SpectralField& f) { return hs_norm(f, 0.0); }

double boundary_tail_fraction(const SpectralField& f, double s) {
    double total = 0.0;
    for (int k = 0; k < f.n(); ++k) {
        const double xi = f.grid.xi(k);
        total += f.grid.weight(k) * std::pow(1.0 + xi * xi, s) * std::norm(f.coeffs[static_cast<size_t>(k)]);
    }
    if (total == 0.0) return 0.0;
    auto mass = [&](int k) {
        const double xi = f.grid.xi(k);
        return f.grid.weight(k) * std::pow(1.0 + xi * xi, s) * std::norm(f.coeffs[static_cast<size_t>(k)]);
    };
    return (mass(0) + mass(f.n() - 1)) / total;
}

SpectralField convolve(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("convolve: grid mismatch");
    const int n = f.n();
    const int half = n / 2;
    SpectralField out(f.grid, f.real && g.real);
    for (int k = 0; k < n; ++k) {
        cdouble acc{0.0, 0.0};
        // xi_k - xi_j lands on node index k - j + n/2 when inside the grid.
        const int jlo = std::max(0, k - n + 1 + half);
        const int jhi = std::min(n - 1, k + half);
        for (int j = jlo; j <= jhi; ++j)
            acc += f.coeffs[static_cast<size_t>(k - j + half)] * g.coeffs[static_cast<size_t>(j)] * g.grid.weight(j);
        out.coeffs[static_cast<size_t>(k)] = acc;
    }
    return out;
}

SpectralField derivative(const SpectralField& f, int order) {
    SpectralField out = f;
    for (int k = 0; k < f.n(); ++k) {
        cdouble m{0.0, f.grid.xi(k)};
        cdouble acc{1.0, 0.0};
        for (int q = 0; q < order; ++q) acc *= m;
        out.coeffs[static_cast<size_t>(k)] *= acc;
    }
    return out;
}

bool young_linf_bound_check(const SpectralField& f, const SpectralField& g) {
    const SpectralField c = convolve(f, g);
    double mx = 0.0;
    for (const auto& v : c.coeffs) mx = std::max(mx, std::abs(v));
    return mx <= l2_norm(f) * l2_norm(g) * (1.0 + 1e-9);
}

std::vector<cdouble> to_physical(const SpectralField& f, int m) {
    const int n = f.n();
    if (m < n) throw std::invalid_argument("to_physical: m must be >= n");
    const double dxi = f.grid.dxi();
    std::vector<cdouble> out(static_cast<size_t>(m));
    const double two_pi = 2.0 * M_PI;
    for (int j = 0; j < m; ++j) {
        cdouble acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            const double phase = two_pi * j * (k - n / 2) / m;
            acc += f.coeffs[static_cast<size_t>(k)] * cdouble{std::cos(phase), std::sin(phase)};
        }
        out[static_cast<size_t>(j)] = acc * (dxi / two_pi);
    }
    return out;
}

SpectralField from_physical(const std::vector<cdouble>& samples, const FrequencyGrid& grid) {
    const int m = static_cast<int>(samples.size());
    const int n = grid.n;
    if (m < n) throw std::invalid_argument("from_physical: fewer samples than grid nodes");
    SpectralField out(grid);
    const double two_pi = 2.0 * M_PI;
    const double dx = two_pi / (m * grid.dxi());
    for (int k = 0; k < n; ++k) {
        cdouble acc{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            const double phase = -two_pi * j * (k - n / 2) / m;
            acc += samples[static_cast<size_t>(j)] * cdouble{std::cos(phase), std::sin(phase)};
        }
        out.coeffs[static_cast<size_t>(k)] = acc * dx;
    }
    out.real = out.hermitian_error() < 1e-10;
    return out;
}

void write_field_csv(std::ostream& os, const SpectralField& f) {
    os << "xi,re,im\n";
    char buf[96];
    for (int k = 0; k < f.n(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.xi(k),
                      f.coeffs[static_cast<size_t>(k)].real(), f.coeffs[static_cast<size_t>(k)].imag());
        os << buf;
    }
}

SpectralField read_field_csv(std::istream& is) {
    std::string line;
    std::getline(is, line); // header
    std::vector<double> xi;
    std::vector<cdouble> c;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &re, &im) != 3)
            throw std::runtime_error("read_field_csv: malformed line: " + line);
        xi.push_back(x);
        c.push_back({re, im});
    }
    const int n = static_cast<int>(xi.size());
    if (n < 8) throw std::runtime_error("read_field_csv: too few rows");
    const double dxi = xi[1] - xi[0];
    FrequencyGrid g(-xi[0], n);
    if (std::abs(g.dxi() - dxi) > 1e-9 * std::abs(dxi))
        throw std::runtime_error("read_field_csv: grid is not uniform/symmetric");
    SpectralField f(g);
    f.coeffs = std::move(c);
    f.real = f.hermitian_error() < 1e-12;
    return f;
}

} // namespace kdvlab
