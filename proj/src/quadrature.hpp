#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kdvlab {

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
/// the Legendre polynomial (standard; accurate to machine precision for the
/// modest orders used here).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int order) {
        if (order < 1 || order > 64) throw std::invalid_argument("GaussLegendre: order out of range");
        nodes.resize(static_cast<size_t>(order));
        weights.resize(static_cast<size_t>(order));
        for (int i = 0; i < order; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= order; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = order * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[static_cast<size_t>(order - 1 - i)] = x;
            weights[static_cast<size_t>(order - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

/// Composite Gauss-Legendre over explicit panel breakpoints.
template <typename F>
double composite_gl(const std::vector<double>& breaks, int order, F&& f) {
    const GaussLegendre gl(order);
    double acc = 0.0;
    for (size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        const double h = 0.5 * (b - a), c = 0.5 * (a + b);
        for (size_t q = 0; q < gl.nodes.size(); ++q)
            acc += h * gl.weights[q] * f(c + h * gl.nodes[q]);
    }
    return acc;
}

/// Breakpoints of a mesh on [0, T] graded toward both endpoints:
/// t_i = (T/2)(2i/m)^g on the left half, mirrored on the right.
std::vector<double> graded_breaks_both_ends(double T, int panels_per_half, double grading);

/// Graded toward 0 only: t_i = T (i/m)^g.
std::vector<double> graded_breaks_left(double T, int panels, double grading);

} // namespace kdvlab
