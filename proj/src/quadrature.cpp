#include "quadrature.hpp"

namespace kdvlab {

std::vector<double> graded_breaks_both_ends(double T, int panels_per_half, double grading) {
    if (T <= 0.0) return {0.0, 0.0};
    std::vector<double> b;
    b.reserve(static_cast<size_t>(2 * panels_per_half + 1));
    for (int i = 0; i <= panels_per_half; ++i)
        b.push_back(0.5 * T * std::pow(static_cast<double>(i) / panels_per_half, grading));
    for (int i = panels_per_half - 1; i >= 0; --i)
        b.push_back(T - 0.5 * T * std::pow(static_cast<double>(i) / panels_per_half, grading));
    return b;
}

std::vector<double> graded_breaks_left(double T, int panels, double grading) {
    std::vector<double> b;
    b.reserve(static_cast<size_t>(panels + 1));
    for (int i = 0; i <= panels; ++i)
        b.push_back(T * std::pow(static_cast<double>(i) / panels, grading));
    return b;
}

} // namespace kdvlab
