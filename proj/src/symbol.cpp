#include "symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdvlab {

void SymbolSpec::validate() const {
    if (p <= 0.0) throw std::invalid_argument("SymbolSpec: p must be positive");
    if (eta <= 0.0) throw std::invalid_argument("SymbolSpec: eta must be positive");
    if (q_bound >= p) throw std::invalid_argument("SymbolSpec: q_bound must satisfy q_bound < p");
    if (q_bound < 0.0) throw std::invalid_argument("SymbolSpec: q_bound must be nonnegative");
    for (const auto& t : phi1_terms) {
        if (static_cast<double>(t.i) + static_cast<double>(t.j) > q_bound)
            throw std::invalid_argument("SymbolSpec: term with i+j exceeding q_bound");
    }
}

bool SymbolSpec::is_even() const {
    return std::all_of(phi1_terms.begin(), phi1_terms.end(),
                       [](const PhiTerm& t) { return t.i % 2 == 0; });
}

bool is_builtin_spec(const std::string& name) {
    return name == "kdvb" || name == "ost" || name == "kdvks";
}

SymbolSpec builtin_spec(const std::string& name) {
    SymbolSpec s;
    s.eta = 1.0;
    if (name == "kdvb") {
        s.p = 2.0;
        s.q_bound = 0.0;
    } else if (name == "ost") {
        s.p = 3.0;
        s.q_bound = 1.0;
        s.phi1_terms = {{1.0, 0, 1}};
    } else if (name == "kdvks") {
        s.p = 4.0;
        s.q_bound = 2.0;
        s.phi1_terms = {{1.0, 0, 2}};
    } else {
        throw std::invalid_argument("unknown builtin symbol spec: " + name);
    }
    return s;
}

double eval_phi1(const SymbolSpec& spec, double xi) {
    double acc = 0.0;
    const double axi = std::abs(xi);
    for (const auto& t : spec.phi1_terms)
        acc += t.c * std::pow(xi, static_cast<double>(t.i)) * std::pow(axi, static_cast<double>(t.j));
    return acc;
}

double eval_phi(const SymbolSpec& spec, double xi) {
    return -std::pow(std::abs(xi), spec.p) + eval_phi1(spec, xi);
}

namespace {

// True when the three Lemma-type inequalities hold at +/-xi.
bool conditions_hold(const SymbolSpec& spec, double xi) {
    for (double x : {xi, -xi}) {
        const double xp = std::pow(std::abs(x), spec.p);
        const double phi = eval_phi(spec, x);
        if (!(phi < -1.0)) return false;
        if (!(eval_phi1(spec, x) / xp <= 0.5)) return false;
        if (!(std::abs(phi) >= 0.5 * xp)) return false;
    }
    return true;
}

// Sample [m, cap] densely; true when the conditions hold at every sample.
bool tail_ok(const SymbolSpec& spec, double m, double cap, int samples) {
    const double lo = std::log(m);
    const double hi = std::log(cap);
    for (int k = 0; k <= samples; ++k) {
        const double xi = std::exp(lo + (hi - lo) * k / samples);
        if (!conditions_hold(spec, xi)) return false;
    }
    return true;
}

} // namespace

double compute_threshold_M(const SymbolSpec& spec) {
    spec.validate();
    constexpr double cap = 1.0e6;

    // Largest sample where some condition is violated. Scan a dense log
    // grid so no violation pocket of relative width > ~1e-4 is missed.
    double last_bad = 0.0;
    double first_good_after = -1.0;
    const int n_scan = 200000;
    const double llo = std::log(1e-3), lhi = std::log(cap);
    for (int k = 0; k <= n_scan; ++k) {
        const double xi = std::exp(llo + (lhi - llo) * k / n_scan);
        if (conditions_hold(spec, xi)) {
            if (first_good_after < 0.0) first_good_after = xi;
        } else {
            last_bad = xi;
            first_good_after = -1.0;
        }
    }
    if (first_good_after < 0.0)
        throw std::runtime_error("compute_threshold_M: no admissible M <= 1e6 (is q < p violated?)");

    double m;
    if (last_bad == 0.0) {
        m = 1.0; // conditions hold on the whole scan range
    } else {
        // Bisect the last bad/good bracket down to relative tolerance 1e-10.
        double lo = last_bad, hi = first_good_after;
        while ((hi - lo) > 1e-10 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (conditions_hold(spec, mid) && tail_ok(spec, mid, std::min(cap, 10.0 * hi), 2000))
                hi = mid;
            else
                lo = mid;
        }
        m = hi;
    }
    m = std::max(m, 1.0);

    // Postcondition: dense samples beyond M.
    if (!tail_ok(spec, m * (1.0 + 1e-9), cap, 20000))
        throw std::runtime_error("compute_threshold_M: postcondition sampling failed beyond M");
    return m;
}

double sup_phi(const SymbolSpec& spec) {
    spec.validate();
    const double M = [&] {
        try {
            return compute_threshold_M(spec);
        } catch (const std::runtime_error&) {
            return 10.0; // fall back to a fixed window; Phi is still bounded above on it
        }
    }();

    const int n = 200001;
    double best = -std::numeric_limits<double>::infinity();
    double best_xi = 0.0;
    double dx = 2.0 * M / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double xi = -M + k * dx;
        const double v = eval_phi(spec, xi);
        if (v > best) { best = v; best_xi = xi; }
    }
    // Refine around the argmax, halving the spacing until the max stalls.
    double span = 2.0 * dx;
    for (int iter = 0; iter < 60; ++iter) {
        const int m = 2001;
        const double lo = best_xi - span, hi = best_xi + span;
        double prev = best;
        for (int k = 0; k < m; ++k) {
            const double xi = lo + (hi - lo) * k / (m - 1);
            const double v = eval_phi(spec, xi);
            if (v > best) { best = v; best_xi = xi; }
        }
        span *= 0.5;
        if (best - prev < 1e-9) break;
    }
    return best;
}

} // namespace kdvlab
