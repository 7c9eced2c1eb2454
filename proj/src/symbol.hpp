#pragma once

#include <string>
#include <vector>

namespace kdvlab {

/// One monomial c * xi^i * |xi|^j of the dissipation perturbation.
struct PhiTerm {
    double c = 0.0;
    unsigned i = 0;
    unsigned j = 0;
};

/// Dissipation symbol  Phi(xi) = -|xi|^p + sum_k c_k xi^{i_k} |xi|^{j_k}.
///
/// p is the leading dissipation order, eta the dissipation strength and
/// q_bound the declared growth order of the perturbation (q_bound < p).
struct SymbolSpec {
    double p = 2.0;
    std::vector<PhiTerm> phi1_terms;
    double eta = 1.0;
    double q_bound = 0.0;

    /// Throws std::invalid_argument if p <= 0, eta <= 0, q_bound >= p,
    /// or some term has i + j > q_bound.
    void validate() const;

    /// True when every term has even xi-power, so Phi is even in xi.
    bool is_even() const;
};

/// The three model symbols used throughout: KdV-Burgers (p=2),
/// Ostrovsky-Stepanyams-Tsimring (p=3, Phi1=|xi|) and
/// KdV-Kuramoto-Sivashinsky (p=4, Phi1=|xi|^2).
SymbolSpec builtin_spec(const std::string& name);
bool is_builtin_spec(const std::string& name);

double eval_phi(const SymbolSpec& spec, double xi);
double eval_phi1(const SymbolSpec& spec, double xi);

/// Smallest M >= 1 such that for all |xi| >= M:
///   Phi(xi) < -1,  Phi1(xi)/|xi|^p <= 1/2  and  |Phi(xi)| >= |xi|^p / 2.
/// Located by a bracketing scan plus bisection to relative tolerance 1e-10,
/// then re-verified on a dense sample grid beyond M.
/// Throws std::runtime_error if no M <= 1e6 works (malformed spec).
double compute_threshold_M(const SymbolSpec& spec);

/// Numerical upper bound C_M = max of Phi over [-M, M], computed on a dense
/// grid (>= 1e5 points) and refined around the argmax until the value moves
/// by less than 1e-9. Valid globally since Phi < -1 beyond M.
double sup_phi(const SymbolSpec& spec);

} // namespace kdvlab
