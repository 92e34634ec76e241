#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "cvpoly/states.hpp"

namespace cvpoly {

/// U(t) = exp(-i t P(q)) with P given by ascending real coefficients.
struct DiagonalUnitary {
    std::vector<double> hamiltonian_coeffs;
    double time = 0.0;

    /// exp(i nu q^3), i.e. P(q) = -q^3 evolved for t = nu.
    static DiagonalUnitary cubic_phase(double nu);

    int degree() const;
    cplx operator()(double q) const;
};

/// leading_coeff * prod_j (q - roots[j]): the degree-l Taylor polynomial of a
/// diagonal unitary written as a chain of monomials.
struct MonomialPlan {
    std::vector<cplx> roots;
    cplx leading_coeff{1.0, 0.0};
    int order_n = 1;
    int degree_l = 0;

    cplx operator()(double q) const;
};

/// Ascending complex coefficients of sum_{j<=n} (-i t P(q))^j / j!.
std::vector<cplx> taylor_coefficients(const DiagonalUnitary &u, int order_n);

/// Roots of the truncated Taylor polynomial from companion-matrix
/// eigenvalues, sorted by (Im, Re). Throws IllConditioned when the product
/// form misses the polynomial by more than 1e-8 (relative, 20 Chebyshev
/// points on [-5, 5]) and InvalidArgument for degrees above 24.
MonomialPlan taylor_factorize(const DiagonalUnitary &u, int order_n);

/// max_i |plan(q_i) - taylor(q_i)| / max_i |taylor(q_i)| over 20 Chebyshev
/// points on [-5, 5].
double reconstruction_residual(const MonomialPlan &plan, const std::vector<cplx> &taylor);

/// Pointwise multiplication psi(q) -> f(q) psi(q); no normalization.
WaveFunction apply_diagonal(const WaveFunction &psi, const std::function<cplx(double)> &f);

/// lambda(alpha, k, m) = -2 q0/(k^2-2) - i k^2 p0/(k^2-2) - m.
cplx lambda_method1(const SqueezedParams &ancilla, double m);
/// lambda(alpha, k) = 2 i q0 / k^2 - p0.
cplx lambda_method2(const SqueezedParams &ancilla);

/// Ancilla displacement giving `target_lambda` at homodyne outcome
/// `target_m`. SingularAncilla when |k^2 - 2| <= 1e-6.
SqueezedParams solve_ancilla_method1(cplx target_lambda, double k, double target_m);
SqueezedParams solve_ancilla_method2(cplx target_lambda, double k);

enum class Method { PhotonSubtracted, SinglePhotonCounter };

/// One protocol step in closed form: exp(-(q - center)^2 / width_sq) * (q - lambda).
struct EffectiveBlock {
    Method method = Method::PhotonSubtracted;
    SqueezedParams ancilla;
    double k = 1.4142135623730951;
    std::optional<double> homodyne_m;
    cplx lambda{0.0, 0.0};
    double envelope_center = 0.0;
    double envelope_width_sq = 1.0;

    /// Photon-subtracted ancilla with homodyne outcome m:
    /// center q0 - m, width_sq k^2.
    static EffectiveBlock photon_subtracted(const SqueezedParams &ancilla, double m);
    /// Single-photon counter: center -p0, width_sq (4 + 2k^2)/k^2.
    static EffectiveBlock single_photon_counter(const SqueezedParams &ancilla);

    cplx operator()(double q) const;
};

/// Applies the block and renormalizes; `weight` is the squared norm before
/// renormalization. ZeroNorm below 1e-300.
Normalized apply_effective_block(const WaveFunction &psi, const EffectiveBlock &block);

}  // namespace cvpoly
