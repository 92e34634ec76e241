#pragma once

#include <vector>

#include "cvpoly/gates.hpp"
#include "cvpoly/states.hpp"

namespace cvpoly {

/// Single-photon-counter protocol configuration. Each root of the plan gets
/// its own ancilla |alpha_j, k> with k fixed by the squeezing level.
struct Method2Config {
    MonomialPlan plan;
    double squeezing_db = 5.0;
    int max_fock_check = 2;
    /// SqueezedQ (k < sqrt 2) unless the inverted convention is requested.
    SqueezingAxis convention = SqueezingAxis::SqueezedQ;

    void validate() const;
    double k() const;
    SqueezedParams ancilla(std::size_t step) const;
};

struct Method2Step {
    WaveFunction state;  // normalized
    cplx lambda_realized;
    double p_single;     // probability of the one-photon click
};

/// One step of the photon-counter circuit (CZ, projection of the ancilla on
/// |1>, Z-dagger(2 q0 / (2 + k^2)) correction) in its closed form
/// exp(-(k^2/(4 + 2k^2)) (q + p0)^2) (q - lambda(alpha, k)).
Method2Step step_method2(const WaveFunction &psi, const SqueezedParams &ancilla);

/// p(n) = \int dt |psi(t)|^2 |w_n(t)|^2,  w_n(t) = \int ds phi_n(s) sigma(s) e^{i s t},
/// for normalized psi.
double spc_probability(const WaveFunction &psi, const SqueezedParams &ancilla, unsigned n);

/// p(0) .. p(n_max).
std::vector<double> spc_distribution(const WaveFunction &psi, const SqueezedParams &ancilla, unsigned n_max);

struct Method2Result {
    WaveFunction state;
    double success_prob;
    std::vector<double> step_probs;
};

/// Runs every step in plan order; the success probability is the product of
/// the per-step one-photon probabilities, each evaluated on the normalized
/// output of the previous step.
Method2Result chain_method2(const WaveFunction &psi, const Method2Config &cfg);

}  // namespace cvpoly
