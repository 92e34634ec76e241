#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "cvpoly/gates.hpp"
#include "cvpoly/states.hpp"

namespace cvpoly {

/// Photon-subtracted-ancilla protocol configuration. Step j realizes
/// plan.roots[j] when its homodyne outcome equals nominal_outcomes[j]; the
/// post-selection window of that step is [m_o - delta, m_o + delta].
struct Method1Config {
    MonomialPlan plan;
    double squeezing_db = 5.0;
    double delta = 0.1;
    std::vector<double> nominal_outcomes;
    int quadrature_nodes_per_dim = 8;

    /// Every nominal outcome at zero.
    static Method1Config centered(const MonomialPlan &plan, double squeezing_db, double delta, int nodes = 8);

    void validate() const;
    /// Anti-squeezed-q convention: k = sqrt(2) 10^{dB/20}.
    double k() const;
    /// Ancilla solved for root `step` at its nominal outcome.
    SqueezedParams ancilla(std::size_t step) const;
};

struct Method1Step {
    WaveFunction state;  // normalized
    cplx lambda_realized;
    double weight;       // squared norm before normalization
};

/// One step of the photon-subtracted circuit (F-dagger pre-rotation, CZ,
/// p-homodyne with outcome m, X-dagger(m) and Z-dagger(p0) corrections) in its
/// closed form exp(-(q - q0 + m)^2 / k^2) (q - lambda(alpha, k, m)).
Method1Step step_method1(const WaveFunction &psi, const SqueezedParams &ancilla, double m);

/// lambda for a photon-added ancilla (creation instead of annihilation):
/// -m + (2 q0 + i k^2 p0) / (k^2 + 2). The envelope is unchanged.
cplx lambda_method1_photon_added(const SqueezedParams &ancilla, double m);

/// Normalized a|alpha,k> (or a-dagger|alpha,k>) on the grid. ZeroAncilla when
/// the ladder operator annihilates the ancilla.
WaveFunction photon_subtracted_ancilla(const SqueezedParams &ancilla, const Grid &grid,
                                       Ladder ladder = Ladder::Annihilate);

/// Probability density of the homodyne outcome m of one step:
///   p(m) = \int dx |phi_p(m - x)|^2 |omega(x)|^2
/// with phi = F-dagger psi the circuit input, phi_p its momentum wave
/// function and omega the normalized photon-subtracted ancilla.
class HomodyneDensity {
   public:
    HomodyneDensity(const WaveFunction &psi, const SqueezedParams &ancilla, Ladder ladder = Ladder::Annihilate);

    double operator()(double m) const;
    /// Gauss-Legendre integral of the density over [lo, hi].
    double integrate(double lo, double hi, std::size_t nodes) const;

   private:
    WaveFunction reflected_momentum_;       // x -> phi_p(-x)
    std::vector<double> ancilla_density_;   // |omega(x)|^2 w(x)
};

HomodyneDensity homodyne_pdf(const WaveFunction &psi, const SqueezedParams &ancilla);

struct CoherentInput {
    cplx alpha;
};
struct FockInput {
    unsigned n;
};
using AnalyticInput = std::variant<CoherentInput, FockInput>;

/// n-th moment of a centered normal distribution with standard deviation
/// sigma: 0 for odd n, sigma^n (n-1)!! for even n.
double centered_gaussian_moment(unsigned n, double sigma);

/// Same density as HomodyneDensity, evaluated in closed form for coherent and
/// Fock inputs: complete the square of the Gaussian factor, expand the
/// polynomial factor about its center and sum coefficients times centered
/// Gaussian moments.
double gaussian_moment_pdf(const AnalyticInput &input, const SqueezedParams &ancilla, double m);

/// Applies every step at its nominal outcome. Output normalized.
WaveFunction chain_method1_exact(const WaveFunction &psi, const Method1Config &cfg);

struct OutcomeEntry {
    std::vector<double> outcomes;
    WaveFunction state;   // normalized
    double density;       // p(m1) p(m2|m1) p(m3|m1,m2)
    double quad_weight;
};

/// The post-selected mixture: entries at tensor Gauss-Legendre nodes of the
/// acceptance box, with region_prob the probability of landing in it.
struct OutcomeEnsemble {
    std::vector<OutcomeEntry> entries;
    double region_prob = 0.0;
};

/// Tensor quadrature over the acceptance box for three-step plans.
OutcomeEnsemble postselect_ensemble(const WaveFunction &psi, const Method1Config &cfg);

double success_probability_m1(const WaveFunction &psi, const Method1Config &cfg);

/// sqrt( sum_e (density_e quad_weight_e / region_prob) |<target|state_e>|^2 ).
double fidelity_postselected(const OutcomeEnsemble &ensemble, const WaveFunction &target);

struct ScanRange {
    double lo = -8.0;
    double hi = 8.0;
    std::size_t count = 161;

    std::vector<double> values() const;
};

/// State-preparation tuning for a known input: step by step, scan the ancilla
/// position displacement q0, take the nominal outcome that realizes the root
/// for that q0 (m_o = -Re lambda - 2 q0 / (k^2 - 2)) and keep the q0 that
/// maximizes the probability of landing within delta of m_o.
Method1Config optimize_state_prep(const WaveFunction &psi_known, const MonomialPlan &plan, double squeezing_db,
                                  double delta, const ScanRange &q0_scan, int nodes = 8);

}  // namespace cvpoly
