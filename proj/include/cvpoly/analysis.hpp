#pragma once

#include <optional>
#include <vector>

#include "cvpoly/gates.hpp"
#include "cvpoly/method1.hpp"
#include "cvpoly/method2.hpp"
#include "cvpoly/states.hpp"

namespace cvpoly {

/// |<a|b>| / (|a| |b|).
double fidelity_pure(const WaveFunction &a, const WaveFunction &b);
/// Fidelity of a post-selected mixture with a pure target.
double fidelity_mixed(const OutcomeEnsemble &ensemble, const WaveFunction &target);

/// Normalized U psi.
WaveFunction apply_unitary(const DiagonalUnitary &u, const WaveFunction &psi);
/// Normalized plan(q) psi.
WaveFunction apply_plan(const MonomialPlan &plan, const WaveFunction &psi);

double bare_polynomial_fidelity(const DiagonalUnitary &u, const MonomialPlan &plan, const WaveFunction &input);

/// Uniform axis lo + i (hi - lo) / (count - 1).
struct AxisSpec {
    double lo = -7.0;
    double hi = 7.0;
    std::size_t count = 201;

    std::vector<double> values() const;
};

struct WignerGrid {
    std::vector<double> q_axis;
    std::vector<double> p_axis;
    std::vector<double> values;  // row-major, index iq * p_axis.size() + ip
    double min_value = 0.0;
    double max_value = 0.0;
    double integral = 0.0;       // trapezoidal sum over the sampled window

    double at(std::size_t iq, std::size_t ip) const {
        return values[iq * p_axis.size() + ip];
    }
};

/// W(q, p) = (1/pi) \int dy psi*(q + y) psi(q - y) e^{2 i p y}. Requested q
/// values snap to the nearest node or midpoint between nodes (the y integral
/// then pairs grid nodes exactly); p is arbitrary.
WignerGrid wigner(const WaveFunction &psi, const AxisSpec &q_axis, const AxisSpec &p_axis);

/// 4-connected components of cells with W < -rel_threshold * max W.
int count_negative_regions(const WignerGrid &w, double rel_threshold = 1e-3);

enum class InputFamily { Fock, Coherent };

/// Fock |n> with n = x, or coherent |alpha> with real alpha = sqrt(x).
WaveFunction make_family_input(InputFamily family, double x, const Grid &grid);

/// Vacuum squeezed in p by `db` (k = sqrt 2 10^{db/20}): the state-preparation input.
WaveFunction momentum_squeezed_input(double db, const Grid &grid);

struct SweepPoint {
    double x;
    double fidelity;
    std::optional<double> success_prob;
};

/// Fidelity of the normalized Taylor-polynomial output with U psi.
std::vector<SweepPoint> sweep_bare(InputFamily family, const std::vector<double> &xs, double nu, const Grid &grid,
                                   unsigned jobs);

/// Exact-outcome photon-subtraction chain (every outcome at zero).
std::vector<SweepPoint> sweep_method1_exact(InputFamily family, const std::vector<double> &xs, double nu, double db,
                                            const Grid &grid, unsigned jobs);

/// Post-selected photon-subtraction chain over [-delta, delta]^3.
std::vector<SweepPoint> sweep_method1_postselect(InputFamily family, const std::vector<double> &xs, double nu,
                                                 double db, double delta, int nodes, const Grid &grid,
                                                 unsigned jobs);

/// Photon-counter chain; success probability is the product of one-photon clicks.
std::vector<SweepPoint> sweep_method2(InputFamily family, const std::vector<double> &xs, double nu, double db,
                                      SqueezingAxis convention, const Grid &grid, unsigned jobs);

/// 0, 1, ..., 10.
std::vector<double> default_sweep_x();

}  // namespace cvpoly
