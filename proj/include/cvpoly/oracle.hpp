#pragma once

#include <variant>
#include <vector>

#include "cvpoly/gates.hpp"
#include "cvpoly/states.hpp"

namespace cvpoly {

/// Two-mode brute-force simulation of both circuits. Slow and memory hungry;
/// used to check the closed-form step maps and the outcome probabilities.
struct OracleGrid {
    Grid grid1 = Grid{-15.0, 15.0, 1024};
    Grid grid2 = Grid{-15.0, 15.0, 1024};

    static OracleGrid standard();
    /// Both grids symmetric about zero and at most 2048 points each.
    void validate() const;
};

enum class Mode { First = 1, Second = 2 };

/// Psi(q1, q2) -> exp(i q1 q2) Psi(q1, q2).
TwoModeState cz_apply(const TwoModeState &state);

struct Projection {
    WaveFunction state;  // remaining mode, unnormalized
    double weight;       // its squared norm: density (homodyne) or probability (Fock)
};

/// Contracts `mode` against <m|_p = (2 pi)^{-1/2} \int dt e^{-i m t} <t|_q.
Projection project_homodyne_p(const TwoModeState &state, Mode mode, double m);

/// Homodyne density of `mode` at every m on `m_axis` (uniform), marginalized
/// over the other mode. The contraction runs as one chirp transform per row.
std::vector<double> homodyne_marginal_p(const TwoModeState &state, Mode mode, const Grid &m_axis);

/// Contracts `mode` against the Fock-n wave function.
Projection project_fock(const TwoModeState &state, Mode mode, unsigned n);

/// Tr(rho^2) of the reduced state of `mode`.
double reduced_purity(const TwoModeState &state, Mode mode);

/// Photon-subtracted (or photon-added) circuit: F-dagger on the input,
/// ladder-modified ancilla, CZ, p-homodyne on the input mode with outcome m,
/// then X-dagger(m) and Z-dagger(p0) on the ancilla mode. The input must live
/// on grid1; the output lives on grid2.
Normalized oracle_step_method1(const WaveFunction &psi, const SqueezedParams &ancilla, double m,
                               const OracleGrid &grids, Ladder ladder = Ladder::Annihilate);

/// Photon-counter circuit: CZ with the squeezed ancilla, projection of the
/// ancilla on |n>, then Z-dagger(2 q0 / (2 + k^2)) on the input mode.
Normalized oracle_step_method2(const WaveFunction &psi, const SqueezedParams &ancilla, unsigned n,
                               const OracleGrid &grids);

using OracleOutcome = std::variant<double, unsigned>;

/// Dispatches on the method: a homodyne outcome (double) for the
/// photon-subtracted circuit, a photon number (unsigned) for the counter.
Normalized oracle_step(const WaveFunction &psi, Method method, const SqueezedParams &ancilla, OracleOutcome outcome,
                       const OracleGrid &grids, Ladder ladder = Ladder::Annihilate);

}  // namespace cvpoly
