#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cvpoly/error.hpp"

namespace cvpoly {

using cplx = std::complex<double>;

/// Uniform position grid q_i = q_min + i * (q_max - q_min) / (n_points - 1).
/// Quadrature units follow the vacuum-variance-1/2 convention, [q, p] = i.
struct Grid {
    double q_min = -20.0;
    double q_max = 20.0;
    std::size_t n_points = 4096;

    /// Validating constructor: q_min < q_max and n_points a power of two >= 2.
    static Grid make(double q_min, double q_max, std::size_t n_points);
    /// [-20, 20] with 4096 nodes; six sigmas of a 20 dB anti-squeezed ancilla.
    static Grid standard();

    void validate() const;
    double spacing() const;
    double node(std::size_t i) const;
    /// Trapezoidal quadrature weight of node i.
    double weight(std::size_t i) const;
    bool is_symmetric() const;
    /// Same interval, twice the nodes.
    Grid refined() const;

    bool operator==(const Grid &) const = default;
};

/// Complex amplitudes psi(q_i) of a single-mode pure state. Entries are
/// always finite; the state is not necessarily normalized.
class WaveFunction {
   public:
    WaveFunction(Grid grid, std::vector<cplx> amps);

    template <typename F>
    static WaveFunction sample(const Grid &grid, F &&f) {
        std::vector<cplx> amps(grid.n_points);
        for (std::size_t i = 0; i < grid.n_points; ++i) {
            amps[i] = f(grid.node(i));
        }
        return WaveFunction(grid, std::move(amps));
    }

    const Grid &grid() const {
        return grid_;
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    std::size_t size() const {
        return amps_.size();
    }
    cplx operator[](std::size_t i) const {
        return amps_[i];
    }
    /// Sum |psi_i|^2 w_i with trapezoidal weights.
    double squared_norm() const;

   private:
    Grid grid_;
    std::vector<cplx> amps_;
};

/// A state rescaled to unit norm together with its squared norm before
/// rescaling (the unnormalized success weight used by the protocols).
struct Normalized {
    WaveFunction state;
    double weight;
};

/// Throws ZeroNorm when the squared norm is below 1e-300.
Normalized normalize(const WaveFunction &psi);

/// <a|b> with trapezoidal weights; GridMismatch if the grids differ.
cplx inner(const WaveFunction &a, const WaveFunction &b);

/// Which quadrature a quoted dB figure refers to.
///  AntiSqueezedQ: k = sqrt(2) * 10^{+dB/20}, position variance enlarged
///                 (ancilla squeezed in p, photon-subtraction protocol).
///  SqueezedQ:     k = sqrt(2) * 10^{-dB/20}, position variance reduced
///                 (single-photon-counter protocol).
enum class SqueezingAxis { AntiSqueezedQ, SqueezedQ };

double db_to_k(double squeezing_db, SqueezingAxis axis);

/// Displaced squeezed state |alpha, k> = D(alpha) S(k) |0>; k = sqrt(2) is
/// the vacuum width.
struct SqueezedParams {
    cplx alpha{0.0, 0.0};
    double k = 1.4142135623730951;

    static SqueezedParams from_quadratures(double q0, double p0, double k);

    void validate() const;
    double q0() const;
    double p0() const;
};

/// Fock state wave function via the normalized Hermite-function recurrence.
/// Requires n <= 60; GridTooNarrow if the tails do not fit the grid.
WaveFunction make_fock(unsigned n, const Grid &grid);
/// C exp(-(s - q0)^2 / k^2 + i p0 s), C = (k sqrt(pi/2))^{-1/2}.
WaveFunction make_squeezed(const SqueezedParams &params, const Grid &grid);
WaveFunction make_coherent(cplx alpha, const Grid &grid);

/// d psi / dq by spectral differentiation.
WaveFunction derivative(const WaveFunction &psi);

enum class Ladder { Annihilate, Create };

/// (q + d/dq) psi / sqrt(2) for Annihilate, (q - d/dq) psi / sqrt(2) for
/// Create. Not renormalized: the squared norm is <N> (resp. <N> + 1).
WaveFunction apply_ladder(const WaveFunction &psi, Ladder which);

enum class FourierDirection { Forward, Inverse };

/// Forward: (F psi)(x) = (2 pi)^{-1/2} \int ds e^{i x s} psi(s); Inverse uses
/// e^{-i x s}. The output is sampled on the same grid, which therefore must
/// be symmetric about zero (AsymmetricGrid otherwise). The momentum wave
/// function of psi is fourier(psi, Inverse).
WaveFunction fourier(const WaveFunction &psi, FourierDirection direction);

enum class Shift { X, Z };

/// X(s): psi(q) -> psi(q - s) by a Fourier phase ramp (GridTooNarrow if the
/// support would wrap around the grid). Z(s): psi(q) -> e^{i s q} psi(q).
WaveFunction displace(const WaveFunction &psi, Shift kind, double s);

/// psi(q) -> psi(-q); exact on symmetric grids (AsymmetricGrid otherwise).
WaveFunction parity(const WaveFunction &psi);

/// GridTooNarrow unless |psi| at both grid edges is below 1e-8 of its peak.
void require_fits_grid(const WaveFunction &psi, const char *what);

double mean_position(const WaveFunction &psi);
double mean_momentum(const WaveFunction &psi);
double position_variance(const WaveFunction &psi);

/// Complex amplitudes Psi(q1_i, q2_j) on a product grid, stored row-major
/// (index i * n2 + j).
class TwoModeState {
   public:
    TwoModeState(Grid grid1, Grid grid2, std::vector<cplx> amps);

    static TwoModeState product(const WaveFunction &mode1, const WaveFunction &mode2);

    const Grid &grid1() const {
        return grid1_;
    }
    const Grid &grid2() const {
        return grid2_;
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    std::span<cplx> mutable_amplitudes() {
        return amps_;
    }
    cplx at(std::size_t i1, std::size_t i2) const {
        return amps_[i1 * grid2_.n_points + i2];
    }
    double squared_norm() const;

   private:
    Grid grid1_;
    Grid grid2_;
    std::vector<cplx> amps_;
};

}  // namespace cvpoly
