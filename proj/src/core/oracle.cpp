#include "cvpoly/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "cvpoly/method1.hpp"

namespace cvpoly {

namespace {

constexpr std::size_t kMaxOracleSide = 2048;

const Grid &measured_grid(const TwoModeState &s, Mode mode) {
    return mode == Mode::First ? s.grid1() : s.grid2();
}

const Grid &kept_grid(const TwoModeState &s, Mode mode) {
    return mode == Mode::First ? s.grid2() : s.grid1();
}

// out(kept) = sum_measured w(measured) kernel(measured) Psi
WaveFunction contract(const TwoModeState &s, Mode mode, const std::vector<cplx> &kernel) {
    const Grid &gm = measured_grid(s, mode);
    const Grid &gk = kept_grid(s, mode);
    std::vector<cplx> weighted(gm.n_points);
    for (std::size_t i = 0; i < gm.n_points; ++i) {
        weighted[i] = kernel[i] * gm.weight(i);
    }
    std::vector<cplx> out(gk.n_points, cplx(0.0, 0.0));
    const std::size_t n2 = s.grid2().n_points;
    const auto amps = s.amplitudes();
    if (mode == Mode::First) {
        for (std::size_t i1 = 0; i1 < gm.n_points; ++i1) {
            const cplx w = weighted[i1];
            const cplx *row = amps.data() + i1 * n2;
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                out[i2] += w * row[i2];
            }
        }
    } else {
        for (std::size_t i1 = 0; i1 < gk.n_points; ++i1) {
            const cplx *row = amps.data() + i1 * n2;
            cplx acc{0.0, 0.0};
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                acc += weighted[i2] * row[i2];
            }
            out[i1] = acc;
        }
    }
    return WaveFunction(gk, std::move(out));
}

}  // namespace

OracleGrid OracleGrid::standard() {
    return OracleGrid{};
}

void OracleGrid::validate() const {
    grid1.validate();
    grid2.validate();
    if (!grid1.is_symmetric() || !grid2.is_symmetric()) {
        throw Error(ErrorCode::AsymmetricGrid, "oracle grids must be symmetric about zero");
    }
    if (grid1.n_points > kMaxOracleSide || grid2.n_points > kMaxOracleSide) {
        throw Error(ErrorCode::InvalidArgument, "oracle grids are limited to 2048 points per mode");
    }
}

TwoModeState cz_apply(const TwoModeState &state) {
    const Grid &g1 = state.grid1();
    const Grid &g2 = state.grid2();
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t i1 = 0; i1 < g1.n_points; ++i1) {
        const double q1 = g1.node(i1);
        for (std::size_t i2 = 0; i2 < g2.n_points; ++i2) {
            amps[i1 * g2.n_points + i2] *= std::polar(1.0, q1 * g2.node(i2));
        }
    }
    return TwoModeState(g1, g2, std::move(amps));
}

Projection project_homodyne_p(const TwoModeState &state, Mode mode, double m) {
    const Grid &gm = measured_grid(state, mode);
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    std::vector<cplx> kernel(gm.n_points);
    for (std::size_t i = 0; i < gm.n_points; ++i) {
        kernel[i] = std::polar(scale, -m * gm.node(i));
    }
    WaveFunction out = contract(state, mode, kernel);
    const double w = out.squared_norm();
    return Projection{std::move(out), w};
}

std::vector<double> homodyne_marginal_p(const TwoModeState &state, Mode mode, const Grid &m_axis) {
    const Grid &gm = measured_grid(state, mode);
    const Grid &gk = kept_grid(state, mode);
    const double dm = m_axis.n_points > 1 ? m_axis.spacing() : 0.0;
    const detail::ChirpTransform chirp(gm.n_points, gm.q_min, gm.spacing(), m_axis.n_points, -m_axis.q_min, -dm);
    const double scale = 1.0 / (2.0 * std::numbers::pi);
    const std::size_t n2 = state.grid2().n_points;
    const auto amps = state.amplitudes();

    std::vector<double> density(m_axis.n_points, 0.0);
    std::vector<cplx> line(gm.n_points);
    for (std::size_t ik = 0; ik < gk.n_points; ++ik) {
        for (std::size_t im = 0; im < gm.n_points; ++im) {
            const std::size_t idx = mode == Mode::First ? im * n2 + ik : ik * n2 + im;
            line[im] = amps[idx] * gm.weight(im);
        }
        const std::vector<cplx> spec = chirp.apply(line);
        for (std::size_t j = 0; j < m_axis.n_points; ++j) {
            density[j] += gk.weight(ik) * scale * std::norm(spec[j]);
        }
    }
    return density;
}

Projection project_fock(const TwoModeState &state, Mode mode, unsigned n) {
    const Grid &gm = measured_grid(state, mode);
    const WaveFunction fock = make_fock(n, gm);
    std::vector<cplx> kernel(fock.amplitudes().begin(), fock.amplitudes().end());
    for (cplx &c : kernel) {
        c = std::conj(c);
    }
    WaveFunction out = contract(state, mode, kernel);
    const double w = out.squared_norm();
    return Projection{std::move(out), w};
}

double reduced_purity(const TwoModeState &state, Mode mode) {
    const Grid &g1 = state.grid1();
    const Grid &g2 = state.grid2();
    Eigen::MatrixXcd b(g1.n_points, g2.n_points);
    for (std::size_t i1 = 0; i1 < g1.n_points; ++i1) {
        const double s1 = std::sqrt(g1.weight(i1));
        for (std::size_t i2 = 0; i2 < g2.n_points; ++i2) {
            b(i1, i2) = state.at(i1, i2) * s1 * std::sqrt(g2.weight(i2));
        }
    }
    // Both reduced states share their spectrum; pick the smaller Gram matrix.
    (void)mode;
    const Eigen::MatrixXcd gram = g1.n_points <= g2.n_points ? Eigen::MatrixXcd(b * b.adjoint())
                                                             : Eigen::MatrixXcd(b.adjoint() * b);
    const double tr = gram.trace().real();
    return gram.squaredNorm() / (tr * tr);
}

Normalized oracle_step_method1(const WaveFunction &psi, const SqueezedParams &ancilla, double m,
                               const OracleGrid &grids, Ladder ladder) {
    grids.validate();
    if (!(psi.grid() == grids.grid1)) {
        throw Error(ErrorCode::GridMismatch, "oracle input must live on grid1");
    }
    const WaveFunction rotated = fourier(normalize(psi).state, FourierDirection::Inverse);
    const WaveFunction omega = photon_subtracted_ancilla(ancilla, grids.grid2, ladder);
    const TwoModeState joint = cz_apply(TwoModeState::product(rotated, omega));
    const Projection proj = project_homodyne_p(joint, Mode::First, m);
    WaveFunction out = displace(proj.state, Shift::X, -m);
    out = displace(out, Shift::Z, -ancilla.p0());
    Normalized n = normalize(out);
    n.weight = proj.weight;
    return n;
}

Normalized oracle_step_method2(const WaveFunction &psi, const SqueezedParams &ancilla, unsigned n,
                               const OracleGrid &grids) {
    grids.validate();
    if (!(psi.grid() == grids.grid1)) {
        throw Error(ErrorCode::GridMismatch, "oracle input must live on grid1");
    }
    const WaveFunction sigma = make_squeezed(ancilla, grids.grid2);
    const TwoModeState joint = cz_apply(TwoModeState::product(normalize(psi).state, sigma));
    const Projection proj = project_fock(joint, Mode::Second, n);
    const double k2 = ancilla.k * ancilla.k;
    const WaveFunction out = displace(proj.state, Shift::Z, -2.0 * ancilla.q0() / (2.0 + k2));
    Normalized res = normalize(out);
    res.weight = proj.weight;
    return res;
}

Normalized oracle_step(const WaveFunction &psi, Method method, const SqueezedParams &ancilla, OracleOutcome outcome,
                       const OracleGrid &grids, Ladder ladder) {
    if (method == Method::PhotonSubtracted) {
        const auto *m = std::get_if<double>(&outcome);
        if (m == nullptr) {
            throw Error(ErrorCode::InvalidArgument, "photon-subtracted step needs a homodyne outcome");
        }
        return oracle_step_method1(psi, ancilla, *m, grids, ladder);
    }
    const auto *n = std::get_if<unsigned>(&outcome);
    if (n == nullptr) {
        throw Error(ErrorCode::InvalidArgument, "photon-counter step needs a photon number");
    }
    if (ladder != Ladder::Annihilate) {
        throw Error(ErrorCode::InvalidArgument, "the photon-counter circuit has no ladder variant");
    }
    return oracle_step_method2(psi, ancilla, *n, grids);
}

}  // namespace cvpoly
