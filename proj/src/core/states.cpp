#include "cvpoly/states.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "fft.hpp"

namespace cvpoly {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

bool is_power_of_two(std::size_t n) {
    return n >= 2 && (n & (n - 1)) == 0;
}

const detail::ChirpTransform &fourier_kernel(const Grid &grid, FourierDirection direction) {
    using Key = std::tuple<double, double, std::size_t, int>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const detail::ChirpTransform>> cache;

    const int dir = direction == FourierDirection::Forward ? 1 : -1;
    Key key{grid.q_min, grid.q_max, grid.n_points, dir};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const double dq = grid.spacing();
        auto kernel = std::make_shared<const detail::ChirpTransform>(grid.n_points, grid.q_min, dq, grid.n_points,
                                                                     dir * grid.q_min, dir * dq);
        it = cache.emplace(key, std::move(kernel)).first;
    }
    return *it->second;
}

void require_symmetric(const Grid &grid) {
    if (!grid.is_symmetric()) {
        throw Error(ErrorCode::AsymmetricGrid, "operation needs a grid symmetric about q = 0");
    }
}

}  // namespace

Grid Grid::make(double q_min, double q_max, std::size_t n_points) {
    Grid g{q_min, q_max, n_points};
    g.validate();
    return g;
}

Grid Grid::standard() {
    return Grid{-20.0, 20.0, 4096};
}

void Grid::validate() const {
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_min < q_max)) {
        throw Error(ErrorCode::InvalidArgument, "grid needs finite q_min < q_max");
    }
    if (!is_power_of_two(n_points)) {
        throw Error(ErrorCode::InvalidArgument, "grid size must be a power of two, got " + std::to_string(n_points));
    }
}

double Grid::spacing() const {
    return (q_max - q_min) / static_cast<double>(n_points - 1);
}

double Grid::node(std::size_t i) const {
    return q_min + static_cast<double>(i) * spacing();
}

double Grid::weight(std::size_t i) const {
    return (i == 0 || i + 1 == n_points) ? 0.5 * spacing() : spacing();
}

bool Grid::is_symmetric() const {
    return std::abs(q_min + q_max) <= 1e-12 * std::max(std::abs(q_min), std::abs(q_max));
}

Grid Grid::refined() const {
    return Grid::make(q_min, q_max, 2 * n_points);
}

WaveFunction::WaveFunction(Grid grid, std::vector<cplx> amps) : grid_(grid), amps_(std::move(amps)) {
    grid_.validate();
    if (amps_.size() != grid_.n_points) {
        throw Error(ErrorCode::InvalidArgument, "amplitude count does not match the grid");
    }
    for (const cplx &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw Error(ErrorCode::InvalidArgument, "wave function has a non-finite amplitude");
        }
    }
}

double WaveFunction::squared_norm() const {
    double total = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        total += std::norm(amps_[i]) * grid_.weight(i);
    }
    return total;
}

Normalized normalize(const WaveFunction &psi) {
    const double weight = psi.squared_norm();
    if (!(weight >= 1e-300)) {
        throw Error(ErrorCode::ZeroNorm, "cannot normalize a state with squared norm " + std::to_string(weight));
    }
    const double scale = 1.0 / std::sqrt(weight);
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    for (cplx &a : amps) {
        a *= scale;
    }
    return Normalized{WaveFunction(psi.grid(), std::move(amps)), weight};
}

cplx inner(const WaveFunction &a, const WaveFunction &b) {
    if (!(a.grid() == b.grid())) {
        throw Error(ErrorCode::GridMismatch, "inner product of states on different grids");
    }
    cplx total{0.0, 0.0};
    const Grid &g = a.grid();
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += std::conj(a[i]) * b[i] * g.weight(i);
    }
    return total;
}

double db_to_k(double squeezing_db, SqueezingAxis axis) {
    if (!(squeezing_db >= 0.0) || !std::isfinite(squeezing_db)) {
        throw Error(ErrorCode::InvalidArgument, "squeezing in dB must be finite and non-negative");
    }
    const double exponent = axis == SqueezingAxis::AntiSqueezedQ ? squeezing_db / 20.0 : -squeezing_db / 20.0;
    return kSqrt2 * std::pow(10.0, exponent);
}

SqueezedParams SqueezedParams::from_quadratures(double q0, double p0, double k) {
    SqueezedParams p{cplx(q0 / kSqrt2, p0 / kSqrt2), k};
    p.validate();
    return p;
}

void SqueezedParams::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw Error(ErrorCode::InvalidArgument, "squeezing parameter k must be positive");
    }
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw Error(ErrorCode::InvalidArgument, "displacement must be finite");
    }
}

double SqueezedParams::q0() const {
    return kSqrt2 * alpha.real();
}

double SqueezedParams::p0() const {
    return kSqrt2 * alpha.imag();
}

void require_fits_grid(const WaveFunction &psi, const char *what) {
    double peak = 0.0;
    for (const cplx &a : psi.amplitudes()) {
        peak = std::max(peak, std::abs(a));
    }
    const double edge = std::max(std::abs(psi[0]), std::abs(psi[psi.size() - 1]));
    if (edge > 1e-8 * peak) {
        throw Error(ErrorCode::GridTooNarrow, std::string(what) + " does not decay within the grid");
    }
}

WaveFunction make_fock(unsigned n, const Grid &grid) {
    if (n > 60) {
        throw Error(ErrorCode::InvalidArgument, "Fock states are supported up to n = 60");
    }
    grid.validate();
    const double c0 = std::pow(std::numbers::pi, -0.25);
    std::vector<cplx> amps(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.node(i);
        double prev = 0.0;
        double cur = c0 * std::exp(-0.5 * x * x);
        for (unsigned j = 0; j < n; ++j) {
            const double next = std::sqrt(2.0 / (j + 1.0)) * x * cur - std::sqrt(j / (j + 1.0)) * prev;
            prev = cur;
            cur = next;
        }
        amps[i] = cur;
    }
    WaveFunction psi(grid, std::move(amps));
    require_fits_grid(psi, "Fock state");
    return psi;
}

WaveFunction make_squeezed(const SqueezedParams &params, const Grid &grid) {
    params.validate();
    const double k = params.k;
    const double q0 = params.q0();
    const double p0 = params.p0();
    const double c = 1.0 / std::sqrt(k * std::sqrt(std::numbers::pi / 2.0));
    auto psi = WaveFunction::sample(grid, [&](double s) {
        const double d = s - q0;
        return c * std::exp(cplx(-d * d / (k * k), p0 * s));
    });
    require_fits_grid(psi, "squeezed state");
    return psi;
}

WaveFunction make_coherent(cplx alpha, const Grid &grid) {
    return make_squeezed(SqueezedParams{alpha, kSqrt2}, grid);
}

WaveFunction derivative(const WaveFunction &psi) {
    const Grid &g = psi.grid();
    std::vector<cplx> work(psi.amplitudes().begin(), psi.amplitudes().end());
    detail::fft_inplace(work, -1);
    const auto kappa = detail::angular_frequencies(g.n_points, g.spacing());
    const double inv = 1.0 / static_cast<double>(g.n_points);
    for (std::size_t j = 0; j < work.size(); ++j) {
        work[j] *= cplx(0.0, kappa[j] * inv);
    }
    detail::fft_inplace(work, +1);
    return WaveFunction(g, std::move(work));
}

WaveFunction apply_ladder(const WaveFunction &psi, Ladder which) {
    const WaveFunction d = derivative(psi);
    const double sign = which == Ladder::Annihilate ? 1.0 : -1.0;
    const Grid &g = psi.grid();
    std::vector<cplx> out(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        out[i] = (g.node(i) * psi[i] + sign * d[i]) / kSqrt2;
    }
    return WaveFunction(g, std::move(out));
}

WaveFunction fourier(const WaveFunction &psi, FourierDirection direction) {
    const Grid &g = psi.grid();
    require_symmetric(g);
    std::vector<cplx> weighted(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        weighted[i] = psi[i] * g.weight(i);
    }
    auto out = fourier_kernel(g, direction).apply(weighted);
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (cplx &a : out) {
        a *= scale;
    }
    return WaveFunction(g, std::move(out));
}

WaveFunction displace(const WaveFunction &psi, Shift kind, double s) {
    const Grid &g = psi.grid();
    if (kind == Shift::Z) {
        std::vector<cplx> out(g.n_points);
        for (std::size_t i = 0; i < g.n_points; ++i) {
            out[i] = std::polar(1.0, s * g.node(i)) * psi[i];
        }
        return WaveFunction(g, std::move(out));
    }

    // Content within |s| of the leading edge would wrap around periodically.
    double peak = 0.0;
    double wrapped = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double q = g.node(i);
        const double a = std::abs(psi[i]);
        peak = std::max(peak, a);
        if ((s > 0.0 && q > g.q_max - s) || (s < 0.0 && q < g.q_min - s)) {
            wrapped = std::max(wrapped, a);
        }
    }
    if (wrapped > 1e-8 * peak) {
        throw Error(ErrorCode::GridTooNarrow, "X displacement by " + std::to_string(s) + " leaves the grid");
    }

    std::vector<cplx> work(psi.amplitudes().begin(), psi.amplitudes().end());
    detail::fft_inplace(work, -1);
    const auto kappa = detail::angular_frequencies(g.n_points, g.spacing());
    const double inv = 1.0 / static_cast<double>(g.n_points);
    for (std::size_t j = 0; j < work.size(); ++j) {
        work[j] *= std::polar(inv, -kappa[j] * s);
    }
    detail::fft_inplace(work, +1);
    return WaveFunction(g, std::move(work));
}

WaveFunction parity(const WaveFunction &psi) {
    require_symmetric(psi.grid());
    std::vector<cplx> out(psi.amplitudes().rbegin(), psi.amplitudes().rend());
    return WaveFunction(psi.grid(), std::move(out));
}

double mean_position(const WaveFunction &psi) {
    const Grid &g = psi.grid();
    double num = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        num += g.node(i) * std::norm(psi[i]) * g.weight(i);
    }
    return num / psi.squared_norm();
}

double mean_momentum(const WaveFunction &psi) {
    // <p> = <psi| -i d/dq |psi>
    const WaveFunction d = derivative(psi);
    return (cplx(0.0, -1.0) * inner(psi, d)).real() / psi.squared_norm();
}

double position_variance(const WaveFunction &psi) {
    const Grid &g = psi.grid();
    const double mean = mean_position(psi);
    double num = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double d = g.node(i) - mean;
        num += d * d * std::norm(psi[i]) * g.weight(i);
    }
    return num / psi.squared_norm();
}

TwoModeState::TwoModeState(Grid grid1, Grid grid2, std::vector<cplx> amps)
    : grid1_(grid1), grid2_(grid2), amps_(std::move(amps)) {
    grid1_.validate();
    grid2_.validate();
    if (amps_.size() != grid1_.n_points * grid2_.n_points) {
        throw Error(ErrorCode::InvalidArgument, "two-mode amplitude count does not match the grids");
    }
}

TwoModeState TwoModeState::product(const WaveFunction &mode1, const WaveFunction &mode2) {
    const std::size_t n1 = mode1.size();
    const std::size_t n2 = mode2.size();
    std::vector<cplx> amps(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            amps[i * n2 + j] = mode1[i] * mode2[j];
        }
    }
    return TwoModeState(mode1.grid(), mode2.grid(), std::move(amps));
}

double TwoModeState::squared_norm() const {
    double total = 0.0;
    const std::size_t n2 = grid2_.n_points;
    for (std::size_t i = 0; i < grid1_.n_points; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n2; ++j) {
            row += std::norm(amps_[i * n2 + j]) * grid2_.weight(j);
        }
        total += row * grid1_.weight(i);
    }
    return total;
}

}  // namespace cvpoly
