#include "cvpoly/method2.hpp"

#include <cmath>
#include <numbers>

namespace cvpoly {

void Method2Config::validate() const {
    if (max_fock_check < 2) {
        throw Error(ErrorCode::InvalidArgument, "max_fock_check must be at least 2");
    }
    if (!(squeezing_db >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "squeezing must be non-negative");
    }
    if (static_cast<int>(plan.roots.size()) != plan.degree_l) {
        throw Error(ErrorCode::InvalidArgument, "plan degree does not match its root count");
    }
}

double Method2Config::k() const {
    return db_to_k(squeezing_db, convention);
}

SqueezedParams Method2Config::ancilla(std::size_t step) const {
    return solve_ancilla_method2(plan.roots.at(step), k());
}

Method2Step step_method2(const WaveFunction &psi, const SqueezedParams &ancilla) {
    const EffectiveBlock block = EffectiveBlock::single_photon_counter(ancilla);
    const double p1 = spc_probability(psi, ancilla, 1);
    Normalized out = apply_effective_block(psi, block);
    return Method2Step{std::move(out.state), block.lambda, p1};
}

namespace {

// |w_n(t)|^2 on the grid of psi.
std::vector<double> detector_response(const Grid &grid, const SqueezedParams &ancilla, unsigned n) {
    const WaveFunction fock = make_fock(n, grid);
    const WaveFunction sigma = make_squeezed(ancilla, grid);
    std::vector<cplx> prod(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        prod[i] = fock[i] * sigma[i];
    }
    const WaveFunction w = fourier(WaveFunction(grid, std::move(prod)), FourierDirection::Forward);
    std::vector<double> out(grid.n_points);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        out[i] = two_pi * std::norm(w[i]);
    }
    return out;
}

}  // namespace

double spc_probability(const WaveFunction &psi, const SqueezedParams &ancilla, unsigned n) {
    ancilla.validate();
    const Grid &g = psi.grid();
    const std::vector<double> r = detector_response(g, ancilla, n);
    const double norm = psi.squared_norm();
    if (norm < 1e-300) {
        throw Error(ErrorCode::ZeroNorm, "input state has zero norm");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        total += g.weight(i) * std::norm(psi[i]) * r[i];
    }
    return total / norm;
}

std::vector<double> spc_distribution(const WaveFunction &psi, const SqueezedParams &ancilla, unsigned n_max) {
    std::vector<double> out;
    out.reserve(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) {
        out.push_back(spc_probability(psi, ancilla, n));
    }
    return out;
}

Method2Result chain_method2(const WaveFunction &psi, const Method2Config &cfg) {
    cfg.validate();
    Method2Result res{normalize(psi).state, 1.0, {}};
    for (std::size_t j = 0; j < cfg.plan.roots.size(); ++j) {
        Method2Step step = step_method2(res.state, cfg.ancilla(j));
        res.success_prob *= step.p_single;
        res.step_probs.push_back(step.p_single);
        res.state = std::move(step.state);
    }
    return res;
}

}  // namespace cvpoly
