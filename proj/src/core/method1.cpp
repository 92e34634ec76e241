#include "cvpoly/method1.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadrature.hpp"

namespace cvpoly {

Method1Config Method1Config::centered(const MonomialPlan &plan, double squeezing_db, double delta, int nodes) {
    Method1Config cfg;
    cfg.plan = plan;
    cfg.squeezing_db = squeezing_db;
    cfg.delta = delta;
    cfg.nominal_outcomes.assign(plan.roots.size(), 0.0);
    cfg.quadrature_nodes_per_dim = nodes;
    cfg.validate();
    return cfg;
}

void Method1Config::validate() const {
    if (nominal_outcomes.size() != plan.roots.size() ||
        static_cast<int>(plan.roots.size()) != plan.degree_l) {
        throw Error(ErrorCode::InvalidArgument, "one nominal outcome per plan root is required");
    }
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "acceptance half-width delta must be positive");
    }
    if (quadrature_nodes_per_dim < 1) {
        throw Error(ErrorCode::InvalidArgument, "at least one quadrature node per dimension is required");
    }
    if (!(squeezing_db >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "squeezing must be non-negative");
    }
}

double Method1Config::k() const {
    return db_to_k(squeezing_db, SqueezingAxis::AntiSqueezedQ);
}

SqueezedParams Method1Config::ancilla(std::size_t step) const {
    return solve_ancilla_method1(plan.roots.at(step), k(), nominal_outcomes.at(step));
}

Method1Step step_method1(const WaveFunction &psi, const SqueezedParams &ancilla, double m) {
    const EffectiveBlock block = EffectiveBlock::photon_subtracted(ancilla, m);
    Normalized out = apply_effective_block(psi, block);
    return Method1Step{std::move(out.state), block.lambda, out.weight};
}

cplx lambda_method1_photon_added(const SqueezedParams &ancilla, double m) {
    const double k2 = ancilla.k * ancilla.k;
    return cplx(-m + 2.0 * ancilla.q0() / (k2 + 2.0), k2 * ancilla.p0() / (k2 + 2.0));
}

WaveFunction photon_subtracted_ancilla(const SqueezedParams &ancilla, const Grid &grid, Ladder ladder) {
    const WaveFunction sq = make_squeezed(ancilla, grid);
    const WaveFunction raw = apply_ladder(sq, ladder);
    if (raw.squared_norm() < 1e-20) {
        throw Error(ErrorCode::ZeroAncilla, "photon subtraction annihilates the ancilla (vacuum, alpha = 0)");
    }
    return normalize(raw).state;
}

HomodyneDensity::HomodyneDensity(const WaveFunction &psi, const SqueezedParams &ancilla, Ladder ladder)
    : reflected_momentum_(psi) {
    const Normalized in = normalize(psi);
    const WaveFunction circuit_input = fourier(in.state, FourierDirection::Inverse);
    const WaveFunction momentum = fourier(circuit_input, FourierDirection::Inverse);
    reflected_momentum_ = parity(momentum);

    const WaveFunction omega = photon_subtracted_ancilla(ancilla, psi.grid(), ladder);
    const Grid &g = psi.grid();
    ancilla_density_.resize(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        ancilla_density_[i] = std::norm(omega[i]) * g.weight(i);
    }
}

double HomodyneDensity::operator()(double m) const {
    const WaveFunction shifted = displace(reflected_momentum_, Shift::X, m);
    double total = 0.0;
    for (std::size_t i = 0; i < ancilla_density_.size(); ++i) {
        total += ancilla_density_[i] * std::norm(shifted[i]);
    }
    return total;
}

double HomodyneDensity::integrate(double lo, double hi, std::size_t nodes) const {
    const auto rule = detail::gauss_legendre(nodes, lo, hi);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        total += rule.weights[i] * (*this)(rule.nodes[i]);
    }
    return total;
}

HomodyneDensity homodyne_pdf(const WaveFunction &psi, const SqueezedParams &ancilla) {
    return HomodyneDensity(psi, ancilla);
}

WaveFunction chain_method1_exact(const WaveFunction &psi, const Method1Config &cfg) {
    cfg.validate();
    WaveFunction state = normalize(psi).state;
    for (std::size_t j = 0; j < cfg.plan.roots.size(); ++j) {
        state = step_method1(state, cfg.ancilla(j), cfg.nominal_outcomes[j]).state;
    }
    return state;
}

namespace {

struct EnsembleBuilder {
    const Method1Config &cfg;
    std::vector<SqueezedParams> ancillas;
    std::vector<detail::QuadratureRule> rules;
    OutcomeEnsemble out;

    void descend(const WaveFunction &state, std::size_t step, std::vector<double> &outcomes, double density,
                 double weight) {
        if (step == ancillas.size()) {
            out.entries.push_back(OutcomeEntry{outcomes, state, density, weight});
            return;
        }
        const HomodyneDensity pdf(state, ancillas[step]);
        const auto &rule = rules[step];
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double m = rule.nodes[i];
            const double p = pdf(m);
            Method1Step next = step_method1(state, ancillas[step], m);
            outcomes.push_back(m);
            descend(next.state, step + 1, outcomes, density * p, weight * rule.weights[i]);
            outcomes.pop_back();
        }
    }
};

}  // namespace

OutcomeEnsemble postselect_ensemble(const WaveFunction &psi, const Method1Config &cfg) {
    cfg.validate();
    if (cfg.plan.degree_l != 3) {
        throw Error(ErrorCode::InvalidArgument, "post-selection ensembles are defined for three-step plans");
    }
    EnsembleBuilder builder{cfg, {}, {}, {}};
    for (std::size_t j = 0; j < cfg.plan.roots.size(); ++j) {
        builder.ancillas.push_back(cfg.ancilla(j));
        const double center = cfg.nominal_outcomes[j];
        builder.rules.push_back(detail::gauss_legendre(static_cast<std::size_t>(cfg.quadrature_nodes_per_dim),
                                                       center - cfg.delta, center + cfg.delta));
    }
    std::vector<double> outcomes;
    builder.descend(normalize(psi).state, 0, outcomes, 1.0, 1.0);

    double total = 0.0;
    for (const auto &e : builder.out.entries) {
        total += e.density * e.quad_weight;
    }
    builder.out.region_prob = total;
    return std::move(builder.out);
}

double success_probability_m1(const WaveFunction &psi, const Method1Config &cfg) {
    return postselect_ensemble(psi, cfg).region_prob;
}

double fidelity_postselected(const OutcomeEnsemble &ensemble, const WaveFunction &target) {
    if (ensemble.entries.empty() || !(ensemble.region_prob > 0.0)) {
        throw Error(ErrorCode::EmptyEnsemble, "ensemble has no weight to average over");
    }
    double acc = 0.0;
    for (const auto &e : ensemble.entries) {
        acc += e.density * e.quad_weight / ensemble.region_prob * std::norm(inner(target, e.state));
    }
    return std::sqrt(std::clamp(acc, 0.0, 1.0));
}

std::vector<double> ScanRange::values() const {
    if (count == 0 || !(lo <= hi)) {
        throw Error(ErrorCode::EmptyScanRange, "q0 scan range is empty");
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return v;
}

Method1Config optimize_state_prep(const WaveFunction &psi_known, const MonomialPlan &plan, double squeezing_db,
                                  double delta, const ScanRange &q0_scan, int nodes) {
    const std::vector<double> q0_values = q0_scan.values();
    Method1Config cfg = Method1Config::centered(plan, squeezing_db, delta, nodes);
    const double k = cfg.k();
    const double k2 = k * k;
    if (std::abs(k2 - 2.0) <= 1e-6) {
        throw Error(ErrorCode::SingularAncilla, "state preparation needs k != sqrt 2");
    }

    WaveFunction state = normalize(psi_known).state;
    for (std::size_t j = 0; j < plan.roots.size(); ++j) {
        const cplx lambda = plan.roots[j];
        double best_prob = -1.0;
        double best_m = 0.0;
        for (double q0 : q0_values) {
            const double m_o = -lambda.real() - 2.0 / (k2 - 2.0) * q0;
            const SqueezedParams anc = solve_ancilla_method1(lambda, k, m_o);
            const double prob =
                HomodyneDensity(state, anc).integrate(m_o - delta, m_o + delta, static_cast<std::size_t>(nodes));
            if (prob > best_prob) {
                best_prob = prob;
                best_m = m_o;
            }
        }
        cfg.nominal_outcomes[j] = best_m;
        state = step_method1(state, cfg.ancilla(j), best_m).state;
    }
    return cfg;
}

}  // namespace cvpoly
