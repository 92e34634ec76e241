#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "cvpoly/analysis.hpp"
#include "cvpoly/method2.hpp"

using namespace cvpoly;

namespace {

const Grid kGrid = Grid::standard();

Method2Config cubic_config(double db) {
    Method2Config cfg;
    cfg.plan = taylor_factorize(DiagonalUnitary::cubic_phase(0.1), 1);
    cfg.squeezing_db = db;
    return cfg;
}

}  // namespace

TEST(StepMethod2, CenteredAncillaGivesEnvelopeTimesQ) {
    const double k = db_to_k(5.0, SqueezingAxis::SqueezedQ);
    const SqueezedParams anc{cplx{}, k};
    const WaveFunction psi = make_coherent(cplx(0.4, 0.1), kGrid);
    const Method2Step step = step_method2(psi, anc);
    EXPECT_NEAR(std::abs(step.lambda_realized), 0.0, 1e-15);
    const double a = k * k / (4.0 + 2.0 * k * k);
    const WaveFunction expect = apply_diagonal(psi, [&](double q) { return std::exp(-a * q * q) * q; });
    EXPECT_LT(1.0 - fidelity_pure(expect, step.state), 1e-12);
    EXPECT_GT(step.p_single, 0.0);
    EXPECT_LT(step.p_single, 1.0);
}

TEST(StepMethod2, RealizesSolvedRoot) {
    const double k = db_to_k(5.0, SqueezingAxis::SqueezedQ);
    const cplx target(-1.865795, 1.077217);
    const Method2Step step = step_method2(make_fock(0, kGrid), solve_ancilla_method2(target, k));
    EXPECT_NEAR(std::abs(step.lambda_realized - target), 0.0, 1e-12);
}

TEST(StepMethod2, NarrowAncillaLimit) {
    const WaveFunction psi = make_fock(2, kGrid);
    const Method2Step step = step_method2(psi, SqueezedParams{cplx{}, 0.01});
    const WaveFunction pure = apply_diagonal(psi, [](double q) { return cplx(q, 0.0); });
    EXPECT_LT(1.0 - fidelity_pure(pure, step.state), 1e-4);
}

TEST(SpcProbability, CompletenessAtLowSqueezing) {
    const double k = db_to_k(1.0, SqueezingAxis::SqueezedQ);
    const auto cfg = cubic_config(1.0);
    for (std::size_t j = 0; j < cfg.plan.roots.size(); ++j) {
        const auto dist = spc_distribution(make_fock(0, kGrid), solve_ancilla_method2(cfg.plan.roots[j], k), 40);
        for (double p : dist) {
            EXPECT_GE(p, 0.0);
        }
        EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, 1e-6);
    }
}

TEST(SpcProbability, VacuumEverywhere) {
    // Two vacua: |w_0(t)|^2 = exp(-t^2 / 2), so p(0) = sqrt(2/3).
    const double p0 = spc_probability(make_fock(0, kGrid), SqueezedParams{}, 0);
    EXPECT_NEAR(p0, std::sqrt(2.0 / 3.0), 1e-10);
}

TEST(SpcProbability, DistributionMatchesSingles) {
    const SqueezedParams anc{cplx(0.3, -0.2), 0.9};
    const WaveFunction psi = make_fock(1, kGrid);
    const auto dist = spc_distribution(psi, anc, 5);
    ASSERT_EQ(dist.size(), 6u);
    for (unsigned n = 0; n <= 5; ++n) {
        EXPECT_NEAR(dist[n], spc_probability(psi, anc, n), 1e-15);
    }
}

TEST(ChainMethod2, HighSqueezingReproducesPolynomial) {
    const auto cfg = cubic_config(20.0);
    const WaveFunction vac = make_fock(0, kGrid);
    const Method2Result res = chain_method2(vac, cfg);
    EXPECT_GE(fidelity_pure(res.state, apply_plan(cfg.plan, vac)), 0.999);
}

TEST(ChainMethod2, StatePreparationFidelity) {
    const WaveFunction in = momentum_squeezed_input(5.0, kGrid);
    const Method2Result res = chain_method2(in, cubic_config(5.0));
    EXPECT_NEAR(fidelity_pure(res.state, apply_unitary(DiagonalUnitary::cubic_phase(0.1), in)), 0.93, 0.02);
    ASSERT_EQ(res.step_probs.size(), 3u);
    double product = 1.0;
    for (double p : res.step_probs) {
        product *= p;
    }
    EXPECT_NEAR(res.success_prob, product, 1e-18);
    EXPECT_GT(res.success_prob, 0.0);
    EXPECT_LE(res.success_prob, 1.0);
}

TEST(ChainMethod2, SuccessDecreasesWithPhotonNumberAt5dB) {
    const auto cfg = cubic_config(5.0);
    double prev = 2.0;
    for (unsigned n = 0; n <= 4; ++n) {
        const double p = chain_method2(make_fock(n, kGrid), cfg).success_prob;
        EXPECT_LT(p, prev) << n;
        prev = p;
    }
}

TEST(ChainMethod2, Deterministic) {
    const auto cfg = cubic_config(5.0);
    const WaveFunction psi = make_coherent(cplx(1.0, 0.0), kGrid);
    const Method2Result a = chain_method2(psi, cfg);
    const Method2Result b = chain_method2(psi, cfg);
    EXPECT_EQ(a.success_prob, b.success_prob);
    for (std::size_t i = 0; i < a.state.size(); ++i) {
        ASSERT_EQ(a.state[i], b.state[i]);
    }
}

TEST(Method2Config, ValidationAndConvention) {
    auto cfg = cubic_config(5.0);
    EXPECT_LT(cfg.k(), std::sqrt(2.0));
    cfg.convention = SqueezingAxis::AntiSqueezedQ;
    EXPECT_GT(cfg.k(), std::sqrt(2.0));
    cfg.max_fock_check = 1;
    EXPECT_THROW(cfg.validate(), Error);
}
