#include <gtest/gtest.h>

#include <cmath>

#include "cvpoly/analysis.hpp"
#include "cvpoly/method1.hpp"

using namespace cvpoly;

namespace {

const Grid kGrid = Grid::standard();

MonomialPlan cubic_plan() {
    return taylor_factorize(DiagonalUnitary::cubic_phase(0.1), 1);
}

double k5() {
    return db_to_k(5.0, SqueezingAxis::AntiSqueezedQ);
}

}  // namespace

TEST(StepMethod1, OutcomeShiftMovesLambda) {
    const SqueezedParams anc = solve_ancilla_method1(cplx(0.3, -1.0), k5(), 0.0);
    const Method1Step a = step_method1(make_fock(0, kGrid), anc, 0.0);
    const Method1Step b = step_method1(make_fock(0, kGrid), anc, 0.01);
    EXPECT_NEAR(b.lambda_realized.real() - a.lambda_realized.real(), -0.01, 1e-15);
    EXPECT_EQ(b.lambda_realized.imag(), a.lambda_realized.imag());
}

TEST(StepMethod1, SolvedAncillaRealizesTarget) {
    const cplx target(-1.865795, 1.077217);
    const SqueezedParams anc = solve_ancilla_method1(target, k5(), 0.4);
    EXPECT_NEAR(std::abs(step_method1(make_fock(0, kGrid), anc, 0.4).lambda_realized - target), 0.0, 1e-12);
}

TEST(StepMethod1, VacuumAncillaIsRejected) {
    try {
        photon_subtracted_ancilla(SqueezedParams{}, kGrid);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroAncilla);
    }
    EXPECT_NO_THROW(photon_subtracted_ancilla(SqueezedParams{}, kGrid, Ladder::Create));
}

TEST(HomodyneDensity, IntegratesToOne) {
    const SqueezedParams anc{cplx{}, k5()};
    const HomodyneDensity pdf(make_fock(0, kGrid), anc);
    EXPECT_NEAR(pdf.integrate(-10.0, 10.0, 160), 1.0, 1e-6);
    // symmetric input and centred ancilla: even density
    EXPECT_NEAR(pdf(0.7), pdf(-0.7), 1e-12);
}

TEST(HomodyneDensity, DisplacedInputs) {
    const SqueezedParams anc = solve_ancilla_method1(cplx(1.077217, 1.865795), k5(), 0.0);
    const HomodyneDensity pdf(make_coherent(cplx(0.8, 0.4), kGrid), anc);
    EXPECT_NEAR(pdf.integrate(-12.0, 12.0, 200), 1.0, 1e-6);
}

TEST(GaussianMomentPdf, CenteredMoments) {
    EXPECT_EQ(centered_gaussian_moment(0, 2.0), 1.0);
    EXPECT_EQ(centered_gaussian_moment(3, 2.0), 0.0);
    EXPECT_NEAR(centered_gaussian_moment(2, 0.5), 0.25, 1e-15);
    EXPECT_NEAR(centered_gaussian_moment(6, 1.5), 15.0 * std::pow(1.5, 6), 1e-10);
}

TEST(GaussianMomentPdf, MatchesQuadrature) {
    const std::vector<SqueezedParams> ancillas = {
        SqueezedParams{cplx{}, k5()},
        solve_ancilla_method1(cplx(0.0, -2.154435), k5(), 0.0),
        solve_ancilla_method1(cplx(1.077217, 1.865795), db_to_k(1.0, SqueezingAxis::AntiSqueezedQ), 0.2),
    };
    const std::vector<std::pair<AnalyticInput, WaveFunction>> inputs = {
        {FockInput{0}, make_fock(0, kGrid)},
        {FockInput{1}, make_fock(1, kGrid)},
        {FockInput{4}, make_fock(4, kGrid)},
        {CoherentInput{cplx(1.0, 0.0)}, make_coherent(cplx(1.0, 0.0), kGrid)},
        {CoherentInput{cplx(0.5, -0.7)}, make_coherent(cplx(0.5, -0.7), kGrid)},
    };
    for (const auto &anc : ancillas) {
        for (const auto &[analytic, psi] : inputs) {
            const HomodyneDensity pdf(psi, anc);
            for (double m : {-0.5, 0.0, 0.5}) {
                EXPECT_NEAR(gaussian_moment_pdf(analytic, anc, m), pdf(m), 1e-8);
            }
        }
    }
}

TEST(GaussianMomentPdf, VacuumAncillaIsRejected) {
    EXPECT_THROW(gaussian_moment_pdf(FockInput{0}, SqueezedParams{}, 0.0), Error);
    EXPECT_THROW(gaussian_moment_pdf(FockInput{31}, SqueezedParams{cplx(1.0, 0.0), 2.0}, 0.0), Error);
}

TEST(ChainMethod1, HighSqueezingReproducesPolynomial) {
    const MonomialPlan plan = cubic_plan();
    const Method1Config cfg = Method1Config::centered(plan, 20.0, 0.1);
    const WaveFunction vac = make_fock(0, kGrid);
    const WaveFunction out = chain_method1_exact(vac, cfg);
    EXPECT_GE(fidelity_pure(out, apply_plan(plan, vac)), 0.999);
}

TEST(ChainMethod1, StatePreparationFidelity) {
    const WaveFunction in = momentum_squeezed_input(5.0, kGrid);
    const Method1Config cfg = Method1Config::centered(cubic_plan(), 5.0, 0.1);
    const WaveFunction out = chain_method1_exact(in, cfg);
    const double f = fidelity_pure(out, apply_unitary(DiagonalUnitary::cubic_phase(0.1), in));
    EXPECT_NEAR(f, 0.90, 0.02);
}

TEST(ChainMethod1, ZeroRootsGivePureCube) {
    MonomialPlan plan;
    plan.roots = {cplx{}, cplx{}, cplx{}};
    plan.degree_l = 3;
    // 20 log10(1e6 / sqrt 2) dB: k = 1e6
    const double db = 20.0 * std::log10(1e6 / std::sqrt(2.0));
    const Method1Config cfg = Method1Config::centered(plan, db, 0.1);
    const WaveFunction psi = make_coherent(cplx(0.5, 0.3), kGrid);
    const WaveFunction out = chain_method1_exact(psi, cfg);
    const WaveFunction cube = apply_diagonal(psi, [](double q) { return cplx(q * q * q, 0.0); });
    EXPECT_LT(1.0 - fidelity_pure(out, cube), 1e-6);
}

TEST(ChainMethod1, ConfigValidation) {
    Method1Config cfg = Method1Config::centered(cubic_plan(), 5.0, 0.1);
    cfg.nominal_outcomes.pop_back();
    EXPECT_THROW(cfg.validate(), Error);
    EXPECT_THROW(Method1Config::centered(cubic_plan(), 5.0, 0.0), Error);
    EXPECT_THROW(Method1Config::centered(cubic_plan(), 5.0, 0.1, 0), Error);
}

TEST(Postselect, WeightsSumToRegionProbability) {
    const Method1Config cfg = Method1Config::centered(cubic_plan(), 5.0, 0.1, 4);
    const OutcomeEnsemble ens = postselect_ensemble(make_fock(0, kGrid), cfg);
    ASSERT_EQ(ens.entries.size(), 64u);
    double total = 0.0;
    for (const auto &e : ens.entries) {
        EXPECT_NEAR(e.state.squared_norm(), 1.0, 1e-10);
        total += e.density * e.quad_weight;
    }
    EXPECT_NEAR(total, ens.region_prob, 1e-15 + 1e-12 * ens.region_prob);
    EXPECT_GT(ens.region_prob, 0.0);
    EXPECT_LT(ens.region_prob, 1.0);
}

TEST(Postselect, NarrowWindowMatchesExactChain) {
    const WaveFunction psi = make_coherent(cplx(1.0, 0.0), kGrid);
    const DiagonalUnitary u = DiagonalUnitary::cubic_phase(0.1);
    const Method1Config cfg = Method1Config::centered(cubic_plan(), 5.0, 1e-4);
    const WaveFunction target = apply_unitary(u, psi);
    const double exact = fidelity_pure(chain_method1_exact(psi, cfg), target);
    const double ps = fidelity_postselected(postselect_ensemble(psi, cfg), target);
    EXPECT_NEAR(ps, exact, 1e-3);
}

TEST(Postselect, RegionProbabilityGrowsWithWindow) {
    const WaveFunction psi = make_fock(0, kGrid);
    double prev = 0.0;
    for (double delta : {0.05, 0.1, 0.2, 0.5}) {
        const double p = success_probability_m1(psi, Method1Config::centered(cubic_plan(), 5.0, delta, 6));
        EXPECT_GT(p, prev) << delta;
        prev = p;
    }
}

TEST(Postselect, NarrowWindowIsMoreFaithful) {
    const WaveFunction psi = make_coherent(cplx(1.0, 0.0), kGrid);
    const WaveFunction target = apply_unitary(DiagonalUnitary::cubic_phase(0.1), psi);
    const double f_small =
        fidelity_postselected(postselect_ensemble(psi, Method1Config::centered(cubic_plan(), 5.0, 0.1)), target);
    const double f_large =
        fidelity_postselected(postselect_ensemble(psi, Method1Config::centered(cubic_plan(), 5.0, 0.5)), target);
    EXPECT_GE(f_small, f_large);
}

TEST(Postselect, ConditionalDensityIsNormalized) {
    const Method1Config cfg = Method1Config::centered(cubic_plan(), 5.0, 0.1, 4);
    const WaveFunction psi = make_fock(1, kGrid);
    for (double m1 : {-0.086, 0.0, 0.034}) {
        const WaveFunction s1 = step_method1(psi, cfg.ancilla(0), m1).state;
        const HomodyneDensity pdf2(s1, cfg.ancilla(1));
        EXPECT_NEAR(pdf2.integrate(-14.0, 14.0, 240), 1.0, 1e-5) << m1;
    }
}

TEST(Postselect, StepOrderInvariance) {
    const WaveFunction psi = make_coherent(cplx(1.0, 0.0), kGrid);
    const WaveFunction target = apply_unitary(DiagonalUnitary::cubic_phase(0.1), psi);
    const MonomialPlan plan = cubic_plan();
    MonomialPlan reversed = plan;
    std::reverse(reversed.roots.begin(), reversed.roots.end());
    const OutcomeEnsemble a = postselect_ensemble(psi, Method1Config::centered(plan, 5.0, 0.1));
    const OutcomeEnsemble b = postselect_ensemble(psi, Method1Config::centered(reversed, 5.0, 0.1));
    EXPECT_NEAR(fidelity_postselected(a, target), fidelity_postselected(b, target), 1e-4);
    EXPECT_NEAR(b.region_prob / a.region_prob, 1.0, 1e-4);
}

TEST(Postselect, OnlyThreeStepPlans) {
    const MonomialPlan plan = taylor_factorize(DiagonalUnitary::cubic_phase(0.1), 2);
    EXPECT_THROW(postselect_ensemble(make_fock(0, kGrid), Method1Config::centered(plan, 5.0, 0.1)), Error);
}

TEST(FidelityPostselected, Reductions) {
    const WaveFunction target = make_coherent(cplx(0.4, 0.0), kGrid);
    const WaveFunction other = make_fock(1, kGrid);
    OutcomeEnsemble same;
    same.entries.push_back(OutcomeEntry{{0.0}, target, 0.3, 1.0});
    same.entries.push_back(OutcomeEntry{{0.1}, target, 0.7, 2.0});
    same.region_prob = 0.3 + 1.4;
    EXPECT_NEAR(fidelity_postselected(same, target), 1.0, 1e-12);

    OutcomeEnsemble single;
    single.entries.push_back(OutcomeEntry{{0.0}, other, 1.0, 1.0});
    single.region_prob = 1.0;
    EXPECT_NEAR(fidelity_postselected(single, target), std::abs(inner(target, other)), 1e-12);

    try {
        fidelity_postselected(OutcomeEnsemble{}, target);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyEnsemble);
    }
}

TEST(SuccessProbability, UnoptimizedIsTiny) {
    const WaveFunction in = momentum_squeezed_input(5.0, kGrid);
    const double p = success_probability_m1(in, Method1Config::centered(cubic_plan(), 5.0, 0.1));
    EXPECT_GT(p, 0.0);
    EXPECT_LE(p, 1e-7);
}

TEST(Optimize, NominalOutcomeFormula) {
    // q0 = 0 gives m_o = -Re lambda.
    const double k = k5();
    const cplx lambda(1.077217, 1.865795);
    const double m_o = -lambda.real();
    EXPECT_NEAR(solve_ancilla_method1(lambda, k, m_o).q0(), 0.0, 1e-12);
}

TEST(Optimize, NeverWorseThanCenteredConfiguration) {
    const WaveFunction in = momentum_squeezed_input(5.0, kGrid);
    const MonomialPlan plan = cubic_plan();
    const double k2 = k5() * k5();
    // the centered configuration of the two real-part roots sits at q0 = -+ c
    const double c = (k2 - 2.0) * std::abs(plan.roots[1].real()) / 2.0;
    const Method1Config opt = optimize_state_prep(in, plan, 5.0, 0.1, ScanRange{-c, c, 3});
    const double p_opt = success_probability_m1(in, opt);
    const double p_ref = success_probability_m1(in, Method1Config::centered(plan, 5.0, 0.1));
    EXPECT_GE(p_opt, p_ref);
}

TEST(Optimize, EmptyScanIsRejected) {
    try {
        ScanRange{0.0, 1.0, 0}.values();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyScanRange);
    }
    EXPECT_EQ(ScanRange{}.values().size(), 161u);
}
