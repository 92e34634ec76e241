#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "cvpoly/analysis.hpp"
#include "cvpoly/oracle.hpp"

using namespace cvpoly;

namespace {

const OracleGrid kOracle = OracleGrid::standard();
const Grid &kG = kOracle.grid1;

double k_m1(double db) {
    return db_to_k(db, SqueezingAxis::AntiSqueezedQ);
}

double k_m2(double db) {
    return db_to_k(db, SqueezingAxis::SqueezedQ);
}

MonomialPlan cubic_plan() {
    return taylor_factorize(DiagonalUnitary::cubic_phase(0.1), 1);
}

double deficit(const WaveFunction &a, const WaveFunction &b) {
    return 1.0 - fidelity_pure(a, b);
}

}  // namespace

TEST(CzApply, NormAndDoubleApplication) {
    const Grid g = Grid::make(-10.0, 10.0, 256);
    const TwoModeState prod = TwoModeState::product(make_coherent(cplx(0.5, 0.2), g), make_fock(1, g));
    const TwoModeState once = cz_apply(prod);
    EXPECT_NEAR(once.squared_norm(), prod.squared_norm(), 1e-12);
    const TwoModeState twice = cz_apply(once);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        for (std::size_t j = 0; j < g.n_points; ++j) {
            const cplx expect = prod.at(i, j) * std::polar(1.0, 2.0 * g.node(i) * g.node(j));
            err = std::max(err, std::abs(twice.at(i, j) - expect));
        }
    }
    EXPECT_LT(err, 1e-13);
}

TEST(CzApply, EntanglesVacua) {
    const Grid g = Grid::make(-10.0, 10.0, 256);
    const TwoModeState prod = TwoModeState::product(make_fock(0, g), make_fock(0, g));
    EXPECT_NEAR(reduced_purity(prod, Mode::First), 1.0, 1e-10);
    const double purity = reduced_purity(cz_apply(prod), Mode::First);
    EXPECT_LT(purity, 1.0 - 1e-3);
    // Gaussian reference: Var q1 = 1/2, Var p1 = 1 after the gate, purity 1/sqrt(det 2V).
    EXPECT_NEAR(purity, 1.0 / std::sqrt(2.0), 1e-8);
}

TEST(ProjectHomodyne, ProductVacuaGiveVacuumMomentumDensity) {
    const TwoModeState prod = TwoModeState::product(make_fock(0, kG), make_fock(0, kG));
    for (double m : {-1.2, -0.3, 0.0, 0.8}) {
        const Projection p = project_homodyne_p(prod, Mode::First, m);
        EXPECT_NEAR(p.weight, std::exp(-m * m) / std::sqrt(std::numbers::pi), 1e-8) << m;
        EXPECT_NEAR(std::abs(inner(normalize(p.state).state, make_fock(0, kG))), 1.0, 1e-10);
    }
}

TEST(ProjectHomodyne, MarginalIsNormalized) {
    const SqueezedParams anc{cplx(0.4, 0.9), k_m1(5.0)};
    const TwoModeState joint = cz_apply(TwoModeState::product(make_fock(1, kG), make_squeezed(anc, kG)));
    const Grid m_axis = Grid::make(-15.0, 15.0, 1024);
    for (Mode mode : {Mode::First, Mode::Second}) {
        const std::vector<double> dens = homodyne_marginal_p(joint, mode, m_axis);
        double total = 0.0;
        for (std::size_t i = 0; i < dens.size(); ++i) {
            total += dens[i] * m_axis.weight(i);
        }
        EXPECT_NEAR(total, 1.0, 1e-6);
    }
}

TEST(ProjectHomodyne, MarginalAgreesWithPointProjection) {
    const TwoModeState joint = cz_apply(
        TwoModeState::product(make_coherent(cplx(0.5, 0.0), kG), make_squeezed(SqueezedParams{cplx{}, 2.0}, kG)));
    const Grid m_axis = Grid::make(-2.0, 2.0, 16);
    const std::vector<double> dens = homodyne_marginal_p(joint, Mode::First, m_axis);
    for (std::size_t i = 0; i < dens.size(); i += 5) {
        EXPECT_NEAR(dens[i], project_homodyne_p(joint, Mode::First, m_axis.node(i)).weight, 1e-10);
    }
}

TEST(ProjectFock, ProductVacua) {
    const TwoModeState prod = TwoModeState::product(make_fock(0, kG), make_fock(0, kG));
    const Projection p = project_fock(prod, Mode::Second, 0);
    EXPECT_NEAR(p.weight, 1.0, 1e-10);
    EXPECT_NEAR(std::abs(inner(p.state, make_fock(0, kG))), 1.0, 1e-10);
    EXPECT_NEAR(project_fock(prod, Mode::Second, 1).weight, 0.0, 1e-12);
}

TEST(ProjectFock, Completeness) {
    const TwoModeState joint = cz_apply(TwoModeState::product(make_fock(0, kG), make_fock(0, kG)));
    double total = 0.0;
    for (unsigned n = 0; n <= 40; ++n) {
        total += project_fock(joint, Mode::Second, n).weight;
    }
    EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(ProjectFock, MatchesSpcProbability) {
    const std::vector<SqueezedParams> ancillas = {
        SqueezedParams{},
        solve_ancilla_method2(cubic_plan().roots[0], k_m2(5.0)),
        solve_ancilla_method2(cubic_plan().roots[2], k_m2(5.0)),
    };
    for (const auto &anc : ancillas) {
        for (const WaveFunction &psi : {make_fock(0, kG), make_fock(1, kG)}) {
            const TwoModeState joint = cz_apply(TwoModeState::product(psi, make_squeezed(anc, kG)));
            for (unsigned n = 0; n <= 4; ++n) {
                EXPECT_NEAR(project_fock(joint, Mode::Second, n).weight, spc_probability(psi, anc, n), 1e-6);
            }
        }
    }
}

TEST(OracleMethod1, VacuumAgreesWithClosedForm) {
    const SqueezedParams anc = solve_ancilla_method1(cplx(0.0, -2.154435), k_m1(5.0), 0.0);
    const WaveFunction vac = make_fock(0, kG);
    const HomodyneDensity pdf(vac, anc);
    for (double m : {-0.3, 0.0, 0.3}) {
        const Normalized orc = oracle_step_method1(vac, anc, m, kOracle);
        EXPECT_LT(deficit(orc.state, step_method1(vac, anc, m).state), 1e-5) << m;
        EXPECT_NEAR(orc.weight, pdf(m), 1e-5);
    }
}

TEST(OracleMethod1, DensityAtElevenOutcomes) {
    const SqueezedParams anc = solve_ancilla_method1(cubic_plan().roots[1], k_m1(5.0), 0.0);
    const WaveFunction psi = make_fock(1, kG);
    const HomodyneDensity pdf(psi, anc);
    for (int i = 0; i <= 10; ++i) {
        const double m = -1.0 + 0.2 * i;
        EXPECT_NEAR(oracle_step_method1(psi, anc, m, kOracle).weight, pdf(m), 1e-5) << m;
    }
}

TEST(OracleMethod1, FourierPrerotationIsAbsorbed) {
    // The closed form acts on psi itself; feeding it F-dagger psi instead
    // disagrees with the circuit for inputs that are not Fourier invariant.
    const SqueezedParams anc = solve_ancilla_method1(cplx(0.0, -2.154435), k_m1(5.0), 0.0);
    const WaveFunction psi = make_coherent(cplx(1.0, 0.0), kG);
    const Normalized orc = oracle_step_method1(psi, anc, 0.0, kOracle);
    EXPECT_LT(deficit(orc.state, step_method1(psi, anc, 0.0).state), 1e-5);
    const WaveFunction rotated = fourier(psi, FourierDirection::Inverse);
    EXPECT_GT(deficit(orc.state, step_method1(rotated, anc, 0.0).state), 1e-2);
}

TEST(OracleMethod1, PhotonAddedAncillaFitsMonomialForm) {
    const double k = k_m1(5.0);
    const SqueezedParams anc{cplx(0.3, 0.8), k};
    const double m = 0.2;
    const WaveFunction psi = make_coherent(cplx(0.4, -0.2), kG);
    const WaveFunction out = oracle_step_method1(psi, anc, m, kOracle, Ladder::Create).state;
    const EffectiveBlock block = EffectiveBlock::photon_subtracted(anc, m);

    // Linear least squares for out(q) ~ env(q) psi(q) (c1 q + c0) with the envelope fixed.
    cplx a11{}, a12{}, a22{}, b1{}, b2{};
    std::vector<cplx> basis(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double q = kG.node(i);
        const double env = std::exp(-(q - block.envelope_center) * (q - block.envelope_center) / block.envelope_width_sq);
        basis[i] = env * psi[i];
        const double w = std::norm(basis[i]);
        a11 += w * q * q;
        a12 += w * q;
        a22 += w;
        b1 += std::conj(basis[i]) * q * out[i];
        b2 += std::conj(basis[i]) * out[i];
    }
    const cplx det = a11 * a22 - a12 * a12;
    const cplx c1 = (b1 * a22 - a12 * b2) / det;
    const cplx c0 = (a11 * b2 - a12 * b1) / det;
    double res = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        res += std::norm(out[i] - basis[i] * (c1 * kG.node(i) + c0));
        norm += std::norm(out[i]);
    }
    EXPECT_LT(std::sqrt(res / norm), 1e-6);
    EXPECT_NEAR(std::abs(-c0 / c1 - lambda_method1_photon_added(anc, m)), 0.0, 1e-6);
}

TEST(OracleMethod1, ThreeStepChainAgrees) {
    const MonomialPlan plan = cubic_plan();
    for (double db : {1.0, 5.0}) {
        const Method1Config cfg = Method1Config::centered(plan, db, 0.1);
        for (unsigned n : {0u, 1u}) {
            WaveFunction state = make_fock(n, kG);
            const WaveFunction closed = chain_method1_exact(state, cfg);
            for (std::size_t j = 0; j < plan.roots.size(); ++j) {
                state = oracle_step_method1(state, cfg.ancilla(j), 0.0, kOracle).state;
            }
            EXPECT_LT(deficit(state, closed), 1e-5) << db << " dB, n=" << n;
        }
    }
}

TEST(OracleMethod2, FockOneAgreesWithClosedForm) {
    for (const cplx &root : cubic_plan().roots) {
        const SqueezedParams anc = solve_ancilla_method2(root, k_m2(5.0));
        const WaveFunction psi = make_fock(1, kG);
        const Normalized orc = oracle_step_method2(psi, anc, 1, kOracle);
        const Method2Step closed = step_method2(psi, anc);
        EXPECT_LT(deficit(orc.state, closed.state), 1e-5);
        EXPECT_NEAR(orc.weight, closed.p_single, 1e-6);
    }
}

TEST(OracleMethod2, CorrectionUsesTwiceTheCircuitLabel) {
    // Undo half of the applied q-dependent phase: the closed form no longer matches.
    const double k = k_m2(5.0);
    const SqueezedParams anc = solve_ancilla_method2(cplx(0.0, -2.154435), k);
    const WaveFunction psi = make_fock(1, kG);
    const Normalized orc = oracle_step_method2(psi, anc, 1, kOracle);
    const WaveFunction halved = displace(orc.state, Shift::Z, anc.q0() / (2.0 + k * k));
    const WaveFunction closed = step_method2(psi, anc).state;
    EXPECT_LT(deficit(orc.state, closed), 1e-5);
    EXPECT_GT(deficit(halved, closed), 1e-3);
}

TEST(OracleStep, DispatchesOnOutcomeKind) {
    const SqueezedParams anc{cplx(0.2, 0.3), k_m1(5.0)};
    const WaveFunction psi = make_fock(0, kG);
    const Normalized a = oracle_step(psi, Method::PhotonSubtracted, anc, 0.1, kOracle);
    EXPECT_LT(deficit(a.state, oracle_step_method1(psi, anc, 0.1, kOracle).state), 1e-14);
    EXPECT_THROW(oracle_step(psi, Method::PhotonSubtracted, anc, 1u, kOracle), Error);
    EXPECT_THROW(oracle_step(psi, Method::SinglePhotonCounter, anc, 0.1, kOracle), Error);
    EXPECT_THROW(oracle_step(psi, Method::SinglePhotonCounter, anc, 1u, kOracle, Ladder::Create), Error);
}

TEST(OracleGrid, Validation) {
    OracleGrid g;
    g.grid1 = Grid::make(-10.0, 15.0, 512);
    try {
        g.validate();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::AsymmetricGrid);
    }
    g.grid1 = Grid::make(-15.0, 15.0, 4096);
    EXPECT_THROW(g.validate(), Error);
    EXPECT_THROW(oracle_step_method1(make_fock(0, Grid::standard()), SqueezedParams{cplx(1.0, 0.0), 2.0}, 0.0, kOracle),
                 Error);
}

TEST(OracleConvergence, RefinedGridChangesLittle) {
    OracleGrid fine;
    fine.grid1 = kG.refined();
    fine.grid2 = fine.grid1;
    const SqueezedParams anc = solve_ancilla_method1(cubic_plan().roots[2], k_m1(5.0), 0.0);
    const double d_coarse = deficit(oracle_step_method1(make_fock(1, kG), anc, 0.1, kOracle).state,
                                    step_method1(make_fock(1, kG), anc, 0.1).state);
    const double d_fine = deficit(oracle_step_method1(make_fock(1, fine.grid1), anc, 0.1, fine).state,
                                  step_method1(make_fock(1, fine.grid1), anc, 0.1).state);
    EXPECT_LT(std::abs(d_fine - d_coarse), 1e-6);
    const Normalized coarse_w = oracle_step_method1(make_fock(1, kG), anc, 0.1, kOracle);
    const Normalized fine_w = oracle_step_method1(make_fock(1, fine.grid1), anc, 0.1, fine);
    EXPECT_NEAR(coarse_w.weight, fine_w.weight, 1e-6);
}
