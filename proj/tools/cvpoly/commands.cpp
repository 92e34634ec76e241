#include "commands.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "api.hpp"

namespace cli {

namespace {

constexpr std::array<cvp_family, 2> kFamilies{CVP_FAMILY_FOCK, CVP_FAMILY_COHERENT};

const char *family_name(cvp_family f) {
    return f == CVP_FAMILY_FOCK ? "Fock" : "Coherent";
}

const char *family_file(cvp_family f) {
    return f == CVP_FAMILY_FOCK ? "fock" : "coherent";
}

std::vector<double> sweep_x(const Settings &s) {
    if (!s.x.empty()) {
        return s.x;
    }
    std::vector<double> xs;
    for (int i = 0; i <= 10; ++i) {
        xs.push_back(i);
    }
    return xs;
}

std::vector<cvp_sweep_point> points(std::size_t n) {
    return std::vector<cvp_sweep_point>(n);
}

}  // namespace

int cmd_bare(const Settings &s) {
    const std::vector<double> xs = sweep_x(s);
    for (cvp_family f : kFamilies) {
        CsvTable t({"family", "x", "nu", "fidelity"});
        for (double nu : s.nu) {
            auto pts = points(xs.size());
            check(cvp_sweep_bare(f, xs.data(), xs.size(), nu, &s.grid, s.jobs, pts.data()));
            for (const auto &p : pts) {
                t.add({family_name(f), format_number(p.x), format_number(nu), format_number(p.fidelity)});
            }
        }
        t.write(s, "bare", std::string("bare_") + family_file(f));
    }

    CsvTable profile({"nu", "q", "target_re", "target_im", "poly_re", "poly_im"});
    for (double nu : s.nu) {
        if (nu == 0.0) {
            continue;
        }
        const Plan plan = cubic_plan(nu);
        for (int i = 0; i <= 200; ++i) {
            const double q = -5.0 + 0.05 * i;
            double v[4];
            check(cvp_gate_profile(plan.get(), nu, q, v));
            profile.add({format_number(nu), format_number(q), format_number(v[0]), format_number(v[1]),
                         format_number(v[2]), format_number(v[3])});
        }
    }
    profile.write(s, "bare", "gate_profile");
    return 0;
}

int cmd_method1(const Settings &s) {
    const double nu = s.single_nu();
    const std::vector<double> xs = sweep_x(s);
    for (cvp_family f : kFamilies) {
        CsvTable t({"family", "x", "db", "fidelity", "success_prob"});
        for (double db : s.db) {
            auto pts = points(xs.size());
            check(cvp_sweep_method1_exact(f, xs.data(), xs.size(), nu, db, &s.grid, s.jobs, pts.data()));
            for (const auto &p : pts) {
                t.add({family_name(f), format_number(p.x), format_number(db), format_number(p.fidelity),
                       format_number(p.success_prob)});
            }
        }
        t.write(s, "method1", std::string("method1_") + family_file(f),
                {{"outcomes", "exact: every homodyne outcome at its nominal value 0"}});
    }
    return 0;
}

int cmd_method1_postselect(const Settings &s) {
    const double nu = s.single_nu();
    const std::vector<double> coherent_x = s.x.empty() ? std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0} : s.x;
    const std::vector<double> fock_x{1.0};
    CsvTable t({"family", "x", "db", "delta", "fidelity", "success_prob"});
    for (cvp_family f : kFamilies) {
        const auto &xs = f == CVP_FAMILY_FOCK ? fock_x : coherent_x;
        for (double db : s.db) {
            for (double delta : s.delta) {
                auto pts = points(xs.size());
                check(cvp_sweep_method1_postselect(f, xs.data(), xs.size(), nu, db, delta, s.nodes, &s.grid, s.jobs,
                                                   pts.data()));
                for (const auto &p : pts) {
                    t.add({family_name(f), format_number(p.x), format_number(db), format_number(delta),
                           format_number(p.fidelity), format_number(p.success_prob)});
                }
            }
        }
    }
    t.write(s, "method1-postselect", "method1_postselect");
    return 0;
}

namespace {

struct ScanSpec {
    double lo;
    double hi;
    std::size_t count;
};

ScanSpec parse_scan(const std::string &spec) {
    std::istringstream is(spec);
    ScanSpec r{};
    char c1 = 0;
    char c2 = 0;
    if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ',' || c2 != ',') {
        throw std::invalid_argument("--q0-range expects lo,hi,count");
    }
    return r;
}

}  // namespace

int cmd_method1_optimize(const Settings &s) {
    const double nu = s.single_nu();
    const double db = s.db.front();
    const double delta = s.delta.front();
    const ScanSpec scan = parse_scan(s.q0_range);
    const Plan plan = cubic_plan(nu);
    const std::size_t l = cvp_plan_degree(plan.get());

    const State input = make_state([&](cvp_state **o) { return cvp_state_momentum_squeezed(db, &s.grid, o); });
    const State target = make_state([&](cvp_state **o) { return cvp_apply_cubic(input.get(), nu, o); });

    std::vector<double> optimized(l);
    check(cvp_method1_optimize(plan.get(), input.get(), db, delta, s.nodes, scan.lo, scan.hi, scan.count,
                               optimized.data(), l));
    const std::vector<double> centered(l, 0.0);

    std::vector<std::string> header{"config"};
    for (std::size_t j = 0; j < l; ++j) {
        header.push_back("m" + std::to_string(j + 1));
    }
    header.insert(header.end(), {"success_prob", "fidelity", "exact_fidelity"});
    CsvTable t(header);
    for (const auto &[name, outcomes] : {std::pair{"centered", centered}, std::pair{"optimized", optimized}}) {
        double fid = 0.0;
        double prob = 0.0;
        check(cvp_method1_postselect(plan.get(), input.get(), db, delta, s.nodes, outcomes.data(), target.get(), &fid,
                                     &prob));
        const State exact =
            make_state([&](cvp_state **o) { return cvp_method1_exact(plan.get(), input.get(), db, outcomes.data(), o); });
        double exact_fid = 0.0;
        check(cvp_fidelity(exact.get(), target.get(), &exact_fid));
        std::vector<std::string> row{name};
        for (double m : outcomes) {
            row.push_back(format_number(m));
        }
        row.insert(row.end(), {format_number(prob), format_number(fid), format_number(exact_fid)});
        t.add(std::move(row));
    }
    t.write(s, "method1-optimize", "method1_optimize",
            {{"input", "momentum-squeezed vacuum at the ancilla squeezing"},
             {"q0_scan", {{"lo", scan.lo}, {"hi", scan.hi}, {"count", scan.count}}}});
    return 0;
}

int cmd_method2(const Settings &s) {
    const double nu = s.single_nu();
    const std::vector<double> xs = sweep_x(s);
    const cvp_axis axis = s.method2_axis();
    for (cvp_family f : kFamilies) {
        CsvTable t({"family", "x", "db", "fidelity", "success_prob"});
        for (double db : s.db) {
            auto pts = points(xs.size());
            check(cvp_sweep_method2(f, xs.data(), xs.size(), nu, db, axis, &s.grid, s.jobs, pts.data()));
            for (const auto &p : pts) {
                t.add({family_name(f), format_number(p.x), format_number(db), format_number(p.fidelity),
                       format_number(p.success_prob)});
            }
        }
        t.write(s, "method2", std::string("method2_") + family_file(f));
    }
    return 0;
}

int cmd_wigner(const Settings &s) {
    const double nu = s.single_nu();
    const double db = s.db.front();
    constexpr double q_lo = -8.0, q_hi = 8.0, p_lo = -10.0, p_hi = 10.0;
    constexpr std::size_t q_count = 161, p_count = 201;

    const Plan plan = cubic_plan(nu);
    const State input = make_state([&](cvp_state **o) { return cvp_state_momentum_squeezed(db, &s.grid, o); });
    const State target = make_state([&](cvp_state **o) { return cvp_apply_cubic(input.get(), nu, o); });
    const State poly = make_state([&](cvp_state **o) { return cvp_apply_plan(plan.get(), input.get(), o); });
    const State m1 =
        make_state([&](cvp_state **o) { return cvp_method1_exact(plan.get(), input.get(), db, nullptr, o); });
    double m2_prob = 0.0;
    const State m2 = make_state([&](cvp_state **o) {
        return cvp_method2_chain(plan.get(), input.get(), db, s.method2_axis(), o, &m2_prob, nullptr, 0);
    });

    const std::array<std::pair<const char *, const cvp_state *>, 4> panels{
        {{"target", target.get()}, {"polynomial", poly.get()}, {"method1", m1.get()}, {"method2", m2.get()}}};
    nlohmann::json summary{{"nu", nu},
                           {"db", db},
                           {"input", "momentum-squeezed vacuum"},
                           {"negative_threshold", "W < -1e-3 * max W, 4-connected"},
                           {"panels", nlohmann::json::object()}};
    std::vector<double> values(q_count * p_count);
    std::vector<double> q_axis(q_count);
    for (const auto &[name, state] : panels) {
        cvp_wigner_summary sum{};
        check(cvp_wigner(state, q_lo, q_hi, q_count, p_lo, p_hi, p_count, values.data(), q_axis.data(), &sum));
        double fid = 0.0;
        check(cvp_fidelity(state, target.get(), &fid));
        CsvTable t({"q", "p", "W"});
        for (std::size_t iq = 0; iq < q_count; ++iq) {
            for (std::size_t ip = 0; ip < p_count; ++ip) {
                const double p = p_lo + (p_hi - p_lo) * static_cast<double>(ip) / (p_count - 1);
                t.add({format_number(q_axis[iq]), format_number(p), format_number(values[iq * p_count + ip])});
            }
        }
        t.write(s, "wigner", std::string("wigner_") + name);
        summary["panels"][name] = {{"min_value", sum.min_value},
                                   {"max_value", sum.max_value},
                                   {"integral", sum.integral},
                                   {"negative_regions", sum.negative_regions},
                                   {"fidelity_vs_target", fid}};
    }
    summary["method1_fidelity"] = summary["panels"]["method1"]["fidelity_vs_target"];
    summary["method2_fidelity"] = summary["panels"]["method2"]["fidelity_vs_target"];
    summary["method2_success_prob"] = m2_prob;
    write_json(s, "wigner_summary.json", summary);
    write_manifest(s, "wigner", "wigner_summary.json", nlohmann::json::object());
    return 0;
}

}  // namespace cli
