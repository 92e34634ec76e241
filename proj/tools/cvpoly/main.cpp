#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "api.hpp"
#include "commands.hpp"

namespace {

using cli::Settings;
using Json = nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Defaults {
    std::vector<double> nu{0.1};
    std::vector<double> db{1.0, 5.0, 10.0, 20.0};
    std::vector<double> delta{0.1, 0.5};
};

Defaults defaults_for(const std::string &command) {
    Defaults d;
    if (command == "bare") {
        d.nu = {0.1, 0.2, 0.5};
    } else if (command == "method1-postselect" || command == "wigner") {
        d.db = {5.0};
    } else if (command == "method1-optimize") {
        d.db = {5.0};
        d.delta = {0.1};
    }
    return d;
}

cvp_grid parse_grid(const std::string &spec) {
    std::istringstream is(spec);
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
    char c1 = 0, c2 = 0;
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ',' || c2 != ',') {
        throw UsageError("--grid expects qmin,qmax,n");
    }
    return cvp_grid{lo, hi, n};
}

Json load_config(const std::string &path) {
    if (path.empty()) {
        return Json::object();
    }
    std::ifstream is(path);
    if (!is) {
        throw UsageError("cannot read config file " + path);
    }
    try {
        Json j = Json::parse(is);
        if (!j.is_object()) {
            throw UsageError("config file must hold a JSON object");
        }
        return j;
    } catch (const Json::exception &e) {
        throw UsageError(std::string("bad config file: ") + e.what());
    }
}

// A flag given on the command line wins, then the config file, then the default.
template <typename T>
void resolve(const CLI::App &app, const char *flag, const Json &config, const char *key, T &value,
             const T &fallback) {
    if (app.count(flag) > 0) {
        return;
    }
    if (config.contains(key)) {
        try {
            const Json &v = config.at(key);
            if constexpr (std::is_same_v<T, std::vector<double>>) {
                value = v.is_array() ? v.get<T>() : T{v.get<double>()};
            } else {
                value = v.get<T>();
            }
        } catch (const Json::exception &e) {
            throw UsageError(std::string("config key '") + key + "': " + e.what());
        }
        return;
    }
    value = fallback;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Measurement-based polynomial phase gates on single-mode optical states"};
    app.set_version_flag("--version", std::string(cvp_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::string out_dir;
    std::string config_path;
    std::string grid_spec;
    double tolerance = 1e-5;

    app.add_option("--nu", s.nu, "Cubic gate strength(s)")->delimiter(',');
    app.add_option("--db", s.db, "Ancilla squeezing level(s) in dB")->delimiter(',');
    app.add_option("--delta", s.delta, "Post-selection half-width(s)")->delimiter(',');
    app.add_option("--x", s.x, "Swept input coordinate(s): photon number or |alpha|^2")->delimiter(',');
    app.add_option("--grid", grid_spec, "Position grid as qmin,qmax,n");
    app.add_option("--nodes", s.nodes, "Gauss-Legendre nodes per outcome dimension");
    app.add_option("--jobs", s.jobs, "Worker threads for sweeps");
    app.add_option("--out", out_dir, "Output directory (default $CVPOLY_OUT or ./out)");
    app.add_option("--config", config_path, "JSON file with default parameters");
    app.add_option("--db-convention", s.db_convention, "Photon-counter dB sign: squeezed-q or anti-squeezed-q");
    app.add_option("--q0-range", s.q0_range, "State-preparation scan as lo,hi,count");
    app.add_option("--tolerance", tolerance, "Oracle-equivalence tolerance for verify");
    app.add_flag("--grid-refine", s.grid_refine, "Also check fidelities on a grid with twice the points");

    const std::map<std::string, int (*)(const Settings &)> commands{
        {"bare", cli::cmd_bare},
        {"method1", cli::cmd_method1},
        {"method1-postselect", cli::cmd_method1_postselect},
        {"method1-optimize", cli::cmd_method1_optimize},
        {"method2", cli::cmd_method2},
        {"wigner", cli::cmd_wigner},
        {"verify", cli::cmd_verify}};
    const std::map<std::string, std::string> help{
        {"bare", "Taylor-polynomial fidelities for Fock and coherent sweeps"},
        {"method1", "Photon-subtraction protocol at exact outcomes"},
        {"method1-postselect", "Photon-subtraction protocol with post-selection windows"},
        {"method1-optimize", "State-preparation tuning of the photon-subtraction protocol"},
        {"method2", "Photon-counter protocol fidelities and success probabilities"},
        {"wigner", "Wigner functions of the target, polynomial and protocol outputs"},
        {"verify", "Two-mode oracle and invariant checks"}};
    for (const auto &[name, fn] : commands) {
        app.add_subcommand(name, help.at(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Json config = load_config(config_path);
        const Defaults d = defaults_for(command);
        resolve(app, "--nu", config, "nu", s.nu, d.nu);
        resolve(app, "--db", config, "db", s.db, d.db);
        resolve(app, "--delta", config, "delta", s.delta, d.delta);
        resolve(app, "--x", config, "x", s.x, std::vector<double>{});
        const char *env_out = std::getenv("CVPOLY_OUT");
        resolve(app, "--out", config, "out", out_dir, std::string(env_out && *env_out ? env_out : "out"));
        resolve(app, "--grid", config, "grid", grid_spec, std::string("-20,20,4096"));
        resolve(app, "--nodes", config, "nodes", s.nodes, 8);
        resolve(app, "--jobs", config, "jobs", s.jobs, std::max(1u, std::thread::hardware_concurrency()));
        resolve(app, "--db-convention", config, "db_convention", s.db_convention, std::string("squeezed-q"));
        resolve(app, "--q0-range", config, "q0_range", s.q0_range, std::string("-8,8,161"));
        resolve(app, "--tolerance", config, "tolerance", tolerance, 1e-5);
        s.out = out_dir;
        s.grid_spec = grid_spec;
        s.grid = parse_grid(grid_spec);
        s.tolerance = tolerance;
        if (s.nu.empty() || s.db.empty() || s.delta.empty()) {
            throw UsageError("--nu, --db and --delta need at least one value");
        }
        (void)s.method2_axis();
        return commands.at(command)(s);
    } catch (const UsageError &e) {
        std::fprintf(stderr, "cvpoly %s: %s\n", command.c_str(), e.what());
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "cvpoly %s: %s\n", command.c_str(), e.what());
        return kExitUsage;
    } catch (const cli::ApiError &e) {
        std::fprintf(stderr, "cvpoly %s: %s\n", command.c_str(), e.what());
        if (cvp_status_is_numerical(e.status())) {
            return kExitNumerical;
        }
        return e.status() == CVP_INTERNAL ? kExitFailure : kExitUsage;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "cvpoly %s: %s\n", command.c_str(), e.what());
        return kExitFailure;
    }
}
