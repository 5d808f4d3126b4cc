// fracsync command-line tool: simulate fractional-order systems, run
// drive/response coupling scenarios, audit closed-loop stability, and run the
// trajectory-keyed stream cipher.
//
// Exit codes: 0 success (divergence is reported in-band, not an error),
// 1 usage or configuration error, 2 internal numeric failure.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsync/analysis.hpp"
#include "fracsync/cipher.hpp"
#include "fracsync/coupling.hpp"
#include "fracsync/csv_io.hpp"
#include "fracsync/errors.hpp"
#include "fracsync/solver.hpp"
#include "fracsync/systems.hpp"
#include "fracsync/trajectory.hpp"

namespace {

using namespace fracsync;

// ---------------------------------------------------------------------------
// small formatting / parsing helpers
// ---------------------------------------------------------------------------

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_g17(values[i]);
    }
    return out;
}

std::string join_params(const std::map<std::string, double>& params) {
    std::string out;
    for (const auto& [key, value] : params) {
        if (!out.empty()) out += ',';
        out += key + '=' + format_g17(value);
    }
    return out;
}

double parse_strict_double(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(what + ": cannot parse number \"" + text + "\"");
    return v;
}

std::map<std::string, double> parse_overrides(const std::vector<std::string>& kvs,
                                              const std::string& flag) {
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError(flag + " expects key=value, got \"" + kv + "\"");
        out[kv.substr(0, eq)] = parse_strict_double(kv.substr(eq + 1), flag);
    }
    return out;
}

ExecPolicy exec_from_name(const std::string& name) {
    if (name == "auto") return ExecPolicy::Auto;
    if (name == "serial") return ExecPolicy::Serial;
    if (name == "parallel") return ExecPolicy::Parallel;
    if (name == "reference") return ExecPolicy::Reference;
    throw ConfigError("unknown exec policy \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// shared solver options
// ---------------------------------------------------------------------------

struct SolverArgs {
    double h = 0.005;
    double t_end = 50.0;
    int sweeps = 1;
    double div_threshold = 1e12;
    std::size_t window = 0;
    std::string exec = "auto";
};

void add_solver_options(CLI::App* cmd, SolverArgs& args) {
    cmd->add_option("--h", args.h, "Step size (default 0.005)");
    cmd->add_option("--t-end", args.t_end, "Simulation horizon (default 50)");
    cmd->add_option("--sweeps", args.sweeps, "Corrector sweeps per step (default 1)");
    cmd->add_option("--div-threshold", args.div_threshold,
                    "Max-norm divergence threshold (default 1e12)");
    cmd->add_option("--window", args.window,
                    "Memory window in steps, 0 = full history (default 0)");
    cmd->add_option("--exec", args.exec, "Kernel execution policy (default auto)")
        ->check(CLI::IsMember({"auto", "serial", "parallel", "reference"}));
}

SolverConfig to_config(const SolverArgs& args) {
    if (!(args.h > 0.0)) throw ConfigError("--h must be positive");
    if (!(args.t_end > 0.0)) throw ConfigError("--t-end must be positive");
    const double steps = std::llround(args.t_end / args.h);
    if (steps < 1.0) throw ConfigError("--t-end must cover at least one step of --h");
    SolverConfig cfg;
    cfg.step_h = args.h;
    cfg.n_steps = static_cast<std::size_t>(steps);
    cfg.corrector_sweeps = args.sweeps;
    cfg.divergence_threshold = args.div_threshold;
    cfg.memory_window = args.window;
    cfg.exec = exec_from_name(args.exec);
    return cfg;
}

void echo_solver_args(std::vector<std::string>& meta, const SolverArgs& args,
                      const SolverConfig& cfg) {
    meta.push_back("h: " + format_g17(args.h));
    meta.push_back("t-end: " + format_g17(args.t_end));
    meta.push_back("steps: " + std::to_string(cfg.n_steps));
    meta.push_back("sweeps: " + std::to_string(args.sweeps));
    meta.push_back("div-threshold: " + format_g17(args.div_threshold));
    meta.push_back("window: " + std::to_string(args.window));
    meta.push_back("exec: " + args.exec);
}

std::string status_line(const Trajectory& traj) {
    if (traj.completed()) return "status: completed";
    return "status: diverged step=" + std::to_string(traj.diverged_at) +
           " t=" + format_g17(static_cast<double>(traj.diverged_at) * traj.step_h);
}

// Writes `text` to the file named by `out_path`, or to stdout for "-".
void emit(const std::string& out_path, const std::string& text) {
    if (out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file \"" + out_path + "\"");
    file << text;
    if (!file) throw ConfigError("failed writing output file \"" + out_path + "\"");
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string system;
    std::vector<double> alpha;
    std::vector<double> x0;
    std::vector<std::string> params;
    SolverArgs solver;
    std::string out = "-";
};

int run_simulate(const SimulateArgs& args) {
    const auto overrides = parse_overrides(args.params, "--param");
    const SystemDef def = registry_lookup(args.system, overrides);
    const std::vector<double> orders = args.alpha.empty() ? def.default_orders : args.alpha;
    if (args.x0.size() != def.dimension)
        throw ConfigError("--x0 needs " + std::to_string(def.dimension) + " values, got " +
                          std::to_string(args.x0.size()));
    const SolverConfig cfg = to_config(args.solver);

    const Trajectory traj = abm_solve(def.field, orders, args.x0, cfg);

    CsvDoc doc;
    doc.meta_before.push_back("command: simulate");
    doc.meta_before.push_back("system: " + def.name);
    doc.meta_before.push_back("params: " + join_params(def.params));
    doc.meta_before.push_back("alpha: " + join_doubles(orders));
    doc.meta_before.push_back("x0: " + join_doubles(args.x0));
    echo_solver_args(doc.meta_before, args.solver, cfg);
    doc.columns = {"t", "x", "y", "z"};
    doc.rows.reserve(traj.rows());
    for (std::size_t r = 0; r < traj.rows(); ++r) {
        std::vector<double> row{traj.times[r]};
        const auto state = traj.row(r);
        row.insert(row.end(), state.begin(), state.end());
        doc.rows.push_back(std::move(row));
    }
    doc.meta_after.push_back(status_line(traj));
    emit(args.out, write_csv_string(doc));
    return 0;
}

// ---------------------------------------------------------------------------
// couple
// ---------------------------------------------------------------------------

struct CoupleArgs {
    std::string scenario;
    std::string gains = "paper";
    std::vector<double> k;
    std::vector<double> alpha = {0.9, 0.5, 0.6};
    std::vector<double> drive_x0 = {0.01, 0.01, 0.01};
    std::vector<double> response_x0 = {0.5, 0.5, 0.5};
    std::vector<std::string> t_params;
    std::vector<std::string> rossler_params;
    double tolerance = 1e-3;
    double tail_fraction = 0.25;
    SolverArgs solver;
    std::string out = "-";
};

GainVariant gains_from_args(const std::string& name, const std::vector<double>& k) {
    if (name == "paper") return GainVariant::paper();
    if (name == "corrected") return GainVariant::corrected();
    if (name == "stabilized") {
        if (k.size() != 3)
            throw ConfigError("--gains stabilized requires --k with 3 values");
        return GainVariant::stabilized({k[0], k[1], k[2]});
    }
    throw ConfigError("unknown gains \"" + name + "\"");
}

int run_couple(const CoupleArgs& args) {
    Mode mode{};
    const Scenario scenario = scenario_from_name(args.scenario, mode);
    const GainVariant gains = gains_from_args(args.gains, args.k);
    const CouplingScheme scheme =
        make_scheme(scenario, mode, gains, args.alpha,
                    parse_overrides(args.t_params, "--t-param"),
                    parse_overrides(args.rossler_params, "--rossler-param"));
    if (args.drive_x0.size() != 3 || args.response_x0.size() != 3)
        throw ConfigError("--drive-x0 and --response-x0 need 3 values each");
    const SolverConfig cfg = to_config(args.solver);

    const CoupledRun run = simulate_coupled(
        scheme, args.drive_x0, args.response_x0, cfg);
    const ConvergenceClassification cls = classify_error(
        run.error, args.tolerance, args.tail_fraction, cfg.divergence_threshold);

    CsvDoc doc;
    doc.meta_before.push_back("command: couple");
    doc.meta_before.push_back("scenario: " + scenario_name(scenario, mode));
    doc.meta_before.push_back("gains: " + args.gains);
    if (gains.kind == GainKind::Stabilized)
        doc.meta_before.push_back("k: " + join_doubles(args.k));
    doc.meta_before.push_back("t-params: " + join_params(scheme.t_params));
    if (scenario == Scenario::RT)
        doc.meta_before.push_back("rossler-params: " + join_params(scheme.rossler_params));
    doc.meta_before.push_back("alpha: " + join_doubles(scheme.orders));
    doc.meta_before.push_back("drive-x0: " + join_doubles(args.drive_x0));
    doc.meta_before.push_back("response-x0: " + join_doubles(args.response_x0));
    echo_solver_args(doc.meta_before, args.solver, cfg);
    doc.meta_before.push_back("tolerance: " + format_g17(args.tolerance));
    doc.meta_before.push_back("tail-fraction: " + format_g17(args.tail_fraction));

    doc.columns = {"t", "xd", "yd", "zd", "xr", "yr", "zr", "e1", "e2", "e3"};
    doc.rows.reserve(run.error.rows());
    for (std::size_t r = 0; r < run.error.rows(); ++r) {
        std::vector<double> row{run.error.times[r]};
        for (const Trajectory* tr : {&run.drive, &run.response, &run.error}) {
            const auto state = tr->row(r);
            row.insert(row.end(), state.begin(), state.end());
        }
        doc.rows.push_back(std::move(row));
    }

    const ClosedLoopDiagonal closed = closed_loop_of(scheme);
    doc.meta_after.push_back(
        "closed-loop-lambda: " +
        join_doubles({closed.lambda[0], closed.lambda[1], closed.lambda[2]}));
    doc.meta_after.push_back("verdict: " + verdict_name(cls.verdict));
    doc.meta_after.push_back("tail-sup: " + format_g17(cls.tail_sup));
    doc.meta_after.push_back(status_line(run.error));
    emit(args.out, write_csv_string(doc));
    return 0;
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

struct StabilityArgs {
    std::vector<double> lambda_re;
    std::vector<double> lambda_im;
    std::vector<double> alpha;
    std::string scenario;
    std::string gains = "paper";
    std::vector<double> k;
    std::string out = "-";
};

int run_stability(const StabilityArgs& args) {
    std::ostringstream os;
    StabilityReport report;
    if (!args.scenario.empty()) {
        if (!args.lambda_re.empty())
            throw ConfigError("--scenario and --lambda are mutually exclusive");
        Mode mode{};
        const Scenario scenario = scenario_from_name(args.scenario, mode);
        const GainVariant gains = gains_from_args(args.gains, args.k);
        const CouplingScheme scheme = make_scheme(
            scenario, mode, gains,
            args.alpha.empty() ? std::vector<double>{0.9, 0.5, 0.6} : args.alpha);
        report = proposition_audit(scheme);
        os << "# command: stability\n";
        os << "# scenario: " << scenario_name(scenario, mode) << '\n';
        os << "# gains: " << args.gains << '\n';
        if (gains.kind == GainKind::Stabilized) os << "# k: " << join_doubles(args.k) << '\n';
        os << "# alpha: " << join_doubles(scheme.orders) << '\n';
    } else {
        if (args.lambda_re.empty())
            throw ConfigError("stability needs either --lambda or --scenario");
        if (!args.lambda_im.empty() && args.lambda_im.size() != args.lambda_re.size())
            throw ConfigError("--lambda-im must match --lambda in length");
        std::vector<std::complex<double>> lambdas(args.lambda_re.size());
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            lambdas[i] = {args.lambda_re[i],
                          args.lambda_im.empty() ? 0.0 : args.lambda_im[i]};
        report = stability_report(lambdas, args.alpha);
        os << "# command: stability\n";
        os << "# lambda: " << join_doubles(args.lambda_re) << '\n';
        if (!args.lambda_im.empty()) os << "# lambda-im: " << join_doubles(args.lambda_im) << '\n';
        os << "# alpha: " << join_doubles(args.alpha) << '\n';
    }

    os << "component,lambda_re,lambda_im,alpha,verdict\n";
    for (std::size_t i = 0; i < report.components.size(); ++i) {
        const auto& c = report.components[i];
        os << (i + 1) << ',' << format_g17(c.lambda.real()) << ','
           << format_g17(c.lambda.imag()) << ',' << format_g17(c.alpha) << ','
           << verdict_name(c.verdict) << '\n';
    }
    os << "# overall: " << verdict_name(report.overall) << '\n';
    emit(args.out, os.str());
    return 0;
}

// ---------------------------------------------------------------------------
// cipher
// ---------------------------------------------------------------------------

struct CipherArgs {
    std::string codec = "paper36";
    std::string keys_file;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string keystream_from;
    double scale = 1e6;
    std::string message;
    std::vector<int> codes;
};

std::vector<std::uint64_t> read_key_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open key file \"" + path + "\"");
    std::vector<std::uint64_t> keys;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const char* begin = line.c_str();
        char* end = nullptr;
        const unsigned long long v = std::strtoull(begin, &end, 10);
        if (end == begin || *end != '\0' || line[0] == '-')
            throw ConfigError("key file \"" + path + "\" line " + std::to_string(line_no) +
                              ": expected one non-negative integer, got \"" + line + "\"");
        keys.push_back(v);
    }
    return keys;
}

// --keystream-from <csv,column,t0-index>: keys derived from a trajectory CSV.
KeySource keystream_source(const std::string& spec, double scale) {
    const std::size_t last = spec.rfind(',');
    const std::size_t prev = last == std::string::npos ? std::string::npos
                                                       : spec.rfind(',', last - 1);
    if (prev == std::string::npos || prev == 0)
        throw ConfigError("--keystream-from expects <csv,column,t0-index>, got \"" + spec +
                          "\"");
    const std::string path = spec.substr(0, prev);
    const std::string column = spec.substr(prev + 1, last - prev - 1);
    const std::string t0_text = spec.substr(last + 1);
    const char* begin = t0_text.c_str();
    char* end = nullptr;
    const unsigned long long t0 = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || t0_text[0] == '-')
        throw ConfigError("--keystream-from t0-index must be a non-negative integer, got \"" +
                          t0_text + "\"");

    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open trajectory CSV \"" + path + "\"");
    const CsvDoc doc = read_csv(file);
    const std::size_t col = column_index(doc, column);
    std::vector<double> series(doc.rows.size());
    for (std::size_t r = 0; r < doc.rows.size(); ++r) series[r] = doc.rows[r][col];
    return KeySource::trajectory(std::move(series), static_cast<std::size_t>(t0), scale);
}

KeySource key_source_from_args(const CipherArgs& args) {
    if (!args.keys_file.empty()) return KeySource::explicit_keys(read_key_file(args.keys_file));
    if (args.seed_set) return KeySource::seeded(args.seed);
    return keystream_source(args.keystream_from, args.scale);
}

int run_cipher_encrypt(const CipherArgs& args) {
    const CipherSession session{Codec::from_name(args.codec), key_source_from_args(args)};
    const std::vector<int> codes = encrypt(session, args.message);
    std::string out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(codes[i]);
    }
    std::cout << out << '\n';
    return 0;
}

int run_cipher_decrypt(const CipherArgs& args) {
    const CipherSession session{Codec::from_name(args.codec), key_source_from_args(args)};
    std::cout << decrypt(session, args.codes) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fracsync: fractional-order chaotic systems — simulation, "
        "synchronization control, stability audit, and stream cipher"};
    app.require_subcommand(1);
    // --h is the step-size option, so help must not claim the short -h form.
    const auto long_help_only = [](CLI::App* cmd) {
        cmd->set_help_flag("--help", "Print this help message and exit");
    };
    long_help_only(&app);

    SimulateArgs sim;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Integrate a named system and write a t,x,y,z CSV");
    long_help_only(sim_cmd);
    sim_cmd->add_option("--system", sim.system, "System name: t | rossler")->required();
    sim_cmd->add_option("--alpha", sim.alpha, "Fractional orders (default: system preset)")
        ->delimiter(',');
    sim_cmd->add_option("--x0", sim.x0, "Initial state")->delimiter(',')->required();
    sim_cmd->add_option("--param", sim.params, "Parameter override key=value (repeatable)");
    add_solver_options(sim_cmd, sim.solver);
    sim_cmd->add_option("--out", sim.out, "Output path, - for stdout (default -)");

    CoupleArgs cpl;
    CLI::App* cpl_cmd = app.add_subcommand(
        "couple", "Run a drive/response scenario and write drive, response, error columns");
    long_help_only(cpl_cmd);
    cpl_cmd->add_option("--scenario", cpl.scenario, "tt-sync | tt-anti | rt-sync | rt-anti")
        ->required()
        ->check(CLI::IsMember({"tt-sync", "tt-anti", "rt-sync", "rt-anti"}));
    cpl_cmd->add_option("--gains", cpl.gains, "paper | corrected | stabilized (default paper)")
        ->check(CLI::IsMember({"paper", "corrected", "stabilized"}));
    cpl_cmd->add_option("--k", cpl.k, "Stabilized feedback gains k1,k2,k3")->delimiter(',');
    cpl_cmd->add_option("--alpha", cpl.alpha, "Fractional orders (default 0.9,0.5,0.6)")
        ->delimiter(',');
    cpl_cmd->add_option("--drive-x0", cpl.drive_x0, "Drive ICs (default 0.01,0.01,0.01)")
        ->delimiter(',');
    cpl_cmd->add_option("--response-x0", cpl.response_x0, "Response ICs (default 0.5,0.5,0.5)")
        ->delimiter(',');
    cpl_cmd->add_option("--t-param", cpl.t_params, "T-system override key=value (repeatable)");
    cpl_cmd->add_option("--rossler-param", cpl.rossler_params,
                        "Rossler override key=value (repeatable)");
    cpl_cmd->add_option("--tolerance", cpl.tolerance,
                        "Tail tolerance for the convergence verdict (default 1e-3)");
    cpl_cmd->add_option("--tail-fraction", cpl.tail_fraction,
                        "Fraction of rows classified as tail (default 0.25)");
    add_solver_options(cpl_cmd, cpl.solver);
    cpl_cmd->add_option("--out", cpl.out, "Output path, - for stdout (default -)");

    StabilityArgs stab;
    CLI::App* stab_cmd = app.add_subcommand(
        "stability", "Matignon verdicts for eigenvalue/order lists or a scenario's closed loop");
    long_help_only(stab_cmd);
    stab_cmd->add_option("--lambda", stab.lambda_re, "Eigenvalue real parts")->delimiter(',');
    stab_cmd->add_option("--lambda-im", stab.lambda_im, "Eigenvalue imaginary parts")
        ->delimiter(',');
    stab_cmd->add_option("--alpha", stab.alpha, "Fractional orders")->delimiter(',');
    stab_cmd->add_option("--scenario", stab.scenario,
                         "Audit a coupling scenario's claimed closed loop");
    stab_cmd->add_option("--gains", stab.gains, "paper | corrected | stabilized (default paper)")
        ->check(CLI::IsMember({"paper", "corrected", "stabilized"}));
    stab_cmd->add_option("--k", stab.k, "Stabilized feedback gains k1,k2,k3")->delimiter(',');
    stab_cmd->add_option("--out", stab.out, "Output path, - for stdout (default -)");

    CipherArgs ciph;
    CLI::App* ciph_cmd = app.add_subcommand("cipher", "Modular stream cipher over symbol codes");
    long_help_only(ciph_cmd);
    ciph_cmd->require_subcommand(1);
    CLI::App* enc_cmd = ciph_cmd->add_subcommand("encrypt", "Print comma-separated ciphertext codes");
    CLI::App* dec_cmd = ciph_cmd->add_subcommand("decrypt", "Print recovered plaintext");
    for (CLI::App* sub : {enc_cmd, dec_cmd}) {
        long_help_only(sub);
        sub->add_option("--codec", ciph.codec, "paper36 | base36 | ascii128 (default paper36)")
            ->check(CLI::IsMember({"paper36", "base36", "ascii128"}));
        CLI::Option_group* source = sub->add_option_group("key source");
        source->add_option("--keys-file", ciph.keys_file, "File with one integer key per line");
        source->add_option("--seed", ciph.seed, "64-bit seed for generated keys")
            ->trigger_on_parse()
            ->each([&ciph](const std::string&) { ciph.seed_set = true; });
        source->add_option("--keystream-from", ciph.keystream_from,
                           "Trajectory keys: <csv,column,t0-index>");
        source->require_option(1);
        sub->add_option("--scale", ciph.scale,
                        "Trajectory key quantization scale (default 1e6)");
    }
    enc_cmd->add_option("--message", ciph.message, "Plaintext to encrypt")->required();
    dec_cmd->add_option("--codes", ciph.codes, "Ciphertext codes to decrypt")
        ->delimiter(',')
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sim_cmd) return run_simulate(sim);
        if (*cpl_cmd) return run_couple(cpl);
        if (*stab_cmd) return run_stability(stab);
        if (*enc_cmd) return run_cipher_encrypt(ciph);
        if (*dec_cmd) return run_cipher_decrypt(ciph);
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {  // Config/Domain/Codec errors
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
