#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "format.hpp"
#include "json.hpp"
#include "so3mes/dynamics.hpp"
#include "so3mes/error.hpp"
#include "so3mes/optics.hpp"
#include "so3mes/trajectory.hpp"
#include "verify.hpp"

#ifndef SO3MES_VERSION
#define SO3MES_VERSION "0.0.0"
#endif

namespace so3mes::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Bad flag values found after CLI11 parsing; mapped to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldFlags {
    double theta{0.0};
    std::optional<double> b;
    std::optional<double> ratio;
    double omega{1.0};
    double hbar{1.0};

    void attach(CLI::App& cmd) {
        cmd.add_option("--theta", theta, "field tilt from the z axis [rad]")->required();
        auto* b_opt = cmd.add_option("--b", b, "field strength (energy units)");
        auto* r_opt = cmd.add_option("--ratio", ratio, "target omega0/omega; solves for b");
        b_opt->excludes(r_opt);
        cmd.add_option("--omega", omega, "field rotation frequency")->capture_default_str();
        cmd.add_option("--hbar", hbar, "reduced Planck constant")->capture_default_str();
    }

    FieldConfig resolve() const {
        if (!b && !ratio) throw UsageError("one of --b or --ratio is required");
        FieldConfig cfg{0.0, theta, omega, hbar};
        cfg.b = b ? *b : solve_field_for_ratio(theta, omega, hbar, *ratio);
        cfg.validate();
        return cfg;
    }

    ordered_json to_json(const FieldConfig& cfg) const {
        ordered_json j;
        j["theta"] = theta;
        j["b"] = cfg.b;
        j["ratio"] = ratio ? ordered_json(*ratio) : ordered_json(nullptr);
        j["omega"] = omega;
        j["hbar"] = hbar;
        return j;
    }
};

double parse_time(const std::string& token, double omega, const char* flag) {
    const auto t = parse_time_token(token, omega);
    if (!t) throw UsageError(std::string("cannot parse ") + flag + " value '" + token + "'");
    return *t;
}

std::string closure_label(ClosurePhase p) {
    switch (p) {
        case ClosurePhase::Plus: return "+1";
        case ClosurePhase::Minus: return "-1";
        case ClosurePhase::Open: return "open";
    }
    return "open";
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << bytes;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

ordered_json manifest_base(const std::string& command) {
    ordered_json m;
    m["command"] = command;
    m["version"] = SO3MES_VERSION;
    return m;
}

// ---------------------------------------------------------------- trace

struct TraceFlags {
    FieldFlags field;
    std::string mode{"dual"};
    std::string t_max{"pi/omega"};
    std::size_t steps{kDefaultSteps};
    std::string out_path;
    std::string format{"csv"};
};

struct TraceSummary {
    std::size_t breaks{0};
    ClosurePhase phase{ClosurePhase::Open};
    std::optional<bool> parity_ok;
};

std::string trace_csv(const Trajectory& traj, const TraceSummary& summary) {
    std::ostringstream os;
    os << "t,alpha_re,alpha_im,beta_re,beta_im,kx,ky,kz,a,sheet,break_flag\n";
    for (const auto& s : traj.samples) {
        os << format_number(s.t) << ',' << format_number(s.mes.alpha.real()) << ','
           << format_number(s.mes.alpha.imag()) << ',' << format_number(s.mes.beta.real()) << ','
           << format_number(s.mes.beta.imag()) << ',' << format_number(s.point.axis.x) << ','
           << format_number(s.point.axis.y) << ',' << format_number(s.point.axis.z) << ','
           << format_number(s.point.angle) << ',' << s.point.sheet << ',' << (s.after_break ? 1 : 0) << '\n';
    }
    os << "# breaks=" << summary.breaks << '\n';
    os << "# closure_phase=" << closure_label(summary.phase) << '\n';
    os << "# parity_ok=" << (summary.parity_ok ? (*summary.parity_ok ? "true" : "false") : "n/a") << '\n';
    return os.str();
}

ordered_json vec_json(const Vec3& v) {
    return ordered_json::array({round_to_printed(v.x), round_to_printed(v.y), round_to_printed(v.z)});
}

ordered_json trace_payload(const Trajectory& traj, const TraceSummary& summary) {
    ordered_json samples = ordered_json::array();
    for (const auto& s : traj.samples) {
        ordered_json row;
        row["t"] = round_to_printed(s.t);
        row["alpha_re"] = round_to_printed(s.mes.alpha.real());
        row["alpha_im"] = round_to_printed(s.mes.alpha.imag());
        row["beta_re"] = round_to_printed(s.mes.beta.real());
        row["beta_im"] = round_to_printed(s.mes.beta.imag());
        row["kx"] = round_to_printed(s.point.axis.x);
        row["ky"] = round_to_printed(s.point.axis.y);
        row["kz"] = round_to_printed(s.point.axis.z);
        row["a"] = round_to_printed(s.point.angle);
        row["sheet"] = s.point.sheet;
        row["break_flag"] = s.after_break ? 1 : 0;
        samples.push_back(std::move(row));
    }
    ordered_json events = ordered_json::array();
    for (const auto& ev : traj.breaks) {
        events.push_back({{"t_lo", round_to_printed(ev.t_lo)},
                          {"t_hi", round_to_printed(ev.t_hi)},
                          {"exit", vec_json(ev.exit)},
                          {"reentry", vec_json(ev.reentry)}});
    }
    ordered_json sum;
    sum["breaks"] = summary.breaks;
    sum["closure_phase"] = closure_label(summary.phase);
    sum["parity_ok"] = summary.parity_ok ? ordered_json(*summary.parity_ok) : ordered_json(nullptr);
    sum["break_events"] = std::move(events);
    return {{"samples", std::move(samples)}, {"summary", std::move(sum)}};
}

int cmd_trace(const TraceFlags& flags, std::ostream& out) {
    if (flags.mode != "single" && flags.mode != "dual") throw UsageError("--mode must be single or dual");
    if (flags.format != "csv" && flags.format != "json") throw UsageError("--format must be csv or json");
    const FieldConfig cfg = flags.field.resolve();
    const double t_max = parse_time(flags.t_max, cfg.omega, "--t-max");
    const EvolutionMode mode = flags.mode == "single" ? EvolutionMode::Single : EvolutionMode::Dual;

    const Trajectory traj = trace(cfg, mode, t_max, flags.steps);
    TraceSummary summary;
    summary.breaks = count_breaks(traj);
    summary.phase = closure_phase(traj);
    if (summary.phase != ClosurePhase::Open) {
        summary.parity_ok = (summary.breaks % 2 == 1) == (summary.phase == ClosurePhase::Minus);
    }

    ordered_json manifest = manifest_base("trace");
    manifest["parameters"] = flags.field.to_json(cfg);
    manifest["parameters"]["mode"] = flags.mode;
    manifest["parameters"]["t_max"] = flags.t_max;
    manifest["parameters"]["t_max_value"] = t_max;
    manifest["parameters"]["format"] = flags.format;
    manifest["steps"] = {{"n_steps", traj.n_steps},
                         {"refinement_check_steps", 2 * traj.n_steps},
                         {"bisection_tolerance", 1e-10}};

    if (flags.format == "csv") {
        const std::string bytes = trace_csv(traj, summary);
        write_file(flags.out_path, bytes);
        manifest["outputs"] = {{flags.out_path, checksum_hex(bytes)}};
        write_file(flags.out_path + ".manifest.json", manifest.dump(2) + "\n");
    } else {
        ordered_json payload = trace_payload(traj, summary);
        manifest["outputs"] = {{"samples+summary", checksum_hex(payload.dump())}};
        ordered_json doc;
        doc["manifest"] = std::move(manifest);
        doc["samples"] = std::move(payload["samples"]);
        doc["summary"] = std::move(payload["summary"]);
        write_file(flags.out_path, doc.dump(2) + "\n");
    }

    out << "b=" << format_number(cfg.b) << '\n';
    out << "omega0/omega=" << format_number(omega_zero(cfg) / cfg.omega) << '\n';
    out << "samples=" << traj.samples.size() << '\n';
    out << "breaks=" << summary.breaks << '\n';
    out << "closure_phase=" << closure_label(summary.phase) << '\n';
    out << "parity_ok=" << (summary.parity_ok ? (*summary.parity_ok ? "true" : "false") : "n/a") << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- solve-b

struct SolveFlags {
    double theta{0.0};
    double omega{1.0};
    double hbar{1.0};
    double ratio{1.0};
};

int cmd_solve_b(const SolveFlags& flags, std::ostream& out) {
    const double b = solve_field_for_ratio(flags.theta, flags.omega, flags.hbar, flags.ratio);
    const double check = omega_zero({b, flags.theta, flags.omega, flags.hbar}) / flags.omega;
    out << "b=" << format_number(b) << '\n';
    out << "omega0/omega=" << format_number(check) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    const auto results = run_verification(opts);
    write_report(out, results);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    out << "verdict: " << (failed == 0 ? "PASS" : "FAIL") << " (" << results.size() - failed << '/'
        << results.size() << " properties)\n";
    for (const auto& r : results) {
        if (!r.passed) err << "failing property: " << r.name << '\n';
    }
    return failed == 0 ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------- optics

struct OpticsFlags {
    FieldFlags field;
    std::string t{"pi/omega"};
    KerrPhysical bench{};
    bool scan{false};
    double scan_min{0.0};
    double scan_max{4.0};
    std::size_t scan_points{81};
    std::string out_path;
};

int cmd_optics(const OpticsFlags& flags, std::ostream& out) {
    const FieldConfig cfg = flags.field.resolve();
    const double t = parse_time(flags.t, cfg.omega, "--t");
    const OpticsSettings s = map_dynamics_to_optics(cfg, t);
    const double e1 = field_for_phase(s.phi1, flags.bench.lambda, flags.bench.kerr_k, flags.bench.d);
    const double e2 = field_for_phase(s.phi2, flags.bench.lambda, flags.bench.kerr_k, flags.bench.d);

    out << "phi1=" << format_number(s.phi1) << '\n';
    out << "phi2=" << format_number(s.phi2) << '\n';
    out << "delta=" << format_number(s.delta) << '\n';
    out << "e1=" << format_number(e1) << '\n';
    out << "e2=" << format_number(e2) << '\n';
    out << "bright_port=" << format_number(mach_zehnder_intensity(two_photon_stages(s), 0.0)) << '\n';

    if (!flags.scan) return kExitOk;
    if (flags.scan_points < 2) throw UsageError("--scan-points must be at least 2");
    const auto points = bright_port_scan(s.phi2, s.delta, flags.scan_min, flags.scan_max, flags.scan_points);
    std::ostringstream os;
    os << "ratio,intensity\n";
    for (const auto& p : points) os << format_number(p.ratio) << ',' << format_number(p.intensity) << '\n';
    if (flags.out_path.empty()) {
        out << os.str();
        return kExitOk;
    }
    write_file(flags.out_path, os.str());
    ordered_json manifest = manifest_base("optics");
    manifest["parameters"] = flags.field.to_json(cfg);
    manifest["parameters"]["t"] = flags.t;
    manifest["parameters"]["lambda"] = flags.bench.lambda;
    manifest["parameters"]["kerr_k"] = flags.bench.kerr_k;
    manifest["parameters"]["d"] = flags.bench.d;
    manifest["parameters"]["scan_min"] = flags.scan_min;
    manifest["parameters"]["scan_max"] = flags.scan_max;
    manifest["steps"] = {{"scan_points", flags.scan_points}};
    manifest["outputs"] = {{flags.out_path, checksum_hex(os.str())}};
    write_file(flags.out_path + ".manifest.json", manifest.dump(2) + "\n");
    out << "scan=" << flags.out_path << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximally entangled two-qubit states as SO(3) rotations in a rotating magnetic field",
                 "so3mes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SO3MES_VERSION);

    TraceFlags trace_flags;
    auto* trace_cmd = app.add_subcommand("trace", "trace an evolution through the SO(3) ball");
    trace_flags.field.attach(*trace_cmd);
    trace_cmd->add_option("--mode", trace_flags.mode, "single | dual")->capture_default_str();
    trace_cmd->add_option("--t-max", trace_flags.t_max, "end time, number or '<k>pi/omega'")->capture_default_str();
    trace_cmd->add_option("--steps", trace_flags.steps, "uniform time steps")->capture_default_str();
    trace_cmd->add_option("--out", trace_flags.out_path, "data file")->required();
    trace_cmd->add_option("--format", trace_flags.format, "csv | json")->capture_default_str();

    SolveFlags solve_flags;
    auto* solve_cmd = app.add_subcommand("solve-b", "field strength giving omega0 = ratio * omega");
    solve_cmd->add_option("--theta", solve_flags.theta)->required();
    solve_cmd->add_option("--ratio", solve_flags.ratio)->required();
    solve_cmd->add_option("--omega", solve_flags.omega)->capture_default_str();
    solve_cmd->add_option("--hbar", solve_flags.hbar)->capture_default_str();

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "run every invariant suite");
    verify_cmd->add_option("--seed", verify_opts.seed)->capture_default_str();
    verify_cmd->add_flag("--quick", verify_opts.quick, "reduced sample counts");
    verify_cmd->add_flag("--inject-fault", verify_opts.inject_tolerance_fault)->group("");

    OpticsFlags optics_flags;
    auto* optics_cmd = app.add_subcommand("optics", "Kerr-cell settings and interferometer scan");
    optics_flags.field.attach(*optics_cmd);
    optics_cmd->add_option("--t", optics_flags.t, "time, number or '<k>pi/omega'")->capture_default_str();
    optics_cmd->add_option("--lambda", optics_flags.bench.lambda)->capture_default_str();
    optics_cmd->add_option("--kerr-k", optics_flags.bench.kerr_k)->capture_default_str();
    optics_cmd->add_option("--d", optics_flags.bench.d)->capture_default_str();
    optics_cmd->add_flag("--scan", optics_flags.scan, "sweep phi1/phi2 and report bright-port intensity");
    optics_cmd->add_option("--scan-min", optics_flags.scan_min)->capture_default_str();
    optics_cmd->add_option("--scan-max", optics_flags.scan_max)->capture_default_str();
    optics_cmd->add_option("--scan-points", optics_flags.scan_points)->capture_default_str();
    optics_cmd->add_option("--out", optics_flags.out_path, "scan file (stdout when omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*trace_cmd) return cmd_trace(trace_flags, out);
        if (*solve_cmd) return cmd_solve_b(solve_flags, out);
        if (*verify_cmd) return cmd_verify(verify_opts, out, err);
        if (*optics_cmd) return cmd_optics(optics_flags, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace so3mes::cli
