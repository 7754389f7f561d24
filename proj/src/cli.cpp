#include "mordrive/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <new>
#include <optional>
#include <sstream>

#include "mordrive/controller_design.hpp"
#include "mordrive/drive_model.hpp"
#include "mordrive/error.hpp"
#include "mordrive/io.hpp"
#include "mordrive/reduction.hpp"
#include "mordrive/simulation.hpp"

namespace mordrive::cli {
namespace {

using io::json;
using Clock = std::chrono::steady_clock;

// Unstructured failures (unreadable files, JSON syntax) are input errors.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out) throw InputError("failed writing '" + path + "'");
}

json parse_json(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

json manifest(const std::string& command, const std::string& input_bytes, Clock::time_point start,
              const std::vector<std::string>& warnings) {
    const double wall = std::chrono::duration<double>(Clock::now() - start).count();
    return {{"command", command},
            {"input_digest", io::sha256_hex(input_bytes)},
            {"tool_version", kToolVersion},
            {"wall_time", wall},
            {"warnings", warnings}};
}

json error_json(const Error& e) {
    json details = json::object();
    for (const auto& [k, v] : e.details()) details[k] = v;
    return {{"code", to_string(e.code())}, {"message", e.what()}, {"details", details}};
}

int exit_code_for(const Error& e) { return is_validation_error(e.code()) ? kExitInput : kExitNumeric; }

const char* reduction_step(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotFactorable:
        case ErrorCode::ZeroConstantTerm:
        case ErrorCode::NonConvergence:
            return "denominator reduction (stability equations)";
        case ErrorCode::MatchInfeasible:
        case ErrorCode::Unsupported:
        case ErrorCode::NotNormalized:
            return "numerator matching";
        case ErrorCode::ZeroDcGain:
            return "normalization";
        default:
            return "reduction";
    }
}

mor::AdjustMode parse_adjust(const std::string& text) {
    if (text == "none") return mor::AdjustMode::none();
    if (text == "auto") return mor::AdjustMode::automatic();
    double pct = 0.0;
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    if (!(is >> pct) || !is.eof()) {
        throw Error(ErrorCode::InvalidArgument, "--adjust must be none, auto or a percentage");
    }
    if (!(pct > 0.0) || pct > 15.0) {
        throw Error(ErrorCode::InvalidArgument, "--adjust percentage must lie in (0, 15]", {{"percent", pct}});
    }
    return mor::AdjustMode::fixed(pct);
}

struct ReduceArgs {
    std::string tf_file;
    int order = 0;
    int numerator_order = -1;
    std::string adjust = "none";
    std::string out_file;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& err) {
    const auto start = Clock::now();
    const std::string bytes = read_file(a.tf_file);
    const TransferFunction g = io::tf_from_json(parse_json(bytes, a.tf_file));
    if (a.order < 1 || a.order >= g.den().degree()) {
        throw Error(ErrorCode::BadOrder, "--order must satisfy 1 <= order < input degree",
                    {{"order", a.order}, {"degree", g.den().degree()}});
    }
    mor::ReductionConfig cfg;
    cfg.target_order = a.order;
    if (a.numerator_order >= 0) cfg.numerator_order = a.numerator_order;
    cfg.adjust = parse_adjust(a.adjust);

    std::optional<mor::ReductionResult> reduced;
    try {
        reduced = mor::reduce(g, cfg);
    } catch (const Error& e) {
        err << "mordrive reduce: " << reduction_step(e.code()) << " failed: " << e.what() << '\n';
        return exit_code_for(e);
    }
    const mor::ReductionResult& result = *reduced;
    json report = io::to_json(result);
    report["order"] = cfg.target_order;
    report["numerator_order"] = cfg.q();
    report["adjust"] = a.adjust;
    report["manifest"] = manifest("reduce", bytes, start, result.warnings);
    write_file(a.out_file, report.dump(2) + "\n");
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    return kExitOk;
}

struct DesignArgs {
    std::string motor_file;
    bool reference_example = false;
    std::string method = "conventional";
    double zeta = 0.0;
    bool zeta_set = false;
    int q = 1;
    std::string report_file;
};

int cmd_design(const DesignArgs& a, std::ostream& err) {
    const auto start = Clock::now();
    drive::MotorDriveParams params;
    std::string bytes;
    if (a.reference_example) {
        params = drive::reference_drive();
        bytes = io::motor_to_json(params).dump();
    } else {
        if (a.motor_file.empty()) throw InputError("design needs --motor FILE or --reference-example");
        bytes = read_file(a.motor_file);
        params = io::motor_from_json(parse_json(bytes, a.motor_file));
    }
    if (a.zeta_set) params.zeta = a.zeta;
    const drive::DerivedDriveModel model = drive::derive_model(params);

    json report{
        {"method", a.method},
        {"zeta_target", params.zeta},
        {"params", io::motor_to_json(params)},
        {"drive", io::to_json(model)},
        {"reference_values",
         {{"K", 357.192},
          {"kc", 35.719},
          {"note", "published design values for the reference drive; no equation chain implemented here "
                   "reproduces them, so they are reported for comparison only"}}},
    };

    std::vector<std::string> warnings;
    int code = kExitOk;
    try {
        design::DesignReport d;
        if (a.method == "conventional") {
            d = design::design_conventional(model);
        } else {
            mor::ReductionConfig cfg;
            cfg.target_order = 2;
            cfg.numerator_order = a.q;
            d = design::design_via_mor(model, cfg);
        }
        warnings = d.warnings;
        report["status"] = "ok";
        report["design"] = io::to_json(d);
        report["error"] = nullptr;
    } catch (const Error& e) {
        code = exit_code_for(e);
        report["status"] = "failed";
        report["design"] = nullptr;
        report["error"] = error_json(e);
        err << "mordrive design: " << a.method << " design failed: " << e.what() << '\n';
    }
    report["manifest"] = manifest("design", bytes, start, warnings);
    write_file(a.report_file, report.dump(2) + "\n");
    return code;
}

struct SimulateArgs {
    std::string kind;
    std::string tf_file;
    std::string out_file;
    double t_final = 0.0;
    bool t_final_set = false;
    double dt = 0.0;
    bool dt_set = false;
    double w_min = 0.1;
    double w_max = 1e4;
    int ppd = 60;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& err) {
    const std::string bytes = read_file(a.tf_file);
    const TransferFunction g = io::tf_from_json(parse_json(bytes, a.tf_file));
    if (a.kind == "step") {
        sim::StepGrid grid{};
        if (!a.t_final_set || !a.dt_set) grid = sim::default_step_grid(g);
        const sim::StepTrace tr = sim::step_response(g, a.t_final_set ? a.t_final : grid.t_final,
                                                     a.dt_set ? a.dt : grid.dt);
        for (const auto& w : tr.warnings) err << "warning: " << w << '\n';
        write_file(a.out_file, io::step_csv(tr));
    } else {
        const sim::BodeTrace tr = sim::bode(g, a.w_min, a.w_max, a.ppd);
        if (tr.singular) err << "warning: frequency grid hits a pole on the imaginary axis\n";
        write_file(a.out_file, io::bode_csv(tr));
    }
    return kExitOk;
}

struct SweepArgs {
    std::string motor_file;
    double kc_min = 0.0;
    double kc_max = 0.0;
    int steps = 0;
    std::string out_file;
};

int cmd_sweep(const SweepArgs& a, std::ostream&) {
    const std::string bytes = read_file(a.motor_file);
    const drive::DerivedDriveModel model = drive::derive_model(io::motor_from_json(parse_json(bytes, a.motor_file)));
    const auto points = design::sweep_gain(model, a.kc_min, a.kc_max, a.steps);
    write_file(a.out_file, io::sweep_csv(points));
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixed model-order reduction and DC drive current-controller design", "mordrive"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "Reduce a stable transfer function");
    reduce->add_option("--tf", ra.tf_file, "Transfer function JSON file")->required();
    reduce->add_option("--order", ra.order, "Reduced denominator order")->required();
    reduce->add_option("--numerator-order", ra.numerator_order, "Reduced numerator order (default order-1)");
    reduce->add_option("--adjust", ra.adjust, "none | auto | percentage in (0, 15]");
    reduce->add_option("--out", ra.out_file, "Report JSON file")->required();

    DesignArgs da;
    auto* design = app.add_subcommand("design", "Design the current-controller gain");
    auto* motor_opt = design->add_option("--motor", da.motor_file, "Motor parameter JSON file");
    design->add_flag("--reference-example", da.reference_example, "Use the built-in 220 V reference drive")
        ->excludes(motor_opt);
    design->add_option("--method", da.method, "conventional | mor")
        ->check(CLI::IsMember({"conventional", "mor"}));
    auto* zeta_opt = design->add_option("--zeta", da.zeta, "Target damping ratio");
    design->add_option("--q", da.q, "Reduced numerator order for --method mor")->check(CLI::Range(0, 2));
    design->add_option("--report", da.report_file, "Report JSON file")->required();

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Step or Bode response of a transfer function");
    simulate->add_option("kind", sa.kind, "step | bode")->required()->check(CLI::IsMember({"step", "bode"}));
    simulate->add_option("--tf", sa.tf_file, "Transfer function JSON file")->required();
    simulate->add_option("--out", sa.out_file, "CSV output file")->required();
    auto* t_final_opt = simulate->add_option("--t-final", sa.t_final, "Step horizon in seconds");
    auto* dt_opt = simulate->add_option("--dt", sa.dt, "Step size in seconds");
    simulate->add_option("--w-min", sa.w_min, "Lowest frequency, rad/s");
    simulate->add_option("--w-max", sa.w_max, "Highest frequency, rad/s");
    simulate->add_option("--ppd", sa.ppd, "Points per decade");

    SweepArgs swa;
    auto* sweep = app.add_subcommand("sweep", "Sweep the controller gain on the full current loop");
    sweep->add_option("--motor", swa.motor_file, "Motor parameter JSON file")->required();
    sweep->add_option("--kc-min", swa.kc_min, "Lowest Kc")->required();
    sweep->add_option("--kc-max", swa.kc_max, "Highest Kc")->required();
    sweep->add_option("--steps", swa.steps, "Number of grid points (>= 2)")->required();
    sweep->add_option("--out", swa.out_file, "CSV output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(ra, err);
        if (design->parsed()) {
            da.zeta_set = zeta_opt->count() > 0;
            return cmd_design(da, err);
        }
        if (simulate->parsed()) {
            sa.t_final_set = t_final_opt->count() > 0;
            sa.dt_set = dt_opt->count() > 0;
            return cmd_simulate(sa, err);
        }
        if (sweep->parsed()) return cmd_sweep(swa, err);
    } catch (const Error& e) {
        err << "mordrive: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const InputError& e) {
        err << "mordrive: " << e.what() << '\n';
        return kExitInput;
    } catch (const io::json::exception& e) {
        err << "mordrive: malformed input: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::bad_alloc&) {
        err << "mordrive: out of memory\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "mordrive: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("mordrive");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mordrive::cli
