#include "fading_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <fading/composite.hpp>
#include <fading/validation.hpp>

#include "fading_cli/presets.hpp"
#include "fading_cli/suite.hpp"
#include "fading_cli/table.hpp"

#ifndef FADING_VERSION
#define FADING_VERSION "0.0.0"
#endif

namespace fading_cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Usage or parameter problems; mapped to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

fading::Compounding parse_compounding(const std::string& s) {
    if (s == "rms" || s == "root_mean_square") return fading::Compounding::root_mean_square;
    if (s == "ms" || s == "mean_square") return fading::Compounding::mean_square;
    throw UsageError("compounding must be rms or ms, got '" + s + "'");
}

fading::SeriesMode parse_mode(const std::string& s) {
    if (s == "renormalized") return fading::SeriesMode::renormalized;
    if (s == "literal" || s == "paper_literal") return fading::SeriesMode::literal;
    throw UsageError("mode must be renormalized or literal, got '" + s + "'");
}

std::string mode_name(fading::SeriesMode m) { return m == fading::SeriesMode::literal ? "literal" : "renormalized"; }

fading::QuadConfig quad_config_from_env() {
    fading::QuadConfig cfg;
    if (const char* env = std::getenv("COMPOSITE_FADING_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
            throw UsageError(std::string("COMPOSITE_FADING_QUAD_TOL must be a positive number, got '") + env + "'");
        cfg.rel_tol = v;
    }
    return cfg;
}

json quad_json(const fading::QuadConfig& cfg) {
    return {{"rel_tol", cfg.rel_tol},
            {"abs_tol", cfg.abs_tol},
            {"max_refinements", cfg.max_refinements},
            {"transform", cfg.transform == fading::QuadTransform::rational ? "rational" : "double_exponential"}};
}

// Model selection and parameter options shared by pdf, sweep, sample and validate.
struct ModelArgs {
    std::string model = "kmu-gamma";
    double kappa = 1.0;
    double mu = 2.0;
    double m = 1.0;
    double b = 1.4;
    double omega = 1.2;
    std::string compounding = "rms";
    CLI::Option* model_opt = nullptr;
    CLI::Option* kappa_opt = nullptr;
    CLI::Option* mu_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* omega_opt = nullptr;

    void add_to(CLI::App* app) {
        model_opt = app->add_option("--model", model, "kmu-gamma or kmu-extreme-gamma")->capture_default_str();
        kappa_opt = app->add_option("--kappa", kappa, "kappa (kmu-gamma)")->capture_default_str();
        mu_opt = app->add_option("--mu", mu, "mu (kmu-gamma)")->capture_default_str();
        m_opt = app->add_option("--m", m, "Nakagami m (kmu-extreme-gamma)")->capture_default_str();
        b_opt = app->add_option("--b", b, "gamma shape")->capture_default_str();
        omega_opt = app->add_option("--omega", omega, "gamma scale")->capture_default_str();
        app->add_option("--compounding", compounding, "rms (Y is the mean power) or ms (Y is the rms)")
            ->capture_default_str();
    }

    Model parsed_model() const {
        try {
            return parse_model(model);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    void reject_foreign_options() const {
        const Model mdl = parsed_model();
        if (mdl == Model::kmu_gamma && m_opt->count() > 0) throw UsageError("--m does not apply to model kmu-gamma");
        if (mdl == Model::kmu_extreme_gamma && (kappa_opt->count() > 0 || mu_opt->count() > 0))
            throw UsageError("--kappa/--mu do not apply to model kmu-extreme-gamma");
    }

    fading::CompositeSpec spec() const {
        reject_foreign_options();
        const auto c = parse_compounding(compounding);
        try {
            if (parsed_model() == Model::kmu_gamma) return fading::kappa_mu_gamma(kappa, mu, b, omega, c);
            return fading::kmu_extreme_gamma(m, b, omega, c);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

json spec_json(const fading::CompositeSpec& s) {
    json j;
    if (const auto* km = std::get_if<fading::KappaMuShape>(&s.multipath)) {
        j["model"] = "kmu-gamma";
        j["kappa"] = km->kappa;
        j["mu"] = km->mu;
    } else {
        j["model"] = "kmu-extreme-gamma";
        j["m"] = std::get<fading::KappaMuExtremeParams>(s.multipath).m;
    }
    j["b"] = s.shadow.b;
    j["omega"] = s.shadow.omega;
    j["compounding"] = s.compounding == fading::Compounding::root_mean_square ? "rms" : "ms";
    return j;
}

json table_json(const Table& t) {
    json j;
    j["atom_numeric"] = number(t.atom_numeric);
    j["atom_series"] = number(t.atom_series);
    json x = json::array(), pn = json::array(), ps = json::array(), d = json::array();
    for (const Row& r : t.rows) {
        x.push_back(number(r.x));
        pn.push_back(number(r.pdf_numeric));
        ps.push_back(number(r.pdf_series));
        d.push_back(number(r.abs_diff));
    }
    j["x"] = x;
    j["pdf_numeric"] = pn;
    j["pdf_series"] = ps;
    j["abs_diff"] = d;
    return j;
}

// Opens `path` for writing, or returns the fallback stream for "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw UsageError("cannot open '" + path + "' for writing");
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }
    void close(const std::string& path) {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw std::runtime_error("failed writing '" + path + "'");
        } else {
            stream_->flush();
        }
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct SeriesArgs {
    int n = 30;
    std::string mode = "renormalized";
    void add_to(CLI::App* app) {
        app->add_option("--n", n, "Gross expansion order")->capture_default_str();
        app->add_option("--mode", mode, "renormalized or literal")->capture_default_str();
    }
    fading::SeriesConfig config() const {
        fading::SeriesConfig sc{n, parse_mode(mode)};
        if (n < 0) throw UsageError("series order n must be non-negative");
        return sc;
    }
};

// ---- pdf ------------------------------------------------------------------

struct PdfArgs {
    ModelArgs model;
    SeriesArgs series;
    std::string grid = "0:4:81";
    std::string format = "csv";
    std::string output = "-";
    unsigned jobs = default_jobs();
};

XGrid grid_or_usage(const std::string& text) {
    try {
        return parse_grid(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void check_format(const std::string& f) {
    if (f != "csv" && f != "json") throw UsageError("format must be csv or json, got '" + f + "'");
}

int cmd_pdf(const PdfArgs& a, std::ostream& out) {
    const auto spec = a.model.spec();
    const auto sc = a.series.config();
    const XGrid grid = grid_or_usage(a.grid);
    check_format(a.format);
    const auto cfg = quad_config_from_env();
    if (spec.compounding != fading::Compounding::root_mean_square)
        throw UsageError("the series column is defined for rms compounding only");
    const Table t = tabulate(spec, grid, sc, cfg, a.jobs);
    Sink sink(a.output, out);
    if (a.format == "csv") {
        write_csv(sink.get(), t);
    } else {
        json j = table_json(t);
        j["spec"] = spec_json(spec);
        j["series"] = {{"n", sc.n}, {"mode", mode_name(sc.mode)}};
        sink.get() << j.dump(2) << '\n';
    }
    sink.close(a.output);
    return kExitOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
    ModelArgs model;
    SeriesArgs series;
    std::string preset;
    std::vector<double> kappa_values, mu_values, m_values, b_values, omega_values;
    std::string grid = "0:4:81";
    std::string format = "csv";
    std::string out_dir = "sweep";
    unsigned jobs = default_jobs();
    std::vector<std::string> argv;
};

int cmd_sweep(SweepArgs& a, std::ostream& out) {
    const auto sc = a.series.config();
    const XGrid grid = grid_or_usage(a.grid);
    check_format(a.format);
    const auto cfg = quad_config_from_env();

    struct Swept {
        const char* name;
        std::vector<double>* values;
        CLI::Option* fixed;
    };
    std::vector<Swept> lists = {{"kappa", &a.kappa_values, a.model.kappa_opt},
                                {"mu", &a.mu_values, a.model.mu_opt},
                                {"m", &a.m_values, a.model.m_opt},
                                {"b", &a.b_values, a.model.b_opt},
                                {"omega", &a.omega_values, a.model.omega_opt}};
    std::string swept;
    std::vector<double> values;
    for (const Swept& s : lists) {
        if (s.values->empty()) continue;
        if (!swept.empty()) throw UsageError("only one parameter may be swept, got " + swept + " and " + s.name);
        swept = s.name;
        values = *s.values;
    }

    std::optional<Preset> preset;
    if (!a.preset.empty()) {
        preset = find_preset(a.preset);
        if (!preset) throw UsageError("unknown preset '" + a.preset + "' (fig1, fig2, fig3)");
        for (CLI::Option* o : {a.model.model_opt, a.model.kappa_opt, a.model.mu_opt, a.model.m_opt, a.model.b_opt,
                               a.model.omega_opt})
            if (o->count() > 0) throw UsageError("preset " + preset->name + " fixes " + o->get_name());
        if (swept.empty()) {
            swept = preset->swept;
            values = preset->default_values;
        } else if (swept != preset->swept) {
            throw UsageError("preset " + preset->name + " sweeps " + preset->swept + ", not " + swept);
        }
        a.model.model = model_name(preset->model);
        a.model.kappa = preset->kappa;
        a.model.mu = preset->mu;
        a.model.m = preset->m;
        a.model.b = preset->b;
        a.model.omega = preset->omega;
    } else {
        if (swept.empty()) throw UsageError("sweep needs --preset or one of --kappa-values/--mu-values/--m-values/--b-values/--omega-values");
        for (const Swept& s : lists)
            if (s.name == swept && s.fixed->count() > 0)
                throw UsageError("swept parameter " + swept + " must not also be fixed");
    }
    const Model mdl = a.model.parsed_model();
    if (mdl == Model::kmu_gamma && swept == "m") throw UsageError("m is not a parameter of kmu-gamma");
    if (mdl == Model::kmu_extreme_gamma && (swept == "kappa" || swept == "mu"))
        throw UsageError(swept + " is not a parameter of kmu-extreme-gamma");
    if (values.empty()) throw UsageError("swept values must be non-empty");
    if (!preset) a.model.reject_foreign_options();

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec || !fs::is_directory(a.out_dir)) throw UsageError("cannot create output directory '" + a.out_dir + "'");

    const std::string stem = preset ? preset->name : model_name(mdl);
    json manifest;
    manifest["tool"] = "composite-fading";
    manifest["version"] = version();
    manifest["command"] = a.argv;
    manifest["preset"] = preset ? json(preset->name) : json(nullptr);
    manifest["model"] = model_name(mdl);
    manifest["compounding"] = a.model.compounding;
    json fixed = json::object();
    auto put_fixed = [&](const char* name, double v) {
        if (swept != name) fixed[name] = v;
    };
    if (mdl == Model::kmu_gamma) {
        put_fixed("kappa", a.model.kappa);
        put_fixed("mu", a.model.mu);
    } else {
        put_fixed("m", a.model.m);
    }
    put_fixed("b", a.model.b);
    put_fixed("omega", a.model.omega);
    manifest["fixed_params"] = fixed;
    manifest["swept_param"] = swept;
    manifest["swept_values"] = values;
    manifest["x_grid"] = {{"start", grid.start}, {"stop", grid.stop}, {"count", grid.count}};
    manifest["series"] = {{"n", sc.n}, {"mode", mode_name(sc.mode)}};
    manifest["quadrature"] = quad_json(cfg);
    manifest["format"] = a.format;
    manifest["seed"] = nullptr;  // no randomness involved
    json files = json::array();

    for (double v : values) {
        ModelArgs m = a.model;
        if (swept == "kappa") m.kappa = v;
        if (swept == "mu") m.mu = v;
        if (swept == "m") m.m = v;
        if (swept == "b") m.b = v;
        if (swept == "omega") m.omega = v;
        // Values come from the sweep, so option counts are irrelevant here.
        fading::CompositeSpec spec;
        try {
            const auto c = parse_compounding(m.compounding);
            spec = mdl == Model::kmu_gamma ? fading::kappa_mu_gamma(m.kappa, m.mu, m.b, m.omega, c)
                                           : fading::kmu_extreme_gamma(m.m, m.b, m.omega, c);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (spec.compounding != fading::Compounding::root_mean_square)
            throw UsageError("the series column is defined for rms compounding only");
        const Table t = tabulate(spec, grid, sc, cfg, a.jobs);
        const std::string name = stem + "_" + swept + "_" + format_double(v) + "." + a.format;
        const std::string path = (fs::path(a.out_dir) / name).string();
        Sink sink(path, out);
        if (a.format == "csv") {
            write_csv(sink.get(), t);
        } else {
            json j = table_json(t);
            j["spec"] = spec_json(spec);
            sink.get() << j.dump(2) << '\n';
        }
        sink.close(path);
        files.push_back({{"value", v},
                         {"file", name},
                         {"params", spec_json(spec)},
                         {"atom_numeric", number(t.atom_numeric)},
                         {"atom_series", number(t.atom_series)},
                         {"argmax_x", number(argmax_x(t))}});
        out << path << '\n';
    }
    manifest["files"] = files;
    const std::string mpath = (fs::path(a.out_dir) / (stem + "_manifest.json")).string();
    Sink msink(mpath, out);
    msink.get() << manifest.dump(2) << '\n';
    msink.close(mpath);
    out << mpath << '\n';
    return kExitOk;
}

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
    ModelArgs model;
    long long count = 0;
    std::uint64_t seed = 1;
    std::string output = "-";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
    const auto spec = a.model.spec();
    if (a.count <= 0) throw UsageError("count must be positive");
    fading::RandomStream rs(a.seed);
    Sink sink(a.output, out);
    char buf[64];
    for (long long i = 0; i < a.count; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g\n", fading::sample_composite(spec, rs));
        sink.get() << buf;
    }
    sink.close(a.output);
    return kExitOk;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
    ModelArgs model;
    bool quick = false;
    bool inject_fault = false;
    std::string gof_samples;
    std::string report = "-";
    std::vector<int> criteria;
    std::uint64_t seed = 20240611;
    std::size_t samples = 0;
};

std::vector<double> read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read samples file '" + path + "'");
    std::vector<double> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        char* end = nullptr;
        const double x = std::strtod(line.c_str(), &end);
        if (end == line.c_str() || *end != '\0')
            throw UsageError(path + ":" + std::to_string(lineno) + ": not a number");
        v.push_back(x);
    }
    return v;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    SuiteOptions opt;
    opt.level = a.quick ? Level::quick : Level::full;
    opt.cfg = quad_config_from_env();
    opt.seed = a.seed;
    opt.gof_samples = a.samples;
    for (int c : a.criteria)
        if (c < 1 || c > 8) throw UsageError("criterion must be in 1..8");
    if (a.samples != 0 && a.samples < fading::kMinGoFSamples)
        throw UsageError("--samples must be at least " + std::to_string(fading::kMinGoFSamples));
    // Harness self-test: an impossible normalization tolerance must surface as a failure.
    if (a.inject_fault) opt.tol.normalization = 0.0;

    std::optional<fading::CompositeSpec> gof_spec;
    std::vector<double> gof_data;
    if (!a.gof_samples.empty()) {
        gof_spec = a.model.spec();
        gof_data = read_samples(a.gof_samples);
        if (gof_data.size() < fading::kMinGoFSamples)
            throw UsageError("samples file needs at least " + std::to_string(fading::kMinGoFSamples) + " values");
    }

    SuiteReport rep = run_suite(opt, a.criteria);
    if (gof_spec) {
        Check c;
        c.id = "gof.samples_file";
        c.criterion = 6;
        try {
            const fading::GoFReport r = fading::goodness_of_fit(gof_data, *gof_spec, opt.cfg);
            c.pass = r.pass;
            c.measured = r.ks_distance;
            c.tolerance = r.threshold;
            c.detail = fading::to_string(*gof_spec) + ", n=" + std::to_string(r.n_samples) + ", zero fraction " +
                       format_double(r.atom_observed) + " vs " + format_double(r.atom_expected);
        } catch (const std::exception& e) {
            c.detail = std::string("error: ") + e.what();
        }
        rep.checks.push_back(c);
    }

    json checks = json::array();
    for (const Check& c : rep.checks)
        checks.push_back({{"id", c.id},
                          {"criterion", c.criterion},
                          {"acceptance", c.acceptance},
                          {"pass", c.pass},
                          {"measured", number(c.measured)},
                          {"tolerance", number(c.tolerance)},
                          {"detail", c.detail}});
    json ledger = json::array();
    for (const Discrepancy& d : rep.discrepancies)
        ledger.push_back({{"spec", d.spec},
                          {"n", d.n},
                          {"printed_S", number(d.printed_S)},
                          {"measured_S", number(d.measured_S)},
                          {"measured_S_literal", number(d.measured_S_literal)},
                          {"S_gap", number(std::fabs(d.printed_S - d.measured_S))},
                          {"S_gap_literal", number(std::fabs(d.printed_S - d.measured_S_literal))},
                          {"analytic_series_mass", number(d.analytic_mass)},
                          {"sup_gap_renormalized", number(d.sup_gap_renormalized)},
                          {"sup_gap_literal", number(d.sup_gap_literal)},
                          {"sup_gap_printed_assembled", number(d.sup_gap_printed_assembled)}});
    const auto failing = rep.failing_ids();
    json report;
    report["tool"] = "composite-fading";
    report["version"] = version();
    report["level"] = a.quick ? "quick" : "full";
    report["fault_injected"] = a.inject_fault;
    report["quadrature"] = quad_json(opt.cfg);
    report["checks"] = checks;
    report["discrepancies"] = ledger;
    report["summary"] = {{"total", rep.checks.size()},
                         {"passed", rep.checks.size() - failing.size()},
                         {"failed", failing.size()},
                         {"failing_ids", failing}};
    Sink sink(a.report, out);
    sink.get() << report.dump(2) << '\n';
    sink.close(a.report);

    if (failing.empty()) return kExitOk;
    for (const std::string& id : failing) err << "FAILED " << id << '\n';
    return kExitValidation;
}

void add_validate_options(CLI::App* app, ValidateArgs& a, bool with_quick) {
    a.model.add_to(app);
    if (with_quick) app->add_flag("--quick", a.quick, "reduced grids and 10^5 samples");
    app->add_flag("--inject-fault", a.inject_fault)->group("");
    app->add_option("--gof-samples", a.gof_samples, "file of samples to test against the model options");
    app->add_option("--report", a.report, "write the JSON report here instead of stdout");
    app->add_option("--criterion", a.criteria, "run only these acceptance criteria (1-8)")->delimiter(',');
    app->add_option("--seed", a.seed, "seed for the sampling checks")->capture_default_str();
    app->add_option("--samples", a.samples, "sample count for the sampling checks");
}

}  // namespace

const char* version() { return FADING_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Composite kappa-mu/gamma and kappa-mu Extreme/gamma fading densities", "composite-fading"};
    app.set_version_flag("--version", std::string(FADING_VERSION));
    app.require_subcommand(1);

    PdfArgs pdf;
    auto* pdf_cmd = app.add_subcommand("pdf", "tabulate oracle and series pdf on an x grid");
    pdf.model.add_to(pdf_cmd);
    pdf.series.add_to(pdf_cmd);
    pdf_cmd->add_option("--x", pdf.grid, "start:stop:count")->capture_default_str();
    pdf_cmd->add_option("--format", pdf.format, "csv or json")->capture_default_str();
    pdf_cmd->add_option("--output,-o", pdf.output, "output file, - for stdout")->capture_default_str();
    pdf_cmd->add_option("--jobs,-j", pdf.jobs, "worker threads");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "one table per swept parameter value plus a manifest");
    sweep.model.add_to(sweep_cmd);
    sweep.series.add_to(sweep_cmd);
    sweep_cmd->add_option("--preset", sweep.preset, "fig1, fig2 or fig3");
    sweep_cmd->add_option("--kappa-values", sweep.kappa_values)->delimiter(',');
    sweep_cmd->add_option("--mu-values", sweep.mu_values)->delimiter(',');
    sweep_cmd->add_option("--m-values", sweep.m_values)->delimiter(',');
    sweep_cmd->add_option("--b-values", sweep.b_values)->delimiter(',');
    sweep_cmd->add_option("--omega-values", sweep.omega_values)->delimiter(',');
    sweep_cmd->add_option("--x", sweep.grid, "start:stop:count")->capture_default_str();
    sweep_cmd->add_option("--format", sweep.format, "csv or json")->capture_default_str();
    sweep_cmd->add_option("--out-dir", sweep.out_dir, "output directory")->capture_default_str();
    sweep_cmd->add_option("--jobs,-j", sweep.jobs, "worker threads");

    ValidateArgs validate;
    auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite and print a JSON report");
    add_validate_options(validate_cmd, validate, true);

    ValidateArgs selfcheck;
    selfcheck.quick = true;
    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "validate --quick");
    add_validate_options(selfcheck_cmd, selfcheck, false);

    SampleArgs sample;
    auto* sample_cmd = app.add_subcommand("sample", "newline-delimited composite samples");
    sample.model.add_to(sample_cmd);
    sample_cmd->add_option("--count", sample.count)->required();
    sample_cmd->add_option("--seed", sample.seed)->capture_default_str();
    sample_cmd->add_option("--output,-o", sample.output)->capture_default_str();

    std::vector<std::string> argv_store{"composite-fading"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << FADING_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (pdf_cmd->parsed()) return cmd_pdf(pdf, out);
        if (sweep_cmd->parsed()) {
            sweep.argv = args;
            return cmd_sweep(sweep, out);
        }
        if (validate_cmd->parsed()) return cmd_validate(validate, out, err);
        if (selfcheck_cmd->parsed()) return cmd_validate(selfcheck, out, err);
        if (sample_cmd->parsed()) return cmd_sample(sample, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace fading_cli
