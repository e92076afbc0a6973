#include "cli_app.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <omegares.hpp>

namespace omegares::cli {

namespace {

namespace fs = std::filesystem;
using report::json;
using detail::format_fixed;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string extension(const std::string& path) { return lower(fs::path(path).extension().string()); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ParseError("write to '" + path + "' failed");
}

struct Loaded {
    sparams::SParamTrace trace;
    std::vector<std::string> warnings;
};

Loaded load_trace(const std::string& path) {
    const std::string text = read_file(path);
    const std::string ext = extension(path);
    if (ext == ".csv") return {touchstone::parse_csv(text), {}};
    touchstone::ParseOptions po;
    if (ext == ".s1p") po.expected_ports = 1;
    if (ext == ".s2p") po.expected_ports = 2;
    auto parsed = touchstone::parse_touchstone(text, po);
    return {std::move(parsed.trace), std::move(parsed.warnings)};
}

resnet::Mode parse_mode(const std::string& s) {
    return s == "transmission" ? resnet::Mode::Transmission : resnet::Mode::Reflection;
}

touchstone::DataFormat parse_format(const std::string& s) {
    const std::string u = lower(s);
    if (u == "db") return touchstone::DataFormat::DB;
    if (u == "ri") return touchstone::DataFormat::RI;
    return touchstone::DataFormat::MA;
}

touchstone::FrequencyUnit parse_unit(const std::string& s) {
    const std::string u = lower(s);
    if (u == "hz") return touchstone::FrequencyUnit::Hz;
    if (u == "khz") return touchstone::FrequencyUnit::kHz;
    if (u == "mhz") return touchstone::FrequencyUnit::MHz;
    return touchstone::FrequencyUnit::GHz;
}

std::string serialize_trace(const sparams::SParamTrace& t, const std::string& path, const std::string& fmt,
                            const std::string& unit) {
    if (!path.empty() && extension(path) == ".csv") return touchstone::write_csv(t);
    return touchstone::write_touchstone(t, parse_format(fmt), parse_unit(unit));
}

/// Writes `text` to `path`, or to `out` when no path was given.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

// ---- fit ----------------------------------------------------------------------------------------

struct FitArgs {
    std::string mode;
    std::string in, glob, out, csv;
    std::string window_start, window_stop;
    double window_fraction = 0.35;
    std::string objective = "db";
    std::string branch = "overcoupled";
    bool baseline = false;
    int max_iterations = 200;
    double db_floor = -100.0;
};

fitlab::FitConfig make_fit_config(const FitArgs& a) {
    fitlab::FitConfig cfg;
    if (!a.window_start.empty() || !a.window_stop.empty()) {
        if (a.window_start.empty() || a.window_stop.empty())
            throw DomainError("--window-start and --window-stop go together");
        cfg.window = std::make_pair(units::frequency(a.window_start), units::frequency(a.window_stop));
    }
    cfg.window_fraction = a.window_fraction;
    cfg.objective_space = a.objective == "linear" ? fitlab::ObjectiveSpace::LinearMagnitude : fitlab::ObjectiveSpace::Decibel;
    cfg.branch = a.branch == "undercoupled" ? fitlab::CouplingBranch::Undercoupled : fitlab::CouplingBranch::Overcoupled;
    cfg.amplitude_baseline = a.baseline;
    cfg.max_iterations = a.max_iterations;
    cfg.db_floor = a.db_floor;
    cfg.validate();
    return cfg;
}

fitlab::FitResult fit_trace(const sparams::SParamTrace& t, resnet::Mode mode, const fitlab::FitConfig& cfg) {
    return mode == resnet::Mode::Transmission ? fitlab::fit_transmission(t, cfg) : fitlab::fit_reflection(t, cfg);
}

std::string plot_csv(const sparams::SParamTrace& t, const fitlab::FitResult& r) {
    const bool two = t.ports() == 2;
    const bool model_t = r.params.mode == resnet::Mode::Transmission;
    const double base = r.baseline_db.value_or(0.0);
    std::string s = "frequency_hz,s11_db";
    if (two) s += ",s21_db";
    s += ",model_s11_db";
    if (model_t) s += ",model_s21_db";
    s += '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double f = t.frequencies()[i];
        const auto m = resnet::response(r.params, f);
        s += detail::format_sci(f) + ',' + detail::format_sci(sparams::db_magnitude(t.data()[i].s11));
        if (two) s += ',' + detail::format_sci(sparams::db_magnitude(t.data()[i].s21));
        s += ',' + detail::format_sci(sparams::db_magnitude(m.gamma) + base);
        if (model_t) s += ',' + detail::format_sci(sparams::db_magnitude(*m.t) + base);
        s += '\n';
    }
    return s;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    const fs::path p(pattern);
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    const std::string name = p.filename().string();
    std::vector<std::string> hits;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        if (fnmatch(name.c_str(), entry.path().filename().string().c_str(), 0) == 0)
            hits.push_back((p.has_parent_path() ? entry.path() : entry.path().filename()).string());
    }
    if (ec) throw ParseError("cannot list '" + dir.string() + "': " + ec.message());
    std::sort(hits.begin(), hits.end());
    return hits;
}

struct FileOutcome {
    json result;
    int code = ok;
    std::string diagnostic;
};

FileOutcome fit_one(const std::string& path, resnet::Mode mode, const fitlab::FitConfig& cfg) {
    FileOutcome o;
    try {
        const auto loaded = load_trace(path);
        for (const auto& w : loaded.warnings) o.diagnostic += path + ": warning: " + w + "\n";
        const auto r = fit_trace(loaded.trace, mode, cfg);
        o.result = report::to_json(r);
        o.result["source"] = path;
        if (!r.converged) {
            o.code = not_converged;
            o.diagnostic += path + ": fit did not converge\n";
        }
    } catch (const NoResonance& e) {
        o = {{{"error", e.what()}, {"source", path}}, data_error, path + ": " + e.what() + "\n"};
    } catch (const FitError& e) {
        o = {{{"error", e.what()}, {"source", path}}, not_converged, path + ": " + e.what() + "\n"};
    } catch (const std::exception& e) {
        o = {{{"error", e.what()}, {"source", path}}, data_error, path + ": " + e.what() + "\n"};
    }
    return o;
}

int cmd_fit_glob(const FitArgs& a, resnet::Mode mode, const fitlab::FitConfig& cfg, std::ostream& out,
                 std::ostream& err) {
    const auto files = expand_glob(a.glob);
    if (files.empty()) {
        err << "no files match '" << a.glob << "'\n";
        return data_error;
    }
    // files are independent; fit them in batches of hardware threads
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<FileOutcome> outcomes(files.size());
    for (std::size_t start = 0; start < files.size(); start += width) {
        std::vector<std::future<FileOutcome>> batch;
        const std::size_t stop = std::min(files.size(), start + width);
        for (std::size_t i = start; i < stop; ++i)
            batch.push_back(std::async(std::launch::async, fit_one, files[i], mode, cfg));
        for (std::size_t i = start; i < stop; ++i) outcomes[i] = batch[i - start].get();
    }
    json results = json::object();
    int code = ok;
    for (std::size_t i = 0; i < files.size(); ++i) {
        results[files[i]] = outcomes[i].result;
        err << outcomes[i].diagnostic;
        if (outcomes[i].code == data_error) code = data_error;
        else if (outcomes[i].code == not_converged && code == ok) code = not_converged;
    }
    emit(out, a.out, report::dump(json{{"results", results}}));
    return code;
}

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
    const resnet::Mode mode = parse_mode(a.mode);
    const auto cfg = make_fit_config(a);
    if (!a.glob.empty()) return cmd_fit_glob(a, mode, cfg, out, err);
    const auto loaded = load_trace(a.in);
    for (const auto& w : loaded.warnings) err << a.in << ": warning: " << w << "\n";
    const auto r = fit_trace(loaded.trace, mode, cfg);
    json j = report::to_json(r);
    j["source"] = a.in;
    emit(out, a.out, report::dump(j));
    if (!a.csv.empty()) write_file(a.csv, plot_csv(loaded.trace, r));
    if (!r.converged) {
        err << "fit did not converge after " << r.iterations << " iterations\n";
        return not_converged;
    }
    return ok;
}

// ---- design -------------------------------------------------------------------------------------

struct DesignArgs {
    std::string preset = "reference";
    double q0 = 74.0;
    std::string z_external = "10.4";
    std::string tpi = "50ns";
    std::string resonator_width, length;
    std::string format = "json";
    std::string out;
    std::vector<std::string> sweep_widths;
    std::string target = "2.95GHz";
};

int cmd_design(const DesignArgs& a, std::ostream& out) {
    auto g = designer::ResonatorGeometry::reference_design();
    if (!a.resonator_width.empty()) g.resonator_width = units::length(a.resonator_width);
    if (!a.length.empty()) g.length = units::length(a.length);
    designer::DesignOptions o;
    o.q_unloaded = a.q0;
    o.pi_pulse = units::duration(a.tpi);
    if (lower(a.z_external) == "none") {
        o.z_resonator_external.reset();
    } else {
        double z = 0.0;
        if (!detail::parse_double(a.z_external, z)) throw DomainError("bad --z-external '" + a.z_external + "'");
        o.z_resonator_external = z;
    }
    if (!a.sweep_widths.empty()) {
        std::vector<double> widths;
        for (const auto& w : a.sweep_widths) widths.push_back(units::length(w));
        const auto rows = designer::sweep_width(g, widths, {a.q0}, units::frequency(a.target), o);
        emit(out, a.out, report::dump(report::to_json(rows)));
        return ok;
    }
    const auto rep = designer::evaluate_design(g, o);
    emit(out, a.out, a.format == "table" ? report::to_table(rep) : report::dump(report::to_json(rep)));
    return ok;
}

// ---- field --------------------------------------------------------------------------------------

struct FieldArgs {
    std::string power = "1W";
    double impedance = 50.0;
    std::string distance, diameter;
    // efficiency
    std::string mode = "transmission";
    double z_res = 10.4;
    double z_line = 50.0;
    std::optional<double> q0;
    std::string nu0 = "2.93GHz";
    std::string loop_diameter = "0.4mm";
    double derating = 0.49;
    // decay
    double h0 = 0.0;
    std::string z;
};

std::string amps_per_metre(double h) { return format_fixed(h, 1) + " A/m\n"; }

// ---- nv -----------------------------------------------------------------------------------------

struct NvArgs {
    std::string tpi;
    double efficiency = 0.0;
    double field_am = 0.0;
    std::string rabi;
    std::string power = "1W";
    std::string reference_power = "1W";
    std::string flux;
    double angle_deg = 0.0;
};

nvphys::FieldVector field_at_angle(double b, double angle_deg, const nvphys::NVConfig& cfg) {
    const nvphys::Vec3& n = cfg.nv_axis;
    const nvphys::Vec3 seed = std::abs(n[0]) < 0.9 ? nvphys::Vec3{1.0, 0.0, 0.0} : nvphys::Vec3{0.0, 1.0, 0.0};
    nvphys::Vec3 perp = nvphys::cross(n, seed);
    const double pn = nvphys::norm(perp);
    const double nn = nvphys::norm(n);
    const double t = optics::rad(angle_deg);
    nvphys::Vec3 dir{};
    for (int i = 0; i < 3; ++i) dir[i] = std::cos(t) * n[i] / nn + std::sin(t) * perp[i] / pn;
    return nvphys::FieldVector::along(dir, b);
}

// ---- optics -------------------------------------------------------------------------------------

struct OpticsArgs {
    double na = 1.4;
    double n = 1.518;
    std::string hole = "0.3mm";
    std::string thickness = "0.166mm";
    std::string fwhm;
};

int cmd_optics(const OpticsArgs& a, std::ostream& out) {
    optics::ObjectiveSpec obj;
    obj.numerical_aperture = a.na;
    obj.immersion_index = a.n;
    const double full = optics::cone_angle_from_na(obj);
    const double t = units::length(a.thickness);
    const double restricted = std::min(optics::cone_angle_from_hole(units::length(a.hole), t), full);
    const double fce_full = optics::collection_efficiency(full);
    const double fce_r = optics::collection_efficiency(restricted);
    out << "cone_angle_deg: " << format_fixed(optics::deg(full), 2) << "\n";
    out << "collection_efficiency: " << format_fixed(fce_full, 4) << "\n";
    out << "hole_cone_angle_deg: " << format_fixed(optics::deg(restricted), 2) << "\n";
    out << "hole_collection_efficiency: " << format_fixed(fce_r, 4) << "\n";
    out << "restriction_factor: " << format_fixed(fce_full / fce_r, 3) << "\n";
    out << "hole_for_full_na_mm: " << format_fixed(optics::hole_for_angle(full, t) * 1e3, 3) << "\n";
    if (!a.fwhm.empty())
        out << "full_na_fwhm_nm: "
            << format_fixed(optics::resolution_rescale(units::length(a.fwhm), restricted, full) * 1e9, 1) << "\n";
    return ok;
}

// ---- convert / synth ----------------------------------------------------------------------------

struct ConvertArgs {
    std::string in, out;
    std::string format = "MA";
    std::string unit = "GHz";
};

struct SynthArgs {
    std::string mode = "transmission";
    std::string nu0 = "2.93GHz";
    double q0 = 74.0;
    double beta = 11.5;
    std::string start = "1GHz", stop = "5GHz";
    int points = 401;
    double noise = 0.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "MA";
    std::string unit = "GHz";
};

sparams::SParamTrace synthesize(const SynthArgs& a) {
    resnet::ResonatorParams p{units::frequency(a.nu0), a.q0, a.beta, parse_mode(a.mode)};
    p.validate();
    const double f0 = units::frequency(a.start), f1 = units::frequency(a.stop);
    if (a.points < 2) throw DomainError("--points must be at least 2");
    if (!(f1 > f0) || !(f0 > 0.0)) throw DomainError("need 0 < start < stop");
    if (a.noise < 0.0) throw DomainError("--noise must be non-negative");
    std::mt19937_64 rng(a.seed);
    std::normal_distribution<double> gauss(0.0, a.noise / std::sqrt(2.0));
    auto jitter = [&]() -> sparams::complex {
        if (a.noise == 0.0) return {0.0, 0.0};
        const double re = gauss(rng);
        return {re, gauss(rng)};
    };
    std::vector<double> freqs(static_cast<std::size_t>(a.points));
    std::vector<sparams::SPoint> data(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        freqs[i] = f0 + (f1 - f0) * static_cast<double>(i) / static_cast<double>(a.points - 1);
        const auto s = resnet::response(p, freqs[i]);
        auto& d = data[i];
        d.s11 = s.gamma + jitter();
        if (s.t) {
            d.s21 = *s.t + jitter();
            d.s12 = d.s21;
            d.s22 = d.s11;
        }
    }
    return {std::move(freqs), std::move(data), p.mode == resnet::Mode::Transmission ? 2 : 1};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resonator design, field and trace-fitting toolkit", "omegares"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    const std::vector<std::string> modes{"transmission", "reflection"};
    const std::vector<std::string> data_formats{"MA", "DB", "RI", "ma", "db", "ri"};
    const std::vector<std::string> freq_units{"Hz", "kHz", "MHz", "GHz", "hz", "khz", "mhz", "ghz"};

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "Fit the resonator lineshape to a measured trace");
    fit->add_option("--mode", fa.mode, "transmission (two-port) or reflection (one-port)")
        ->required()
        ->check(CLI::IsMember(modes));
    auto* in_opt = fit->add_option("--in", fa.in, "Touchstone (.s1p/.s2p) or CSV trace");
    auto* glob_opt = fit->add_option("--glob", fa.glob, "Fit every file matching a wildcard pattern");
    in_opt->excludes(glob_opt);
    fit->add_option("--out", fa.out, "JSON report path (default: stdout)");
    fit->add_option("--csv", fa.csv, "Write measured and model dB columns for plotting")->excludes(glob_opt);
    fit->add_option("--window-start", fa.window_start, "Fit window start, e.g. 2GHz");
    fit->add_option("--window-stop", fa.window_stop, "Fit window stop");
    fit->add_option("--window-fraction", fa.window_fraction, "Half-width of the automatic window relative to nu0");
    fit->add_option("--objective", fa.objective, "Residual space")->check(CLI::IsMember({"db", "linear"}));
    fit->add_option("--branch", fa.branch, "Reflection coupling branch")
        ->check(CLI::IsMember({"overcoupled", "undercoupled"}));
    fit->add_flag("--baseline", fa.baseline, "Fit a common gain offset in dB");
    fit->add_option("--max-iterations", fa.max_iterations)->check(CLI::PositiveNumber);
    fit->add_option("--db-floor", fa.db_floor, "Lower clamp for dB residuals");

    DesignArgs da;
    auto* design = app.add_subcommand("design", "Evaluate a resonator design");
    design->add_option("--preset", da.preset, "Starting geometry")->check(CLI::IsMember({"reference", "paper"}));
    design->add_option("--q0", da.q0, "Unloaded quality factor")->check(CLI::PositiveNumber);
    design->add_option("--z-external", da.z_external, "Resonator impedance from EM/measurement in ohm, or 'none'");
    design->add_option("--tpi", da.tpi, "Pi-pulse duration, e.g. 50ns");
    design->add_option("--resonator-width", da.resonator_width, "Resonator strip width, e.g. 3mm");
    design->add_option("--length", da.length, "Resonator strip length, e.g. 17mm");
    design->add_option("--format", da.format, "Report format")->check(CLI::IsMember({"json", "table"}));
    design->add_option("--out", da.out, "Report path (default: stdout)");
    design->add_option("--sweep-widths", da.sweep_widths, "Tabulate these resonator widths instead")->delimiter(',');
    design->add_option("--target", da.target, "Target frequency for the width sweep");

    FieldArgs fl;
    auto* field = app.add_subcommand("field", "Field estimates");
    field->require_subcommand(1);
    auto* wire = field->add_subcommand("wire", "Field of a thin wire carrying the line current");
    wire->add_option("--power", fl.power);
    wire->add_option("--impedance", fl.impedance)->check(CLI::PositiveNumber);
    wire->add_option("--distance", fl.distance, "Distance from the wire, e.g. 10um")->required();
    auto* loop = field->add_subcommand("loop", "Field at the centre of an ideal thin loop");
    loop->add_option("--power", fl.power);
    loop->add_option("--impedance", fl.impedance)->check(CLI::PositiveNumber);
    loop->add_option("--diameter", fl.diameter, "Loop diameter, e.g. 200um")->required();
    auto* eff = field->add_subcommand("efficiency", "Resonator conversion efficiency H/sqrt(P)");
    eff->add_option("--mode", fl.mode)->check(CLI::IsMember(modes));
    eff->add_option("--z-res", fl.z_res, "Resonator impedance in ohm")->check(CLI::PositiveNumber);
    eff->add_option("--z-line", fl.z_line, "Feed-line impedance in ohm")->check(CLI::PositiveNumber);
    eff->add_option("--q0", fl.q0, "Unloaded Q; gives the exact form instead of the high-coupling limit")
        ->check(CLI::PositiveNumber);
    eff->add_option("--nu0", fl.nu0);
    eff->add_option("--loop-diameter", fl.loop_diameter);
    eff->add_option("--derating", fl.derating, "Real-loop to ideal-loop efficiency ratio");
    auto* decay = field->add_subcommand("decay", "On-axis field away from the loop plane");
    decay->add_option("--h0", fl.h0, "Field in the loop plane, A/m")->required();
    decay->add_option("--diameter", fl.diameter, "Effective loop diameter")->required();
    decay->add_option("--z", fl.z, "Height above the loop plane")->required();

    NvArgs na;
    auto* nv = app.add_subcommand("nv", "NV centre drive and splitting estimates");
    nv->require_subcommand(1);
    auto* pipow = nv->add_subcommand("pi-power", "Input power for a pi-pulse of given duration");
    pipow->add_option("--tpi", na.tpi, "Pi-pulse duration, e.g. 50ns")->required();
    pipow->add_option("--efficiency", na.efficiency, "Conversion efficiency in A/m/sqrt(W)")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* rabi = nv->add_subcommand("rabi", "Rabi frequency for a drive field");
    rabi->add_option("--field", na.field_am, "Drive field amplitude in A/m")->required();
    auto* ffr = nv->add_subcommand("field-from-rabi", "Drive field at the reference power from a measured Rabi frequency");
    ffr->add_option("--rabi", na.rabi, "Measured Rabi frequency, e.g. 14MHz")->required();
    ffr->add_option("--power", na.power, "Power used in the measurement");
    ffr->add_option("--reference-power", na.reference_power, "Power to scale the field to");
    auto* split = nv->add_subcommand("splitting", "Ground-state transition frequencies in a static field");
    split->add_option("--field", na.flux, "Flux density, e.g. 8.5mT")->required();
    split->add_option("--angle-deg", na.angle_deg, "Angle between field and NV axis");
    auto* pbw = nv->add_subcommand("bandwidth", "Spectral width excited by a pi-pulse");
    pbw->add_option("--tpi", na.tpi)->required();

    OpticsArgs oa;
    auto* opt = app.add_subcommand("optics", "Collection cone and optical-hole estimates");
    opt->add_option("--na", oa.na, "Objective numerical aperture")->check(CLI::PositiveNumber);
    opt->add_option("--n", oa.n, "Immersion refractive index")->check(CLI::PositiveNumber);
    opt->add_option("--hole", oa.hole, "Optical access hole diameter");
    opt->add_option("--thickness", oa.thickness, "Board stack thickness");
    opt->add_option("--fwhm", oa.fwhm, "Spot size measured through the hole, e.g. 300nm");

    ConvertArgs ca;
    auto* conv = app.add_subcommand("convert", "Rewrite a trace in another format or unit");
    conv->add_option("--in", ca.in)->required();
    conv->add_option("--out", ca.out, "Output path; .csv selects the CSV sidecar (default: stdout)");
    conv->add_option("--format", ca.format)->check(CLI::IsMember(data_formats));
    conv->add_option("--unit", ca.unit)->check(CLI::IsMember(freq_units));

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "Write a model trace, optionally with seeded noise");
    synth->add_option("--mode", sa.mode)->check(CLI::IsMember(modes));
    synth->add_option("--nu0", sa.nu0);
    synth->add_option("--q0", sa.q0)->check(CLI::PositiveNumber);
    synth->add_option("--beta", sa.beta)->check(CLI::PositiveNumber);
    synth->add_option("--start", sa.start);
    synth->add_option("--stop", sa.stop);
    synth->add_option("--points", sa.points);
    synth->add_option("--noise", sa.noise, "Complex Gaussian noise amplitude (linear, rms)");
    synth->add_option("--seed", sa.seed);
    synth->add_option("--out", sa.out);
    synth->add_option("--format", sa.format)->check(CLI::IsMember(data_formats));
    synth->add_option("--unit", sa.unit)->check(CLI::IsMember(freq_units));

    std::vector<const char*> argv{"omegares"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage_error;
    }

    try {
        if (fit->parsed()) {
            if (fa.in.empty() && fa.glob.empty()) {
                err << "fit: one of --in or --glob is required\n";
                return usage_error;
            }
            return cmd_fit(fa, out, err);
        }
        if (design->parsed()) return cmd_design(da, out);
        if (wire->parsed()) {
            out << amps_per_metre(
                fields::wire_field(units::power(fl.power), fl.impedance, units::length(fl.distance)));
            return ok;
        }
        if (loop->parsed()) {
            out << amps_per_metre(
                fields::ideal_loop_field(units::power(fl.power), fl.impedance, units::length(fl.diameter)));
            return ok;
        }
        if (eff->parsed()) {
            fields::LoopSpec ls;
            ls.inner_diameter = units::length(fl.loop_diameter);
            ls.derating = fl.derating;
            const resnet::Mode mode = parse_mode(fl.mode);
            fields::FieldEfficiency e;
            if (fl.q0) {
                const resnet::ResonatorParams p{units::frequency(fl.nu0), *fl.q0,
                                                resnet::coupling_from_impedances(*fl.q0, fl.z_res, fl.z_line), mode};
                e = fields::resonant_efficiency(p, fl.z_res, ls);
            } else {
                e = fields::high_beta_efficiency(mode, fl.z_line, fl.z_res, ls);
            }
            out << format_fixed(e.value, 1) << " A/m/sqrt(W) (" << fields::to_string(e.provenance) << ")\n";
            return ok;
        }
        if (decay->parsed()) {
            out << amps_per_metre(fields::axial_decay(fl.h0, units::length(fl.diameter), units::length(fl.z)));
            return ok;
        }
        const nvphys::NVConfig nvcfg;
        if (pipow->parsed()) {
            const fields::FieldEfficiency e{na.efficiency, fields::Provenance::External, std::nullopt};
            out << format_fixed(nvphys::power_for_pi(units::duration(na.tpi), e, nvcfg), 3) << " W\n";
            return ok;
        }
        if (rabi->parsed()) {
            out << format_fixed(nvphys::rabi_from_field(na.field_am, nvcfg) / 1e6, 3) << " MHz\n";
            return ok;
        }
        if (ffr->parsed()) {
            out << amps_per_metre(nvphys::field_from_rabi(units::frequency(na.rabi), units::power(na.power),
                                                          units::power(na.reference_power), nvcfg));
            return ok;
        }
        if (split->parsed()) {
            const auto tr = nvphys::transition_frequencies(
                field_at_angle(units::flux_density(na.flux), na.angle_deg, nvcfg), nvcfg);
            out << "f_minus: " << format_fixed(tr.f_minus / 1e6, 3) << " MHz\n";
            out << "f_plus: " << format_fixed(tr.f_plus / 1e6, 3) << " MHz\n";
            out << "splitting: " << format_fixed((tr.f_plus - tr.f_minus) / 1e6, 3) << " MHz\n";
            return ok;
        }
        if (pbw->parsed()) {
            out << format_fixed(nvphys::excitation_bandwidth(units::duration(na.tpi)) / 1e6, 3) << " MHz\n";
            return ok;
        }
        if (opt->parsed()) return cmd_optics(oa, out);
        if (conv->parsed()) {
            const auto loaded = load_trace(ca.in);
            for (const auto& w : loaded.warnings) err << ca.in << ": warning: " << w << "\n";
            emit(out, ca.out, serialize_trace(loaded.trace, ca.out, ca.format, ca.unit));
            return ok;
        }
        if (synth->parsed()) {
            emit(out, sa.out, serialize_trace(synthesize(sa), sa.out, sa.format, sa.unit));
            return ok;
        }
    } catch (const units::UnitError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const NoResonance& e) {
        err << "error: " << e.what() << "\n";
        return data_error;
    } catch (const FitError& e) {
        err << "fit failed: " << e.what() << "\n";
        return not_converged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return data_error;
    }
    err << "no command given\n";
    return usage_error;
}

}  // namespace omegares::cli
