#include <scint/cli.hpp>

#include <scint/analysis.hpp>
#include <scint/climate.hpp>
#include <scint/model.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace scint::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// A malformed invocation (as opposed to an out-of-range physical value).
struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double band_frequency(const std::string& band) {
    const std::string b = lower(band);
    if (b == "c") return 6.0;
    if (b == "ku") return 10.95;
    if (b == "ka") return 20.0;
    throw usage_failure("unknown band '" + band + "' (expected C, Ku or Ka)");
}

std::string builtin_site_names() {
    std::string names;
    for (const auto& site : builtin_dataset()) {
        if (!names.empty()) {
            names += ", ";
        }
        names += site.name;
    }
    return names;
}

const SiteClimate& require_site(const std::string& name) {
    const SiteClimate* site = find_site(name);
    if (!site) {
        throw validation_error("unknown site '" + name + "'; builtin sites: " +
                               builtin_site_names());
    }
    return *site;
}

ModelVariant parse_variant(const std::string& v) {
    return lower(v) == "paper" ? ModelVariant::PaperCompat : ModelVariant::ItuStandard;
}

SeriesSelection parse_series_selection(const std::string& s) {
    const std::string l = lower(s);
    if (l == "max") return SeriesSelection::Max;
    if (l == "min") return SeriesSelection::Min;
    return SeriesSelection::Both;
}

// Link flags shared by predict, sweep and season.
struct LinkFlags {
    double freq = 0.0;
    std::string band;
    double elev = 0.0;
    double diameter = 8.0;
    double efficiency = 0.5;
    double percent = 0.01;
    std::string variant = "itu";

    CLI::Option* freq_opt = nullptr;
    CLI::Option* band_opt = nullptr;
    CLI::Option* elev_opt = nullptr;

    void add_to(CLI::App& cmd) {
        freq_opt = cmd.add_option("--freq", freq, "Carrier frequency in GHz");
        band_opt = cmd.add_option("--band", band, "Band alias: C (6 GHz), Ku (10.95 GHz), Ka (20 GHz)")
                       ->check(CLI::IsMember({"C", "Ku", "Ka"}, CLI::ignore_case));
        freq_opt->excludes(band_opt);
        band_opt->excludes(freq_opt);
        elev_opt = cmd.add_option("--elev", elev, "Elevation angle in degrees (> 4)");
        cmd.add_option("--diameter", diameter, "Antenna diameter in meters", true);
        cmd.add_option("--efficiency", efficiency, "Antenna aperture efficiency (0, 1]", true);
        cmd.add_option("--percent", percent, "Time percentage [0.01, 50]", true);
        cmd.add_option("--variant", variant,
                       "Averaging-factor exponent variant: itu (11/12) or paper (1/12)", true)
            ->check(CLI::IsMember({"itu", "paper"}, CLI::ignore_case));
    }

    // frequency_required / elevation_required are false when that
    // parameter is the one being swept.
    LinkConfig to_config(bool frequency_required, bool elevation_required) const {
        LinkConfig cfg{};
        if (*freq_opt) {
            cfg.frequency_ghz = freq;
        } else if (*band_opt) {
            cfg.frequency_ghz = band_frequency(band);
        } else if (frequency_required) {
            throw usage_failure("one of --freq or --band is required");
        }
        if (*elev_opt) {
            cfg.elevation_deg = elev;
        } else if (elevation_required) {
            throw usage_failure("--elev is required");
        }
        cfg.antenna_diameter_m = diameter;
        cfg.antenna_efficiency = efficiency;
        cfg.time_percent = percent;
        cfg.variant = parse_variant(variant);
        return cfg;
    }
};

ordered_json link_json(const LinkConfig& cfg) {
    ordered_json j;
    j["frequency_ghz"] = cfg.frequency_ghz;
    j["elevation_deg"] = cfg.elevation_deg;
    j["antenna_diameter_m"] = cfg.antenna_diameter_m;
    j["antenna_efficiency"] = cfg.antenna_efficiency;
    j["time_percent"] = cfg.time_percent;
    j["turbulence_height_m"] = cfg.turbulence_height_m;
    j["variant"] = to_string(cfg.variant);
    return j;
}

ordered_json trace_json(const PredictionTrace& t) {
    ordered_json j;
    j["e_s_hpa"] = t.e_s_hpa;
    j["n_wet_ppm"] = t.n_wet_ppm;
    j["sigma_ref_db"] = t.sigma_ref_db;
    j["path_length_m"] = t.path_length_m;
    j["d_eff_m"] = t.d_eff_m;
    j["x"] = t.x;
    j["g"] = t.g;
    j["sigma_db"] = t.sigma_db;
    j["a_p"] = t.a_p;
    j["fade_depth_db"] = t.fade_depth_db;
    j["radicand_clamped"] = t.radicand_clamped;
    j["out_of_validity"] = t.out_of_validity;
    return j;
}

void emit_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
}

void add_flag_warnings(std::vector<std::string>& warnings, double frequency_ghz,
                       bool out_of_validity, bool radicand_clamped) {
    if (out_of_validity) {
        warnings.push_back("frequency " + format_number(frequency_ghz) +
                           " GHz is outside the [4, 20] GHz validity range; "
                           "the result is an extrapolation");
    }
    if (radicand_clamped) {
        warnings.push_back("aperture-averaging radicand went negative and was clamped; "
                           "the predicted fade is exactly 0");
    }
}

// ---- predict ---------------------------------------------------------------

struct PredictArgs {
    std::string site;
    double temp = 0.0;
    double rh = 0.0;
    LinkFlags link;
    std::string series = "max";
    std::string month = "annual";
    std::string format = "json";

    CLI::Option* site_opt = nullptr;
    CLI::Option* temp_opt = nullptr;
    CLI::Option* rh_opt = nullptr;
    CLI::Option* series_opt = nullptr;
    CLI::Option* month_opt = nullptr;
};

void setup_predict(CLI::App& cmd, PredictArgs& a) {
    a.site_opt = cmd.add_option("--site", a.site, "Builtin site name (see `dataset --export`)");
    a.temp_opt = cmd.add_option("--temp", a.temp, "Average ground temperature in degC");
    a.rh_opt = cmd.add_option("--rh", a.rh, "Average relative humidity in percent");
    a.site_opt->excludes(a.temp_opt);
    a.site_opt->excludes(a.rh_opt);
    a.temp_opt->needs(a.rh_opt);
    a.rh_opt->needs(a.temp_opt);
    a.link.add_to(cmd);
    a.series_opt = cmd.add_option("--series", a.series,
                                  "Temperature series for --site runs: max or min", true)
                       ->check(CLI::IsMember({"max", "min"}, CLI::ignore_case));
    a.month_opt = cmd.add_option("--month", a.month,
                                 "Calendar month 1-12 for --site runs, or 'annual'", true);
    cmd.add_option("--format", a.format, "Output format: json or csv", true)
        ->check(CLI::IsMember({"json", "csv"}, CLI::ignore_case));
}

int run_predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
    const LinkConfig cfg = a.link.to_config(true, true);

    ClimateSample climate{};
    std::optional<int> month; // nullopt = annual
    if (*a.site_opt) {
        if (lower(a.month) != "annual") {
            int m = 0;
            const char* first = a.month.data();
            const char* last = a.month.data() + a.month.size();
            auto [ptr, ec] = std::from_chars(first, last, m);
            if (ec != std::errc() || ptr != last) {
                throw usage_failure("--month expects 1-12 or 'annual', got '" + a.month + "'");
            }
            month = m;
        }
        const SiteClimate& site = require_site(a.site);
        const TemperatureSeries series =
            lower(a.series) == "min" ? TemperatureSeries::Min : TemperatureSeries::Max;
        climate = month ? monthly_sample(site, *month, series) : annual_sample(site, series);
    } else if (*a.temp_opt) {
        if (*a.series_opt || *a.month_opt) {
            throw usage_failure("--series/--month apply only to --site runs");
        }
        climate = {a.temp, a.rh};
    } else {
        throw usage_failure("either --site or --temp/--rh is required");
    }

    const PredictionTrace trace = predict(climate, cfg);

    std::vector<std::string> warnings;
    add_flag_warnings(warnings, cfg.frequency_ghz, trace.out_of_validity,
                      trace.radicand_clamped);
    emit_warnings(warnings, err);

    if (lower(a.format) == "csv") {
        out << "e_s_hpa,n_wet_ppm,sigma_ref_db,path_length_m,d_eff_m,x,g,sigma_db,a_p,"
               "fade_depth_db,radicand_clamped,out_of_validity\n";
        out << format_number(trace.e_s_hpa) << ',' << format_number(trace.n_wet_ppm) << ','
            << format_number(trace.sigma_ref_db) << ',' << format_number(trace.path_length_m)
            << ',' << format_number(trace.d_eff_m) << ',' << format_number(trace.x) << ','
            << format_number(trace.g) << ',' << format_number(trace.sigma_db) << ','
            << format_number(trace.a_p) << ',' << format_number(trace.fade_depth_db) << ','
            << (trace.radicand_clamped ? "true" : "false") << ','
            << (trace.out_of_validity ? "true" : "false") << '\n';
        return kExitOk;
    }

    ordered_json doc;
    doc["command"] = "predict";
    ordered_json inputs;
    if (*a.site_opt) {
        inputs["site"] = require_site(a.site).name;
        inputs["series"] = lower(a.series);
        if (month) {
            inputs["month"] = *month;
        } else {
            inputs["month"] = "annual";
        }
    }
    inputs["temperature_c"] = climate.temperature_c;
    inputs["relative_humidity_pct"] = climate.relative_humidity_pct;
    for (auto& [key, value] : link_json(cfg).items()) {
        inputs[key] = value;
    }
    doc["inputs"] = inputs;
    doc["trace"] = trace_json(trace);
    doc["warnings"] = warnings;
    out << doc.dump(2) << '\n';
    return kExitOk;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::string swept;
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    std::string sites = "all";
    LinkFlags link;
    std::string series = "both";
    std::string format = "csv";
};

void setup_sweep(CLI::App& cmd, SweepArgs& a) {
    cmd.add_option("--sweep", a.swept, "Swept parameter: elev, freq, diameter or percent")
        ->required()
        ->check(CLI::IsMember({"elev", "freq", "diameter", "percent"}, CLI::ignore_case));
    cmd.add_option("--from", a.from, "First swept value")->required();
    cmd.add_option("--to", a.to, "Last swept value (inclusive)")->required();
    cmd.add_option("--step", a.step, "Positive increment")->required();
    cmd.add_option("--sites", a.sites, "'all' or a comma-separated list of builtin sites", true);
    a.link.add_to(cmd);
    cmd.add_option("--series", a.series, "Temperature series: max, min or both", true)
        ->check(CLI::IsMember({"max", "min", "both"}, CLI::ignore_case));
    cmd.add_option("--format", a.format, "Output format: csv or json", true)
        ->check(CLI::IsMember({"json", "csv"}, CLI::ignore_case));
}

std::vector<double> build_range(double from, double to, double step) {
    if (!(step > 0.0)) {
        throw usage_failure("--step must be positive");
    }
    if (from > to) {
        throw usage_failure("--from must not exceed --to");
    }
    std::vector<double> values;
    const double span = to - from;
    const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        values.push_back(from + static_cast<double>(i) * step);
    }
    return values;
}

std::vector<SiteClimate> resolve_sites(const std::string& arg) {
    if (lower(arg) == "all") {
        return builtin_dataset();
    }
    std::vector<SiteClimate> sites;
    std::stringstream ss(arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) {
            throw usage_failure("--sites contains an empty name");
        }
        sites.push_back(require_site(name));
    }
    if (sites.empty()) {
        throw usage_failure("--sites must name at least one site");
    }
    return sites;
}

SweptParameter parse_swept(const std::string& s) {
    const std::string l = lower(s);
    if (l == "elev") return SweptParameter::ElevationDeg;
    if (l == "freq") return SweptParameter::FrequencyGhz;
    if (l == "diameter") return SweptParameter::AntennaDiameterM;
    return SweptParameter::TimePercent;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, const char* value_column) {
    out << "site,series," << value_column << ",fade_depth_db,radicand_clamped,out_of_validity\n";
    for (const auto& row : result.rows) {
        out << row.site << ',' << to_string(row.series) << ',' << format_number(row.value) << ','
            << format_number(row.fade_depth_db) << ',' << (row.radicand_clamped ? "true" : "false")
            << ',' << (row.out_of_validity ? "true" : "false") << '\n';
    }
}

ordered_json sweep_rows_json(const SweepResult& result) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : result.rows) {
        ordered_json r;
        r["site"] = row.site;
        r["series"] = to_string(row.series);
        r["value"] = row.value;
        r["fade_depth_db"] = row.fade_depth_db;
        r["radicand_clamped"] = row.radicand_clamped;
        r["out_of_validity"] = row.out_of_validity;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> sweep_warnings(const SweepResult& result) {
    std::vector<std::string> warnings;
    const bool any_validity =
        std::any_of(result.rows.begin(), result.rows.end(),
                    [](const SweepRow& r) { return r.out_of_validity; });
    const bool any_clamp = std::any_of(result.rows.begin(), result.rows.end(),
                                       [](const SweepRow& r) { return r.radicand_clamped; });
    if (any_validity) {
        warnings.push_back("some rows are outside the [4, 20] GHz validity range");
    }
    if (any_clamp) {
        warnings.push_back("some rows clamp the aperture-averaging radicand; their fade is 0");
    }
    return warnings;
}

int run_sweep_cmd(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    const SweptParameter swept = parse_swept(a.swept);
    SweepSpec spec;
    spec.swept = swept;
    spec.values = build_range(a.from, a.to, a.step);
    spec.base = a.link.to_config(swept != SweptParameter::FrequencyGhz,
                                 swept != SweptParameter::ElevationDeg);
    spec.sites = resolve_sites(a.sites);
    spec.series = parse_series_selection(a.series);

    const SweepResult result = run_sweep(spec);
    const std::vector<std::string> warnings = sweep_warnings(result);
    emit_warnings(warnings, err);

    if (lower(a.format) == "json") {
        ordered_json doc;
        doc["command"] = "sweep";
        ordered_json spec_j;
        spec_j["swept"] = to_string(result.swept);
        spec_j["values"] = result.values;
        ordered_json base = link_json(result.base);
        base.erase(to_string(result.swept)); // the swept field is per-row, not fixed
        spec_j["base"] = base;
        spec_j["sites"] = result.site_names;
        spec_j["series"] = to_string(result.series);
        doc["spec"] = spec_j;
        doc["rows"] = sweep_rows_json(result);
        doc["metadata"] = {{"variant", to_string(result.variant)},
                           {"generated_at", result.generated_at}};
        doc["warnings"] = warnings;
        out << doc.dump(2) << '\n';
    } else {
        write_sweep_csv(out, result, to_string(result.swept));
    }
    return kExitOk;
}

// ---- season ----------------------------------------------------------------

struct SeasonArgs {
    std::string site;
    LinkFlags link;
    std::string series = "both";
    std::string format = "csv";
};

void setup_season(CLI::App& cmd, SeasonArgs& a) {
    cmd.add_option("--site", a.site, "Builtin site name")->required();
    a.link.add_to(cmd);
    cmd.add_option("--series", a.series, "Temperature series: max, min or both", true)
        ->check(CLI::IsMember({"max", "min", "both"}, CLI::ignore_case));
    cmd.add_option("--format", a.format, "Output format: csv or json", true)
        ->check(CLI::IsMember({"json", "csv"}, CLI::ignore_case));
}

int run_season(const SeasonArgs& a, std::ostream& out, std::ostream& err) {
    const LinkConfig cfg = a.link.to_config(true, true);
    const SiteClimate& site = require_site(a.site);
    const SeriesSelection selection = parse_series_selection(a.series);

    const MonthlyProfile profile = monthly_profile(site, cfg);

    struct Row {
        TemperatureSeries series;
        int month;
        const PredictionTrace* trace;
    };
    std::vector<Row> rows;
    if (selection == SeriesSelection::Max || selection == SeriesSelection::Both) {
        for (int m = 1; m <= 12; ++m) {
            rows.push_back({TemperatureSeries::Max, m, &profile.max_series[m - 1]});
        }
    }
    if (selection == SeriesSelection::Min || selection == SeriesSelection::Both) {
        for (int m = 1; m <= 12; ++m) {
            rows.push_back({TemperatureSeries::Min, m, &profile.min_series[m - 1]});
        }
    }

    std::vector<std::string> warnings;
    const bool any_validity = std::any_of(rows.begin(), rows.end(),
                                          [](const Row& r) { return r.trace->out_of_validity; });
    if (any_validity) {
        add_flag_warnings(warnings, cfg.frequency_ghz, true, false);
    }
    if (std::any_of(rows.begin(), rows.end(),
                    [](const Row& r) { return r.trace->radicand_clamped; })) {
        warnings.push_back("some months clamp the aperture-averaging radicand; their fade is 0");
    }
    emit_warnings(warnings, err);

    if (lower(a.format) == "json") {
        ordered_json doc;
        doc["command"] = "season";
        ordered_json inputs;
        inputs["site"] = site.name;
        for (auto& [key, value] : link_json(cfg).items()) {
            inputs[key] = value;
        }
        inputs["series"] = to_string(selection);
        doc["inputs"] = inputs;
        ordered_json jrows = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json jr;
            jr["site"] = site.name;
            jr["series"] = to_string(r.series);
            jr["month"] = r.month;
            jr["month_name"] = month_name(r.month);
            jr["fade_depth_db"] = r.trace->fade_depth_db;
            jr["radicand_clamped"] = r.trace->radicand_clamped;
            jr["out_of_validity"] = r.trace->out_of_validity;
            jrows.push_back(std::move(jr));
        }
        doc["rows"] = jrows;
        doc["metadata"] = {{"variant", to_string(cfg.variant)}};
        doc["warnings"] = warnings;
        out << doc.dump(2) << '\n';
    } else {
        out << "site,series,month,month_name,fade_depth_db,radicand_clamped,out_of_validity\n";
        for (const auto& r : rows) {
            out << site.name << ',' << to_string(r.series) << ',' << r.month << ','
                << month_name(r.month) << ',' << format_number(r.trace->fade_depth_db) << ','
                << (r.trace->radicand_clamped ? "true" : "false") << ','
                << (r.trace->out_of_validity ? "true" : "false") << '\n';
        }
    }
    return kExitOk;
}

// ---- dataset ---------------------------------------------------------------

struct DatasetArgs {
    bool do_export = false;
    std::string validate_path;

    CLI::Option* export_opt = nullptr;
    CLI::Option* validate_opt = nullptr;
};

void setup_dataset(CLI::App& cmd, DatasetArgs& a) {
    a.export_opt = cmd.add_flag("--export", a.do_export, "Write the builtin dataset as CSV");
    a.validate_opt =
        cmd.add_option("--validate", a.validate_path, "Check a climate CSV file and report issues");
    a.export_opt->excludes(a.validate_opt);
    a.validate_opt->excludes(a.export_opt);
}

int run_dataset(const DatasetArgs& a, std::ostream& out, std::ostream& err) {
    if (*a.export_opt) {
        write_csv(out, builtin_dataset());
        return kExitOk;
    }
    if (*a.validate_opt) {
        const std::vector<SiteClimate> sites = load_csv_file(a.validate_path);
        out << "ok: " << sites.size() << (sites.size() == 1 ? " site" : " sites")
            << ", 12 months each\n";
        return kExitOk;
    }
    (void)err;
    throw usage_failure("dataset requires --export or --validate <file>");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tropospheric scintillation fade-depth prediction (ITU-R P.618 procedure)"};
    app.require_subcommand(1);

    PredictArgs predict_args;
    CLI::App* predict_cmd =
        app.add_subcommand("predict", "One prediction with the full step-by-step trace");
    setup_predict(*predict_cmd, predict_args);

    SweepArgs sweep_args;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Fade depth across a range of one link parameter");
    setup_sweep(*sweep_cmd, sweep_args);

    SeasonArgs season_args;
    CLI::App* season_cmd =
        app.add_subcommand("season", "Month-by-month fade profile for a builtin site");
    setup_season(*season_cmd, season_args);

    DatasetArgs dataset_args;
    CLI::App* dataset_cmd =
        app.add_subcommand("dataset", "Export the builtin climate dataset or validate a CSV");
    setup_dataset(*dataset_cmd, dataset_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*predict_cmd) {
            return run_predict(predict_args, out, err);
        }
        if (*sweep_cmd) {
            return run_sweep_cmd(sweep_args, out, err);
        }
        if (*season_cmd) {
            return run_season(season_args, out, err);
        }
        return run_dataset(dataset_args, out, err);
    } catch (const usage_failure& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const io_error& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const csv_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

} // namespace scint::cli
