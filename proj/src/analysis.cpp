#include <scint/analysis.hpp>

#include <cmath>
#include <ctime>
#include <sstream>

namespace scint {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Earth radius over geostationary orbit radius.
constexpr double kRadiusRatio = 0.15127;

// Above this latitude the geostationary arc is below the horizon entirely.
constexpr double kVisibilityLatLimit = 81.3;

double deg2rad(double deg) { return deg * (kPi / 180.0); }
double rad2deg(double rad) { return rad * (180.0 / kPi); }

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void check_swept_value(SweptParameter swept, double v) {
    switch (swept) {
    case SweptParameter::ElevationDeg:
        if (!(v > 4.0 && v <= 90.0)) {
            throw validation_error("swept elevation_deg value " + num(v) +
                                   " outside (4, 90]");
        }
        break;
    case SweptParameter::FrequencyGhz:
        if (!(v > 0.0)) {
            throw validation_error("swept frequency_ghz value " + num(v) + " must be positive");
        }
        break;
    case SweptParameter::AntennaDiameterM:
        if (!(v > 0.0)) {
            throw validation_error("swept antenna_diameter_m value " + num(v) +
                                   " must be positive");
        }
        break;
    case SweptParameter::TimePercent:
        if (!(v >= 0.01 && v <= 50.0)) {
            throw validation_error("swept time_percent value " + num(v) +
                                   " outside [0.01, 50]");
        }
        break;
    case SweptParameter::Month:
        if (!(v >= 1.0 && v <= 12.0 && v == std::floor(v))) {
            throw validation_error("swept month value " + num(v) +
                                   " must be a whole month in [1, 12]");
        }
        break;
    case SweptParameter::SatelliteLongitudeDeg:
        if (!(v >= -180.0 && v <= 180.0)) {
            throw validation_error("swept satellite_longitude_deg value " + num(v) +
                                   " outside [-180, 180]");
        }
        break;
    }
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) {
        throw validation_error("sweep values must not be empty");
    }
    if (spec.values.size() > 1) {
        const bool increasing = spec.values[1] > spec.values[0];
        for (std::size_t i = 1; i < spec.values.size(); ++i) {
            const bool step_up = spec.values[i] > spec.values[i - 1];
            if (spec.values[i] == spec.values[i - 1] || step_up != increasing) {
                throw validation_error("sweep values must be strictly monotone (violated at index " +
                                       std::to_string(i) + ")");
            }
        }
    }
    for (double v : spec.values) {
        check_swept_value(spec.swept, v);
    }
    if (spec.sites.empty()) {
        throw validation_error("sweep requires at least one site");
    }
    for (const auto& site : spec.sites) {
        validate(site);
    }

    std::vector<TemperatureSeries> series;
    if (spec.series == SeriesSelection::Max || spec.series == SeriesSelection::Both) {
        series.push_back(TemperatureSeries::Max);
    }
    if (spec.series == SeriesSelection::Min || spec.series == SeriesSelection::Both) {
        series.push_back(TemperatureSeries::Min);
    }

    SweepResult result;
    result.swept = spec.swept;
    result.values = spec.values;
    result.base = spec.base;
    for (const auto& site : spec.sites) {
        result.site_names.push_back(site.name);
    }
    result.series = spec.series;
    result.variant = spec.base.variant;
    result.generated_at = utc_timestamp();
    result.rows.reserve(spec.values.size() * spec.sites.size() * series.size());

    for (double v : spec.values) {
        for (const auto& site : spec.sites) {
            for (TemperatureSeries s : series) {
                LinkConfig cfg = spec.base;
                ClimateSample climate{};
                switch (spec.swept) {
                case SweptParameter::ElevationDeg:
                    cfg.elevation_deg = v;
                    climate = annual_sample(site, s);
                    break;
                case SweptParameter::FrequencyGhz:
                    cfg.frequency_ghz = v;
                    climate = annual_sample(site, s);
                    break;
                case SweptParameter::AntennaDiameterM:
                    cfg.antenna_diameter_m = v;
                    climate = annual_sample(site, s);
                    break;
                case SweptParameter::TimePercent:
                    cfg.time_percent = v;
                    climate = annual_sample(site, s);
                    break;
                case SweptParameter::Month:
                    climate = monthly_sample(site, static_cast<int>(v), s);
                    break;
                case SweptParameter::SatelliteLongitudeDeg:
                    cfg.elevation_deg =
                        geostationary_elevation(site.latitude_deg, site.longitude_deg, v);
                    climate = annual_sample(site, s);
                    break;
                }
                try {
                    const PredictionTrace t = predict(climate, cfg);
                    result.rows.push_back(
                        {site.name, s, v, t.fade_depth_db, t.radicand_clamped, t.out_of_validity});
                } catch (const validation_error& e) {
                    throw validation_error("sweep row (site=" + site.name + ", series=" +
                                           to_string(s) + ", value=" + num(v) + "): " + e.what());
                }
            }
        }
    }
    return result;
}

MonthlyProfile monthly_profile(const SiteClimate& site, const LinkConfig& base) {
    validate(site);
    MonthlyProfile profile;
    profile.site = site.name;
    for (int m = 1; m <= 12; ++m) {
        profile.max_series[m - 1] = predict(monthly_sample(site, m, TemperatureSeries::Max), base);
        profile.min_series[m - 1] = predict(monthly_sample(site, m, TemperatureSeries::Min), base);
    }
    return profile;
}

double geostationary_elevation(double site_lat_deg, double site_lon_deg,
                               double satellite_lon_deg) {
    if (!(std::abs(site_lat_deg) < kVisibilityLatLimit)) {
        throw validation_error("site latitude " + num(site_lat_deg) +
                               " is at or beyond the geostationary visibility limit (81.3 deg)");
    }
    for (auto [label, lon] : {std::pair{"site longitude", site_lon_deg},
                              std::pair{"satellite longitude", satellite_lon_deg}}) {
        if (!(lon >= -180.0 && lon <= 180.0)) {
            throw validation_error(std::string(label) + " " + num(lon) +
                                   " outside [-180, 180]");
        }
    }
    const double delta = deg2rad(satellite_lon_deg - site_lon_deg);
    const double cos_psi = std::cos(deg2rad(site_lat_deg)) * std::cos(delta);
    if (cos_psi >= 1.0) {
        return 90.0; // sub-satellite point
    }
    const double psi = std::acos(cos_psi);
    return rad2deg(std::atan((cos_psi - kRadiusRatio) / std::sin(psi)));
}

LongitudeWindow longitude_window(double min_elevation_deg, const std::vector<GeoPoint>& points) {
    if (!(min_elevation_deg > 4.0 && min_elevation_deg < 90.0)) {
        throw validation_error("min_elevation_deg = " + num(min_elevation_deg) +
                               " outside (4, 90)");
    }
    if (points.empty()) {
        throw validation_error("longitude window requires at least one point");
    }

    // 0.1 deg grid over [-180, 180]; keep the longest contiguous feasible run.
    int best_start = 0, best_len = 0;
    int run_start = 0, run_len = 0;
    for (int i = -1800; i <= 1800; ++i) {
        const double lon = i / 10.0;
        bool ok = true;
        for (const auto& p : points) {
            if (geostationary_elevation(p.latitude_deg, p.longitude_deg, lon) <
                min_elevation_deg) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (run_len == 0) {
                run_start = i;
            }
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
    }
    if (best_len == 0) {
        return {true, 0.0, 0.0};
    }
    return {false, best_start / 10.0, (best_start + best_len - 1) / 10.0};
}

LongitudeWindow longitude_window(double min_elevation_deg, const std::vector<SiteClimate>& sites) {
    std::vector<GeoPoint> points;
    points.reserve(sites.size());
    for (const auto& s : sites) {
        points.push_back({s.name, s.latitude_deg, s.longitude_deg});
    }
    return longitude_window(min_elevation_deg, points);
}

LongitudeWindow longitude_window(double min_elevation_deg) {
    return longitude_window(min_elevation_deg, territory_extremes());
}

const char* to_string(SweptParameter swept) {
    switch (swept) {
    case SweptParameter::ElevationDeg: return "elevation_deg";
    case SweptParameter::FrequencyGhz: return "frequency_ghz";
    case SweptParameter::AntennaDiameterM: return "antenna_diameter_m";
    case SweptParameter::TimePercent: return "time_percent";
    case SweptParameter::Month: return "month";
    case SweptParameter::SatelliteLongitudeDeg: return "satellite_longitude_deg";
    }
    return "unknown";
}

const char* to_string(SeriesSelection series) {
    switch (series) {
    case SeriesSelection::Max: return "max";
    case SeriesSelection::Min: return "min";
    case SeriesSelection::Both: return "both";
    }
    return "unknown";
}

} // namespace scint
