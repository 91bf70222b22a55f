#pragma once

// Parameter sweeps, seasonal profiles, and geostationary look-angle
// geometry built on top of the model and climate modules.

#include <scint/climate.hpp>
#include <scint/model.hpp>

#include <array>
#include <string>
#include <vector>

namespace scint {

enum class SweptParameter {
    ElevationDeg,
    FrequencyGhz,
    AntennaDiameterM,
    TimePercent,
    Month,
    SatelliteLongitudeDeg,
};

enum class SeriesSelection {
    Max,
    Min,
    Both,
};

struct SweepSpec {
    SweptParameter swept;
    std::vector<double> values; // non-empty, strictly monotone
    LinkConfig base;            // the swept field of base is ignored
    std::vector<SiteClimate> sites;
    SeriesSelection series = SeriesSelection::Both;
};

struct SweepRow {
    std::string site;
    TemperatureSeries series;
    double value; // the swept parameter's value for this row
    double fade_depth_db;
    bool radicand_clamped;
    bool out_of_validity;
};

struct SweepResult {
    // Echo of the request (sites by name only).
    SweptParameter swept;
    std::vector<double> values;
    LinkConfig base;
    std::vector<std::string> site_names;
    SeriesSelection series;
    // One row per (value x site x series), ordered by swept value first,
    // then site order as given, then series (max before min).
    std::vector<SweepRow> rows;
    ModelVariant variant;
    std::string generated_at; // UTC, RFC 3339
};

// Evaluate the full prediction per row. Climate inputs are annual means,
// except when sweeping the month (that month's records) . Sweeping the
// satellite longitude derives each site's elevation from its coordinates.
// Model validation errors propagate annotated with the offending row.
SweepResult run_sweep(const SweepSpec& spec);

// Twelve predictions per temperature series with the given link, one per
// calendar month.
struct MonthlyProfile {
    std::string site;
    std::array<PredictionTrace, 12> max_series;
    std::array<PredictionTrace, 12> min_series;
};

MonthlyProfile monthly_profile(const SiteClimate& site, const LinkConfig& base);

// Elevation from a site to a geostationary satellite at the given
// longitude. With delta = satellite_lon - site_lon and
// cos psi = cos(lat) * cos(delta):
//
//   elevation = atan[(cos psi - k) / sin psi],  k = 0.15127
//
// (k is the earth-radius to orbit-radius ratio). The sub-satellite point
// (psi = 0) returns exactly 90. A negative result means the satellite is
// below the horizon. Sites beyond |lat| >= 81.3 never see the orbit and are
// rejected.
double geostationary_elevation(double site_lat_deg, double site_lon_deg,
                               double satellite_lon_deg);

struct LongitudeWindow {
    bool empty;
    double west_deg; // meaningful only when !empty
    double east_deg;
};

// Scan satellite longitudes over [-180, 180] at 0.1 deg resolution and
// return the maximal contiguous interval where every given point sees the
// satellite at or above min_elevation_deg (min elevation in (4, 90)).
LongitudeWindow longitude_window(double min_elevation_deg, const std::vector<GeoPoint>& points);

// Same, taking the coordinates from climate sites.
LongitudeWindow longitude_window(double min_elevation_deg, const std::vector<SiteClimate>& sites);

// Same, over the builtin territory extremes (Tetulia and Teknaf).
LongitudeWindow longitude_window(double min_elevation_deg);

const char* to_string(SweptParameter swept);   // "elevation_deg", ...
const char* to_string(SeriesSelection series); // "max" / "min" / "both"

} // namespace scint
