#pragma once

// Monthly climate records per site: a built-in dataset for the four major
// Bangladeshi cities, CSV ingestion/export for user data, and the annual
// aggregation used for "annual" fade figures.

#include <scint/errors.hpp>
#include <scint/model.hpp>

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace scint {

struct MonthlyRecord {
    int month;      // 1-12
    double rh_pct;  // [0, 100]
    double t_max_c; // [-40, 60], >= t_min_c
    double t_min_c; // [-40, 60]
};

struct SiteClimate {
    std::string name;
    double latitude_deg;  // positive north, [-90, 90]
    double longitude_deg; // positive east, [-180, 180]
    // Exactly one record per calendar month, stored in month order
    // (months[i].month == i + 1).
    std::array<MonthlyRecord, 12> months;
};

// Which temperature column drives a prediction. Every study figure carries
// both curves, so most call sites run the model once per series.
enum class TemperatureSeries {
    Max,
    Min,
};

struct AnnualMeans {
    double rh_pct;
    double t_max_c;
    double t_min_c;
};

// A named coordinate, used only by the satellite-geometry helpers.
struct GeoPoint {
    std::string name;
    double latitude_deg;
    double longitude_deg;
};

// The CSV schema, both for ingestion and export. Header is byte-exact.
inline constexpr const char* kCsvHeader = "site,lat_deg,lon_deg,month,rh_pct,t_max_c,t_min_c";

// Dhaka, Chittagong, Rajshahi, Sylhet with their monthly relative-humidity
// and max/min temperature normals compiled in.
const std::vector<SiteClimate>& builtin_dataset();

// Northwestern and southeastern extremes of the territory (Tetulia and
// Teknaf); they bound the elevation any site in between sees toward a
// geostationary satellite, so the longitude-window scan needs only these.
const std::vector<GeoPoint>& territory_extremes();

// Case-insensitive lookup in builtin_dataset(); nullptr when absent.
const SiteClimate* find_site(std::string_view name);

// Throws validation_error on any violated record or site invariant.
void validate(const SiteClimate& site);

// Arithmetic mean of the 12 monthly values per column.
AnnualMeans annual_means(const SiteClimate& site);

// Model input for one calendar month (month in 1-12) of the chosen series.
ClimateSample monthly_sample(const SiteClimate& site, int month, TemperatureSeries series);

// Model input from annual means: average the 12 monthly inputs first, then
// run the model once. (Predicting per month and averaging the fades is a
// different quantity; see monthly_profile in analysis.hpp.)
ClimateSample annual_sample(const SiteClimate& site, TemperatureSeries series);

// Parse CSV in the kCsvHeader schema. Rows may arrive in any order and may
// interleave sites; sites are returned in first-appearance order. Throws
// csv_error with a line number for malformed input, validation_error for
// violated invariants (missing/duplicate months, out-of-range values).
std::vector<SiteClimate> load_csv(std::istream& in);

// Convenience wrapper; throws io_error (with the path) when the file cannot
// be opened.
std::vector<SiteClimate> load_csv_file(const std::string& path);

// Write the same schema. Numbers are serialized shortest-round-trip, so
// export -> load_csv reproduces identical values.
void write_csv(std::ostream& out, const std::vector<SiteClimate>& sites);

const char* month_name(int month); // "January".."December"
const char* to_string(TemperatureSeries series); // "max" / "min"

} // namespace scint
