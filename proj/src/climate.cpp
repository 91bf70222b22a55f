#include <scint/climate.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace scint {

namespace {

// Monthly normals (Jan..Dec) for the four major cities: relative humidity
// in percent, and average maximum / minimum temperature in degC. City
// coordinates are standard published values; they feed only the
// satellite-geometry helpers, never the fade model.
struct CityNormals {
    const char* name;
    double lat, lon;
    int rh[12];
    int t_max[12];
    int t_min[12];
};

constexpr CityNormals kCities[] = {
    {"Dhaka", 23.81, 90.41,
     {70, 64, 62, 71, 77, 83, 84, 83, 83, 79, 73, 72},
     {25, 28, 32, 34, 33, 32, 32, 32, 32, 32, 29, 26},
     {13, 16, 21, 24, 25, 26, 26, 26, 26, 24, 19, 14}},
    {"Chittagong", 22.36, 91.78,
     {73, 70, 72, 77, 80, 84, 86, 85, 84, 82, 78, 75},
     {26, 28, 31, 32, 32, 32, 31, 31, 32, 32, 30, 27},
     {14, 16, 20, 24, 25, 25, 25, 25, 25, 24, 20, 16}},
    {"Rajshahi", 24.37, 88.60,
     {76, 69, 61, 64, 74, 83, 87, 86, 86, 82, 77, 76},
     {24, 28, 33, 36, 35, 34, 32, 33, 32, 32, 29, 26},
     {11, 13, 18, 23, 24, 26, 26, 26, 26, 23, 18, 13}},
    {"Sylhet", 24.90, 91.87,
     {74, 68, 67, 76, 81, 87, 87, 86, 86, 83, 77, 75},
     {25, 28, 31, 31, 31, 31, 31, 32, 31, 31, 29, 27},
     {13, 15, 18, 21, 23, 24, 25, 25, 25, 23, 19, 14}},
};

constexpr const char* kMonthNames[12] = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December",
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Shortest representation that parses back to the same double.
std::string format_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

void check_record(const MonthlyRecord& r, const std::string& context) {
    if (r.month < 1 || r.month > 12) {
        throw validation_error(context + ": month " + std::to_string(r.month) +
                               " outside [1, 12]");
    }
    if (!(r.rh_pct >= 0.0 && r.rh_pct <= 100.0)) {
        throw validation_error(context + ": rh_pct = " + format_number(r.rh_pct) +
                               " outside [0, 100]");
    }
    for (auto [label, t] : {std::pair{"t_max_c", r.t_max_c}, std::pair{"t_min_c", r.t_min_c}}) {
        if (!(t >= -40.0 && t <= 60.0)) {
            throw validation_error(context + ": " + label + " = " + format_number(t) +
                                   " outside [-40, 60]");
        }
    }
    if (!(r.t_min_c <= r.t_max_c)) {
        throw validation_error(context + ": t_min_c = " + format_number(r.t_min_c) +
                               " exceeds t_max_c = " + format_number(r.t_max_c));
    }
}

void check_coordinates(const std::string& name, double lat, double lon) {
    if (!(lat >= -90.0 && lat <= 90.0)) {
        throw validation_error("site " + name + ": latitude_deg = " + format_number(lat) +
                               " outside [-90, 90]");
    }
    if (!(lon >= -180.0 && lon <= 180.0)) {
        throw validation_error("site " + name + ": longitude_deg = " + format_number(lon) +
                               " outside [-180, 180]");
    }
}

} // namespace

const std::vector<SiteClimate>& builtin_dataset() {
    static const std::vector<SiteClimate> dataset = [] {
        std::vector<SiteClimate> sites;
        for (const auto& c : kCities) {
            SiteClimate site;
            site.name = c.name;
            site.latitude_deg = c.lat;
            site.longitude_deg = c.lon;
            for (int m = 0; m < 12; ++m) {
                site.months[m] = {m + 1, static_cast<double>(c.rh[m]),
                                  static_cast<double>(c.t_max[m]),
                                  static_cast<double>(c.t_min[m])};
            }
            sites.push_back(std::move(site));
        }
        return sites;
    }();
    return dataset;
}

const std::vector<GeoPoint>& territory_extremes() {
    static const std::vector<GeoPoint> extremes = {
        {"Tetulia", 26.5, 88.34},
        {"Teknaf", 20.86, 92.23},
    };
    return extremes;
}

const SiteClimate* find_site(std::string_view name) {
    const std::string wanted = lower(name);
    for (const auto& site : builtin_dataset()) {
        if (lower(site.name) == wanted) {
            return &site;
        }
    }
    return nullptr;
}

void validate(const SiteClimate& site) {
    if (site.name.empty()) {
        throw validation_error("site name must not be empty");
    }
    check_coordinates(site.name, site.latitude_deg, site.longitude_deg);
    for (int m = 0; m < 12; ++m) {
        if (site.months[m].month != m + 1) {
            throw validation_error("site " + site.name + ": record " + std::to_string(m) +
                                   " is not month " + std::to_string(m + 1));
        }
        check_record(site.months[m], "site " + site.name + ", month " + std::to_string(m + 1));
    }
}

AnnualMeans annual_means(const SiteClimate& site) {
    double rh = 0.0, t_max = 0.0, t_min = 0.0;
    for (const auto& m : site.months) {
        rh += m.rh_pct;
        t_max += m.t_max_c;
        t_min += m.t_min_c;
    }
    return {rh / 12.0, t_max / 12.0, t_min / 12.0};
}

ClimateSample monthly_sample(const SiteClimate& site, int month, TemperatureSeries series) {
    if (month < 1 || month > 12) {
        throw validation_error("month " + std::to_string(month) + " outside [1, 12]");
    }
    const MonthlyRecord& r = site.months[month - 1];
    return {series == TemperatureSeries::Max ? r.t_max_c : r.t_min_c, r.rh_pct};
}

ClimateSample annual_sample(const SiteClimate& site, TemperatureSeries series) {
    const AnnualMeans m = annual_means(site);
    return {series == TemperatureSeries::Max ? m.t_max_c : m.t_min_c, m.rh_pct};
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& field, const char* what, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw csv_error(line_no, std::string("cannot parse ") + what + " from '" + field + "'");
    }
    return v;
}

int parse_month(const std::string& field, std::size_t line_no) {
    int v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw csv_error(line_no, "cannot parse month from '" + field + "'");
    }
    return v;
}

} // namespace

std::vector<SiteClimate> load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw csv_error(1, "empty input; expected header '" + std::string(kCsvHeader) + "'");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kCsvHeader) {
        throw csv_error(1, "unexpected header '" + line + "'; expected '" +
                               std::string(kCsvHeader) + "'");
    }

    struct PendingSite {
        double lat = 0.0, lon = 0.0;
        // month -> (record, line number); ordered so diagnostics are stable
        std::map<int, std::pair<MonthlyRecord, std::size_t>> records;
    };
    std::vector<std::string> order;
    std::map<std::string, PendingSite> pending;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue; // tolerate a trailing blank line
        }
        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            throw csv_error(line_no, "expected 7 fields, got " + std::to_string(fields.size()));
        }
        const std::string& name = fields[0];
        if (name.empty()) {
            throw csv_error(line_no, "empty site name");
        }
        const double lat = parse_double(fields[1], "lat_deg", line_no);
        const double lon = parse_double(fields[2], "lon_deg", line_no);
        const int month = parse_month(fields[3], line_no);
        MonthlyRecord rec;
        rec.month = month;
        rec.rh_pct = parse_double(fields[4], "rh_pct", line_no);
        rec.t_max_c = parse_double(fields[5], "t_max_c", line_no);
        rec.t_min_c = parse_double(fields[6], "t_min_c", line_no);

        check_coordinates(name, lat, lon);
        check_record(rec, "line " + std::to_string(line_no) + " (site " + name + ")");

        auto [it, inserted] = pending.try_emplace(name);
        if (inserted) {
            order.push_back(name);
            it->second.lat = lat;
            it->second.lon = lon;
        } else if (it->second.lat != lat || it->second.lon != lon) {
            throw csv_error(line_no, "site " + name + " repeats with different coordinates");
        }
        auto [rit, fresh] = it->second.records.try_emplace(month, rec, line_no);
        if (!fresh) {
            throw csv_error(line_no, "duplicate month " + std::to_string(month) + " for site " +
                                         name + " (first seen at line " +
                                         std::to_string(rit->second.second) + ")");
        }
    }
    if (order.empty()) {
        throw csv_error(line_no, "no data rows");
    }

    std::vector<SiteClimate> sites;
    sites.reserve(order.size());
    for (const auto& name : order) {
        const PendingSite& p = pending.at(name);
        for (int m = 1; m <= 12; ++m) {
            if (!p.records.count(m)) {
                throw validation_error("site " + name + " is missing month " + std::to_string(m) +
                                       " (" + month_name(m) + ")");
            }
        }
        SiteClimate site;
        site.name = name;
        site.latitude_deg = p.lat;
        site.longitude_deg = p.lon;
        for (int m = 1; m <= 12; ++m) {
            site.months[m - 1] = p.records.at(m).first;
        }
        validate(site);
        sites.push_back(std::move(site));
    }
    return sites;
}

std::vector<SiteClimate> load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open '" + path + "' for reading");
    }
    return load_csv(in);
}

void write_csv(std::ostream& out, const std::vector<SiteClimate>& sites) {
    out << kCsvHeader << '\n';
    for (const auto& site : sites) {
        for (const auto& m : site.months) {
            out << site.name << ',' << format_number(site.latitude_deg) << ','
                << format_number(site.longitude_deg) << ',' << m.month << ','
                << format_number(m.rh_pct) << ',' << format_number(m.t_max_c) << ','
                << format_number(m.t_min_c) << '\n';
        }
    }
}

const char* month_name(int month) {
    if (month < 1 || month > 12) {
        throw validation_error("month " + std::to_string(month) + " outside [1, 12]");
    }
    return kMonthNames[month - 1];
}

const char* to_string(TemperatureSeries series) {
    return series == TemperatureSeries::Max ? "max" : "min";
}

} // namespace scint
