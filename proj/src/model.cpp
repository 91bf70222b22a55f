#include <scint/model.hpp>

#include <cmath>
#include <sstream>

namespace scint {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double deg2rad(double deg) { return deg * (kPi / 180.0); }

[[noreturn]] void fail(const std::string& msg) { throw validation_error(msg); }

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_range(const char* field, double v, double lo, double hi) {
    if (!(v >= lo && v <= hi)) {
        fail(std::string(field) + " = " + num(v) + " outside [" + num(lo) + ", " + num(hi) + "]");
    }
}

void check_positive(const char* field, double v) {
    if (!(v > 0.0)) {
        fail(std::string(field) + " = " + num(v) + " must be positive");
    }
}

void check_elevation(double elevation_deg) {
    if (!(elevation_deg > 4.0)) {
        fail("elevation_deg = " + num(elevation_deg) +
             " must be greater than 4 degrees; the low-elevation procedure is a separate "
             "method and is not implemented here");
    }
    if (!(elevation_deg <= 90.0)) {
        fail("elevation_deg = " + num(elevation_deg) + " exceeds 90 degrees");
    }
}

void check_time_percent(double p) {
    if (!(p >= 0.01 && p <= 50.0)) {
        fail("time_percent = " + num(p) + " outside the supported range [0.01, 50] percent");
    }
}

} // namespace

double saturation_vapour_pressure(double temperature_c) {
    check_range("temperature_c", temperature_c, -40.0, 60.0);
    // hPa; t in degC
    return 6.11 * std::exp(19.7 * temperature_c / (temperature_c + 273.0));
}

double wet_refractivity(double temperature_c, double relative_humidity_pct) {
    check_range("relative_humidity_pct", relative_humidity_pct, 0.0, 100.0);
    const double e_s = saturation_vapour_pressure(temperature_c); // also checks t
    const double t_k = temperature_c + 273.0;
    return 3730.0 * relative_humidity_pct * e_s / (t_k * t_k); // ppm
}

double reference_sigma(double n_wet_ppm) {
    if (!(n_wet_ppm >= 0.0)) {
        fail("n_wet_ppm = " + num(n_wet_ppm) + " must be non-negative");
    }
    return 3.6e-3 + 1.0e-4 * n_wet_ppm; // dB
}

double effective_path_length(double elevation_deg, double turbulence_height_m) {
    check_elevation(elevation_deg);
    check_positive("turbulence_height_m", turbulence_height_m);
    const double s = std::sin(deg2rad(elevation_deg));
    return 2.0 * turbulence_height_m / (std::sqrt(s * s + 2.35e-4) + s); // m
}

double effective_antenna_diameter(double antenna_diameter_m, double antenna_efficiency) {
    check_positive("antenna_diameter_m", antenna_diameter_m);
    if (!(antenna_efficiency > 0.0 && antenna_efficiency <= 1.0)) {
        fail("antenna_efficiency = " + num(antenna_efficiency) + " outside (0, 1]");
    }
    return std::sqrt(antenna_efficiency) * antenna_diameter_m; // m
}

double aperture_parameter(double d_eff_m, double frequency_ghz, double path_length_m) {
    if (!(d_eff_m >= 0.0)) {
        fail("d_eff_m = " + num(d_eff_m) + " must be non-negative");
    }
    check_positive("frequency_ghz", frequency_ghz);
    check_positive("path_length_m", path_length_m);
    return 1.22 * d_eff_m * d_eff_m * frequency_ghz / path_length_m;
}

AveragingFactor averaging_factor(double d_eff_m, double frequency_ghz, double path_length_m,
                                 ModelVariant variant) {
    const double x = aperture_parameter(d_eff_m, frequency_ghz, path_length_m);
    const double exponent = variant == ModelVariant::PaperCompat ? 1.0 / 12.0 : 11.0 / 12.0;
    const double radicand = 3.86 * std::pow(x * x + 1.0, exponent) *
                                std::sin(11.0 / 6.0 * std::atan(1.0 / x)) -
                            7.08 * std::pow(x, 5.0 / 6.0);
    if (radicand < 0.0) {
        return {0.0, true};
    }
    return {std::sqrt(radicand), false};
}

double signal_sigma(double sigma_ref_db, double frequency_ghz, double g, double elevation_deg) {
    if (!(sigma_ref_db >= 0.0)) {
        fail("sigma_ref_db = " + num(sigma_ref_db) + " must be non-negative");
    }
    check_positive("frequency_ghz", frequency_ghz);
    if (!(g >= 0.0)) {
        fail("g = " + num(g) + " must be non-negative");
    }
    check_elevation(elevation_deg);
    const double s = std::sin(deg2rad(elevation_deg));
    return sigma_ref_db * std::pow(frequency_ghz, 7.0 / 12.0) * g / std::pow(s, 1.2); // dB
}

double time_percentage_factor(double time_percent) {
    check_time_percent(time_percent);
    const double u = std::log10(time_percent);
    return -0.061 * u * u * u + 0.072 * u * u - 1.71 * u + 3.0;
}

double fade_depth(double a_p, double sigma_db) {
    return a_p * sigma_db; // dB exceeded for p% of the time
}

bool frequency_in_validity_range(double frequency_ghz) {
    return frequency_ghz >= 4.0 && frequency_ghz <= 20.0;
}

void validate(const ClimateSample& climate) {
    check_range("temperature_c", climate.temperature_c, -40.0, 60.0);
    check_range("relative_humidity_pct", climate.relative_humidity_pct, 0.0, 100.0);
}

void validate(const LinkConfig& link) {
    check_positive("frequency_ghz", link.frequency_ghz);
    check_elevation(link.elevation_deg);
    check_positive("antenna_diameter_m", link.antenna_diameter_m);
    if (!(link.antenna_efficiency > 0.0 && link.antenna_efficiency <= 1.0)) {
        fail("antenna_efficiency = " + num(link.antenna_efficiency) + " outside (0, 1]");
    }
    check_time_percent(link.time_percent);
    check_positive("turbulence_height_m", link.turbulence_height_m);
}

PredictionTrace predict(const ClimateSample& climate, const LinkConfig& link) {
    validate(climate);
    validate(link);

    PredictionTrace t{};
    t.e_s_hpa = saturation_vapour_pressure(climate.temperature_c);
    t.n_wet_ppm = wet_refractivity(climate.temperature_c, climate.relative_humidity_pct);
    t.sigma_ref_db = reference_sigma(t.n_wet_ppm);
    t.path_length_m = effective_path_length(link.elevation_deg, link.turbulence_height_m);
    t.d_eff_m = effective_antenna_diameter(link.antenna_diameter_m, link.antenna_efficiency);
    t.x = aperture_parameter(t.d_eff_m, link.frequency_ghz, t.path_length_m);
    const AveragingFactor af =
        averaging_factor(t.d_eff_m, link.frequency_ghz, t.path_length_m, link.variant);
    t.g = af.g;
    t.radicand_clamped = af.radicand_clamped;
    t.sigma_db = signal_sigma(t.sigma_ref_db, link.frequency_ghz, t.g, link.elevation_deg);
    t.a_p = time_percentage_factor(link.time_percent);
    t.fade_depth_db = fade_depth(t.a_p, t.sigma_db);
    t.out_of_validity = !frequency_in_validity_range(link.frequency_ghz);
    return t;
}

const char* to_string(ModelVariant variant) {
    return variant == ModelVariant::PaperCompat ? "paper" : "itu";
}

} // namespace scint
