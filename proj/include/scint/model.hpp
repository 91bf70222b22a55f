#pragma once

// Tropospheric scintillation fade-depth prediction for earth-to-satellite
// links, following the step-by-step ITU-R P.618 procedure driven by monthly
// (or longer) means of ground temperature and relative humidity.
//
// The chain is: saturation vapour pressure -> wet refractivity ->
// reference sigma -> path/antenna scaling -> time-percentage factor ->
// fade depth exceeded for p% of the time.

#include <scint/errors.hpp>

namespace scint {

// Exponent applied to (x^2 + 1) inside the aperture-averaging factor.
// Two forms of the formula are in print: the ITU source uses 11/12
// (ItuStandard, the default); an alternative printing uses 1/12
// (PaperCompat). They agree closely for small apertures but diverge for
// large x, where only PaperCompat drives the radicand negative and thereby
// predicts complete nullification of scintillation (see averaging_factor).
enum class ModelVariant {
    ItuStandard,
    PaperCompat,
};

// Ground climate at the site: monthly or longer averages.
struct ClimateSample {
    double temperature_c;          // [-40, 60] degC
    double relative_humidity_pct;  // [0, 100] %
};

// Link and station parameters. Defaults follow the usual fixed study
// parameters for a large earth station.
struct LinkConfig {
    double frequency_ghz;                // > 0; validity range [4, 20] GHz
    double elevation_deg;                // (4, 90]; the procedure excludes low elevations
    double antenna_diameter_m = 8.0;     // > 0
    double antenna_efficiency = 0.5;     // (0, 1]
    double time_percent = 0.01;          // [0.01, 50] % of time
    double turbulence_height_m = 1000.0; // > 0; height of the turbulent layer
    ModelVariant variant = ModelVariant::ItuStandard;
};

// Result of the aperture-averaging step. The radicand of g(x) can go
// negative (always for PaperCompat at large x, and for ItuStandard only at
// x beyond ~7); the factor is then clamped to zero and flagged, which makes
// the predicted fade exactly zero.
struct AveragingFactor {
    double g;
    bool radicand_clamped;
};

// Every intermediate of a prediction, in evaluation order.
struct PredictionTrace {
    double e_s_hpa;       // saturation vapour pressure
    double n_wet_ppm;     // wet term of radio refractivity
    double sigma_ref_db;  // reference signal standard deviation
    double path_length_m; // effective path length through the turbulent layer
    double d_eff_m;       // effective antenna diameter
    double x;             // aperture-averaging argument, 1.22*d_eff^2*f/L
    double g;             // aperture-averaging factor
    double sigma_db;      // signal standard deviation on the link
    double a_p;           // time-percentage factor
    double fade_depth_db; // a_p * sigma_db, the fade exceeded for p% of time
    bool radicand_clamped;
    bool out_of_validity; // frequency outside [4, 20] GHz
};

// e_s = 6.11 * exp(19.7 t / (t + 273)) [hPa], t in degC within [-40, 60].
double saturation_vapour_pressure(double temperature_c);

// N_wet = 3730 * H * e_s(t) / (t + 273)^2 [ppm], H in percent (0-100).
double wet_refractivity(double temperature_c, double relative_humidity_pct);

// sigma_ref = 3.6e-3 + 1e-4 * N_wet [dB], N_wet >= 0.
double reference_sigma(double n_wet_ppm);

// L = 2 h_L / (sqrt(sin^2 theta + 2.35e-4) + sin theta) [m], theta > 4 deg.
double effective_path_length(double elevation_deg, double turbulence_height_m = 1000.0);

// D_eff = sqrt(eta) * D [m], eta in (0, 1].
double effective_antenna_diameter(double antenna_diameter_m, double antenna_efficiency);

// x = 1.22 * D_eff^2 * (f / L), f in GHz and L in meters.
double aperture_parameter(double d_eff_m, double frequency_ghz, double path_length_m);

// g(x) = sqrt(3.86 (x^2+1)^E sin((11/6) atan(1/x)) - 7.08 x^(5/6)) with
// E = 11/12 (ItuStandard) or 1/12 (PaperCompat). A negative radicand is
// clamped to g = 0 and flagged. g -> ~1 as x -> 0 (point aperture).
AveragingFactor averaging_factor(double d_eff_m, double frequency_ghz, double path_length_m,
                                 ModelVariant variant = ModelVariant::ItuStandard);

// sigma = sigma_ref * f^(7/12) * g / (sin theta)^1.2 [dB].
double signal_sigma(double sigma_ref_db, double frequency_ghz, double g, double elevation_deg);

// a(p) = -0.061 (log10 p)^3 + 0.072 (log10 p)^2 - 1.71 log10 p + 3.0,
// defined for p in [0.01, 50] percent of time.
double time_percentage_factor(double time_percent);

// A_s(p) = a(p) * sigma [dB].
double fade_depth(double a_p, double sigma_db);

// True when the frequency is inside the [4, 20] GHz range the procedure is
// recommended for. Outside it predict() still evaluates but flags the trace.
bool frequency_in_validity_range(double frequency_ghz);

// Throw validation_error when any field is out of range. The elevation
// check is strict: exactly 4 deg is rejected (the low-elevation procedure
// is a different method, out of scope here).
void validate(const ClimateSample& climate);
void validate(const LinkConfig& link);

// Run the full chain. Validates both inputs, then composes the step
// functions above; the trace holds every intermediate bit-for-bit as the
// steps produced it.
PredictionTrace predict(const ClimateSample& climate, const LinkConfig& link);

// "itu" / "paper", as accepted on the command line.
const char* to_string(ModelVariant variant);

} // namespace scint
