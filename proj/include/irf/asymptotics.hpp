#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "irf/identity_suite.hpp"

namespace irf {

// sqrt(tau/pi) exp(-chi^2/(4 tau)) - (chi/2) erfc(chi/(2 sqrt(tau)))
double H_profile(double chi, double tau);

// |dH/dtau - d^2H/dchi^2| by central differences with step h.
double heat_residual(double chi, double tau, double h = 1e-4);

enum class Regime { I, II, III, IV };

const char* regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct RegimeSpec {
    Regime regime = Regime::I;
    double l = 1.0;           // regime II
    double lambda_bar = 1.0;  // regime IV
    double chi = 0.0;
    double tau = 1.0;
    double L = 1e4;

    void validate() const;
};

// Y ~ Gamma(shape a, scale b); the height limit is sqrt(Y + (chi/2)^2) - chi/2.
struct GammaLimit {
    double a = 1.0;
    double b = 1.0;
    double chi = 0.0;

    double height(double y) const;
    // P(limit height <= z)
    double cdf(double z) const;
    // s-form: sqrt(4Y + chi^2), 4Y ~ Gamma(a, 4b)
    double s_value(double y) const;
};

using LimitProfile = std::variant<double, GammaLimit>;

LimitProfile limit_profile(const RegimeSpec& spec);

// b^m (a)_m
double gamma_moment(double a, double b, int m);

// Usual-SSEP factorial moments E[prod_{k<m} (h(x, t) - k)], m = 1..n, from the
// exact integrals.
std::vector<double> ssep_factorial_moments(long x, double t, int n, int threads = 1);

// E[O^n] at x = 0, t = L tau over L^{n/2} (lambda_bar)_n (tau/pi)^{n/2}.
// Default tolerance: 5% for n = 1, 8% otherwise.
CheckReport regime_moment_check(int n, double L, double tau, double lambda_bar,
                                double tol = -1.0, int threads = 1);

// L^{-1/2} E h(L^{1/2} chi, L tau) from the exact integral against H(chi, tau).
CheckReport hydrodynamic_check(double chi, double tau, double L, double tol = 0.02);

CheckReport heat_equation_check(double chi, double tau, double tol = 1e-5);

// Kolmogorov-Smirnov distance between L^{-1/4} h(L^{1/4} chi, L tau) over
// simulated trajectories and the regime IV law. Reported with gating = false.
// Default tolerance 1.63/sqrt(trajectories) + 0.02.
CheckReport regime_iv_ks_check(double L, double tau, double lambda_bar, double chi,
                               std::size_t trajectories, std::uint64_t seed, int threads = 1,
                               double tol = -1.0);

// Hard checks are those without parameters.gating == false.
bool is_gating(const CheckReport& r);

struct ProfileRow {
    double chi = 0.0;
    double profile = 0.0;    // H(chi, tau)
    double exact = 0.0;      // L^{-1/2} E h from the integral
    double empirical = 0.0;  // L^{-1/2} mean h over usual SSEP trajectories
    double stderr_ = 0.0;
};

std::vector<ProfileRow> hydrodynamic_table(double L, double tau, const std::vector<double>& chis,
                                           std::size_t trajectories, std::uint64_t seed,
                                           int threads = 1);

struct AsymptoticsOptions {
    double L_hydro = 400.0;
    double L_moments = 1e4;
    double tau = 1.0;
    double lambda_bar = 1.0;
    double L_ks = 1e4;
    std::size_t ks_trajectories = 200;
    bool run_ks = true;
    std::uint64_t seed = 0;
    int threads = 1;
    std::optional<double> tolerance;  // overrides the per-check defaults
};

std::vector<CheckReport> run_asymptotics_suite(const AsymptoticsOptions& opts);

}  // namespace irf
