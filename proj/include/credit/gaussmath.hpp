#pragma once

#include <stdexcept>

namespace credit {

/// Standard normal density.
double std_normal_pdf(double x);

/// Standard normal CDF, accurate to better than 1e-12 absolute over the
/// whole real line. Returns values strictly inside (0,1) for finite x.
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf on (0,1). Rational initial guess refined with
/// a Halley step on the CDF; |cdf(quantile(p)) - p| <= 1e-10 down to
/// p = 1e-300. Throws std::domain_error outside (0,1).
double std_normal_quantile(double p);

/// Log-space parameterization of the shifted-lognormal jump size.
/// The jump Lambda satisfies Lambda + 1 ~ LN(mu_log, sigma_log), where
/// mean_shifted and sd_shifted are the mean and standard deviation of
/// Lambda + 1 itself.
struct JumpSizeParams {
    double mean_shifted = 1.0;
    double sd_shifted = 0.0;
    double mu_log = 0.0;
    double sigma_log = 0.0;
};

/// Invert the lognormal moment formulas:
///   sigma_log^2 = ln(1 + (sd/mean)^2),  mu_log = ln(mean) - sigma_log^2/2.
/// Throws std::domain_error for mean <= 0 or sd < 0.
JumpSizeParams shifted_lognormal_params(double mean_shifted, double sd_shifted);

/// Forward construction from the log-space parameters, filling in the
/// implied moments of Lambda + 1. Throws std::domain_error for sigma < 0.
JumpSizeParams lognormal_jump_params(double mu_log, double sigma_log);

} // namespace credit
