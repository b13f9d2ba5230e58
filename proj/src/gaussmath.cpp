#include "credit/gaussmath.hpp"

#include <cmath>
#include <limits>

namespace credit {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kSqrt2Pi = 2.5066282746310005024;
} // namespace

double std_normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
    double p = 0.5 * std::erfc(-x / kSqrt2);
    // erfc under/overflows to 0 or 2 far beyond |x| ~ 38; keep the result
    // strictly inside (0,1) for finite arguments.
    if (p <= 0.0)
        return std::numeric_limits<double>::denorm_min();
    if (p >= 1.0)
        return 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return p;
}

namespace {

// Acklam's rational approximation to the normal quantile, ~1e-9 relative
// before refinement.
double quantile_estimate(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("std_normal_quantile: p must lie in (0,1)");

    double x = quantile_estimate(p);
    // One Halley step on the CDF residual.
    double e = std_normal_cdf(x) - p;
    double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    double corr = u / (1.0 + 0.5 * x * u);
    if (std::isfinite(corr))
        x -= corr;
    return x;
}

JumpSizeParams shifted_lognormal_params(double mean_shifted, double sd_shifted) {
    if (!(mean_shifted > 0.0))
        throw std::domain_error("shifted_lognormal_params: mean must be positive");
    if (sd_shifted < 0.0)
        throw std::domain_error("shifted_lognormal_params: sd must be nonnegative");

    JumpSizeParams jp;
    jp.mean_shifted = mean_shifted;
    jp.sd_shifted = sd_shifted;
    double ratio = sd_shifted / mean_shifted;
    double var_log = std::log1p(ratio * ratio);
    jp.sigma_log = std::sqrt(var_log);
    jp.mu_log = std::log(mean_shifted) - 0.5 * var_log;
    return jp;
}

JumpSizeParams lognormal_jump_params(double mu_log, double sigma_log) {
    if (sigma_log < 0.0)
        throw std::domain_error("lognormal_jump_params: sigma must be nonnegative");

    JumpSizeParams jp;
    jp.mu_log = mu_log;
    jp.sigma_log = sigma_log;
    jp.mean_shifted = std::exp(mu_log + 0.5 * sigma_log * sigma_log);
    jp.sd_shifted = jp.mean_shifted * std::sqrt(std::expm1(sigma_log * sigma_log));
    return jp;
}

} // namespace credit
