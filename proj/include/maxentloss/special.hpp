#pragma once

namespace maxent {

// Standard normal CDF, evaluated through erfc for accuracy in both tails.
double normal_cdf(double x);

// Standard normal quantile, Wichura's AS241 rational approximation
// (relative error below 1e-15 across (0,1)).  Throws InputError outside (0,1).
double normal_quantile(double p);

// log(Gamma(x)) for x > 0 (Lanczos).  Used by closed-form test oracles.
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x); complement Q(a, x) = 1 - P(a, x).
// Series expansion for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Chi-square(k) upper tail probability.  The test battery works with fixed
// critical values; this is kept as the oracle that those constants are the
// 5%/1% points they claim to be.
double chi2_sf(double x, int k);

}  // namespace maxent
