#pragma once

namespace ggc {

/// Natural log of the gamma function for x > 0.
///
/// Uses a Taylor expansion of ln Γ(2+z) around the minimum region [0.5, 2.5],
/// upward/downward recurrence into that region, and Stirling's series for
/// x >= 10. Relative error stays below 1e-13 on [1e-6, 1e6].
/// Throws std::domain_error for x <= 0 or non-finite x.
double log_gamma(double x);

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a+b).
double log_beta(double a, double b);

/// Modified Bessel function of the first kind I_ν(x), ν >= 0, x >= 0.
///
/// Ascending series for x <= 15; Hankel's large-argument expansion above that
/// whenever it converges to full precision, otherwise the series again.
double bessel_i(double order, double x);

}  // namespace ggc
