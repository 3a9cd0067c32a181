#pragma once

namespace perceprice::stats {

/// I_x(a, b), the regularized incomplete beta function. a, b > 0.
double incomplete_beta(double a, double b, double x);
/// 1 - I_x(a, b) without cancellation in the upper tail.
double incomplete_beta_complement(double a, double b, double x);

/// P(T <= t) for Student's t with `df` degrees of freedom.
double student_t_cdf(double t, int df);
/// Two-sided p-value P(|T| >= |t|).
double student_t_two_sided(double t, int df);

/// P(F <= f) for the F distribution with (df1, df2) degrees of freedom.
double f_cdf(double f, int df1, int df2);
/// Upper tail P(F >= f).
double f_upper_tail(double f, int df1, int df2);

double normal_cdf(double z);
/// Upper tail P(Z >= z).
double normal_upper_tail(double z);
/// Inverse standard normal CDF, 0 < p < 1 (Wichura's AS 241, ~1e-16).
double normal_quantile(double p);

}  // namespace perceprice::stats
