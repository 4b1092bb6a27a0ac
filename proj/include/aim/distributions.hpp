#pragma once

namespace aim {

double norm_pdf(double x, double mean, double variance);
double norm_log_pdf(double x, double mean, double variance);
double norm_cdf(double x, double mean, double variance);

double lbeta(double a, double b);
double beta_pdf(double x, double a, double b);
double beta_log_pdf(double x, double a, double b);
// Regularized incomplete beta I_x(a, b).
double beta_cdf(double x, double a, double b);

}  // namespace aim
