#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

#include "maass/weight.hpp"

namespace maass::specfun {

struct gamma_pole : std::domain_error {
    using std::domain_error::domain_error;
};
struct pole_at_b : std::domain_error {
    using std::domain_error::domain_error;
};
struct unsupported_parameters : std::domain_error {
    using std::domain_error::domain_error;
};

// Gamma for real argument, Lanczos approximation with reflection for x < 1/2.
// Throws gamma_pole at non-positive integers.
double gamma_real(double x);

// 1/Gamma as an entire function: exactly zero at non-positive integers.
double inv_gamma(double x);

// Confluent hypergeometric M(a,b,x) = sum (a)_n/(b)_n x^n/n!.
// Negative x goes through the reflection M(a,b,x) = e^x M(b-a,b,-x).
double kummer_M(double a, double b, double x);

// U(a,b,x) from the two-term M combination; b must not be an integer, x > 0.
double kummer_U(double a, double b, double x);

// Whittaker functions.  whittaker_W dispatches to closed forms when
// mu +- nu = 1/2 or nu - mu = +-1/2, to an asymptotic series for large y,
// and otherwise to the two-M connection formula (needs 2nu not integral).
double whittaker_M(double mu, double nu, double y);
double whittaker_W(double mu, double nu, double y);

// Upper incomplete gamma, real x > 0, any real a (negative a is lifted by
// the downward recurrence).
double inc_gamma_upper(double a, double x);

// Upper incomplete gamma on the negative real axis, principal branch of
// z^a; a must not be an integer.
std::complex<double> inc_gamma_upper_negx(double a, double x);

// The entire function gamma*(a,x) = x^{-a} gamma(a,x); real for real input.
double gamma_star_lower(double a, double x);

// Bessel functions of the first kind / modified, power series below the
// crossover and Hankel asymptotics above (J only; I is series-stable).
double bessel_J(double order, double x);
double bessel_I(double order, double x);

// beta(x) = integral_1^inf t^{-3/2} e^{-xt} dt = sqrt(x) * Gamma(-1/2, x).
double beta_zagier(double x);

// Whittaker-seed kernels of the Fourier expansions. Both are real-valued.
// Fast paths cover s = k/2 and s = 1 - k/2 exactly; *_generic always takes
// the Whittaker route (used to cross-validate the fast paths).
double script_M(std::int64_t n, weight k, double y, double s);
double script_W(std::int64_t n, weight k, double y, double s);
double script_M_generic(std::int64_t n, weight k, double y, double s);
double script_W_generic(std::int64_t n, weight k, double y, double s);

}  // namespace maass::specfun
