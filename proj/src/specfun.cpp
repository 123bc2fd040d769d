#include "maass/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "maass/summation.hpp"

namespace maass::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler = std::numbers::egamma;

// term < 1e-17 * |sum| for three consecutive terms ends every series here
constexpr double series_eps = 1e-17;
constexpr int series_max_terms = 20000;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos, g = 7, 9 terms.
constexpr double lanczos_c[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_positive(double x) {
    // valid for x >= 0.5
    double acc = lanczos_c[0];
    for (int i = 1; i < 9; ++i) acc += lanczos_c[i] / (x - 1.0 + i);
    double t = x + 6.5;
    return std::sqrt(2.0 * pi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_real(double x) {
    if (is_nonpositive_integer(x)) throw gamma_pole("gamma_real: pole at non-positive integer");
    if (x >= 0.5) return gamma_positive(x);
    // reflection
    return pi / (std::sin(pi * x) * gamma_positive(1.0 - x));
}

double inv_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) return 1.0 / gamma_positive(x);
    return std::sin(pi * x) * gamma_positive(1.0 - x) / pi;
}

double kummer_M(double a, double b, double x) {
    if (is_nonpositive_integer(b)) throw pole_at_b("kummer_M: b is a non-positive integer");
    if (x == 0.0) return 1.0;
    if (x < 0.0) return std::exp(x) * kummer_M(b - a, b, -x);
    kahan_sum<double> sum;
    sum.add(1.0);
    double term = 1.0;
    int small_run = 0;
    for (int n = 0; n < series_max_terms; ++n) {
        term *= (a + n) / (b + n) * x / (n + 1);
        sum.add(term);
        if (std::abs(term) < series_eps * std::abs(sum.value())) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    return sum.value();
}

double kummer_U(double a, double b, double x) {
    if (b == std::floor(b)) throw unsupported_parameters("kummer_U: integer b not supported");
    if (x <= 0.0) throw std::domain_error("kummer_U: x must be positive");
    double t1 = gamma_real(1.0 - b) * inv_gamma(a - b + 1.0) * kummer_M(a, b, x);
    double t2 = gamma_real(b - 1.0) * inv_gamma(a) * std::pow(x, 1.0 - b) *
                kummer_M(a - b + 1.0, 2.0 - b, x);
    return t1 + t2;
}

double whittaker_M(double mu, double nu, double y) {
    if (y <= 0.0) throw std::domain_error("whittaker_M: y must be positive");
    return std::exp(-0.5 * y) * std::pow(y, nu + 0.5) * kummer_M(nu - mu + 0.5, 1.0 + 2.0 * nu, y);
}

namespace {

// W_{mu,nu}(y) ~ e^{-y/2} y^mu sum_s prod_{j<=s}(nu^2-(mu-j+1/2)^2)/(s! y^s),
// truncated at the smallest term.
double whittaker_w_asymptotic(double mu, double nu, double y) {
    long double term = 1.0L, sum = 1.0L;
    long double best = std::numeric_limits<long double>::max();
    for (int s = 0; s < 400; ++s) {
        long double factor =
            (static_cast<long double>(nu) * nu -
             (mu - s - 0.5L) * (mu - s - 0.5L)) /
            ((s + 1.0L) * y);
        term *= factor;
        long double mag = fabsl(term);
        if (mag >= best) break;  // divergent tail reached
        sum += term;
        best = mag;
        if (mag < 1e-19L * fabsl(sum)) break;
    }
    return std::exp(-0.5 * y) * std::pow(y, mu) * static_cast<double>(sum);
}

constexpr double param_tol = 1e-12;

}  // namespace

double whittaker_W(double mu, double nu, double y) {
    if (y <= 0.0) throw std::domain_error("whittaker_W: y must be positive");
    // W is even in nu; exact special forms first
    if (std::abs(mu + nu - 0.5) < param_tol || std::abs(mu - nu - 0.5) < param_tol)
        return std::pow(y, mu) * std::exp(-0.5 * y);
    if (y >= 25.0) return whittaker_w_asymptotic(mu, nu, y);
    if (std::abs(nu - mu - 0.5) < param_tol)
        return std::exp(0.5 * y) * std::pow(y, 0.5 - nu) * inc_gamma_upper(2.0 * nu, y);
    if (std::abs(-nu - mu - 0.5) < param_tol)
        return std::exp(0.5 * y) * std::pow(y, 0.5 + nu) * inc_gamma_upper(-2.0 * nu, y);
    double two_nu = 2.0 * nu;
    if (std::abs(two_nu - std::round(two_nu)) > 1e-6) {
        double t1 = gamma_real(-two_nu) * inv_gamma(0.5 - nu - mu) * whittaker_M(mu, nu, y);
        double t2 = gamma_real(two_nu) * inv_gamma(0.5 + nu - mu) * whittaker_M(mu, -nu, y);
        return t1 + t2;
    }
    throw unsupported_parameters("whittaker_W: integral 2nu outside closed-form cases");
}

namespace {

// exponential integral E1 for 0 < x < 1 (needed by the a = 0 lift corner)
double expint_e1_small(double x) {
    kahan_sum<double> sum;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        double add = -term / k;
        sum.add(add);
        if (std::abs(add) < 1e-18) break;
    }
    return -euler - std::log(x) + sum.value();
}

// continued fraction (modified Lentz), valid for x >= a + 1 roughly
double inc_gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

// lower series, for x < a + 1 and a > 0
double inc_gamma_lower_series(double a, double x) {
    kahan_sum<double> sum;
    double term = 1.0 / a;
    sum.add(term);
    for (int n = 0; n < series_max_terms; ++n) {
        term *= x / (a + n + 1.0);
        sum.add(term);
        if (std::abs(term) < 1e-17 * std::abs(sum.value())) break;
    }
    return std::exp(-x + a * std::log(x)) * sum.value();
}

}  // namespace

double inc_gamma_upper(double a, double x) {
    if (x <= 0.0) throw std::domain_error("inc_gamma_upper: x must be positive");
    if (x >= a + 1.0) return inc_gamma_cf(a, x);
    if (a > 0.0) return gamma_real(a) - inc_gamma_lower_series(a, x);
    // a <= 0, x < a + 1 <= 1: climb to a positive parameter and recurse down
    if (a == std::floor(a)) {
        double val = expint_e1_small(x);  // Gamma(0, x)
        for (double cur = 0.0; cur > a; cur -= 1.0) {
            // Gamma(cur-1,x) = (Gamma(cur,x) - x^{cur-1} e^{-x}) / (cur-1)
            val = (val - std::pow(x, cur - 1.0) * std::exp(-x)) / (cur - 1.0);
        }
        return val;
    }
    double top = a - std::floor(a);  // in (0,1)
    double val = (x >= top + 1.0) ? inc_gamma_cf(top, x)
                                  : gamma_real(top) - inc_gamma_lower_series(top, x);
    for (double cur = top; cur > a + 0.5; cur -= 1.0) {
        val = (val - std::pow(x, cur - 1.0) * std::exp(-x)) / (cur - 1.0);
    }
    return val;
}

double gamma_star_lower(double a, double x) {
    // sum_n (-x)^n / (n! (a+n)); poles only at non-positive integer a
    if (a <= 0.0 && a == std::floor(a)) throw std::domain_error("gamma_star_lower: pole");
    kahan_sum<double> sum;
    double term = 1.0;
    sum.add(term / a);
    int small_run = 0;
    for (int n = 0; n < series_max_terms; ++n) {
        term *= -x / (n + 1.0);
        double add = term / (a + n + 1.0);
        sum.add(add);
        if (std::abs(add) < series_eps * std::abs(sum.value())) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    return sum.value();
}

std::complex<double> inc_gamma_upper_negx(double a, double x) {
    if (x == 0.0) throw std::domain_error("inc_gamma_upper_negx: branch undefined at x = 0");
    if (x > 0.0) return {inc_gamma_upper(a, x), 0.0};
    if (a == std::floor(a)) throw std::domain_error("inc_gamma_upper_negx: integer a unsupported");
    double t = -x;
    if (t > 690.0) throw std::overflow_error("inc_gamma_upper_negx: argument too negative");
    // Gamma(a,z) = Gamma(a) - z^a gamma*(a,z) with principal z^a = t^a e^{i pi a}
    double gs = gamma_star_lower(a, x);
    std::complex<double> za = std::pow(t, a) * std::complex<double>(std::cos(pi * a), std::sin(pi * a));
    return gamma_real(a) - za * gs;
}

double beta_zagier(double x) {
    if (x <= 0.0) throw std::domain_error("beta_zagier: x must be positive");
    return std::sqrt(x) * inc_gamma_upper(-0.5, x);
}

namespace {

constexpr double bessel_switch = 16.0;

double bessel_series(double order, double x, bool modified) {
    // long double accumulation keeps the alternating J series usable up to
    // the crossover; the I series has positive terms and is stable anyway
    long double half = 0.5L * x;
    long double lead = expl(order * logl(half)) * inv_gamma(order + 1.0);
    long double x2 = half * half;
    if (modified == false) x2 = -x2;
    long double term = 1.0L, sum = 1.0L;
    int small_run = 0;
    for (int j = 0; j < series_max_terms; ++j) {
        term *= x2 / ((j + 1.0L) * (order + j + 1.0L));
        sum += term;
        if (fabsl(term) < 1e-19L * fabsl(sum)) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    return static_cast<double>(lead * sum);
}

double bessel_j_asymptotic(double order, double x) {
    double mu4 = 4.0 * order * order;
    double omega = x - (0.5 * order + 0.25) * pi;
    long double term = 1.0L;
    long double p = 1.0L, q = 0.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int k = 0; k < 200; ++k) {
        long double next = term * (mu4 - (2.0L * k + 1.0L) * (2.0L * k + 1.0L)) /
                           (8.0L * x * (k + 1.0L));
        long double mag = fabsl(next);
        if (mag >= prev) break;
        prev = mag;
        term = next;
        int m = k + 1;  // power of 1/x just produced
        int r = m & 3;
        if (r == 0) p += term;
        else if (r == 1) q += term;
        else if (r == 2) p -= term;
        else q -= term;
        if (mag < 1e-20L) break;
    }
    return std::sqrt(2.0 / (pi * x)) *
           (static_cast<double>(p) * std::cos(omega) - static_cast<double>(q) * std::sin(omega));
}

}  // namespace

double bessel_J(double order, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_J: x must be positive");
    if (order <= -1.0 && order == std::floor(order))
        throw std::domain_error("bessel_J: negative integer order unsupported");
    // the Hankel expansion needs the argument well past the turning point
    // before its terms decay; larger orders push the crossover outward
    if (x < bessel_switch || x < 1.2 * order * order) return bessel_series(order, x, false);
    return bessel_j_asymptotic(order, x);
}

double bessel_I(double order, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_I: x must be positive");
    if (x > 600.0) throw std::overflow_error("bessel_I: argument too large");
    return bessel_series(order, x, true);
}

namespace {

double sign_of(std::int64_t n) { return n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0); }

}  // namespace

double script_M_generic(std::int64_t n, weight k, double y, double s) {
    double kk = k.k();
    if (n == 0) return std::pow(y, s - 0.5 * kk);
    double yy = 4.0 * pi * std::abs(double(n)) * y;
    return inv_gamma(2.0 * s) * std::pow(yy, -0.5 * kk) *
           whittaker_M(0.5 * kk * sign_of(n), s - 0.5, yy);
}

double script_W_generic(std::int64_t n, weight k, double y, double s) {
    double kk = k.k();
    if (n == 0) {
        return std::pow(4.0 * pi, 1.0 - kk) * std::pow(y, 1.0 - s - 0.5 * kk) *
               inv_gamma(s - 0.5 * kk) * inv_gamma(s + 0.5 * kk) / (2.0 * s - 1.0);
    }
    double an = std::abs(double(n));
    double yy = 4.0 * pi * an * y;
    double pref = inv_gamma(s + 0.5 * kk * sign_of(n)) * std::pow(an, 0.5 * kk - 1.0) *
                  std::pow(4.0 * pi * y, -0.5 * kk);
    if (pref == 0.0) return 0.0;
    return pref * whittaker_W(0.5 * kk * sign_of(n), s - 0.5, yy);
}

double script_M(std::int64_t n, weight k, double y, double s) {
    double kk = k.k();
    if (s == 0.5 * kk && n != 0) return inv_gamma(kk) * std::exp(-2.0 * pi * double(n) * y);
    if (s == 1.0 - 0.5 * kk && kk <= 0.5) {
        if (n == 0) return std::pow(y, 1.0 - kk);
        double e = std::exp(-2.0 * pi * double(n) * y);
        double t = 4.0 * pi * double(n) * y;  // sign of n
        if (n > 0) {
            // (-1)^k [Gamma(1-k)^{-1} Gamma(1-k,-t) - 1] collapses to a real value
            return e * std::pow(t, 1.0 - kk) * gamma_star_lower(1.0 - kk, -t) * inv_gamma(1.0 - kk);
        }
        return e * (1.0 - inv_gamma(1.0 - kk) * inc_gamma_upper(1.0 - kk, -t));
    }
    return script_M_generic(n, k, y, s);
}

double script_W(std::int64_t n, weight k, double y, double s) {
    double kk = k.k();
    if (s == 0.5 * kk) {
        if (n <= 0) return 0.0;
        return inv_gamma(kk) * std::pow(double(n), kk - 1.0) * std::exp(-2.0 * pi * double(n) * y);
    }
    if (s == 1.0 - 0.5 * kk) {
        double e = std::exp(-2.0 * pi * double(n) * y);
        if (n > 0) return e * std::pow(double(n), kk - 1.0);
        if (n == 0) return std::pow(4.0 * pi, 1.0 - kk) * inv_gamma(2.0 - kk);
        double an = std::abs(double(n));
        return e * std::pow(an, kk - 1.0) * inv_gamma(1.0 - kk) *
               inc_gamma_upper(1.0 - kk, 4.0 * pi * an * y);
    }
    return script_W_generic(n, k, y, s);
}

}  // namespace maass::specfun
