#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "maass/weight.hpp"

namespace maass::poincare {

using cplx = std::complex<double>;
using std::int64_t;

struct not_converged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct plus_space_violation : std::domain_error {
    using std::domain_error::domain_error;
};
struct pole_at_s : std::domain_error {
    using std::domain_error::domain_error;
};
struct step_too_small : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_weight_range : std::domain_error {
    using std::domain_error::domain_error;
};
struct tail_too_large : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_a_pole_pair : std::domain_error {
    using std::domain_error::domain_error;
};

// Governs every infinite c-sum: cutoff ladder c_max / f^j, accept a value
// once one more f-fold extension moves it by less than tol.
struct truncation_policy {
    int64_t c_max = 20000;
    double tol = 1e-3;
    int stability_factor = 2;
};

struct truncated_value {
    cplx value{};
    double error_estimate = 0.0;
    int64_t c_used = 0;
    bool converged = false;
};

struct coefficient_query {
    int64_t m = 0;
    weight k{};
    int64_t level = 1;  // N
    int64_t n = 0;
    double s = 1.0;
};

// number of worker threads for the c-sum term production (results are
// bit-identical for any setting); initialized from MAASS_THREADS or the
// hardware count
void set_threads(int t);
int threads();

// true iff each argument is zero or a non-zero perfect square
bool is_pole_pair(int64_t a, int64_t b);

// Res_{s=3/4} b_{-D,1/2}(d, s); requires is_pole_pair(-D, d)
double residue_b_half(int64_t D, int64_t d);

// c_{m,k}(n,s): coefficient series of the weight-k level-N expansion
truncated_value coeff_c(const coefficient_query& q, const truncation_policy& pol);
std::vector<truncated_value> coeff_c_row(int64_t m, weight k, int64_t level,
                                         std::span<const int64_t> ns, double s,
                                         const truncation_policy& pol);

// b_{m,k}(n,s): plus-space coefficients, level N = 4N'
truncated_value coeff_b_plus(const coefficient_query& q, const truncation_policy& pol);
std::vector<truncated_value> coeff_b_plus_row(int64_t m, weight k, int64_t level,
                                              std::span<const int64_t> ns, double s,
                                              const truncation_policy& pol);

// d/ds b_{m,k}(n,s) at s0 by central differences with one Richardson step;
// all four stencil evaluations share the same c-truncation.
struct derivative_value {
    truncated_value deriv;  // extrapolated derivative
    cplx diff_h{};          // (b(s0+h) - b(s0-h)) / 2h
    cplx diff_h2{};         // same with h/2
};
derivative_value coeff_b_plus_ds(const coefficient_query& q, const truncation_policy& pol,
                                 double step = 1e-3);
std::vector<derivative_value> coeff_b_plus_ds_row(int64_t m, weight k, int64_t level,
                                                  std::span<const int64_t> ns, double s0,
                                                  const truncation_policy& pol,
                                                  double step = 1e-3);

// Derivative stencil alone, for validation against analytic test functions.
cplx richardson_derivative(const std::function<cplx(double)>& f, double s0, double step);

// Truncated harmonic expansion
//   h(z) = sum hol[n] q^n + ypow y^{1-k} + sum_{n != 0} nonhol[n] Gamma(1-k, -4 pi n y) q^n
struct harmonic_expansion {
    weight k{};
    int64_t level = 1;
    bool plus_space = false;
    int64_t n_max = 0;
    std::map<int64_t, cplx> hol;
    std::map<int64_t, cplx> nonhol;
    cplx ypow{};
    std::map<int64_t, double> hol_err;
    std::map<int64_t, double> nonhol_err;
};

// Closed-form special-value expansions: weight > 2 at s = k/2, weight < 0 at
// s = 1-k/2, and the plus-space weight 3/2 family at s = 3/4 (m <= 0 value,
// m > 0 derivative series).
harmonic_expansion expansion_special(int64_t m, weight k, int64_t level, int64_t n_max,
                                     const truncation_policy& pol);

// Pointwise evaluation of a harmonic expansion; y_min guards the Fourier
// tail, and tail_bound (when given) receives a crude geometric estimate of
// the truncated holomorphic tail.
cplx evaluate(const harmonic_expansion& h, cplx z, double y_min = 0.1,
              double* tail_bound = nullptr);

// Pointwise evaluation straight from the coefficient engine at generic s.
cplx evaluate_raw(int64_t m, weight k, int64_t level, double s, cplx z, int64_t n_max,
                  const truncation_policy& pol, bool plus = false);

// |j(gamma,z)^{-2k} f(gamma z) - f(z)| for gamma = [[a,b],[c,d]] in
// Gamma_0(level); f evaluates the form.
double modularity_residual(const std::function<cplx(cplx)>& f, weight k,
                           const std::array<int64_t, 4>& gamma, cplx z);

// automorphy factor power j(gamma,z)^{-2k}
cplx slash_factor(weight k, const std::array<int64_t, 4>& gamma, cplx z);

}  // namespace maass::poincare
