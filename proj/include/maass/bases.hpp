#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "maass/arith.hpp"
#include "maass/poincare.hpp"
#include "maass/weight.hpp"

namespace maass::bases {

using cplx = std::complex<double>;
using std::int64_t;

struct index_class_error : std::domain_error {
    using std::domain_error::domain_error;
};

// finite q-expansion with per-coefficient truncation errors
struct qseries {
    int64_t level = 4;
    int twice_k = 1;
    bool plus_space = true;
    int64_t n_max = 0;
    int64_t c_used = 0;  // largest truncation reached by the engine rows
    std::map<int64_t, cplx> coeffs;
    std::map<int64_t, double> errors;

    cplx coeff(int64_t n) const {
        auto it = coeffs.find(n);
        return it == coeffs.end() ? cplx{} : it->second;
    }
    double error(int64_t n) const {
        auto it = errors.find(n);
        return it == errors.end() ? 0.0 : it->second;
    }
};

// theta(z) = sum q^{n^2}; the d = 0 member of the weight 1/2 family
qseries theta_series(int64_t n_max);

// weight 1/2 family member with principal part q^d (d <= 0, d = 0,1 mod 4),
// zero constant term for d < 0; engine route
qseries f_series(int64_t d, int64_t n_max, const poincare::truncation_policy& pol);

// weight 3/2 weakly holomorphic member with principal part q^D
// (D < 0, D = 0,3 mod 4); engine route
qseries g_series_neg(int64_t D, int64_t n_max, const poincare::truncation_policy& pol);

// weight 3/2 mock member (D >= 0, D = 0,3 mod 4); holomorphic part of the
// scaled derivative construction.  The q^D entry stores the full complex
// head datum and is excluded from integrality/duality checks.
qseries g_mock_series(int64_t D, int64_t n_max, const poincare::truncation_policy& pol);

// Zagier's weight 3/2 Eisenstein series as a harmonic expansion with exact
// class-number coefficients (oracle route; -12 E equals the m = 0 engine
// expansion).
poincare::harmonic_expansion zagier_eisenstein(int64_t n_max);

// exact oracles built from integer q-expansions
qseries j_oracle(int64_t m, int64_t n_max);  // j_m = q^{-m} + O(q)
qseries e4_oracle(int64_t n_max);
// exact eta-quotient route to f_d / g_D (independent of the engine)
qseries f_oracle(int64_t d, int64_t n_max);
qseries g_oracle(int64_t D, int64_t n_max);

struct duality_report {
    int64_t D = 0;
    int64_t d = 0;
    cplx A{};
    cplx B{};
    double defect = 0.0;
    double tolerance = 0.0;
    int64_t c_used = 0;
    bool pass = false;
};

// A(D,d) from f_series(d), B(D,d) from g_series_neg(D); defect = |A + B|
duality_report duality_check(int64_t D, int64_t d, const poincare::truncation_policy& pol,
                             double tolerance = 1e-2);

cplx evaluate_qseries(const qseries& q, cplx z);

// serialization; JSON is canonical, CSV is lossy and says so in a header
// comment.  Timestamps are suppressed when reproducible = true.
std::string to_json(const qseries& q, bool reproducible);
std::string to_csv(const qseries& q);

}  // namespace maass::bases
