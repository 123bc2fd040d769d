#pragma once

// Exact integer/rational q-expansion arithmetic for the oracle side: theta,
// eta quotients, Eisenstein/Delta/j, Faber polynomials, and the plus-space
// basis forms solved from eta-quotient ansatzes.  Everything here is exact;
// floats appear only at the comparison boundary.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace maass::qexp {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;
using std::int64_t;

struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// truncated Laurent series: coefficient of q^{v0+i} is c[i]; coefficients
// are exact for all exponents < prec
struct zseries {
    int64_t v0 = 0;
    int64_t prec = 0;
    std::vector<bigint> c;

    bigint coeff(int64_t e) const {
        if (e >= prec) throw std::out_of_range("zseries: exponent beyond precision");
        if (e < v0 || e - v0 >= int64_t(c.size())) return 0;
        return c[size_t(e - v0)];
    }
    void trim();
};

zseries z_const(const bigint& a, int64_t prec);
zseries z_monomial(int64_t e, int64_t prec);
zseries z_add(const zseries& a, const zseries& b);
zseries z_sub(const zseries& a, const zseries& b);
zseries z_scale(const zseries& a, const bigint& s);
zseries z_mul(const zseries& a, const zseries& b);
zseries z_inv(const zseries& a);  // leading coefficient must be +-1
zseries z_pow(const zseries& a, int e);

// prod_i eta(mult_i z)^{r_i}; the total q-power sum(mult_i r_i)/24 must be an
// integer
zseries eta_quotient(const std::vector<std::pair<int64_t, int>>& factors, int64_t prec);

zseries theta_series(int64_t prec);          // sum q^{n^2}
zseries eisenstein_e4(int64_t prec);         // 1 + 240 sum sigma_3(n) q^n
zseries delta_series(int64_t prec);          // eta(z)^24
zseries j_invariant(int64_t prec);           // E4^3 / Delta
std::vector<zseries> faber_j(int64_t m_max, int64_t prec);  // j_0 = 1, j_m = q^{-m}+O(q)

// Hauptmodul t = eta(z)^8/eta(4z)^8 of level 4 (pole only at infinity).
zseries hauptmodul_t4(int64_t prec);

// Unique weakly holomorphic plus-space form of weight `twice_k`/2 in
// {1/2, 3/2} on level 4 with principal part q^{head} (and zero constant for
// weight 1/2).  Solved exactly from a theta * polynomial(t) ansatz and
// verified against the support condition through `prec`.
zseries plus_basis_form(int twice_k, int64_t head, int64_t prec);

}  // namespace maass::qexp
