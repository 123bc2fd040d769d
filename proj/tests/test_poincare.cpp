#include "doctest.h"
#include "maass/arith.hpp"
#include "maass/poincare.hpp"
#include "maass/specfun.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

using namespace maass;
namespace po = maass::poincare;
using cplx = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("pole pairs and residues") {
    CHECK(po::is_pole_pair(0, 0));
    CHECK(po::is_pole_pair(4, 9));
    CHECK(!po::is_pole_pair(3, 4));
    CHECK(po::residue_b_half(0, 0) == doctest::Approx(3.0 / (16.0 * pi)).epsilon(1e-15));
    CHECK(po::residue_b_half(0, 4) == doctest::Approx(3.0 / pi).epsilon(1e-15));
    CHECK(po::residue_b_half(-4, 1) == doctest::Approx(24.0 / pi).epsilon(1e-15));
    CHECK(po::residue_b_half(-4, 0) == doctest::Approx(3.0 / pi).epsilon(1e-15));
    CHECK_THROWS_AS(po::residue_b_half(-3, 1), po::not_a_pole_pair);
}

TEST_CASE("derivative stencil against an analytic function") {
    // d/ds Gamma(2s) (2N)^{1-2s} at s = 3/4, N = 4
    const double N = 4.0;
    auto f = [&](double s) {
        return cplx(specfun::gamma_real(2.0 * s) * std::pow(2.0 * N, 1.0 - 2.0 * s), 0.0);
    };
    // closed form via central-difference-free calculus:
    // f'(s) = 2 Gamma'(2s)(2N)^{1-2s} - 2 ln(2N) f(s); psi(3/2) = 2 - gamma - 2 ln 2
    double psi32 = 2.0 - std::numbers::egamma - 2.0 * std::log(2.0);
    double fval = specfun::gamma_real(1.5) * std::pow(2.0 * N, -0.5);
    double want = 2.0 * psi32 * fval - 2.0 * std::log(2.0 * N) * fval;
    cplx got = po::richardson_derivative(f, 0.75, 1e-3);
    CHECK(std::abs(got.real() - want) < 1e-8);
    CHECK(std::abs(got.imag()) < 1e-14);
}

TEST_CASE("double-zero branch against the Euler-phi closed form") {
    // at integral weight, K_k(0,0,c) = phi(c); partial sums must agree exactly
    po::truncation_policy pol{50, 0.0, 2};
    auto r = po::coeff_c({0, weight::integral(4), 1, 0, 2.0}, pol);
    // 2 pi i^{-4} sum_{c<=50} phi(c)/c * 2^6 pi^3 Gamma(4) (2c)^{-3}
    double sum = 0.0;
    for (int64_t c = 1; c <= 50; ++c)
        sum += double(arith::euler_phi(c)) / double(c) * std::pow(2.0, 6.0) *
               std::pow(pi, 3.0) * 6.0 * std::pow(2.0 * c, -3.0);
    cplx want = 2.0 * pi * sum;
    CHECK(std::abs(r.value - want) <= 1e-12 * std::abs(want));
    CHECK(r.c_used == 50);
}

TEST_CASE("plus-space and pole guards") {
    po::truncation_policy pol{100, 1e-3, 2};
    // m = 3 violates (-1)^0 m = 0,1 (mod 4) at weight 1/2
    CHECK_THROWS_AS(po::coeff_b_plus({3, weight::half(0), 4, 1, 0.8}, pol),
                    po::plus_space_violation);
    CHECK_THROWS_AS(po::coeff_b_plus({1, weight::half(0), 8 - 1, 1, 0.8}, pol),
                    po::plus_space_violation);
    // pole-bearing pair at s = 3/4: weight 1/2, both indices squares
    CHECK_THROWS_AS(po::coeff_b_plus({1, weight::half(0), 4, 4, 0.75}, pol), po::pole_at_s);
    CHECK_THROWS_AS(po::coeff_b_plus({-4, weight::half(1), 4, 0, 0.75}, pol), po::pole_at_s);
    // same pair away from 3/4 is fine
    CHECK_NOTHROW(po::coeff_b_plus({1, weight::half(0), 4, 4, 0.8}, pol));
    CHECK_THROWS_AS(po::coeff_c({0, weight::integral(4), 1, 1, 0.4}, pol), std::domain_error);
}

TEST_CASE("determinism across thread counts") {
    std::vector<int64_t> ns = {3, 4, 7, 8};
    po::truncation_policy pol{600, 1e-9, 2};
    po::set_threads(1);
    auto row1 = po::coeff_b_plus_row(0, weight::half(1), 4, ns, 0.75, pol);
    po::set_threads(2);
    auto row2 = po::coeff_b_plus_row(0, weight::half(1), 4, ns, 0.75, pol);
    po::set_threads(0);
    for (size_t i = 0; i < ns.size(); ++i) {
        CHECK(std::memcmp(&row1[i].value, &row2[i].value, sizeof(cplx)) == 0);
        CHECK(row1[i].c_used == row2[i].c_used);
        CHECK(row1[i].error_estimate == row2[i].error_estimate);
    }
}

TEST_CASE("truncation monotonicity on a sample query") {
    po::truncation_policy tight{4000, 0.0, 2};
    po::truncation_policy wider{8000, 0.0, 2};
    auto a = po::coeff_b_plus({0, weight::half(1), 4, 3, 0.75}, tight);
    auto b = po::coeff_b_plus({0, weight::half(1), 4, 3, 0.75}, wider);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate);
}

TEST_CASE("derivative row stability at (D,n) = (3,1)") {
    po::truncation_policy pol{3000, 0.0, 2};
    auto d = po::coeff_b_plus_ds({3, weight::half(1), 4, 1, 0.75}, pol);
    CHECK(std::abs(d.diff_h - d.diff_h2) / std::max(1.0, std::abs(d.deriv.value)) < 1e-4);
}

TEST_CASE("special expansion at weight 4 reproduces Eisenstein ratios") {
    po::truncation_policy pol{3000, 1e-9, 2};
    auto h = po::expansion_special(0, weight::integral(4), 1, 8, pol);
    CHECK(h.nonhol.empty());
    CHECK(h.hol.at(0).real() == doctest::Approx(1.0).epsilon(1e-12));
    double a1 = h.hol.at(1).real();
    for (int64_t n = 1; n <= 8; ++n)
        CHECK(h.hol.at(n).real() / a1 ==
              doctest::Approx(double(arith::divisor_sigma(n, 3))).epsilon(1e-6));
}

TEST_CASE("negative-weight special expansion structure") {
    po::truncation_policy pol{1500, 1e-8, 2};
    // weight -6, level 1: no weight-8 cusp forms exist, so the shadow is zero
    // and the gamma-kernel coefficients must cancel against the head pairing
    auto h6 = po::expansion_special(-1, weight::integral(-6), 1, 6, pol);
    CHECK(h6.hol.at(-1).real() == doctest::Approx(1.0));
    CHECK(std::abs(h6.nonhol.at(-1)) < 1e-9);
    CHECK(std::abs(h6.nonhol.at(-2)) < 1e-9);
    // weight -10, level 1: the shadow is proportional to the discriminant
    // cusp form, so the kernel coefficients reproduce tau(2)/tau(1) = -24
    auto h10 = po::expansion_special(-1, weight::integral(-10), 1, 6, pol);
    cplx c1 = h10.nonhol.at(-1), c2 = h10.nonhol.at(-2);
    CHECK(std::abs(c1) > 1e-7);
    double ratio = (c2 / c1).real() * std::pow(2.0, 11.0);
    CHECK(ratio == doctest::Approx(-24.0).epsilon(1e-4));
    CHECK(std::abs((c2 / c1).imag()) < 1e-8);
}

TEST_CASE("raw evaluation is head-dominated for large y") {
    po::truncation_policy pol{400, 1e-10, 2};
    const cplx z(0.0, 20.0);
    cplx val = po::evaluate_raw(-1, weight::integral(4), 1, 2.0, z, 4, pol);
    // closed asymptotic form of the head kernel: Gamma(2s)^{-1} (4 pi y)^{-k/2}
    // times Gamma(1+2nu)/Gamma(nu-mu+1/2) (4 pi y)^{-mu} e^{2 pi y} = e^{2 pi y}/6
    double closed = std::exp(2.0 * pi * 20.0) / 6.0;
    CHECK(std::abs(val.real() / closed - 1.0) < 1e-2);
}

TEST_CASE("harmonic evaluation reports a tail bound") {
    po::harmonic_expansion h;
    h.k = weight::half(1);
    h.level = 4;
    h.hol[0] = 1.0;
    h.hol[5] = 2.0;
    double tail = -1.0;
    po::evaluate(h, cplx(0.1, 0.5), 0.1, &tail);
    double q = std::exp(-2.0 * pi * 0.5);
    CHECK(tail == doctest::Approx(2.0 * std::pow(q, 6.0) / (1.0 - q)));
    CHECK_THROWS_AS(po::evaluate(h, cplx(0.0, 0.05)), po::tail_too_large);
}

TEST_CASE("modularity helpers") {
    auto f = [](cplx z) { return std::exp(cplx(0.0, 2.0 * pi) * z); };
    CHECK(po::modularity_residual(f, weight::integral(0), {1, 0, 0, 1}, cplx(0.3, 0.9)) == 0.0);
    CHECK(po::modularity_residual(f, weight::integral(0), {1, 1, 0, 1}, cplx(0.3, 0.9)) < 1e-15);
    CHECK_THROWS_AS(
        po::modularity_residual(f, weight::integral(0), {2, 0, 0, 1}, cplx(0.3, 0.9)),
        std::domain_error);
}
