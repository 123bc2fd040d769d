#include "doctest.h"
#include "maass/arith.hpp"
#include "maass/kloosterman.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <cstring>
#include <thread>

using namespace maass;
namespace kl = maass::kloosterman;
using cplx = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;
const kl::weight_class wc_int{false, 0};
const kl::weight_class wc12 = kl::weight_class::of(weight::half(0));
const kl::weight_class wc32 = kl::weight_class::of(weight::half(1));
}  // namespace

TEST_CASE("integral-weight sums against the definition") {
    CHECK(std::abs(kl::kloosterman_sum(wc_int, 1, 1, 2) - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(kl::kloosterman_sum(wc_int, 1, 1, 3) - cplx(-1.0, 0.0)) < 1e-13);
    for (int64_t c = 1; c <= 40; ++c)
        for (int64_t m : {0, 1, 2, 5})
            for (int64_t n : {-3, 0, 1, 4}) {
                cplx lib = kl::kloosterman_sum(wc_int, m, n, c);
                cplx ref = oracles::kloosterman_naive_int(m, n, c);
                CHECK(std::abs(lib - ref) < 1e-11);
            }
}

TEST_CASE("half-integral hand values") {
    // K_{3/2}(0,0,4) = 1 - i over v in {1,3}
    CHECK(std::abs(kl::kloosterman_sum(wc32, 0, 0, 4) - cplx(1.0, -1.0)) < 1e-14);
    // K_{3/2}(0,0,12) = 0
    CHECK(std::abs(kl::kloosterman_sum(wc32, 0, 0, 12)) < 1e-13);
    // K_{3/2}(0,3,4) = 1 - i
    CHECK(std::abs(kl::kloosterman_sum(wc32, 0, 3, 4) - cplx(1.0, -1.0)) < 1e-13);
    // K_{3/2}(3,3,4) = -1 + i
    CHECK(std::abs(kl::kloosterman_sum(wc32, 3, 3, 4) - cplx(-1.0, 1.0)) < 1e-13);
    // K_{3/2}(0,3,8) = 2 sqrt2 (-1 + i)
    CHECK(std::abs(kl::kloosterman_sum(wc32, 0, 3, 8) -
                   2.0 * std::sqrt(2.0) * cplx(-1.0, 1.0)) < 1e-13);
}

TEST_CASE("trivial bound and conjugation") {
    for (int64_t c : {4, 8, 12, 20, 36, 100}) {
        for (int64_t m : {0, 1, 7})
            for (int64_t n : {0, 2, 9}) {
                CHECK(std::abs(kl::kloosterman_sum(wc32, m, n, c)) <=
                      double(arith::euler_phi(c)) + 1e-9);
                cplx a = kl::kloosterman_sum(wc_int, m, n, c);
                cplx b = kl::kloosterman_sum(wc_int, -m, -n, c);
                CHECK(std::abs(std::conj(a) - b) < 1e-11);
            }
    }
}

TEST_CASE("weight symmetry: K_32(m,n,c) = K_32(n,m,c) = -i K_12(-m,-n,c)") {
    double worst = 0.0;
    for (int64_t c = 4; c <= 128; c += 4)
        for (int64_t m = -12; m <= 12; ++m)
            for (int64_t n = -12; n <= 12; ++n) {
                cplx a = kl::kloosterman_sum(wc32, m, n, c);
                cplx b = kl::kloosterman_sum(wc32, n, m, c);
                cplx d = kl::kloosterman_sum(wc12, -m, -n, c);
                worst = std::max(worst, std::abs(a - b));
                worst = std::max(worst, std::abs(a - cplx(0.0, -1.0) * d));
            }
    CHECK(worst <= 1e-10);
}

TEST_CASE("plus-space combination identity, n = 0 (mod 4)") {
    // For odd c and N = 4N':
    //   (1 + (4|N'c)) K_k(m,n,Nc) = K_k(m,n,Nc)
    //        + 4 (1-(-1)^l i)((-1)^l i/4) H(m/4, n/4)
    for (int lambda : {0, 1}) {
        weight k = weight::half(lambda);
        auto wc = kl::weight_class::of(k);
        cplx il = (lambda % 2 == 0) ? cplx(0, 1) : cplx(0, -1);  // (-1)^lambda i
        for (int64_t nprime : {1, 3}) {
            int64_t N = 4 * nprime;
            std::vector<int64_t> ms = (lambda == 1) ? std::vector<int64_t>{0, 3, 4}
                                                    : std::vector<int64_t>{0, 1, 4};
            for (int64_t m : ms)
                for (int64_t n : {0, 4, 8, 12})
                    for (int64_t c : {1, 3, 5, 7, 9}) {
                        cplx K = kl::kloosterman_sum(wc, m, n, N * c);
                        cplx H = kl::h_sum(m, n / 4, nprime, c, k);
                        cplx lhs = (1.0 + arith::kronecker_symbol(4, nprime * c)) * K;
                        cplx rhs = K + 4.0 * (1.0 - il) * (il / 4.0) * H;
                        CHECK(std::abs(lhs - rhs) <= 1e-10);
                    }
        }
    }
}

TEST_CASE("plus-space combination identity, (-1)^lambda n = 1 (mod 4)") {
    // For odd c: (1 + (4|N'c)) K_k(m,n,Nc) = K_k(m,n,Nc)
    //        + 2^{-3/2} ((-1)^lambda n | 2) K_k(4m, n, 2Nc)
    for (int lambda : {0, 1}) {
        weight k = weight::half(lambda);
        auto wc = kl::weight_class::of(k);
        for (int64_t nprime : {1, 3}) {
            int64_t N = 4 * nprime;
            std::vector<int64_t> ms = (lambda == 1) ? std::vector<int64_t>{0, 3, 4}
                                                    : std::vector<int64_t>{0, 1, 4};
            std::vector<int64_t> nsv = (lambda == 1) ? std::vector<int64_t>{3, 7, 11}
                                                     : std::vector<int64_t>{1, 5, 13};
            for (int64_t m : ms)
                for (int64_t n : nsv)
                    for (int64_t c : {1, 3, 5, 7, 9}) {
                        cplx K = kl::kloosterman_sum(wc, m, n, N * c);
                        cplx K2 = kl::kloosterman_sum(wc, 4 * m, n, 2 * N * c);
                        int chi = arith::kronecker_symbol((lambda % 2 == 0) ? n : -n, 2);
                        cplx lhs = (1.0 + arith::kronecker_symbol(4, nprime * c)) * K;
                        cplx rhs = K + std::pow(2.0, -1.5) * double(chi) * K2;
                        CHECK(std::abs(lhs - rhs) <= 1e-10);
                    }
        }
    }
}

TEST_CASE("h_sum with m = 0 equals the plain twisted sum") {
    // direct enumeration at modulus 15
    int64_t nprime = 3, c = 5, L = 15, n = 1;
    cplx direct{};
    for (int64_t d = 1; d < L; ++d) {
        if (oracles::gcd_i(d, L) != 1) continue;
        direct += double(arith::kronecker_symbol(d, L)) * oracles::e_of(double(n * d) / double(L));
    }
    weight k = weight::half(1);
    cplx pref = double(arith::kronecker_symbol(4, -L));
    if (arith::kronecker_symbol(-4, L) < 0) pref *= cplx(0.0, 1.0);  // lambda odd: e^{-i pi k}
    CHECK(std::abs(kl::h_sum(0, n, nprime, c, k) - pref * direct) < 1e-12);
    CHECK_THROWS_AS(kl::h_sum(1, 1, 2, 1, weight::half(1)), kl::four_not_invertible);
}

TEST_CASE("cache transparency and concurrent access") {
    kl::cache fresh;
    cplx a = kl::kloosterman_sum(wc32, 5, 7, 64, fresh);
    cplx b = kl::kloosterman_sum(wc32, 5, 7, 64, fresh);  // cached now
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    kl::cache fresh2;
    cplx c = kl::kloosterman_sum(wc32, 5, 7, 64, fresh2);
    CHECK(std::memcmp(&a, &c, sizeof a) == 0);

    kl::cache shared;
    std::vector<std::thread> pool;
    std::vector<cplx> results(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&shared, &results, t] {
            for (int rep = 0; rep < 50; ++rep)
                results[t] = kl::kloosterman_sum(wc32, 3, 11, 128, shared);
        });
    for (auto& th : pool) th.join();
    for (int t = 1; t < 8; ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("row evaluation matches single sums") {
    std::vector<int64_t> ns = {-5, -1, 0, 3, 4, 12};
    auto row = kl::kloosterman_row(wc32, 3, ns, 44);
    for (size_t i = 0; i < ns.size(); ++i) {
        cplx single = kl::kloosterman_sum(wc32, 3, ns[i], 44);
        CHECK(std::memcmp(&row[i], &single, sizeof single) == 0);
    }
}
