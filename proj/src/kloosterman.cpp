#include "maass/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "maass/arith.hpp"

namespace maass::kloosterman {

namespace {

constexpr double pi = std::numbers::pi;

int64_t reduce(int64_t a, int64_t m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

}  // namespace

cache& default_cache() {
    static cache instance;
    return instance;
}

void unit_roots(int64_t modulus, std::vector<cplx>& out) {
    out.resize(static_cast<size_t>(modulus));
    // two-level split keeps table construction at one complex multiply per
    // entry instead of a sincos per entry
    int64_t block = std::max<int64_t>(1, static_cast<int64_t>(std::sqrt(double(modulus))));
    std::vector<cplx> lo(static_cast<size_t>(block));
    for (int64_t j = 0; j < block; ++j)
        lo[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * pi * double(j) / double(modulus));
    int64_t hi_count = modulus / block + 2;
    std::vector<cplx> hi(static_cast<size_t>(hi_count));
    for (int64_t j = 0; j < hi_count; ++j)
        hi[static_cast<size_t>(j)] =
            std::polar(1.0, 2.0 * pi * double(j * block % modulus) / double(modulus));
    for (int64_t r = 0; r < modulus; ++r)
        out[static_cast<size_t>(r)] = hi[static_cast<size_t>(r / block)] * lo[static_cast<size_t>(r % block)];
}

std::vector<cplx> kloosterman_row(weight_class wc, int64_t m, std::span<const int64_t> ns,
                                  int64_t modulus) {
    const int64_t M = modulus;
    if (M <= 0) throw std::domain_error("kloosterman_row: modulus must be positive");
    if (wc.half && M % 4 != 0)
        throw std::domain_error("kloosterman_row: half-integral weight needs 4 | modulus");
    const size_t J = ns.size();
    std::vector<double> acc_re(J, 0.0), acc_im(J, 0.0);
    if (M == 1) {
        // single (trivial) residue class, e(0) = 1
        std::vector<cplx> out(J, cplx(1.0, 0.0));
        return out;
    }

    static thread_local std::vector<cplx> table;
    unit_roots(M, table);

    const int64_t mm = reduce(m, M);
    std::vector<int64_t> step(J), run(J);
    const int64_t vstep = wc.half ? 2 : 1;
    const int64_t v0 = 1;
    for (size_t j = 0; j < J; ++j) {
        int64_t nj = reduce(ns[j], M);
        step[j] = reduce(nj * vstep, M);
        run[j] = reduce(nj * v0, M);  // n*v at v = v0
    }

    // eps_v^{2k} for v = 3 (mod 4): i^(2 lambda + 1)
    const bool eps_is_minus_i = wc.half && (wc.lambda_parity == 1);

    for (int64_t v = v0; v < M; v += vstep) {
        // chi(v): Kronecker symbol doubles as the coprimality filter for the
        // half-integral character; integral weight uses a plain gcd test
        int sym = 1;
        if (wc.half) {
            sym = arith::kronecker_symbol(M, v);
        } else if (std::gcd(v, M) != 1) {
            sym = 0;
        }
        if (sym != 0) {
            int64_t base = 0;
            if (mm != 0) {
                int64_t vbar = arith::mod_inverse(v, M).value;
                base = (mm * vbar) % M;
            }
            // char = sym * eps-power; one of +-1, +-i
            int mode;  // 0:+1 1:-1 2:+i 3:-i
            if (!wc.half || (v & 3) == 1) {
                mode = sym > 0 ? 0 : 1;
            } else {
                bool minus_i = eps_is_minus_i;
                if (sym < 0) minus_i = !minus_i;
                mode = minus_i ? 3 : 2;
            }
            switch (mode) {
                case 0:
                    for (size_t j = 0; j < J; ++j) {
                        int64_t idx = base + run[j];
                        if (idx >= M) idx -= M;
                        cplx w = table[static_cast<size_t>(idx)];
                        acc_re[j] += w.real();
                        acc_im[j] += w.imag();
                    }
                    break;
                case 1:
                    for (size_t j = 0; j < J; ++j) {
                        int64_t idx = base + run[j];
                        if (idx >= M) idx -= M;
                        cplx w = table[static_cast<size_t>(idx)];
                        acc_re[j] -= w.real();
                        acc_im[j] -= w.imag();
                    }
                    break;
                case 2:  // * i: (re,im) -> (-im, re)
                    for (size_t j = 0; j < J; ++j) {
                        int64_t idx = base + run[j];
                        if (idx >= M) idx -= M;
                        cplx w = table[static_cast<size_t>(idx)];
                        acc_re[j] -= w.imag();
                        acc_im[j] += w.real();
                    }
                    break;
                default:  // * -i
                    for (size_t j = 0; j < J; ++j) {
                        int64_t idx = base + run[j];
                        if (idx >= M) idx -= M;
                        cplx w = table[static_cast<size_t>(idx)];
                        acc_re[j] += w.imag();
                        acc_im[j] -= w.real();
                    }
                    break;
            }
        }
        for (size_t j = 0; j < J; ++j) {
            run[j] += step[j];
            if (run[j] >= M) run[j] -= M;
        }
    }

    std::vector<cplx> out(J);
    for (size_t j = 0; j < J; ++j) out[j] = cplx(acc_re[j], acc_im[j]);
    return out;
}

cplx kloosterman_sum(weight_class wc, int64_t m, int64_t n, int64_t modulus, cache& c) {
    key k{wc, reduce(m, modulus), reduce(n, modulus), modulus};
    cplx v;
    if (c.lookup(k, v)) return v;
    int64_t narr[1] = {k.n};
    v = kloosterman_row(wc, k.m, std::span<const int64_t>(narr, 1), modulus)[0];
    c.insert(k, v);
    return v;
}

cplx kloosterman_sum(weight k, int64_t m, int64_t n, int64_t modulus, cache& c) {
    return kloosterman_sum(weight_class::of(k), m, n, modulus, c);
}

cplx h_sum(int64_t m, int64_t n, int64_t nprime, int64_t c, weight k) {
    if (!k.is_half()) throw std::domain_error("h_sum: weight must be half-integral");
    if (nprime <= 0 || c <= 0) throw std::domain_error("h_sum: modulus parts must be positive");
    const int64_t L = nprime * c;
    if (L % 2 == 0) throw four_not_invertible("h_sum: 4 has no inverse at even modulus");

    int64_t inv4m = 0;
    if (L > 1) {
        int64_t inv4 = arith::mod_inverse(4, L).value;
        inv4m = reduce(inv4 * reduce(m, L), L);
    }

    static thread_local std::vector<cplx> table;
    unit_roots(L, table);
    const int64_t nn = reduce(n, L);

    double re = 0.0, im = 0.0;
    if (L == 1) {
        re = 1.0;
    } else {
        for (int64_t d = 1; d < L; ++d) {
            int sym = arith::kronecker_symbol(d, L);
            if (sym == 0) continue;
            int64_t dbar = arith::mod_inverse(d, L).value;
            int64_t idx = (nn * d + inv4m * dbar) % L;
            cplx w = table[static_cast<size_t>(idx)];
            re += sym * w.real();
            im += sym * w.imag();
        }
    }
    cplx sum(re, im);

    // (4 | -N'c) and (-4 | N'c)^{-k} with (-1)^{-k} on the principal branch:
    // e^{-i pi k} = (-1)^lambda * (-i)
    double front = arith::kronecker_symbol(4, -L);
    cplx twist(1.0, 0.0);
    if (arith::kronecker_symbol(-4, L) < 0) {
        int lp = k.lambda() % 2;
        if (lp < 0) lp += 2;
        twist = (lp == 0) ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    }
    return front * twist * sum;
}

}  // namespace maass::kloosterman
