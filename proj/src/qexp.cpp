#include "maass/qexp.hpp"

#include <algorithm>

#include "maass/arith.hpp"

namespace maass::qexp {

void zseries::trim() {
    size_t lead = 0;
    while (lead < c.size() && c[lead] == 0) ++lead;
    if (lead > 0) {
        c.erase(c.begin(), c.begin() + long(lead));
        v0 += int64_t(lead);
    }
    int64_t keep = std::min<int64_t>(int64_t(c.size()), prec - v0);
    if (keep < 0) keep = 0;
    c.resize(size_t(keep));
    while (!c.empty() && c.back() == 0) c.pop_back();
}

zseries z_const(const bigint& a, int64_t prec) {
    zseries r{0, prec, {a}};
    r.trim();
    return r;
}

zseries z_monomial(int64_t e, int64_t prec) {
    zseries r{e, prec, {bigint(1)}};
    r.trim();
    return r;
}

zseries z_add(const zseries& a, const zseries& b) {
    zseries r;
    r.prec = std::min(a.prec, b.prec);
    r.v0 = std::min(a.v0, b.v0);
    int64_t top = std::min(r.prec, std::max(a.v0 + int64_t(a.c.size()), b.v0 + int64_t(b.c.size())));
    if (top < r.v0) top = r.v0;
    r.c.assign(size_t(top - r.v0), bigint(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        int64_t e = a.v0 + int64_t(i);
        if (e < top) r.c[size_t(e - r.v0)] += a.c[i];
    }
    for (size_t i = 0; i < b.c.size(); ++i) {
        int64_t e = b.v0 + int64_t(i);
        if (e < top) r.c[size_t(e - r.v0)] += b.c[i];
    }
    r.trim();
    return r;
}

zseries z_scale(const zseries& a, const bigint& s) {
    zseries r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
}

zseries z_sub(const zseries& a, const zseries& b) { return z_add(a, z_scale(b, bigint(-1))); }

zseries z_mul(const zseries& a, const zseries& b) {
    zseries r;
    // a is complete below a.prec, b below b.prec
    r.prec = std::min(a.prec + b.v0, b.prec + a.v0);
    r.v0 = a.v0 + b.v0;
    int64_t len = r.prec - r.v0;
    if (len < 0) len = 0;
    r.c.assign(size_t(len), bigint(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        int64_t ea = a.v0 + int64_t(i);
        for (size_t j = 0; j < b.c.size(); ++j) {
            int64_t e = ea + b.v0 + int64_t(j);
            if (e >= r.prec) break;
            if (b.c[j] == 0) continue;
            r.c[size_t(e - r.v0)] += a.c[i] * b.c[j];
        }
    }
    r.trim();
    return r;
}

zseries z_inv(const zseries& a) {
    if (a.c.empty() || (a.c[0] != 1 && a.c[0] != -1))
        throw construction_error("z_inv: leading coefficient must be a unit");
    const bigint lead = a.c[0];
    zseries r;
    r.v0 = -a.v0;
    r.prec = a.prec - 2 * a.v0;
    int64_t len = r.prec - r.v0;
    if (len <= 0) throw construction_error("z_inv: no precision left");
    r.c.assign(size_t(len), bigint(0));
    r.c[0] = lead;  // lead is +-1
    for (int64_t i = 1; i < len; ++i) {
        bigint s = 0;
        for (int64_t j = 1; j <= i && j < int64_t(a.c.size()); ++j)
            s += a.c[size_t(j)] * r.c[size_t(i - j)];
        r.c[size_t(i)] = -lead * s;
    }
    r.trim();
    return r;
}

zseries z_pow(const zseries& a, int e) {
    if (e < 0) return z_pow(z_inv(a), -e);
    zseries r = z_const(1, e == 0 ? a.prec : a.prec + (int64_t(e) - 1) * a.v0);
    zseries base = a;
    int n = e;
    while (n > 0) {
        if (n & 1) r = z_mul(r, base);
        n >>= 1;
        if (n > 0) base = z_mul(base, base);
    }
    return r;
}

namespace {

// prod (1 - x^n) by the pentagonal number theorem, x = q^mult
zseries euler_product(int64_t mult, int64_t prec) {
    zseries r{0, prec, {}};
    r.c.assign(size_t(std::max<int64_t>(prec, 1)), bigint(0));
    r.c[0] = 1;
    for (int64_t k = 1;; ++k) {
        int64_t e1 = mult * k * (3 * k - 1) / 2;
        int64_t e2 = mult * k * (3 * k + 1) / 2;
        if (e1 >= prec && e2 >= prec) break;
        bigint sign = (k % 2 == 0) ? 1 : -1;
        if (e1 < prec) r.c[size_t(e1)] += sign;
        if (e2 < prec) r.c[size_t(e2)] += sign;
    }
    r.trim();
    return r;
}

}  // namespace

zseries eta_quotient(const std::vector<std::pair<int64_t, int>>& factors, int64_t prec) {
    int64_t pref24 = 0;
    for (auto [mult, r] : factors) pref24 += mult * r;
    if (pref24 % 24 != 0) throw construction_error("eta_quotient: fractional q-power");
    int64_t shift = pref24 / 24;
    int64_t wp = prec + std::abs(shift) + 8;
    zseries acc = z_const(1, wp);
    for (auto [mult, r] : factors) {
        zseries p = euler_product(mult, wp);
        acc = z_mul(acc, z_pow(p, r));
    }
    zseries result = z_mul(acc, z_monomial(shift, wp));
    result.prec = std::min(result.prec, prec);
    result.trim();
    return result;
}

zseries theta_series(int64_t prec) {
    zseries r{0, prec, {}};
    r.c.assign(size_t(std::max<int64_t>(prec, 1)), bigint(0));
    if (prec > 0) r.c[0] = 1;
    for (int64_t n = 1; n * n < prec; ++n) r.c[size_t(n * n)] = 2;
    r.trim();
    return r;
}

zseries eisenstein_e4(int64_t prec) {
    zseries r{0, prec, {}};
    r.c.assign(size_t(std::max<int64_t>(prec, 1)), bigint(0));
    if (prec > 0) r.c[0] = 1;
    for (int64_t n = 1; n < prec; ++n) r.c[size_t(n)] = 240 * arith::divisor_sigma(n, 3);
    r.trim();
    return r;
}

zseries delta_series(int64_t prec) { return eta_quotient({{1, 24}}, prec); }

zseries j_invariant(int64_t prec) {
    int64_t wp = prec + 4;
    zseries e4 = eisenstein_e4(wp);
    zseries num = z_mul(z_mul(e4, e4), e4);
    zseries r = z_mul(num, z_inv(delta_series(wp)));
    r.prec = std::min(r.prec, prec);
    r.trim();
    return r;
}

std::vector<zseries> faber_j(int64_t m_max, int64_t prec) {
    int64_t wp = prec + m_max + 2;
    std::vector<zseries> js;
    js.push_back(z_const(1, wp));
    zseries j1 = z_sub(j_invariant(wp), z_const(744, wp));
    js.push_back(j1);
    for (int64_t m = 2; m <= m_max; ++m) {
        zseries p = z_mul(j1, js[size_t(m - 1)]);
        for (int64_t e = m - 1; e >= 1; --e) p = z_sub(p, z_scale(js[size_t(e)], p.coeff(-e)));
        p = z_sub(p, z_const(p.coeff(0), p.prec));
        js.push_back(p);
    }
    return js;
}

zseries hauptmodul_t4(int64_t prec) { return eta_quotient({{1, 8}, {4, -8}}, prec); }

namespace {

// exact dense Gaussian elimination; returns false when singular
bool solve_rational(std::vector<std::vector<bigrat>>& A, std::vector<bigrat>& rhs,
                    std::vector<bigrat>& x) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            bigrat f = A[r][col] / A[col][col];
            for (size_t cc = col; cc < n; ++cc) A[r][cc] -= f * A[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    x.assign(n, bigrat(0));
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / A[i][i];
    return true;
}

bool plus_class_ok(int twice_k, int64_t e) {
    // weight 1/2: e = 0,1 (mod 4); weight 3/2: e = 0,3 (mod 4)
    int64_t r = e % 4;
    if (r < 0) r += 4;
    return twice_k == 1 ? (r == 0 || r == 1) : (r == 0 || r == 3);
}

}  // namespace

zseries plus_basis_form(int twice_k, int64_t head, int64_t prec) {
    if (twice_k != 1 && twice_k != 3)
        throw construction_error("plus_basis_form: weight must be 1/2 or 3/2");
    if (head >= 0 || !plus_class_ok(twice_k, head))
        throw construction_error("plus_basis_form: bad head exponent");
    const int64_t wp = std::max<int64_t>(prec, -head + 40);
    const int64_t bp = wp + 18 - head;
    zseries base = (twice_k == 3) ? z_pow(theta_series(bp), 3) : theta_series(bp);
    zseries t = hauptmodul_t4(bp);
    zseries t16 = z_add(t, z_const(16, bp));

    // The quotient form/theta^w is a rational function of the Hauptmodul with
    // poles confined to the cusps; t vanishes at the cusp 0 and t+16 at the
    // cusp 1/2, so a t^{-a} (t+16)^{-b} denominator eventually captures it.
    for (int64_t rtot = 0; rtot <= 8; ++rtot) {
      for (int64_t a = 0; a <= rtot; ++a) {
        const int64_t b = rtot - a;
        const int64_t K = -head + rtot;
        std::vector<zseries> basis;
        zseries den = z_mul(z_pow(t, int(-a)), z_pow(t16, int(-b)));
        zseries tp = den;
        for (int64_t j = 0; j <= K; ++j) {
            basis.push_back(z_mul(base, tp));
            if (j < K) tp = z_mul(tp, t);
        }
        // conditions: all exponents from head through 0 (weight 1/2; constant
        // normalized away) or through -1 (weight 3/2; constant free), then
        // off-class positive exponents until the system is square
        std::vector<int64_t> cond;
        int64_t upper = (twice_k == 1) ? 0 : -1;
        for (int64_t e = head; e <= upper; ++e) cond.push_back(e);
        for (int64_t e = 1; int64_t(cond.size()) < K + 1; ++e)
            if (!plus_class_ok(twice_k, e)) cond.push_back(e);
        const size_t n = size_t(K + 1);
        std::vector<std::vector<bigrat>> A(n, std::vector<bigrat>(n));
        std::vector<bigrat> rhs(n);
        for (size_t r = 0; r < n; ++r) {
            for (size_t ci = 0; ci < n; ++ci) A[r][ci] = bigrat(basis[ci].coeff(cond[r]));
            rhs[r] = (cond[r] == head) ? 1 : 0;
        }
        std::vector<bigrat> x;
        if (!solve_rational(A, rhs, x)) continue;
        bigint lcm = 1;
        for (const auto& xi : x) {
            bigint den = boost::multiprecision::denominator(xi);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
        zseries comb = z_const(0, base.prec);
        for (size_t i = 0; i < n; ++i) {
            bigint num = boost::multiprecision::numerator(x[i]) *
                         (lcm / boost::multiprecision::denominator(x[i]));
            comb = z_add(comb, z_scale(basis[i], num));
        }
        bool integral = true;
        for (auto& coef : comb.c) {
            if (coef % lcm != 0) {
                integral = false;
                break;
            }
            coef /= lcm;
        }
        if (!integral) continue;
        // verify: exact head, nothing below it, support condition clean
        bool ok = comb.coeff(head) == 1;
        for (int64_t e = comb.v0; e < head && ok; ++e) ok = comb.coeff(e) == 0;
        int64_t vtop = std::min(comb.prec, wp);
        for (int64_t e = head + 1; e < vtop && ok; ++e) {
            if (e < 0 && comb.coeff(e) != 0) ok = false;
            if (!plus_class_ok(twice_k, e) && comb.coeff(e) != 0) ok = false;
        }
        if (twice_k == 1 && ok) ok = comb.coeff(0) == 0;
        if (!ok) continue;
        comb.prec = std::min(comb.prec, prec);
        comb.trim();
        return comb;
      }
    }
    throw construction_error("plus_basis_form: no theta eta-quotient combination found");
}

}  // namespace maass::qexp
