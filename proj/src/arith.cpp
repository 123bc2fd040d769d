#include "maass/arith.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace maass::arith {

namespace {

int64_t gcd64(int64_t a, int64_t b) {
    return std::gcd(a, b);
}

}  // namespace

rational::rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int64_t g = gcd64(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

rational rational::operator+(const rational& o) const {
    return rational(num * o.den + o.num * den, den * o.den);
}

rational rational::operator*(const rational& o) const {
    return rational(num * o.num, den * o.den);
}

residue mod_inverse(int64_t v, int64_t c) {
    if (c <= 0) throw std::domain_error("mod_inverse: modulus must be positive");
    int64_t a = v % c;
    if (a < 0) a += c;
    if (c == 1) return {0, 1};
    // extended Euclid on (a, c)
    int64_t r0 = a, r1 = c, s0 = 1, s1 = 0;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw not_invertible("mod_inverse: arguments not coprime");
    int64_t inv = s0 % c;
    if (inv < 0) inv += c;
    return {inv, c};
}

int kronecker_symbol(int64_t a, int64_t b) {
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;
    int result = 1;
    if (b < 0) {
        b = -b;
        if (a < 0) result = -result;
    }
    // strip factors of two off b, each contributing (a|2)
    int tz = std::countr_zero(static_cast<uint64_t>(b));
    b >>= tz;
    if (tz & 1) {
        int64_t am = a & 7;  // a mod 8 for odd a (two's complement keeps low bits)
        if (am == 3 || am == 5) result = -result;
    }
    // now b odd positive; (a|b) is b-periodic in a
    a %= b;
    if (a < 0) a += b;
    while (a != 0) {
        int za = std::countr_zero(static_cast<uint64_t>(a));
        a >>= za;
        if (za & 1) {
            int64_t bm = b & 7;
            if (bm == 3 || bm == 5) result = -result;
        }
        // quadratic reciprocity for odd positive a, b
        if ((a & 3) == 3 && (b & 3) == 3) result = -result;
        int64_t t = b % a;
        b = a;
        a = t;
    }
    return b == 1 ? result : 0;
}

std::complex<double> eps(int64_t d) {
    if ((d & 1) == 0) throw even_argument("eps: argument must be odd");
    int64_t r = d % 4;
    if (r < 0) r += 4;
    return r == 1 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
}

rational hurwitz_class_number_oracle(int64_t n) {
    if (n < 0) throw not_a_discriminant("hurwitz: negative argument");
    if (n == 0) return rational(-1, 12);
    int64_t r = n % 4;
    if (r == 1 || r == 2) throw not_a_discriminant("hurwitz: need n = 0 or 3 mod 4");
    // reduced forms a x^2 + b xy + c y^2, b^2 - 4ac = -n,
    // -a < b <= a <= c, and b >= 0 when a == c.
    rational h(0, 1);
    for (int64_t a = 1; 3 * a * a <= n; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            int64_t num = b * b + n;
            if (num % (4 * a) != 0) continue;
            int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (b == 0 && a == c)
                h = h + rational(1, 2);
            else if (a == b && b == c)
                h = h + rational(1, 3);
            else
                h = h + rational(1, 1);
        }
    }
    return h;
}

int64_t divisor_sigma(int64_t m, int power) {
    if (m < 1) throw std::domain_error("divisor_sigma: m must be positive");
    int64_t total = 0;
    for (int64_t d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        int64_t e = m / d;
        int64_t dp = 1, ep = 1;
        for (int i = 0; i < power; ++i) {
            dp *= d;
            ep *= e;
        }
        total += dp;
        if (e != d) total += ep;
    }
    return total;
}

int64_t euler_phi(int64_t n) {
    int64_t result = n;
    int64_t m = n;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace maass::arith
