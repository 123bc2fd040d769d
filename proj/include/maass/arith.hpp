#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace maass::arith {

using std::int64_t;

struct not_invertible : std::domain_error {
    using std::domain_error::domain_error;
};
struct even_argument : std::domain_error {
    using std::domain_error::domain_error;
};
struct not_a_discriminant : std::domain_error {
    using std::domain_error::domain_error;
};

// Residue class value in [0, modulus).
struct residue {
    int64_t value = 0;
    int64_t modulus = 1;
};

// Exact rational; Hurwitz class numbers land in denominators {1,2,3,4,6,12}.
struct rational {
    int64_t num = 0;
    int64_t den = 1;

    rational() = default;
    rational(int64_t n, int64_t d);

    rational operator+(const rational& o) const;
    rational operator*(const rational& o) const;
    bool operator==(const rational& o) const { return num == o.num && den == o.den; }
    double to_double() const { return double(num) / double(den); }
};

// v * result == 1 (mod c); throws not_invertible when gcd(v, c) != 1.
residue mod_inverse(int64_t v, int64_t c);

// Full Kronecker symbol (a|b): b may be zero, negative or even.
// (a|2) is 0 for even a, +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8);
// (a|-1) is +1 for a >= 0 and -1 for a < 0.
int kronecker_symbol(int64_t a, int64_t b);

// 1 for d = 1 (mod 4), i for d = 3 (mod 4); throws on even d.
// The mod-4 rule is applied verbatim for negative odd d as well; the theta
// automorphy checks pin that convention down.
std::complex<double> eps(int64_t d);

// Hurwitz class number H(n) by enumeration of reduced positive-definite
// binary quadratic forms of discriminant -n, counted with weight 1/2 for
// forms equivalent to a(x^2+y^2) and 1/3 for a(x^2+xy+y^2).  H(0) = -1/12.
rational hurwitz_class_number_oracle(int64_t n);

// Sum of d^power over divisors d of m.
int64_t divisor_sigma(int64_t m, int power);

// Euler phi by trial division; test/oracle helper.
int64_t euler_phi(int64_t n);

inline bool is_square(int64_t n) {
    if (n < 0) return false;
    int64_t r = static_cast<int64_t>(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

inline int64_t isqrt(int64_t n) {
    int64_t r = static_cast<int64_t>(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace maass::arith
