#include "maass/bases.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "maass/qexp.hpp"
#include "maass/summation.hpp"

namespace maass::bases {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt_pi = 1.7724538509055160273;

bool class_ok(int twice_k, int64_t n) {
    int64_t r = n % 4;
    if (r < 0) r += 4;
    return twice_k == 1 ? (r == 0 || r == 1) : (r == 0 || r == 3);
}

std::vector<int64_t> class_indices(int twice_k, int64_t n_max) {
    std::vector<int64_t> ns;
    for (int64_t n = 1; n <= n_max; ++n)
        if (class_ok(twice_k, n)) ns.push_back(n);
    return ns;
}

}  // namespace

qseries theta_series(int64_t n_max) {
    qseries q;
    q.level = 4;
    q.twice_k = 1;
    q.plus_space = true;
    q.n_max = n_max;
    q.coeffs[0] = 1.0;
    for (int64_t j = 1; j * j <= n_max; ++j) q.coeffs[j * j] = 2.0;
    return q;
}

qseries f_series(int64_t d, int64_t n_max, const poincare::truncation_policy& pol) {
    if (d > 0 || !class_ok(1, d)) throw index_class_error("f_series: need d <= 0, d = 0,1 mod 4");
    if (d == 0) return theta_series(n_max);
    qseries q;
    q.level = 4;
    q.twice_k = 1;
    q.plus_space = true;
    q.n_max = n_max;
    q.coeffs[d] = 1.0;
    q.coeffs[0] = 0.0;  // normalized away against theta

    auto ns = class_indices(1, n_max);
    std::vector<int64_t> query = ns;
    query.push_back(0);
    auto row = poincare::coeff_b_plus_row(d, weight::half(0), 4, query, 0.75, pol);
    const auto& b0 = row.back();
    for (const auto& tv : row) q.c_used = std::max(q.c_used, tv.c_used);
    for (size_t i = 0; i < ns.size(); ++i) {
        int64_t n = ns[i];
        cplx a = row[i].value;
        double err = row[i].error_estimate;
        if (arith::is_square(n)) {
            // the square coefficients absorb the Eisenstein correction that
            // removes the pole-bearing constant term
            double fac = 8.0 * std::sqrt(double(n));
            a -= fac * b0.value;
            err += fac * b0.error_estimate;
        }
        double norm = 1.0 / std::sqrt(double(n));
        q.coeffs[n] = a * norm;
        q.errors[n] = err * norm;
    }
    return q;
}

qseries g_series_neg(int64_t D, int64_t n_max, const poincare::truncation_policy& pol) {
    if (D >= 0 || !class_ok(3, D)) throw index_class_error("g_series_neg: need D < 0, D = 0,3 mod 4");
    qseries q;
    q.level = 4;
    q.twice_k = 3;
    q.plus_space = true;
    q.n_max = n_max;
    q.coeffs[D] = 1.0;
    const bool square_case = arith::is_square(-D);
    q.coeffs[0] = square_case ? -2.0 : 0.0;

    auto ns = class_indices(3, n_max);
    auto row = poincare::coeff_b_plus_row(D, weight::half(1), 4, ns, 0.75, pol);
    std::vector<poincare::truncated_value> row0;
    if (square_case) row0 = poincare::coeff_b_plus_row(0, weight::half(1), 4, ns, 0.75, pol);
    for (const auto& tv : row) q.c_used = std::max(q.c_used, tv.c_used);
    for (size_t i = 0; i < ns.size(); ++i) {
        int64_t n = ns[i];
        double rn = std::sqrt(double(n));
        cplx v = row[i].value;
        double err = row[i].error_estimate;
        if (square_case) {
            v -= (4.0 / sqrt_pi) * row0[i].value;
            err += (4.0 / sqrt_pi) * row0[i].error_estimate;
        }
        q.coeffs[n] = rn * v;
        q.errors[n] = rn * err;
    }
    return q;
}

qseries g_mock_series(int64_t D, int64_t n_max, const poincare::truncation_policy& pol) {
    if (D < 0 || !class_ok(3, D)) throw index_class_error("g_mock_series: need D >= 0, D = 0,3 mod 4");
    qseries q;
    q.level = 4;
    q.twice_k = 3;
    q.plus_space = true;
    q.n_max = n_max;
    auto H = [](int64_t n) { return arith::hurwitz_class_number_oracle(n).to_double(); };
    if (D == 0) {
        q.coeffs[0] = -16.0 * pi * H(0);
        for (int64_t n : class_indices(3, n_max)) q.coeffs[n] = -16.0 * pi * H(n);
        return q;
    }
    q.coeffs[0] = -16.0 * pi * H(D);
    std::vector<int64_t> ns;
    for (int64_t n : class_indices(3, n_max))
        if (n != D) ns.push_back(n);
    auto drow = poincare::coeff_b_plus_ds_row(D, weight::half(1), 4, ns, 0.75, pol);
    const double hd = H(D);
    for (size_t i = 0; i < ns.size(); ++i) {
        int64_t n = ns[i];
        double fac = 4.0 * std::sqrt(double(D) * double(n));
        q.coeffs[n] = fac * drow[i].deriv.value + 192.0 * pi * hd * H(n);
        q.errors[n] = fac * drow[i].deriv.error_estimate;
    }
    if (D <= n_max) {
        // complex head datum of the derivative construction; excluded from
        // integrality and duality checks
        q.coeffs[D] = cplx(0.0, -4.0 * pi * std::sqrt(double(D)));
    }
    return q;
}

poincare::harmonic_expansion zagier_eisenstein(int64_t n_max) {
    poincare::harmonic_expansion h;
    h.k = weight::half(1);
    h.level = 4;
    h.plus_space = true;
    h.n_max = n_max;
    h.hol[0] = arith::hurwitz_class_number_oracle(0).to_double();
    for (int64_t n : class_indices(3, n_max))
        h.hol[n] = arith::hurwitz_class_number_oracle(n).to_double();
    h.ypow = 1.0 / (8.0 * pi);
    for (int64_t j = 1; j * j <= n_max; ++j) h.nonhol[-j * j] = double(j) / (4.0 * sqrt_pi);
    return h;
}

namespace {

qseries from_zseries(const qexp::zseries& z, int twice_k, int64_t level, bool plus,
                     int64_t n_max) {
    qseries q;
    q.level = level;
    q.twice_k = twice_k;
    q.plus_space = plus;
    q.n_max = n_max;
    for (int64_t e = z.v0; e <= n_max && e < z.prec; ++e) {
        qexp::bigint c = z.coeff(e);
        if (c != 0) q.coeffs[e] = c.convert_to<double>();
    }
    return q;
}

}  // namespace

qseries j_oracle(int64_t m, int64_t n_max) {
    if (m < 1) throw std::domain_error("j_oracle: m must be positive");
    if (n_max > 64) throw std::domain_error("j_oracle: n_max capped at 64");
    auto js = qexp::faber_j(m, n_max + 1);
    return from_zseries(js[size_t(m)], 0, 1, false, n_max);
}

qseries e4_oracle(int64_t n_max) {
    if (n_max > 64) throw std::domain_error("e4_oracle: n_max capped at 64");
    return from_zseries(qexp::eisenstein_e4(n_max + 1), 8, 1, false, n_max);
}

qseries f_oracle(int64_t d, int64_t n_max) {
    if (d > 0 || !class_ok(1, d)) throw index_class_error("f_oracle: need d <= 0, d = 0,1 mod 4");
    if (d == 0) return theta_series(n_max);
    return from_zseries(qexp::plus_basis_form(1, d, n_max + 1), 1, 4, true, n_max);
}

qseries g_oracle(int64_t D, int64_t n_max) {
    if (D >= 0 || !class_ok(3, D)) throw index_class_error("g_oracle: need D < 0, D = 0,3 mod 4");
    return from_zseries(qexp::plus_basis_form(3, D, n_max + 1), 3, 4, true, n_max);
}

duality_report duality_check(int64_t D, int64_t d, const poincare::truncation_policy& pol,
                             double tolerance) {
    duality_report r;
    r.D = D;
    r.d = d;
    r.tolerance = tolerance;
    auto f = f_series(d, std::max<int64_t>(-D, 1), pol);
    auto g = g_series_neg(D, std::max<int64_t>(-d, 1), pol);
    r.A = f.coeff(-D);
    r.B = g.coeff(-d);
    r.defect = std::abs(r.A + r.B);
    r.c_used = std::max(f.c_used, g.c_used);
    r.pass = r.defect <= tolerance * std::max(1.0, std::abs(r.A));
    return r;
}

cplx evaluate_qseries(const qseries& q, cplx z) {
    kahan_csum sum;
    for (const auto& [n, a] : q.coeffs)
        sum.add(a * std::exp(cplx(-2.0 * pi * double(n) * z.imag(),
                                  2.0 * pi * double(n) * z.real())));
    return sum.value();
}

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string to_json(const qseries& q, bool reproducible) {
    std::string out = "{\n";
    out += "  \"level\": " + std::to_string(q.level) + ",\n";
    out += "  \"weight_times_2\": " + std::to_string(q.twice_k) + ",\n";
    out += std::string("  \"plus_space\": ") + (q.plus_space ? "true" : "false") + ",\n";
    if (!reproducible) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        out += "  \"generated_at\": " + std::to_string(now) + ",\n";
    }
    out += "  \"coeffs\": [";
    bool first = true;
    for (const auto& [n, a] : q.coeffs) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(n) + ", ";
        append_number(out, a.real());
        out += ", ";
        append_number(out, a.imag());
        out += "]";
    }
    out += "],\n  \"error_estimates\": [";
    first = true;
    for (const auto& [n, e] : q.errors) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(n) + ", ";
        append_number(out, e);
        out += "]";
    }
    out += "]\n}\n";
    return out;
}

std::string to_csv(const qseries& q) {
    std::string out = "# lossy export: error column is empty where no estimate applies\n";
    out += "n,re,im,err\n";
    for (const auto& [n, a] : q.coeffs) {
        out += std::to_string(n) + ",";
        append_number(out, a.real());
        out += ",";
        append_number(out, a.imag());
        out += ",";
        auto it = q.errors.find(n);
        if (it != q.errors.end()) append_number(out, it->second);
        out += "\n";
    }
    return out;
}

}  // namespace maass::bases
