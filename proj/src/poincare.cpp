#include "maass/poincare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "maass/arith.hpp"
#include "maass/kloosterman.hpp"
#include "maass/specfun.hpp"
#include "maass/summation.hpp"

namespace maass::poincare {

namespace {

constexpr double pi = std::numbers::pi;

int resolve_default_threads() {
    if (const char* env = std::getenv("MAASS_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_threads{0};

}  // namespace

void set_threads(int t) { g_threads.store(t < 1 ? 1 : t); }

int threads() {
    int t = g_threads.load();
    if (t == 0) {
        t = resolve_default_threads();
        g_threads.store(t);
    }
    return t;
}

bool is_pole_pair(int64_t a, int64_t b) {
    return arith::is_square(a) && arith::is_square(b);
}

double residue_b_half(int64_t D, int64_t d) {
    if (!is_pole_pair(-D, d)) throw not_a_pole_pair("residue_b_half: indices bear no pole");
    if (D == 0 && d == 0) return 3.0 / (16.0 * pi);
    double md = std::sqrt(double(d));
    double rD = std::sqrt(double(-D));
    if (D == 0) return 3.0 * md / (2.0 * pi);
    if (d == 0) return 3.0 * rD / (2.0 * pi);  // via b_{0,1/2}(d,s) = b_{d,1/2}(0,s)
    return 12.0 * md * rD / pi;
}

namespace {

// i^{-k}: exact quarter turns for integral k, exp(-i pi k/2) for half-integral
cplx i_pow_minus_k(weight k) {
    if (!k.is_half()) {
        int r = ((-k.integer_k()) % 4 + 4) % 4;
        switch (r) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double kk = k.k();
    return {std::cos(0.5 * pi * kk), -std::sin(0.5 * pi * kk)};
}

// one of the four branch shapes of the coefficient series
struct branch {
    enum class kind { bessel_j, bessel_i, single_zero, double_zero } type;
    double amp = 0.0;       // |mn|^{(1-k)/2} or the zero-case constant
    double arg_base = 0.0;  // 4 pi sqrt|mn| / N
    double order = 0.0;     // 2s - 1
    double cpow = 0.0;      // 1 - 2s

    static branch make(int64_t m, int64_t n, weight k, int64_t level, double s) {
        branch b{};
        double kk = k.k();
        double N = double(level);
        if (m != 0 && n != 0) {
            double absmn = std::abs(double(m) * double(n));
            b.type = (m > 0) == (n > 0) ? kind::bessel_j : kind::bessel_i;
            b.amp = std::pow(absmn, 0.5 * (1.0 - kk));
            b.arg_base = 4.0 * pi * std::sqrt(absmn) / N;
            b.order = 2.0 * s - 1.0;
        } else if (m == 0 && n == 0) {
            b.type = kind::double_zero;
            b.amp = std::pow(2.0, 2.0 * kk - 2.0) * std::pow(pi, kk - 1.0) *
                    specfun::gamma_real(2.0 * s) * std::pow(2.0 * N, 1.0 - 2.0 * s);
            b.cpow = 1.0 - 2.0 * s;
        } else {
            b.type = kind::single_zero;
            b.amp = std::pow(2.0, kk - 1.0) * std::pow(pi, s + 0.5 * kk - 1.0) *
                    std::pow(std::abs(double(m + n)), s - 0.5 * kk) * std::pow(N, 1.0 - 2.0 * s);
            b.cpow = 1.0 - 2.0 * s;
        }
        return b;
    }

    double operator()(int64_t c) const {
        switch (type) {
            case kind::bessel_j: return amp * specfun::bessel_J(order, arg_base / double(c));
            case kind::bessel_i: return amp * specfun::bessel_I(order, arg_base / double(c));
            default: return amp * std::pow(double(c), cpow);
        }
    }
};

struct series_spec {
    int64_t m = 0;
    weight k{};
    int64_t level = 1;
    bool plus = false;
    int64_t nprime = 0;  // level/4 when plus
    std::vector<int64_t> ns;
    std::vector<double> svals;
    // branches[j*svals.size()+l] for (ns[j], svals[l])
    std::vector<branch> branches;
    cplx prefactor{};
};

// Terms for c in (c_lo, c_hi], one Kloosterman pass per c shared across all
// slots; slot-level sums are compensated within the segment.
void accumulate_segment(const series_spec& sp, int64_t c_lo, int64_t c_hi,
                        std::vector<kahan_csum>& slot_sums) {
    const size_t J = sp.ns.size(), L = sp.svals.size();
    for (int64_t c = c_lo + 1; c <= c_hi; ++c) {
        const int64_t M = sp.level * c;
        auto row = kloosterman::kloosterman_row(kloosterman::weight_class::of(sp.k), sp.m,
                                                std::span<const int64_t>(sp.ns), M);
        double plus_factor = 1.0;
        if (sp.plus) plus_factor = 1.0 + arith::kronecker_symbol(4, sp.nprime * c);
        const double inv_M = plus_factor / double(M);
        for (size_t j = 0; j < J; ++j) {
            const cplx kl = row[j] * inv_M;
            for (size_t l = 0; l < L; ++l) {
                slot_sums[j * L + l].add(kl * sp.branches[j * L + l](c));
            }
        }
    }
}

// Partial sums extended in fixed 64-c blocks; blocks are produced in
// parallel but merged in ascending order, so results do not depend on the
// thread count.
class series_accumulator {
  public:
    explicit series_accumulator(series_spec sp) : sp_(std::move(sp)) {
        slots_.resize(sp_.ns.size() * sp_.svals.size());
    }

    void extend(int64_t c_target) {
        constexpr int64_t block = 64;
        if (c_target <= c_done_) return;
        std::vector<std::pair<int64_t, int64_t>> segments;
        for (int64_t lo = c_done_; lo < c_target; lo += block)
            segments.emplace_back(lo, std::min(lo + block, c_target));
        const int nthreads = std::min<int>(threads(), static_cast<int>(segments.size()));
        std::vector<std::vector<kahan_csum>> seg_sums(segments.size());
        if (nthreads <= 1) {
            for (size_t i = 0; i < segments.size(); ++i) {
                seg_sums[i].assign(slots_.size(), kahan_csum{});
                accumulate_segment(sp_, segments[i].first, segments[i].second, seg_sums[i]);
            }
        } else {
            std::atomic<size_t> next{0};
            auto worker = [&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= segments.size()) break;
                    seg_sums[i].assign(slots_.size(), kahan_csum{});
                    accumulate_segment(sp_, segments[i].first, segments[i].second, seg_sums[i]);
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (auto& seg : seg_sums)
            for (size_t s = 0; s < slots_.size(); ++s) slots_[s].add(seg[s].value());
        c_done_ = c_target;
    }

    cplx slot(size_t j, size_t l) const { return slots_[j * sp_.svals.size() + l].value(); }
    const series_spec& spec() const { return sp_; }

  private:
    series_spec sp_;
    std::vector<kahan_csum> slots_;
    int64_t c_done_ = 0;
};

std::vector<int64_t> checkpoint_ladder(const truncation_policy& pol) {
    int64_t f = std::max(2, pol.stability_factor);
    std::vector<int64_t> cps;
    int64_t c = std::max<int64_t>(pol.c_max, 2);
    while (c >= std::max<int64_t>(16, f)) {
        cps.push_back(c);
        c /= f;
    }
    if (cps.empty()) cps.push_back(std::max<int64_t>(pol.c_max, 1));
    // at least two checkpoints so the stability delta is always defined
    if (cps.size() == 1 && cps[0] > 1) cps.push_back(std::max<int64_t>(cps[0] / f, 1));
    std::reverse(cps.begin(), cps.end());
    if (cps.size() >= 2 && cps[0] == cps[1]) cps.erase(cps.begin());
    return cps;
}

series_spec make_spec(int64_t m, weight k, int64_t level, std::span<const int64_t> ns,
                      std::span<const double> svals, bool plus) {
    if (level < 1) throw std::domain_error("coefficient series: level must be positive");
    for (double s : svals)
        if (!(s > 0.5)) throw std::domain_error("coefficient series: need s > 1/2");
    series_spec sp;
    sp.m = m;
    sp.k = k;
    sp.level = level;
    sp.plus = plus;
    if (plus) {
        if (level % 4 != 0) throw plus_space_violation("plus space needs 4 | N");
        sp.nprime = level / 4;
        if (k.is_half()) {
            int lam = k.lambda();
            int64_t cls = ((lam % 2 == 0) ? m : -m) % 4;
            if (cls < 0) cls += 4;
            if (cls == 2 || cls == 3)
                throw plus_space_violation("plus space needs (-1)^lambda m = 0,1 (mod 4)");
        }
    }
    sp.ns.assign(ns.begin(), ns.end());
    sp.svals.assign(svals.begin(), svals.end());
    sp.branches.reserve(sp.ns.size() * sp.svals.size());
    for (int64_t n : sp.ns)
        for (double s : sp.svals) sp.branches.push_back(branch::make(m, n, k, level, s));
    sp.prefactor = 2.0 * pi * i_pow_minus_k(k);
    return sp;
}

void check_pole_guard(int64_t m, weight k, double s, std::span<const int64_t> ns) {
    if (!k.is_half()) return;
    if (k.twice_k != 1 && k.twice_k != 3) return;
    if (std::abs(s - 0.75) >= 1e-6) return;
    for (int64_t n : ns) {
        bool pole = (k.twice_k == 1) ? is_pole_pair(m, n) : is_pole_pair(-m, -n);
        if (pole)
            throw pole_at_s("coeff_b_plus: index pair bears a pole at s = 3/4; use residues");
    }
}

std::vector<truncated_value> run_plain_rows(int64_t m, weight k, int64_t level,
                                            std::span<const int64_t> ns, double s,
                                            const truncation_policy& pol, bool plus) {
    double svals[1] = {s};
    series_accumulator acc(make_spec(m, k, level, ns, std::span<const double>(svals, 1), plus));
    auto cps = checkpoint_ladder(pol);
    const size_t J = ns.size();
    std::vector<truncated_value> out(J);
    std::vector<cplx> prev(J);
    std::vector<double> prev_gap(J, -1.0);
    std::vector<bool> have_prev(J, false), frozen(J, false);
    size_t live = J;
    for (size_t ic = 0; ic < cps.size() && live > 0; ++ic) {
        acc.extend(cps[ic]);
        for (size_t j = 0; j < J; ++j) {
            if (frozen[j]) continue;
            cplx cur = acc.slot(j, 0);
            if (have_prev[j]) {
                double gap = std::abs(cur - prev[j]);
                // two-gap surrogate: a single checkpoint gap can vanish by
                // accident on an oscillating tail
                double err = 2.0 * pi * std::max(gap, prev_gap[j] >= 0.0 ? prev_gap[j] : gap);
                bool last = (ic + 1 == cps.size());
                if (err <= pol.tol || last) {
                    out[j].value = acc.spec().prefactor * cur;
                    out[j].error_estimate = err;
                    out[j].c_used = cps[ic];
                    out[j].converged = err <= pol.tol;
                    frozen[j] = true;
                    --live;
                }
                prev_gap[j] = gap;
            }
            prev[j] = cur;
            have_prev[j] = true;
        }
    }
    // degenerate ladders (c_max = 1) never see a stability delta
    for (size_t j = 0; j < J; ++j) {
        if (frozen[j]) continue;
        out[j].value = acc.spec().prefactor * acc.slot(j, 0);
        out[j].error_estimate = std::numeric_limits<double>::infinity();
        out[j].c_used = cps.back();
        out[j].converged = false;
    }
    return out;
}

}  // namespace

std::vector<truncated_value> coeff_c_row(int64_t m, weight k, int64_t level,
                                         std::span<const int64_t> ns, double s,
                                         const truncation_policy& pol) {
    return run_plain_rows(m, k, level, ns, s, pol, false);
}

truncated_value coeff_c(const coefficient_query& q, const truncation_policy& pol) {
    int64_t narr[1] = {q.n};
    return coeff_c_row(q.m, q.k, q.level, std::span<const int64_t>(narr, 1), q.s, pol)[0];
}

std::vector<truncated_value> coeff_b_plus_row(int64_t m, weight k, int64_t level,
                                              std::span<const int64_t> ns, double s,
                                              const truncation_policy& pol) {
    check_pole_guard(m, k, s, ns);
    return run_plain_rows(m, k, level, ns, s, pol, true);
}

truncated_value coeff_b_plus(const coefficient_query& q, const truncation_policy& pol) {
    int64_t narr[1] = {q.n};
    return coeff_b_plus_row(q.m, q.k, q.level, std::span<const int64_t>(narr, 1), q.s, pol)[0];
}

cplx richardson_derivative(const std::function<cplx(double)>& f, double s0, double step) {
    cplx dh = (f(s0 + step) - f(s0 - step)) / (2.0 * step);
    cplx dh2 = (f(s0 + 0.5 * step) - f(s0 - 0.5 * step)) / step;
    return (4.0 * dh2 - dh) / 3.0;
}

std::vector<derivative_value> coeff_b_plus_ds_row(int64_t m, weight k, int64_t level,
                                                  std::span<const int64_t> ns, double s0,
                                                  const truncation_policy& pol, double step) {
    const double h = step;
    double svals[4] = {s0 + h, s0 - h, s0 + 0.5 * h, s0 - 0.5 * h};
    series_accumulator acc(make_spec(m, k, level, ns, std::span<const double>(svals, 4), true));
    auto cps = checkpoint_ladder(pol);
    const size_t J = ns.size();
    std::vector<derivative_value> out(J);
    std::vector<cplx> prev(J);
    std::vector<double> prev_gap(J, -1.0);
    std::vector<bool> have_prev(J, false), frozen(J, false);
    size_t live = J;
    const cplx pref = acc.spec().prefactor;
    for (size_t ic = 0; ic < cps.size() && live > 0; ++ic) {
        acc.extend(cps[ic]);
        for (size_t j = 0; j < J; ++j) {
            if (frozen[j]) continue;
            cplx bp = acc.slot(j, 0), bm = acc.slot(j, 1);
            cplx bp2 = acc.slot(j, 2), bm2 = acc.slot(j, 3);
            cplx dh = (bp - bm) / (2.0 * h);
            cplx dh2 = (bp2 - bm2) / h;
            cplx rich = (4.0 * dh2 - dh) / 3.0;
            if (have_prev[j]) {
                double gap = std::abs(rich - prev[j]);
                double err = 2.0 * pi * std::max(gap, prev_gap[j] >= 0.0 ? prev_gap[j] : gap);
                bool last = (ic + 1 == cps.size());
                if (err <= pol.tol || last) {
                    double mag = 0.5 * (std::abs(bp) + std::abs(bm));
                    if (mag > 0.0 && std::abs(bp - bm) < 1e-6 * mag)
                        throw step_too_small("coeff_b_plus_ds: stencil cancellation too severe");
                    out[j].deriv.value = pref * rich;
                    out[j].deriv.error_estimate = err;
                    out[j].deriv.c_used = cps[ic];
                    out[j].deriv.converged = err <= pol.tol;
                    out[j].diff_h = pref * dh;
                    out[j].diff_h2 = pref * dh2;
                    frozen[j] = true;
                    --live;
                }
                prev_gap[j] = gap;
            }
            prev[j] = rich;
            have_prev[j] = true;
        }
    }
    return out;
}

derivative_value coeff_b_plus_ds(const coefficient_query& q, const truncation_policy& pol,
                                 double step) {
    if (q.k.twice_k != 3) throw unsupported_weight_range("coeff_b_plus_ds: expects weight 3/2");
    if (q.m <= 0) throw std::domain_error("coeff_b_plus_ds: expects positive index m");
    int64_t narr[1] = {q.n};
    return coeff_b_plus_ds_row(q.m, q.k, q.level, std::span<const int64_t>(narr, 1), q.s, pol,
                               step)[0];
}

namespace {

constexpr double inv_sqrt_pi = 0.56418958354775628695;  // 1/sqrt(pi)

void add_hol(harmonic_expansion& h, int64_t n, cplx v, double err = 0.0) {
    h.hol[n] += v;
    h.hol_err[n] += err;
}
void add_nonhol(harmonic_expansion& h, int64_t n, cplx v, double err = 0.0) {
    h.nonhol[n] += v;
    h.nonhol_err[n] += err;
}

harmonic_expansion expansion_weight_gt2(int64_t m, weight k, int64_t level, int64_t n_max,
                                        const truncation_policy& pol) {
    harmonic_expansion h;
    h.k = k;
    h.level = level;
    h.n_max = n_max;
    double kk = k.k();
    double ig = specfun::inv_gamma(kk);
    add_hol(h, m, m == 0 ? cplx(1.0) : cplx(ig));
    std::vector<int64_t> ns;
    for (int64_t n = 1; n <= n_max; ++n) ns.push_back(n);
    auto row = coeff_c_row(m, k, level, ns, 0.5 * kk, pol);
    for (size_t i = 0; i < ns.size(); ++i) {
        double np = std::pow(double(ns[i]), kk - 1.0);
        add_hol(h, ns[i], row[i].value * ig * np, row[i].error_estimate * ig * np);
    }
    return h;
}

harmonic_expansion expansion_weight_neg(int64_t m, weight k, int64_t level, int64_t n_max,
                                        const truncation_policy& pol) {
    harmonic_expansion h;
    h.k = k;
    h.level = level;
    h.n_max = n_max;
    double kk = k.k();
    double s = 1.0 - 0.5 * kk;
    double ig1k = specfun::inv_gamma(1.0 - kk);
    // head
    if (m == 0) {
        h.ypow += 1.0;
    } else if (m < 0) {
        add_hol(h, m, 1.0);
        add_nonhol(h, m, -ig1k);
    } else {
        cplx phase = -std::exp(cplx(0.0, pi * kk));  // (-1)^{k-1}, principal
        add_hol(h, m, phase);
        add_nonhol(h, m, -phase * ig1k);
    }
    std::vector<int64_t> ns;
    ns.push_back(0);
    for (int64_t n = 1; n <= n_max; ++n) {
        ns.push_back(n);
        ns.push_back(-n);
    }
    auto row = coeff_c_row(m, k, level, ns, s, pol);
    for (size_t i = 0; i < ns.size(); ++i) {
        int64_t n = ns[i];
        if (n == 0) {
            double factor = std::pow(4.0 * pi, 1.0 - kk) / (1.0 - kk) * ig1k;
            add_hol(h, 0, row[i].value * factor, row[i].error_estimate * factor);
        } else if (n > 0) {
            double np = std::pow(double(n), kk - 1.0);
            add_hol(h, n, row[i].value * np, row[i].error_estimate * np);
        } else {
            double np = std::pow(double(-n), kk - 1.0) * ig1k;
            add_nonhol(h, n, row[i].value * np, row[i].error_estimate * np);
        }
    }
    return h;
}

bool plus_class_ok(int lambda, int64_t n) {
    int64_t cls = ((lambda % 2 == 0) ? n : -n) % 4;
    if (cls < 0) cls += 4;
    return cls == 0 || cls == 1;
}

harmonic_expansion expansion_three_half(int64_t m, weight k, int64_t level, int64_t n_max,
                                        const truncation_policy& pol) {
    harmonic_expansion h;
    h.k = k;
    h.level = level;
    h.n_max = n_max;
    h.plus_space = true;
    const double two_isp = 2.0 * inv_sqrt_pi;  // Gamma(3/2)^{-1}
    const int lam = 1;

    if (m <= 0) {
        // value at s = 3/4
        if (m == 0)
            add_hol(h, 0, 1.0);
        else if (m >= -n_max)
            add_hol(h, m, two_isp);
        std::vector<int64_t> ns;
        for (int64_t n = 1; n <= n_max; ++n)
            if (plus_class_ok(lam, n)) ns.push_back(n);
        auto row = coeff_b_plus_row(m, k, level, ns, 0.75, pol);
        for (size_t i = 0; i < ns.size(); ++i) {
            double f = two_isp * std::sqrt(double(ns[i]));
            add_hol(h, ns[i], row[i].value * f, row[i].error_estimate * f);
        }
        bool square_case = (m == 0) || arith::is_square(-m);
        if (square_case) {
            double scale = (m == 0) ? 3.0 / (2.0 * pi) : 6.0 / (pi * std::sqrt(pi));
            h.ypow += -scale;
            double gscale = (m == 0) ? 3.0 * inv_sqrt_pi : 12.0 / pi;
            for (int64_t j = 1; j * j <= n_max; ++j) add_nonhol(h, -j * j, -gscale * double(j));
        }
        return h;
    }

    // m = D > 0: s-derivative series at 3/4
    std::vector<int64_t> ns_pos;
    for (int64_t n = 1; n <= n_max; ++n)
        if (n != m && plus_class_ok(lam, n)) ns_pos.push_back(n);
    auto drow = coeff_b_plus_ds_row(m, k, level, ns_pos, 0.75, pol);
    for (size_t i = 0; i < ns_pos.size(); ++i) {
        double f = two_isp * std::sqrt(double(ns_pos[i]));
        add_hol(h, ns_pos[i], drow[i].deriv.value * f, drow[i].deriv.error_estimate * f);
    }
    std::vector<int64_t> ns_rest;
    ns_rest.push_back(0);
    for (int64_t d = 1; d <= n_max; ++d)
        if (plus_class_ok(0, d)) ns_rest.push_back(-d);  // d = 0,1 (mod 4)
    auto vrow = coeff_b_plus_row(m, k, level, ns_rest, 0.75, pol);
    for (size_t i = 0; i < ns_rest.size(); ++i) {
        int64_t n = ns_rest[i];
        if (n == 0) {
            h.ypow += vrow[i].value * (2.0 / pi);
        } else {
            double f = std::sqrt(double(-n));
            add_nonhol(h, n, vrow[i].value * f, vrow[i].error_estimate * f);
        }
    }
    if (m <= n_max) {
        add_hol(h, m, cplx(0.0, -2.0 * std::sqrt(pi)));
        add_nonhol(h, m, cplx(0.0, -1.0));
    }
    return h;
}

}  // namespace

harmonic_expansion expansion_special(int64_t m, weight k, int64_t level, int64_t n_max,
                                     const truncation_policy& pol) {
    if (!k.is_half() && k.k() > 2.0) return expansion_weight_gt2(m, k, level, n_max, pol);
    if (k.k() < 0.0 && !k.is_half()) return expansion_weight_neg(m, k, level, n_max, pol);
    if (k.twice_k == 3) {
        if (level % 4 != 0) throw plus_space_violation("weight 3/2 special expansion needs 4 | N");
        if (!plus_class_ok(1, m))
            throw plus_space_violation("weight 3/2 special expansion: index class");
        return expansion_three_half(m, k, level, n_max, pol);
    }
    throw unsupported_weight_range("expansion_special: weight outside supported ranges");
}

cplx evaluate(const harmonic_expansion& h, cplx z, double y_min, double* tail_bound) {
    double x = z.real(), y = z.imag();
    if (y < y_min) throw tail_too_large("evaluate: point below y_min");
    double kk = h.k.k();
    kahan_csum sum;
    auto qpow = [&](int64_t n) {
        return std::exp(cplx(-2.0 * pi * double(n) * y, 2.0 * pi * double(n) * x));
    };
    for (const auto& [n, a] : h.hol) sum.add(a * qpow(n));
    if (tail_bound) {
        // geometric continuation of the last retained holomorphic term
        double q = std::exp(-2.0 * pi * y);
        double last = 0.0;
        if (!h.hol.empty()) {
            auto it = std::prev(h.hol.end());
            last = std::abs(it->second) * std::pow(q, double(it->first));
        }
        *tail_bound = (q < 1.0) ? last * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    }
    if (h.ypow != 0.0) sum.add(h.ypow * std::pow(y, 1.0 - kk));
    for (const auto& [n, a] : h.nonhol) {
        if (a == 0.0) continue;
        double arg = -4.0 * pi * double(n) * y;
        cplx g = (arg > 0.0) ? cplx(specfun::inc_gamma_upper(1.0 - kk, arg), 0.0)
                             : specfun::inc_gamma_upper_negx(1.0 - kk, arg);
        sum.add(a * g * qpow(n));
    }
    return sum.value();
}

cplx evaluate_raw(int64_t m, weight k, int64_t level, double s, cplx z, int64_t n_max,
                  const truncation_policy& pol, bool plus) {
    double x = z.real(), y = z.imag();
    if (y <= 0.0) throw std::domain_error("evaluate_raw: need y > 0");
    std::vector<int64_t> ns;
    for (int64_t n = -n_max; n <= n_max; ++n) {
        // the projected series carries coefficients only on the plus classes
        if (plus && k.is_half() && !plus_class_ok(k.lambda(), n)) continue;
        ns.push_back(n);
    }
    auto row = plus ? coeff_b_plus_row(m, k, level, ns, s, pol)
                    : coeff_c_row(m, k, level, ns, s, pol);
    kahan_csum sum;
    sum.add(specfun::script_M(m, k, y, s) *
            std::exp(cplx(0.0, 2.0 * pi * double(m) * x)));
    for (size_t i = 0; i < ns.size(); ++i) {
        double w = specfun::script_W(ns[i], k, y, s);
        if (w == 0.0) continue;
        sum.add(row[i].value * w * std::exp(cplx(0.0, 2.0 * pi * double(ns[i]) * x)));
    }
    return sum.value();
}

cplx slash_factor(weight k, const std::array<int64_t, 4>& g, cplx z) {
    const double a = double(g[0]), b = double(g[1]), c = double(g[2]), d = double(g[3]);
    (void)a;
    (void)b;
    cplx czd = c * z + d;
    if (!k.is_half()) {
        return std::pow(czd, -double(k.integer_k()));
    }
    double kk = k.k();
    cplx pw = std::exp(-kk * std::log(czd));  // principal (cz+d)^{-k}
    int sym = arith::kronecker_symbol(g[2], g[3]);
    // eps_d^{2k} = eps_d^{2 lambda + 1}
    cplx epspow(1.0, 0.0);
    int64_t dm = g[3] % 4;
    if (dm < 0) dm += 4;
    if (dm == 3) {
        int lp = k.lambda() % 2;
        if (lp < 0) lp += 2;
        epspow = (lp == 0) ? cplx(0.0, 1.0) : cplx(0.0, -1.0);  // i^{2 lambda + 1}
    }
    return double(sym) * epspow * pw;
}

double modularity_residual(const std::function<cplx(cplx)>& f, weight k,
                           const std::array<int64_t, 4>& g, cplx z) {
    if (g[0] * g[3] - g[1] * g[2] != 1)
        throw std::domain_error("modularity_residual: matrix must have determinant 1");
    cplx gz = (double(g[0]) * z + double(g[1])) / (double(g[2]) * z + double(g[3]));
    if (g[2] == 0 && g[3] == 1) {
        return std::abs(f(gz) - f(z));  // translation: factor is 1
    }
    return std::abs(slash_factor(k, g, z) * f(gz) - f(z));
}

}  // namespace maass::poincare
