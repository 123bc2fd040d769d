// Command-line front end: coefficient tables, basis expansions and
// verification reports for the weak Maass-Poincare coefficient engine.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "maass/bases.hpp"
#include "maass/poincare.hpp"
#include "maass/verify.hpp"

namespace po = maass::poincare;
using maass::weight;

namespace {

struct common_opts {
    long long cmax = 20000;
    double tol = 1e-3;
    int stability = 2;
    int threads = 0;
    std::string format = "json";
    std::string out;
    bool reproducible = false;
    bool strict = false;
};

void add_common(CLI::App* app, common_opts& o) {
    app->add_option("--cmax", o.cmax, "maximum c-index of the Kloosterman sum series");
    app->add_option("--tol", o.tol, "stability-doubling tolerance");
    app->add_option("--stability", o.stability, "cutoff growth factor between checkpoints");
    app->add_option("--threads", o.threads, "worker threads (default: MAASS_THREADS or hardware)");
    app->add_option("--format", o.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", o.out, "output path (default stdout)");
    app->add_flag("--reproducible", o.reproducible, "suppress timestamps in output");
    app->add_flag("--strict", o.strict, "exit 2 when any value failed to converge");
}

po::truncation_policy policy_of(const common_opts& o) {
    return {o.cmax, o.tol, o.stability};
}

void emit(const common_opts& o, const std::string& text) {
    if (o.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    f << text;
}

bool parse_range(const std::string& spec, long long& lo, long long& hi) {
    auto pos = spec.find("..");
    try {
        if (pos == std::string::npos) {
            lo = hi = std::stoll(spec);
            return true;
        }
        lo = std::stoll(spec.substr(0, pos));
        hi = std::stoll(spec.substr(pos + 2));
        return lo <= hi;
    } catch (...) {
        return false;
    }
}

void fmt_num(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

int run_coeff(const common_opts& o, long long m, int twice_k, long long level, double s,
              const std::string& nrange, bool plus) {
    long long nlo = 0, nhi = 0;
    if (!parse_range(nrange, nlo, nhi)) {
        std::fprintf(stderr, "coeff: bad --n range '%s'\n", nrange.c_str());
        return 1;
    }
    if (o.threads > 0) po::set_threads(o.threads);
    std::vector<std::int64_t> ns;
    for (long long n = nlo; n <= nhi; ++n) ns.push_back(n);
    weight k = weight::from_twice(twice_k);
    auto pol = policy_of(o);
    auto row = plus ? po::coeff_b_plus_row(m, k, level, ns, s, pol)
                    : po::coeff_c_row(m, k, level, ns, s, pol);
    bool all_converged = true;
    std::string text;
    if (o.format == "csv") {
        text += "# lossy export; JSON carries the full pairing\n";
        text += "n,re,im,err,c_used,converged\n";
        for (size_t i = 0; i < ns.size(); ++i) {
            text += std::to_string(ns[i]) + ",";
            fmt_num(text, row[i].value.real());
            text += ",";
            fmt_num(text, row[i].value.imag());
            text += ",";
            fmt_num(text, row[i].error_estimate);
            text += "," + std::to_string(row[i].c_used) + "," +
                    (row[i].converged ? "1" : "0") + "\n";
            all_converged = all_converged && row[i].converged;
        }
    } else {
        text += "{\n  \"query\": {\"m\": " + std::to_string(m) +
                ", \"weight_times_2\": " + std::to_string(twice_k) +
                ", \"level\": " + std::to_string(level) + ", \"s\": ";
        fmt_num(text, s);
        text += std::string(", \"plus\": ") + (plus ? "true" : "false") + "},\n";
        text += "  \"policy\": {\"c_max\": " + std::to_string(o.cmax) + ", \"tol\": ";
        fmt_num(text, o.tol);
        text += ", \"stability_factor\": " + std::to_string(o.stability) + "},\n";
        if (!o.reproducible) {
            auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            text += "  \"generated_at\": " + std::to_string(now) + ",\n";
        }
        text += "  \"rows\": [\n";
        for (size_t i = 0; i < ns.size(); ++i) {
            text += "    [" + std::to_string(ns[i]) + ", ";
            fmt_num(text, row[i].value.real());
            text += ", ";
            fmt_num(text, row[i].value.imag());
            text += ", ";
            fmt_num(text, row[i].error_estimate);
            text += ", " + std::to_string(row[i].c_used) + ", " +
                    (row[i].converged ? "true" : "false") + "]";
            text += (i + 1 < ns.size()) ? ",\n" : "\n";
            all_converged = all_converged && row[i].converged;
        }
        text += "  ]\n}\n";
    }
    emit(o, text);
    if (o.strict && !all_converged) return 2;
    return 0;
}

int run_basis(const common_opts& o, const std::string& kind, long long d, long long D,
              long long m, long long nmax) {
    if (o.threads > 0) po::set_threads(o.threads);
    auto pol = policy_of(o);
    maass::bases::qseries q;
    if (kind == "f")
        q = maass::bases::f_series(d, nmax, pol);
    else if (kind == "g")
        q = maass::bases::g_series_neg(D, nmax, pol);
    else if (kind == "gmock")
        q = maass::bases::g_mock_series(D, nmax, pol);
    else if (kind == "theta")
        q = maass::bases::theta_series(nmax);
    else if (kind == "j")
        q = maass::bases::j_oracle(m, nmax);
    else if (kind == "e4")
        q = maass::bases::e4_oracle(nmax);
    else {
        std::fprintf(stderr, "basis: unknown kind '%s'\n", kind.c_str());
        return 1;
    }
    emit(o, o.format == "csv" ? maass::bases::to_csv(q) : maass::bases::to_json(q, o.reproducible));
    return 0;
}

int run_verify(const common_opts& o, const std::string& name, const std::string& grid) {
    if (o.threads > 0) po::set_threads(o.threads);
    auto pol = policy_of(o);
    std::string effective = name;
    if (name == "duality" && grid == "small") effective = "duality";
    if (name == "hurwitz" && grid == "full") effective = "hurwitz-full";
    maass::verify::suite s;
    try {
        s = maass::verify::run_suite(effective, pol);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    emit(o, maass::verify::to_json(s));
    return maass::verify::all_pass(s) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak Maass-Poincare coefficient engine"};
    app.require_subcommand(1);

    common_opts oc, ob, ov;

    auto* coeff = app.add_subcommand("coeff", "coefficient table for one index row");
    long long m = 0, level = 4;
    int twice_k = 3;
    double s = 0.75;
    std::string nrange = "1..10";
    bool plus = false;
    coeff->add_option("--m", m, "index of the series")->required();
    coeff->add_option("--twice-k", twice_k, "2k (odd = half-integral weight)")->required();
    coeff->add_option("--N", level, "level")->required();
    coeff->add_option("--s", s, "spectral parameter")->required();
    coeff->add_option("--n", nrange, "coefficient index or range a..b")->required();
    coeff->add_flag("--plus", plus, "plus-space projected coefficients");
    add_common(coeff, oc);

    auto* basis = app.add_subcommand("basis", "q-expansion of a named basis element");
    std::string kind;
    long long bd = 0, bD = 0, bm = 1, nmax = 12;
    basis->add_option("kind", kind, "f | g | gmock | theta | j | e4")->required();
    basis->add_option("--d", bd, "index for f (d <= 0)");
    basis->add_option("--D", bD, "index for g/gmock");
    basis->add_option("--m", bm, "index for the j oracle");
    basis->add_option("--nmax", nmax, "truncation exponent");
    add_common(basis, ob);

    auto* verify = app.add_subcommand("verify", "run a named identity suite");
    std::string suite_name, grid = "small";
    verify->add_option("suite", suite_name, "suite name (see --list)")->required();
    verify->add_option("--grid", grid, "small or full grids where applicable");
    add_common(verify, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage errors are exit code 1
    }

    try {
        if (coeff->parsed()) return run_coeff(oc, m, twice_k, level, s, nrange, plus);
        if (basis->parsed()) return run_basis(ob, kind, bd, bD, bm, nmax);
        if (verify->parsed()) return run_verify(ov, suite_name, grid);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
