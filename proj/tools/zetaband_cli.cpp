#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zetaband/zetaband.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/* CSV goes to stdout unless --out was given. */
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw zetaband::DomainError("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

zetaband::Rational parse_fraction(const std::string& text) {
    const auto bad = [&] {
        return zetaband::DomainError("malformed fraction '" + text +
                                     "', expected p or p/q");
    };
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den =
        slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (num.empty() || den.empty()) throw bad();
    std::size_t used = 0;
    long long p = 0, q = 0;
    try {
        p = std::stoll(num, &used);
        if (used != num.size()) throw bad();
        q = std::stoll(den, &used);
        if (used != den.size()) throw bad();
    } catch (const std::logic_error&) {
        throw bad();
    }
    return zetaband::Rational(p, q);
}

zetaband::Band parse_band(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw zetaband::DomainError("malformed band '" + text +
                                    "', expected p1/q1:p2/q2");
    return zetaband::Band(parse_fraction(text.substr(0, colon)),
                          parse_fraction(text.substr(colon + 1)));
}

/* Shared flags. Band syntax is validated at parse time so malformed input is
   a usage error (exit 2), not a runtime one. */
struct Common {
    std::string band_text = "1/2:2";
    unsigned threads = 0;
    std::string out_path;
    std::string config_path;
};

/* CLI11 reads config files only for the app parse() ran on, never for
   subcommands, so the flat key=value file is applied by hand. Keys name long
   options without the dashes. Only options absent from the command line are
   touched, which is what gives flags priority. */
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string{};
            const auto b = s.find_last_not_of(" \t\r");
            s = s.substr(a, b - a + 1);
            if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
                s.back() == s.front())
                s = s.substr(1, s.size() - 2);
            return s;
        };
        const std::string body = strip(line);
        if (body.empty() || body[0] == '#' || body[0] == ';') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw CLI::ConfigError("config line " + std::to_string(lineno) +
                                   " is not key=value: " + body);
        const std::string key = strip(body.substr(0, eq));
        const std::string value = strip(body.substr(eq + 1));
        CLI::Option* op = sub->get_option_no_throw("--" + key);
        if (op == nullptr)
            throw CLI::ConfigError("unknown config key '" + key + "'");
        if (op->count() > 0) continue;  // command line wins
        op->add_result(value);
        op->run_callback();
    }
}

void add_common(CLI::App* sub, Common& c, bool with_band) {
    if (with_band) {
        sub->add_option("--band", c.band_text, "band as p1/q1:p2/q2")
            ->capture_default_str()
            ->check([](const std::string& text) -> std::string {
                try {
                    parse_band(text);
                    return {};
                } catch (const std::exception& e) {
                    return e.what();
                }
            });
    }
    sub->add_option("--threads", c.threads, "worker threads (0 = machine)");
    sub->add_option("--out", c.out_path, "write CSV to this file, not stdout");
    sub->add_option("--config", c.config_path,
                    "flat key=value file; flags override it");
}

std::vector<double> t_ladder(double t0, unsigned doublings) {
    std::vector<double> ts{t0};
    for (unsigned i = 0; i < doublings; ++i) ts.push_back(ts.back() * 2.0);
    return ts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"band-restricted divisor computations"};
    app.set_version_flag("--version", std::string("zetaband ") + kVersion);
    app.require_subcommand(1);

    // dband
    auto* dband = app.add_subcommand("dband", "restricted divisor count d(n)");
    Common dband_c;
    std::uint64_t dband_n = 1;
    dband->add_option("--n", dband_n, "argument n")->required();
    add_common(dband, dband_c, true);
    dband->callback([&] {
        apply_config(dband, dband_c.config_path);
        Sink sink(dband_c.out_path);
        sink.os() << "n,value\n"
                  << dband_n << ','
                  << zetaband::d_band(dband_n, parse_band(dband_c.band_text))
                  << '\n';
    });

    // rcount
    auto* rcount = app.add_subcommand("rcount", "perimeter representation count r(n)");
    Common rcount_c;
    std::uint64_t rcount_n = 1;
    rcount->add_option("--n", rcount_n, "argument n")->required();
    add_common(rcount, rcount_c, false);
    rcount->callback([&] {
        apply_config(rcount, rcount_c.config_path);
        Sink sink(rcount_c.out_path);
        sink.os() << "n,value\n"
                  << rcount_n << ',' << zetaband::r_count(rcount_n) << '\n';
    });

    // summatory
    auto* summatory = app.add_subcommand("summatory", "summatory D(x) and error term");
    Common summatory_c;
    double summatory_x = 1.0;
    std::string summatory_mode = "fast";
    summatory->add_option("--x", summatory_x, "upper limit x")->required();
    summatory->add_option("--mode", summatory_mode, "fast or brute")
        ->capture_default_str()
        ->check(CLI::IsMember({"fast", "brute"}));
    add_common(summatory, summatory_c, true);
    summatory->callback([&] {
        apply_config(summatory, summatory_c.config_path);
        const zetaband::Band band = parse_band(summatory_c.band_text);
        const std::uint64_t D = summatory_mode == "fast"
                                    ? zetaband::summatory_fast(summatory_x, band)
                                    : zetaband::summatory_bruteforce(summatory_x, band);
        const zetaband::MainTerms mt = zetaband::main_constants(band);
        const long double main1 = static_cast<long double>(mt.c1) * summatory_x;
        const long double main2 =
            static_cast<long double>(mt.c2) * std::sqrt(summatory_x);
        const long double dv = static_cast<long double>(D) - main1 - main2;
        Sink sink(summatory_c.out_path);
        sink.os() << "x,D,main1,main2,delta\n"
                  << fmt(summatory_x) << ',' << D << ','
                  << fmt(static_cast<double>(main1)) << ','
                  << fmt(static_cast<double>(main2)) << ','
                  << fmt(static_cast<double>(dv)) << '\n';
    });

    // delta-scan
    auto* dscan = app.add_subcommand("delta-scan", "error term over a geometric grid");
    Common dscan_c;
    double dscan_lo = 1e2, dscan_hi = 1e6;
    std::size_t dscan_points = 40;
    dscan->add_option("--lo", dscan_lo, "grid start")->capture_default_str();
    dscan->add_option("--hi", dscan_hi, "grid end")->capture_default_str();
    dscan->add_option("--points", dscan_points, "grid size")->capture_default_str();
    add_common(dscan, dscan_c, true);
    dscan->callback([&] {
        apply_config(dscan, dscan_c.config_path);
        const zetaband::Band band = parse_band(dscan_c.band_text);
        const auto xs = zetaband::geometric_grid(dscan_lo, dscan_hi, dscan_points);
        std::vector<double> ds(xs.size());
        zetaband::parallel_for(xs.size(), dscan_c.threads,
                               [&](std::size_t i) { ds[i] = zetaband::delta(xs[i], band); });
        Sink sink(dscan_c.out_path);
        sink.os() << "x,delta\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
            sink.os() << fmt(xs[i]) << ',' << fmt(ds[i]) << '\n';
        try {
            const zetaband::ExponentFit fit =
                zetaband::exponent_fit(xs, band, dscan_c.threads);
            std::fprintf(stderr,
                         "fit: slope=%.6f intercept=%.6f max_ratio=%.6f samples=%zu\n",
                         fit.slope, fit.intercept, fit.max_ratio, fit.sample_count);
        } catch (const zetaband::Error& e) {
            std::fprintf(stderr, "fit: skipped (%s)\n", e.what());
        }
    });

    // voronoi-compare
    auto* vcomp = app.add_subcommand("voronoi-compare",
                                     "truncated oscillatory series vs exact error term");
    Common vcomp_c;
    double vcomp_lo = 1e3, vcomp_hi = 1e4;
    std::size_t vcomp_points = 25;
    std::uint64_t vcomp_H = 64;
    vcomp->add_option("--lo", vcomp_lo, "grid start")->capture_default_str();
    vcomp->add_option("--hi", vcomp_hi, "grid end")->capture_default_str();
    vcomp->add_option("--points", vcomp_points, "grid size")->capture_default_str();
    vcomp->add_option("--H", vcomp_H, "series truncation H")->capture_default_str();
    add_common(vcomp, vcomp_c, true);
    vcomp->callback([&] {
        apply_config(vcomp, vcomp_c.config_path);
        const zetaband::Band band = parse_band(vcomp_c.band_text);
        const auto xs = zetaband::geometric_grid(vcomp_lo, vcomp_hi, vcomp_points);
        const zetaband::ResidualScanSummary scan =
            zetaband::residual_scan(xs, vcomp_H, band, vcomp_c.threads);
        Sink sink(vcomp_c.out_path);
        sink.os() << "x,h,delta,m_value,residual\n";
        for (const auto& p : scan.points)
            sink.os() << fmt(p.x) << ',' << p.H << ',' << fmt(p.delta_exact) << ','
                      << fmt(p.m_value) << ',' << fmt(p.residual) << '\n';
        std::fprintf(stderr, "scan: rms_residual=%.6g rms_delta=%.6g max_abs=%.6g\n",
                     scan.rms_residual, scan.rms_delta, scan.max_abs_residual);
    });

    // gcheck
    auto* gcheck = app.add_subcommand("gcheck", "mean value of the weight G(u,H)");
    Common gcheck_c;
    double gcheck_N = 1.0, gcheck_H = 2.0;
    gcheck->add_option("--n", gcheck_N, "interval length N")->required();
    gcheck->add_option("--H", gcheck_H, "weight parameter H")->required();
    add_common(gcheck, gcheck_c, false);
    gcheck->callback([&] {
        apply_config(gcheck, gcheck_c.config_path);
        const zetaband::GMeanValueResult r =
            zetaband::g_mean_value_check(gcheck_N, gcheck_H);
        Sink sink(gcheck_c.out_path);
        sink.os() << "n,h,integral,bound,ratio\n"
                  << fmt(gcheck_N) << ',' << fmt(gcheck_H) << ',' << fmt(r.integral)
                  << ',' << fmt(r.bound) << ',' << fmt(r.integral / r.bound) << '\n';
    });

    // zeta-eval
    auto* zeval = app.add_subcommand("zeta-eval", "continued Dirichlet series value");
    Common zeval_c;
    double zeval_sigma = 0.75, zeval_t = 0.0, zeval_tol = 1e-6;
    std::uint64_t zeval_N = 64, zeval_M = 65536;
    zeval->add_option("--sigma", zeval_sigma, "real part")->required();
    zeval->add_option("--t", zeval_t, "imaginary part")->capture_default_str();
    zeval->add_option("--series-n", zeval_N, "head cutoff N")->capture_default_str();
    zeval->add_option("--horizon-m", zeval_M, "starting horizon M")->capture_default_str();
    zeval->add_option("--tail-tol", zeval_tol, "certified tail tolerance")
        ->capture_default_str();
    add_common(zeval, zeval_c, true);
    zeval->callback([&] {
        apply_config(zeval, zeval_c.config_path);
        const zetaband::Band band = parse_band(zeval_c.band_text);
        zetaband::ContinuationConfig cfg;
        cfg.N = zeval_N;
        cfg.M = zeval_M;
        cfg.tail_tol = zeval_tol;
        zetaband::EvalInfo info;
        const std::complex<double> v =
            zetaband::zeta_band({zeval_sigma, zeval_t}, band, cfg, &info);
        Sink sink(zeval_c.out_path);
        sink.os() << "sigma,t,re,im,n,m,tail_bound,certified\n"
                  << fmt(zeval_sigma) << ',' << fmt(zeval_t) << ',' << fmt(v.real())
                  << ',' << fmt(v.imag()) << ',' << info.N << ',' << info.M << ','
                  << fmt(info.tail_bound) << ',' << (info.certified ? 1 : 0) << '\n';
    });

    // afe-scan
    auto* afescan = app.add_subcommand("afe-scan",
                                       "RMS of the functional-equation residual");
    Common afescan_c;
    double afe_t0 = 250.0, afe_sigma = 0.75;
    unsigned afe_doublings = 3;
    std::size_t afe_samples = 160;
    afescan->add_option("--t0", afe_t0, "first window start")->capture_default_str();
    afescan->add_option("--doublings", afe_doublings, "extra windows T*2^k")
        ->capture_default_str();
    afescan->add_option("--sigma", afe_sigma, "real part")->capture_default_str();
    afescan->add_option("--samples", afe_samples, "samples per window")
        ->capture_default_str();
    add_common(afescan, afescan_c, true);
    afescan->callback([&] {
        apply_config(afescan, afescan_c.config_path);
        const zetaband::Band band = parse_band(afescan_c.band_text);
        const auto pts = zetaband::afe_rms_scan(t_ladder(afe_t0, afe_doublings),
                                                afe_sigma, band, afe_samples, {},
                                                afescan_c.threads);
        Sink sink(afescan_c.out_path);
        sink.os() << "t,rms,samples\n";
        for (const auto& p : pts)
            sink.os() << fmt(p.T) << ',' << fmt(p.rms) << ',' << p.samples << '\n';
    });

    // meansquare
    auto* msq = app.add_subcommand("meansquare",
                                   "mean square on [T,2T] vs predicted series");
    Common msq_c;
    double msq_t0 = 100.0, msq_sigma = 0.75, msq_step = 0.05;
    unsigned msq_doublings = 0;
    std::uint64_t msq_cutoff = 1ull << 28;
    msq->add_option("--t0", msq_t0, "first window start")->capture_default_str();
    msq->add_option("--doublings", msq_doublings, "extra windows T*2^k")
        ->capture_default_str();
    msq->add_option("--sigma", msq_sigma, "real part")->capture_default_str();
    msq->add_option("--step-cap", msq_step, "max quadrature panel width")
        ->capture_default_str();
    msq->add_option("--cutoff", msq_cutoff, "predicted-series cutoff")
        ->capture_default_str();
    add_common(msq, msq_c, true);
    msq->callback([&] {
        apply_config(msq, msq_c.config_path);
        const zetaband::Band band = parse_band(msq_c.band_text);
        const auto reports = zetaband::theorem11_scan(
            t_ladder(msq_t0, msq_doublings), msq_sigma, band, msq_step, msq_cutoff);
        Sink sink(msq_c.out_path);
        sink.os() << "t,sigma,integral,predicted,ratio,quad_points\n";
        for (const auto& r : reports)
            sink.os() << fmt(r.T) << ',' << fmt(r.sigma) << ',' << fmt(r.integral)
                      << ',' << fmt(r.predicted) << ',' << fmt(r.ratio) << ','
                      << r.quad_points << '\n';
    });

    // pyth-count
    auto* pcount = app.add_subcommand("pyth-count",
                                      "primitive triangle census at one x");
    Common pcount_c;
    double pcount_x = 100.0;
    pcount->add_option("--x", pcount_x, "perimeter bound")->required();
    add_common(pcount, pcount_c, false);
    pcount->callback([&] {
        apply_config(pcount, pcount_c.config_path);
        const zetaband::CensusReport r = zetaband::census(pcount_x, pcount_c.threads);
        Sink sink(pcount_c.out_path);
        sink.os() << "x,p,main,error\n"
                  << fmt(r.x) << ',' << r.P << ',' << fmt(r.main) << ','
                  << fmt(r.error) << '\n';
    });

    // pyth-enum
    auto* penum = app.add_subcommand("pyth-enum", "list primitive triangles");
    Common penum_c;
    double penum_bound = 100.0;
    penum->add_option("--perimeter-bound", penum_bound, "largest perimeter")
        ->required();
    add_common(penum, penum_c, false);
    penum->callback([&] {
        apply_config(penum, penum_c.config_path);
        const auto triples = zetaband::enumerate_primitive(penum_bound);
        Sink sink(penum_c.out_path);
        sink.os() << "a,b,c,perimeter\n";
        for (const auto& t : triples)
            sink.os() << t.a << ',' << t.b << ',' << t.c << ',' << t.perimeter()
                      << '\n';
    });

    // pyth-scan
    auto* pscan = app.add_subcommand("pyth-scan", "census over a geometric grid");
    Common pscan_c;
    double pscan_lo = 1e2, pscan_hi = 1e6;
    std::size_t pscan_points = 25;
    pscan->add_option("--lo", pscan_lo, "grid start")->capture_default_str();
    pscan->add_option("--hi", pscan_hi, "grid end")->capture_default_str();
    pscan->add_option("--points", pscan_points, "grid size")->capture_default_str();
    add_common(pscan, pscan_c, false);
    pscan->callback([&] {
        apply_config(pscan, pscan_c.config_path);
        const auto xs = zetaband::geometric_grid(pscan_lo, pscan_hi, pscan_points);
        std::vector<zetaband::CensusReport> rows(xs.size());
        zetaband::parallel_for(xs.size(), pscan_c.threads, [&](std::size_t i) {
            rows[i] = zetaband::census(xs[i]);
        });
        Sink sink(pscan_c.out_path);
        sink.os() << "x,p,main,error\n";
        for (const auto& r : rows)
            sink.os() << fmt(r.x) << ',' << r.P << ',' << fmt(r.main) << ','
                      << fmt(r.error) << '\n';
        try {
            const zetaband::ExponentFit fit =
                zetaband::lehmer_error_scan(xs, pscan_c.threads);
            std::fprintf(stderr,
                         "fit: slope=%.6f intercept=%.6f max_ratio=%.6f samples=%zu "
                         "conditional_exponent=%.6f\n",
                         fit.slope, fit.intercept, fit.max_ratio, fit.sample_count,
                         zetaband::kLehmerConditionalExponent);
        } catch (const zetaband::Error& e) {
            std::fprintf(stderr, "fit: skipped (%s)\n", e.what());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const zetaband::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
