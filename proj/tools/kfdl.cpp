// kfdl: divisor-problem error terms, mean-square laws, and series constants.
//
// Subcommands: sieve, delta, constants, meansquare, voronoi, spacing.
// Exit codes: 0 success, 2 usage error, 3 resource error, 4 invariant
// violation (cross-method disagreement).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kfd/constants.hpp"
#include "kfd/errors.hpp"
#include "kfd/format.hpp"
#include "kfd/meansquare.hpp"
#include "kfd/sieve.hpp"
#include "kfd/spacing.hpp"
#include "kfd/summatory.hpp"
#include "kfd/voronoi.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace kfd;

namespace {

struct GlobalOpts {
    std::string cache_dir;
    int threads = 1;
    std::string precision = "double-double";
    std::string config_path;
};

void open_out(std::ofstream& os, const std::string& path) {
    os.open(path, std::ios::binary | std::ios::trunc);
    if (!os) throw resource_error("cannot open output file: " + path);
}

Problem parse_problem(const std::string& s) {
    if (s == "dirichlet") return Problem::Dirichlet;
    if (s == "kfree") return Problem::KFree;
    if (s == "threedim") return Problem::ThreeDim;
    throw std::domain_error("unknown problem: " + s +
                            " (expected dirichlet|kfree|threedim)");
}

// config echo shared by all JSON reports.  Execution-resource settings
// (thread count) are left out so reruns under different pools are
// byte-identical.
json config_echo(const std::string& command, const json& params) {
    json j;
    j["version"] = version();
    j["command"] = command;
    j["params"] = params;
    return j;
}

json estimate_json(const ConstantEstimate& e) {
    json j;
    switch (e.kind) {
        case ConstantKind::Bk: j["kind"] = "Bk"; break;
        case ConstantKind::Ck: j["kind"] = "Ck"; break;
        case ConstantKind::DSquared: j["kind"] = "d2"; break;
    }
    if (e.k != 0) j["k"] = e.k; else j["k"] = nullptr;
    j["value"] = to_string(e.value, 30);
    j["tail_bound"] = std::isinf(e.tail_bound) ? json("inf") : json(e.tail_bound);
    j["converged"] = e.converged;
    j["divergent"] = e.divergent;
    j["method"] = e.method;
    json p;
    if (e.method == "DirectSum") p["M"] = e.M;
    if (e.method == "EulerProduct") {
        p["P"] = e.P;
        p["alpha_max"] = e.alpha_max;
    }
    j["parameters"] = p;
    return j;
}

// ---- sieve ------------------------------------------------------------------

int cmd_sieve(uint64_t lo, uint64_t hi, int k, uint64_t segment,
              const std::string& out, const std::string& cache_dir,
              double mertens_to, double mertens_c, const std::string& mertens_out) {
    if (!mertens_out.empty()) {
        std::ofstream os;
        open_out(os, mertens_out);
        os << "u,M,envelope\n";
        MertensEvaluator ev;
        for (uint64_t u = 2; u <= uint64_t(mertens_to); u = std::max(u + 1, u + u / 64)) {
            int64_t M = ev.advance_to(u);
            os << u << ',' << M << ',' << fmt_shortest(mertens_envelope(double(u), mertens_c))
               << '\n';
        }
        return 0;
    }

    SieveTable t;
    bool from_cache = false;
    fs::path cache_path;
    if (!cache_dir.empty()) {
        fs::create_directories(cache_dir);
        cache_path = fs::path(cache_dir) /
                     ("seg_" + std::to_string(lo) + "_" + std::to_string(hi) + "_k" +
                      std::to_string(k) + ".kfdl");
        if (auto cached = read_segment_cache(cache_path)) {
            // a corrupt or mismatched segment falls through to a recompute
            if (cached->range.lo == lo && cached->range.hi == hi && cached->k == k) {
                t = std::move(*cached);
                from_cache = true;
            }
        }
    }
    if (!from_cache) {
        t = sieve_range({lo, hi}, k, segment);
        if (!cache_path.empty() && !write_segment_cache(cache_path, t))
            throw resource_error("cannot write cache segment: " + cache_path.string());
    }
    if (!out.empty()) {
        std::ofstream os;
        open_out(os, out);
        if (k != 0)
            os << "n,d,mu,dk,d11k\n";
        else
            os << "n,d,mu\n";
        for (uint64_t n = lo; n < hi; ++n) {
            os << n << ',' << t.d_at(n) << ',' << int(t.mu_at(n));
            if (k != 0) os << ',' << t.dk_at(n) << ',' << t.d11k_at(n);
            os << '\n';
        }
    }
    return 0;
}

// ---- delta ------------------------------------------------------------------

int cmd_delta(const std::string& problem, int k, double from, double to,
              int points, const std::string& precision, const std::string& out) {
    Problem pr = parse_problem(problem);
    MainTermModel model = MainTermModel::make(pr, k);
    bool plain = precision == "double";
    std::ofstream os;
    open_out(os, out);
    os << "x,summatory,main,delta\n";
    for (int i = 0; i < points; ++i) {
        double x = points == 1
                       ? from
                       : from * std::pow(to / from, double(i) / (points - 1));
        ErrorTermSample s = delta_sample(x, model);
        double main = plain ? model.eval_double(x) : s.main.to_double();
        double value = plain ? double(s.summatory) - main : s.value;
        os << fmt_sig17(s.x) << ',' << s.summatory << ',' << fmt_sig17(main) << ','
           << fmt_sig17(value) << '\n';
    }
    return 0;
}

// ---- constants --------------------------------------------------------------

int cmd_constants(const std::string& kind_s, int k, const std::string& method,
                  uint64_t M, uint32_t P, int alpha_max, const std::string& out) {
    ConstantKind kind;
    if (kind_s == "Bk") kind = ConstantKind::Bk;
    else if (kind_s == "Ck") kind = ConstantKind::Ck;
    else if (kind_s == "d2") kind = ConstantKind::DSquared;
    else if (kind_s == "tong") {
        auto e = tong_constant();
        json doc = config_echo("constants", {{"kind", "tong"}});
        doc["estimates"] = json::array({estimate_json(e)});
        std::ofstream os;
        open_out(os, out);
        os << doc.dump(2) << '\n';
        return 0;
    } else {
        throw std::domain_error("unknown kind: " + kind_s + " (Bk|Ck|d2|tong)");
    }

    std::vector<ConstantEstimate> ests;
    if (method == "direct" || method == "both")
        ests.push_back(series_constant_direct(kind, k, {M}));
    if (method == "euler" || method == "both")
        ests.push_back(series_constant_euler(kind, k, {P, alpha_max}));
    if (ests.empty())
        throw std::domain_error("unknown method: " + method + " (direct|euler|both)");

    json doc = config_echo("constants", {{"kind", kind_s},
                                         {"k", k},
                                         {"method", method},
                                         {"M", M},
                                         {"P", P},
                                         {"alpha_max", alpha_max}});
    doc["estimates"] = json::array();
    for (auto& e : ests) doc["estimates"].push_back(estimate_json(e));
    std::ofstream os;
    open_out(os, out);
    os << doc.dump(2) << '\n';

    if (ests.size() == 2) {
        double diff = std::fabs((ests[0].value - ests[1].value).to_double());
        double allow = ests[0].tail_bound + ests[1].tail_bound;
        if (!(diff <= allow))
            throw invariant_error("cross-method disagreement: |direct - euler| = " +
                                  fmt_shortest(diff) + " exceeds tail bounds " +
                                  fmt_shortest(allow));
    }
    return 0;
}

// ---- meansquare -------------------------------------------------------------

int cmd_meansquare(const std::string& problem, int k, double T, int threads,
                   const std::string& out, const std::string& trace) {
    Problem pr = parse_problem(problem);
    MeanSquareOptions opts;
    opts.threads = threads;
    MeanSquareReport rep = integrate_delta_squared(pr, k, T, opts);

    json doc = config_echo("meansquare", {{"problem", problem}, {"k", k}, {"T", T}});
    doc["T"] = T;
    doc["integral"] = to_string(rep.integral, 30);
    doc["predicted_main"] = to_string(rep.predicted_main, 30);
    doc["residual"] = rep.residual;
    doc["mean_square_constant"] = to_string(rep.constant, 30);
    doc["predicted_error_exponent"] =
        rep.has_exponent ? json(rep.predicted_error_exponent) : json(nullptr);
    doc["delta_T"] = rep.delta_T;
    doc["samples"] = json::array();
    for (auto& [t, r] : rep.samples)
        doc["samples"].push_back({{"T", t}, {"ratio", r}});
    std::ofstream os;
    open_out(os, out);
    os << doc.dump(2) << '\n';

    if (!trace.empty()) {
        std::ofstream ts;
        open_out(ts, trace);
        ts << "T,integral,predicted,ratio\n";
        for (auto& [t, r] : rep.samples) {
            dd pred = rep.constant / (6.0 * sqr(dd_pi())) * pow(dd(t), 1.5);
            ts << fmt_shortest(t) << ',' << fmt_shortest((pred * r).to_double()) << ','
               << fmt_shortest(pred.to_double()) << ',' << fmt_shortest(r) << '\n';
        }
    }
    return 0;
}

// ---- voronoi ----------------------------------------------------------------

int cmd_voronoi(const std::string& mode, double V, int points, uint64_t z,
                double x, double y, int k, bool unsigned_weights, int threads,
                const std::string& out) {
    std::ofstream os;
    open_out(os, out);
    if (mode == "grid") {
        std::vector<double> grid(points);
        for (int i = 0; i < points; ++i) grid[i] = V + (i + 0.5) * V / points;
        Delta1Table table(z);
        std::vector<double> d1(points);
        table.eval_grid(grid, d1, threads);
        os << "u,delta,delta1,delta2\n";
        for (int i = 0; i < points; ++i) {
            double dv = delta_dirichlet(grid[i]).value;
            os << fmt_shortest(grid[i]) << ',' << fmt_shortest(dv) << ','
               << fmt_shortest(d1[i]) << ',' << fmt_shortest(dv - d1[i]) << '\n';
        }
        return 0;
    }
    if (mode == "osc") {
        TruncationParams params{z, y, k};
        double v = oscillation_sum(
            x, params, unsigned_weights ? OscWeights::Unsigned : OscWeights::MobiusSigned);
        os << "x,y,z,k,signed,value\n";
        os << fmt_shortest(x) << ',' << fmt_shortest(y) << ',' << z << ',' << k << ','
           << (unsigned_weights ? 0 : 1) << ',' << fmt_shortest(v) << '\n';
        return 0;
    }
    throw std::domain_error("unknown voronoi mode: " + mode + " (grid|osc)");
}

// ---- spacing ----------------------------------------------------------------

int cmd_spacing(uint64_t D1, uint64_t D2, uint64_t N1, uint64_t N2, int k,
                double delta, bool ek, double y, double z, double T,
                const std::string& out) {
    std::ofstream os;
    open_out(os, out);
    if (ek) {
        double v = resonance_sum(y, z, k, T);
        os << "y,z,k,T,value\n";
        os << fmt_shortest(y) << ',' << fmt_shortest(z) << ',' << k << ','
           << fmt_shortest(T) << ',' << fmt_shortest(v) << '\n';
        return 0;
    }
    DyadicBox box{D1, D2, N1, N2, k, delta};
    uint64_t count = count_near_resonances(box);
    double env = count_envelope(box);
    os << "D1,D2,N1,N2,k,delta,count,envelope,ratio\n";
    os << D1 << ',' << D2 << ',' << N1 << ',' << N2 << ',' << k << ','
       << fmt_shortest(delta) << ',' << count << ',' << fmt_shortest(env) << ','
       << fmt_shortest(double(count) / env) << '\n';
    return 0;
}

// apply config-file defaults for options the command line left untouched
void apply_config(CLI::App& app, const std::string& path) {
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw std::domain_error("cannot read config file: " + path);
    json cfg = json::parse(is, nullptr, true);
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (!opt || opt->count() > 0) continue;
        std::string sval = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(sval);
        opt->run_callback();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-free divisor toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    const char* env_cache = std::getenv("KFDL_CACHE_DIR");
    if (env_cache) g.cache_dir = env_cache;
    app.add_option("--cache-dir", g.cache_dir, "sieve segment cache directory");
    app.add_option("--threads,-t", g.threads, "worker pool size")->check(CLI::PositiveNumber);
    app.add_option("--precision", g.precision,
                   "main-term evaluation for delta samples")
        ->check(CLI::IsMember({"double", "double-double"}));

    // sieve
    auto* sv = app.add_subcommand("sieve", "multiplicative-function tables");
    sv->fallthrough();
    uint64_t sv_lo = 1, sv_hi = 1001, sv_seg = kDefaultSegment;
    int sv_k = 0;
    std::string sv_out, sv_mout;
    double sv_mto = 0.0, sv_mc = 0.1;
    sv->add_option("--lo", sv_lo);
    sv->add_option("--hi", sv_hi);
    sv->add_option("--k", sv_k);
    sv->add_option("--segment-size", sv_seg);
    sv->add_option("--out", sv_out);
    sv->add_option("--mertens-to", sv_mto, "emit Mertens CSV up to this bound");
    sv->add_option("--mertens-c", sv_mc, "envelope constant c");
    sv->add_option("--mertens-out", sv_mout);
    sv->add_option("--config", g.config_path);

    // delta
    auto* dl = app.add_subcommand("delta", "error-term samples");
    dl->fallthrough();
    std::string dl_problem = "dirichlet", dl_out = "delta.csv";
    int dl_k = 2, dl_points = 1;
    double dl_from = 10.0, dl_to = 10.0;
    dl->add_option("--problem", dl_problem);
    dl->add_option("--k", dl_k);
    dl->add_option("--from", dl_from);
    dl->add_option("--to", dl_to);
    dl->add_option("--points", dl_points)->check(CLI::PositiveNumber);
    dl->add_option("--out", dl_out);
    dl->add_option("--config", g.config_path);

    // constants
    auto* ct = app.add_subcommand("constants", "mean-square series constants");
    ct->fallthrough();
    std::string ct_kind = "Bk", ct_method = "both", ct_out = "constants.json";
    int ct_k = 4, ct_amax = 512;
    uint64_t ct_M = 100'000'000;
    uint32_t ct_P = 100'000;
    ct->add_option("--kind", ct_kind);
    ct->add_option("--k", ct_k);
    ct->add_option("--method", ct_method);
    ct->add_option("--M", ct_M);
    ct->add_option("--P", ct_P);
    ct->add_option("--alpha-max", ct_amax);
    ct->add_option("--out", ct_out);
    ct->add_option("--config", g.config_path);

    // meansquare
    auto* ms = app.add_subcommand("meansquare", "exact integral of Delta^2");
    ms->fallthrough();
    std::string ms_problem = "dirichlet", ms_out = "meansquare.json", ms_trace;
    int ms_k = 0;
    double ms_T = 1e6;
    ms->add_option("--problem", ms_problem);
    ms->add_option("--k", ms_k);
    ms->add_option("--T", ms_T);
    ms->add_option("--out", ms_out);
    ms->add_option("--trace", ms_trace);
    ms->add_option("--config", g.config_path);

    // voronoi
    auto* vr = app.add_subcommand("voronoi", "truncated Voronoi series");
    vr->fallthrough();
    std::string vr_mode = "grid", vr_out = "voronoi.csv";
    double vr_V = 1e4, vr_x = 1e5, vr_y = 10.0;
    int vr_points = 100, vr_k = 2;
    uint64_t vr_z = 100;
    bool vr_unsigned = false;
    vr->add_option("--mode", vr_mode);
    vr->add_option("--V", vr_V);
    vr->add_option("--points", vr_points)->check(CLI::PositiveNumber);
    vr->add_option("--z", vr_z);
    vr->add_option("--x", vr_x);
    vr->add_option("--y", vr_y);
    vr->add_option("--k", vr_k);
    vr->add_flag("--unsigned-weights", vr_unsigned);
    vr->add_option("--out", vr_out);
    vr->add_option("--config", g.config_path);

    // spacing
    auto* sp = app.add_subcommand("spacing", "near-resonance counts");
    sp->fallthrough();
    uint64_t sp_D1 = 8, sp_D2 = 8, sp_N1 = 64, sp_N2 = 64;
    int sp_k = 2;
    double sp_delta = 1e-3, sp_y = 10, sp_z = 500, sp_T = 1e6;
    bool sp_ek = false;
    std::string sp_out = "spacing.csv";
    sp->add_option("--D1", sp_D1);
    sp->add_option("--D2", sp_D2);
    sp->add_option("--N1", sp_N1);
    sp->add_option("--N2", sp_N2);
    sp->add_option("--k", sp_k);
    sp->add_option("--delta", sp_delta);
    sp->add_flag("--ek", sp_ek, "weighted pair sum instead of a count");
    sp->add_option("--y", sp_y);
    sp->add_option("--z", sp_z);
    sp->add_option("--T", sp_T);
    sp->add_option("--out", sp_out);
    sp->add_option("--config", g.config_path);

    try {
        app.parse(argc, argv);
        for (auto* sub : {sv, dl, ct, ms, vr, sp})
            if (sub->parsed()) apply_config(*sub, g.config_path);

        if (sv->parsed())
            return cmd_sieve(sv_lo, sv_hi, sv_k, sv_seg, sv_out, g.cache_dir, sv_mto,
                             sv_mc, sv_mout);
        if (dl->parsed())
            return cmd_delta(dl_problem, dl_k, dl_from, dl_to, dl_points, g.precision,
                             dl_out);
        if (ct->parsed())
            return cmd_constants(ct_kind, ct_k, ct_method, ct_M, ct_P, ct_amax, ct_out);
        if (ms->parsed())
            return cmd_meansquare(ms_problem, ms_k, ms_T, g.threads, ms_out, ms_trace);
        if (vr->parsed())
            return cmd_voronoi(vr_mode, vr_V, vr_points, vr_z, vr_x, vr_y, vr_k,
                               vr_unsigned, g.threads, vr_out);
        if (sp->parsed())
            return cmd_spacing(sp_D1, sp_D2, sp_N1, sp_N2, sp_k, sp_delta, sp_ek, sp_y,
                               sp_z, sp_T, sp_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
