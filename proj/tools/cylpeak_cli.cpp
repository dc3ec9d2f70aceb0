#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cylpeak/combinatorics.hpp"
#include "cylpeak/errors.hpp"
#include "cylpeak/fredholm.hpp"
#include "cylpeak/io.hpp"
#include "cylpeak/kernels.hpp"
#include "cylpeak/monte_carlo.hpp"
#include "cylpeak/scaling.hpp"

using namespace cylpeak;

namespace {

constexpr int kUsage = 1, kNumerical = 2, kDomain = 3;

struct Common {
    std::string config;
    std::string out;
    std::uint64_t seed = 1;
};

// Model flags shared by several subcommands.
struct ModelFlags {
    double a = 0.5, q = 0.5;
    int n = 1;
    CLI::Option *oa = nullptr, *oq = nullptr, *on = nullptr;

    void add(CLI::App* app) {
        oa = app->add_option("--a", a, "weight parameter a in (0,1]");
        oq = app->add_option("--q", q, "weight parameter q in (0,1)");
        on = app->add_option("--n", n, "half-width N");
    }
    ModelParams resolve(const ExperimentConfig* cfg) const {
        ModelParams p;
        p.a = (cfg && !oa->count()) ? cfg->model.a : a;
        p.q = (cfg && !oq->count()) ? cfg->model.q : q;
        p.n = (cfg && !on->count()) ? cfg->model.n : n;
        p.validate();
        return p;
    }
};

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_file(path, content);
        std::cerr << "wrote " << path << "\n";
    }
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

void print_summary(const ConvergeTable& t) {
    std::printf("# %s\n# epsilon sup_diff shift_bias\n", t.label.c_str());
    for (const auto& s : t.summary) std::printf("# %.6g %.6e %.3e\n", s.epsilon, s.sup_diff, s.shift_bias);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cylpeak: peaks of cylindric plane partitions"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--config", common.config, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", common.out, "output file (stdout if omitted)");
    auto* oseed = app.add_option("--seed", common.seed, "random seed");

    // enumerate
    auto* en = app.add_subcommand("enumerate", "exact peak law by enumeration, written as JSON");
    ModelFlags en_m;
    en_m.add(en);
    int en_vol = 30;
    en->add_option("--max-volume", en_vol, "volume budget")->check(CLI::Range(0, 200));

    // sample
    auto* sa = app.add_subcommand("sample", "Monte Carlo samples of L, chi and the peak (CSV)");
    ModelFlags sa_m;
    sa_m.add(sa);
    long sa_count = 10000;
    double sa_tail = 1e-9;
    sa->add_option("--count", sa_count, "number of samples")->check(CLI::NonNegativeNumber);
    sa->add_option("--tail-tol", sa_tail, "row truncation tolerance")->check(CLI::PositiveNumber);

    // fredholm-bessel
    auto* fb = app.add_subcommand("fredholm-bessel", "finite-temperature Bessel determinant");
    double fb_alpha = 1.0;
    int fb_n = 1;
    std::vector<double> fb_s{0.0};
    NystromSpec fb_spec;
    fb->add_option("--alpha", fb_alpha, "Bessel order")->check(CLI::NonNegativeNumber);
    fb->add_option("--n-temp", fb_n, "temperature parameter N")->check(CLI::PositiveNumber);
    fb->add_option("--s", fb_s, "left endpoints")->expected(1, -1);
    fb->add_option("--m-nodes", fb_spec.m_nodes, "initial Nystrom nodes");

    // fredholm-airy
    auto* fa = app.add_subcommand("fredholm-airy", "finite-temperature Airy determinant");
    double fa_beta = 1.0;
    std::vector<double> fa_s{0.0};
    NystromSpec fa_spec;
    fa->add_option("--beta", fa_beta, "inverse temperature")->check(CLI::PositiveNumber);
    fa->add_option("--s", fa_s, "left endpoints")->expected(1, -1);
    fa->add_option("--m-nodes", fa_spec.m_nodes, "initial Nystrom nodes");

    // discrete-fredholm
    auto* df = app.add_subcommand("discrete-fredholm", "shift-mixed CDF from the discrete kernel");
    ModelFlags df_m;
    df_m.add(df);
    std::vector<long> df_ell{0};
    DiscreteTailSpec df_tail;
    df->add_option("--ell", df_ell, "thresholds")->expected(1, -1);
    df->add_option("--trace-tol", df_tail.trace_tol, "diagonal tail tolerance");

    // converge
    auto* cv = app.add_subcommand("converge", "scaling convergence tables");
    cv->require_subcommand(1);
    auto* cvb = cv->add_subcommand("bessel", "part (i): q = e^-eps, a = e^{-alpha eps}");
    auto* cva = cv->add_subcommand("airy", "part (ii): q = e^-eps, N = beta eps^{-2/3}");
    ConvergeConfig cc;
    cc.eps = {0.2, 0.1, 0.05};
    cc.s_grid = {-2, -1, 0, 1, 2, 3, 4};
    ConvergeConfig ca;
    ca.eps = {0.05, 0.02};
    ca.s_grid = {-2, -1, 0, 1, 2};
    std::string ca_mode = "action";
    auto* o_cb_eps = cvb->add_option("--eps", cc.eps, "eps values")->expected(1, -1);
    auto* o_cb_s = cvb->add_option("--s-grid", cc.s_grid, "s values")->expected(1, -1);
    auto* o_cb_alpha = cvb->add_option("--alpha", cc.alpha, "alpha");
    auto* o_cb_n = cvb->add_option("--n", cc.n, "half-width N");
    auto* o_ca_eps = cva->add_option("--eps", ca.eps, "eps values")->expected(1, -1);
    auto* o_ca_s = cva->add_option("--s-grid", ca.s_grid, "s values")->expected(1, -1);
    auto* o_ca_beta = cva->add_option("--beta", ca.beta, "beta");
    auto* o_ca_a = cva->add_option("--a", ca.a, "a in (0,1)");
    auto* o_ca_mode = cva->add_option("--c2-mode", ca_mode, "paper or action")->check(CLI::IsMember({"paper", "action"}));

    // critical-point
    auto* cp = app.add_subcommand("critical-point", "constants c1, c2 and the action derivatives");
    double cp_a = 0.25;
    cp->add_option("--a", cp_a, "a in (0,1)")->required();

    // cdf-compare
    auto* cd = app.add_subcommand("cdf-compare", "Monte Carlo vs enumeration vs determinant");
    ModelFlags cd_m;
    cd_m.add(cd);
    long cd_count = 100000, cd_ell = 10;
    int cd_vol = 40;
    cd->add_option("--count", cd_count, "number of samples")->check(CLI::PositiveNumber);
    cd->add_option("--max-volume", cd_vol, "enumeration volume budget");
    cd->add_option("--ell-max", cd_ell, "largest threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        ExperimentConfig cfg;
        const bool have_cfg = !common.config.empty();
        if (have_cfg) cfg = load_config(common.config);
        const ExperimentConfig* pc = have_cfg ? &cfg : nullptr;
        std::string out = common.out;
        if (out.empty() && have_cfg) out = cfg.out;
        const std::uint64_t seed = (have_cfg && !oseed->count()) ? cfg.seed : common.seed;

        if (en->parsed()) {
            const ModelParams p = en_m.resolve(pc);
            const Pmf pmf = exact_peak_pmf(p, en_vol);
            emit(out, pmf_to_json(pmf) + "\n");
            std::fprintf(stderr, "P(peak=0) = %.6f, tail_bound = %.3e\n", pmf.prob(0), pmf.tail_bound);
        } else if (sa->parsed()) {
            const ModelParams p = sa_m.resolve(pc);
            const auto samples = sample_peaks(p, sa_count, seed, sa_tail);
            std::ostringstream os;
            write_samples_csv(os, samples);
            emit(out, os.str());
        } else if (fb->parsed()) {
            const KernelMatrixFn k = bessel_kernel_matrix_fn(fb_alpha, fb_n);
            for (double s : fb_s) {
                const auto d = fredholm_det_semiinfinite_matrix(k, s, fb_spec);
                std::printf("%.6g %.12f %.2e\n", s, d.value, d.error);
            }
        } else if (fa->parsed()) {
            const KernelMatrixFn k = airy_kernel_matrix_fn(fa_beta);
            for (double s : fa_s) {
                const auto d = fredholm_det_semiinfinite_matrix(k, s, fa_spec);
                std::printf("%.6g %.12f %.2e\n", s, d.value, d.error);
            }
        } else if (df->parsed()) {
            const ModelParams p = df_m.resolve(pc);
            const auto v = fredholm_det_discrete_many(df_ell, p, df_tail);
            for (std::size_t i = 0; i < v.size(); ++i) std::printf("%ld %.12f\n", df_ell[i], v[i]);
        } else if (cv->parsed()) {
            if (cvb->parsed()) {
                if (have_cfg) {
                    if (!o_cb_eps->count() && !cfg.converge.eps.empty()) cc.eps = cfg.converge.eps;
                    if (!o_cb_s->count() && !cfg.converge.s_grid.empty()) cc.s_grid = cfg.converge.s_grid;
                    if (!o_cb_alpha->count() && cfg.has_alpha) cc.alpha = cfg.converge.alpha;
                    if (!o_cb_n->count()) cc.n = cfg.model.n;
                    cc.quad = cfg.converge.quad;
                    cc.nystrom = cfg.converge.nystrom;
                    cc.tail = cfg.converge.tail;
                }
                const ConvergeTable t = run_converge_bessel(cc);
                std::ostringstream os;
                write_converge_csv(os, t.rows);
                emit(out, os.str());
                print_summary(t);
            } else {
                if (have_cfg) {
                    if (!o_ca_eps->count() && !cfg.converge.eps.empty()) ca.eps = cfg.converge.eps;
                    if (!o_ca_s->count() && !cfg.converge.s_grid.empty()) ca.s_grid = cfg.converge.s_grid;
                    if (!o_ca_beta->count() && cfg.has_beta) ca.beta = cfg.converge.beta;
                    if (!o_ca_a->count()) ca.a = cfg.converge.a;
                    if (!o_ca_mode->count()) ca_mode = to_string(cfg.converge.c2_mode);
                    ca.quad = cfg.converge.quad;
                    ca.nystrom = cfg.converge.nystrom;
                    ca.tail = cfg.converge.tail;
                }
                ca.c2_mode = parse_c2_mode(ca_mode);
                const AiryConvergeResult r = run_converge_airy(ca);
                std::ostringstream os, other;
                write_converge_csv(os, r.primary.rows);
                write_converge_csv(other, r.other.rows);
                emit(out, os.str());
                if (!out.empty() && out != "-")
                    emit(with_suffix(out, "_" + to_string(ca.c2_mode == C2Mode::Action ? C2Mode::Paper : C2Mode::Action)),
                         other.str());
                else
                    std::cout << other.str();
                print_summary(r.primary);
                print_summary(r.other);
                std::printf("# smaller sup difference at the smallest eps: c2_mode=%s\n", to_string(r.better).c_str());
            }
        } else if (cp->parsed()) {
            const CriticalPointReport r = critical_point_report(cp_a);
            std::printf("b         = %.10f\n", r.constants.b);
            std::printf("c1        = %.10f\n", r.constants.c1);
            std::printf("c2_paper  = %.10f\n", r.constants.c2_paper);
            std::printf("c2_action = %.10f\n", r.constants.c2_action);
            std::printf("ratio     = %.10f\n", r.ratio);
            std::printf("S'(1)     = %.3e\n", r.derivs.d1.value);
            std::printf("S''(1)    = %.3e\n", r.derivs.d2.value);
            std::printf("S'''(1)   = %.10f (closed form %.10f)\n", r.derivs.d3.value, r.s3_closed);
        } else if (cd->parsed()) {
            const ModelParams p = cd_m.resolve(pc);
            const CdfCompareResult r = run_cdf_compare(p, cd_count, seed, cd_vol, cd_ell);
            std::ostringstream os;
            write_cdf_compare_csv(os, r.rows);
            emit(out, os.str());
            std::fprintf(stderr, "KS = %.5f, enumeration tail = %.3e\n", r.ks, r.exact_tail);
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return 0;
}
