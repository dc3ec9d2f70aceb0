#include "cylpeak/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace cylpeak {

using nlohmann::json;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string pmf_to_json(const Pmf& p) {
    json j;
    j["support"] = json::array();
    for (const auto& [v, pr] : p.support) j["support"].push_back({v, pr});
    j["tail_bound"] = p.tail_bound;
    return j.dump(2);
}

Pmf pmf_from_json(const std::string& text) {
    Pmf p;
    try {
        const json j = json::parse(text);
        for (const auto& e : j.at("support")) p.support.emplace_back(e.at(0).get<long>(), e.at(1).get<double>());
        p.tail_bound = j.at("tail_bound").get<double>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("pmf json: ") + e.what());
    }
    std::sort(p.support.begin(), p.support.end());
    return p;
}

ExperimentConfig config_from_json(const std::string& text) {
    ExperimentConfig c;
    try {
        const json j = json::parse(text);
        if (j.contains("model")) {
            const json& m = j["model"];
            c.model.a = m.value("a", c.model.a);
            c.model.q = m.value("q", c.model.q);
            c.model.n = m.value("n", c.model.n);
            c.converge.n = c.model.n;
            c.converge.a = c.model.a;
        }
        if (j.contains("scaling")) {
            const json& s = j["scaling"];
            if (s.contains("eps")) c.converge.eps = s["eps"].get<std::vector<double>>();
            if (s.contains("s_grid")) c.converge.s_grid = s["s_grid"].get<std::vector<double>>();
            if (s.contains("alpha")) {
                c.converge.alpha = s["alpha"].get<double>();
                c.has_alpha = true;
            }
            if (s.contains("beta")) {
                c.converge.beta = s["beta"].get<double>();
                c.has_beta = true;
            }
            if (s.contains("a")) c.converge.a = s["a"].get<double>();
            if (s.contains("c2_mode")) c.converge.c2_mode = parse_c2_mode(s["c2_mode"].get<std::string>());
        }
        if (j.contains("quad")) {
            const json& q = j["quad"];
            c.converge.quad.rel_tol = q.value("rel_tol", c.converge.quad.rel_tol);
            c.converge.quad.max_panels = q.value("max_panels", c.converge.quad.max_panels);
            c.converge.quad.tail_tol = q.value("tail_tol", c.converge.quad.tail_tol);
            c.converge.nystrom.m_nodes = q.value("m_nodes", c.converge.nystrom.m_nodes);
            c.converge.nystrom.max_nodes = q.value("max_nodes", c.converge.nystrom.max_nodes);
            c.converge.nystrom.rel_tol = q.value("nystrom_tol", c.converge.nystrom.rel_tol);
            c.converge.tail.trace_tol = q.value("trace_tol", c.converge.tail.trace_tol);
            c.converge.tail.max_dim = q.value("max_dim", c.converge.tail.max_dim);
        }
        c.seed = j.value("seed", c.seed);
        c.out = j.value("out", c.out);
    } catch (const json::exception& e) {
        throw DomainError(std::string("config json: ") + e.what());
    }
    if (c.has_alpha && c.has_beta) throw DomainError("config json: give either scaling.alpha or scaling.beta");
    return c;
}

std::string config_to_json(const ExperimentConfig& c) {
    json j;
    j["model"] = {{"a", c.model.a}, {"q", c.model.q}, {"n", c.model.n}};
    json s = {{"eps", c.converge.eps}, {"s_grid", c.converge.s_grid}, {"c2_mode", to_string(c.converge.c2_mode)}};
    if (c.has_alpha) s["alpha"] = c.converge.alpha;
    if (c.has_beta) s["beta"] = c.converge.beta;
    j["scaling"] = s;
    j["quad"] = {{"rel_tol", c.converge.quad.rel_tol},
                 {"max_panels", c.converge.quad.max_panels},
                 {"tail_tol", c.converge.quad.tail_tol},
                 {"m_nodes", c.converge.nystrom.m_nodes},
                 {"max_nodes", c.converge.nystrom.max_nodes},
                 {"nystrom_tol", c.converge.nystrom.rel_tol},
                 {"trace_tol", c.converge.tail.trace_tol},
                 {"max_dim", c.converge.tail.max_dim}};
    j["seed"] = c.seed;
    j["out"] = c.out;
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << content;
}

ExperimentConfig load_config(const std::string& path) { return config_from_json(read_file(path)); }

void write_samples_csv(std::ostream& os, const std::vector<PeakSample>& samples) {
    os << "index,L,chi,peak\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        os << i << ',' << samples[i].L << ',' << samples[i].chi << ',' << samples[i].peak() << '\n';
}

void write_converge_csv(std::ostream& os, const std::vector<ConvergeRow>& rows) {
    os << "epsilon,s,discrete_det,limit_det,abs_diff\n";
    for (const auto& r : rows)
        os << format_real(r.epsilon) << ',' << format_real(r.s) << ',' << format_real(r.discrete_det) << ','
           << format_real(r.limit_det) << ',' << format_real(r.abs_diff) << '\n';
}

void write_cdf_compare_csv(std::ostream& os, const std::vector<CdfCompareRow>& rows) {
    os << "ell,empirical,exact,fredholm,abs_diff\n";
    for (const auto& r : rows)
        os << r.ell << ',' << format_real(r.empirical) << ',' << format_real(r.exact) << ','
           << format_real(r.fredholm) << ',' << format_real(r.abs_diff) << '\n';
}

}  // namespace cylpeak
