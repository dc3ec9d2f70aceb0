#include "cylpeak/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "cylpeak/errors.hpp"
#include "cylpeak/parallel.hpp"

namespace cylpeak {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream_id),
                      std::uint32_t(stream_id >> 32), 0x6379u};
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

double RngStream::uniform() {
    // (k + 1/2) / 2^53 never hits 0 or 1
    const std::uint64_t k = engine_() >> 11;
    return (double(k) + 0.5) * 0x1.0p-53;
}

long sample_geometric(double t, RngStream& rng) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("sample_geometric: t must lie in [0, 1)");
    if (t == 0.0) {
        rng.uniform();
        return 0;
    }
    return long(std::floor(std::log(rng.uniform()) / std::log(t)));
}

int TieGrid::position(int i, int k) const {
    const int m = 2 * n;
    return (((k * 2 - (i - 1)) % m) + m) % m;
}

int tie_truncation(const ModelParams& params, double tail_tol, double* bound) {
    params.validate();
    if (!(tail_tol > 0.0)) throw DomainError("build_tie_grid: tail_tol must be positive");
    const double aq = params.a * params.q;
    if (!(aq < 1.0)) throw DomainError("build_tie_grid: a q must be < 1");
    const int N = params.n;
    // tail after i_max: sum over i > i_max, bounded by a geometric series once i >= N
    auto tail_from = [&](int i0) {
        double s = 0.0;
        for (int i = i0;; ++i) {
            const double t = aq * std::pow(params.q, i - 1);
            const double term = std::min(i, N) * t / (1.0 - t);
            s += term;
            if (i >= N && term < 1e-18 * std::max(s, 1e-300)) break;
            if (term == 0.0) break;
        }
        return s;
    };
    int i_max = 0;
    double b = tail_from(1);
    while (b >= tail_tol) {
        ++i_max;
        b = tail_from(i_max + 1);
    }
    if (bound) *bound = b;
    return i_max;
}

namespace {

// Redraws every cell of a grid whose shape is already set.
void fill_tie_grid(TieGrid& g, const std::vector<double>& rates, RngStream& rng) {
    g.rows.resize(std::size_t(g.i_max));
    for (int i = 1; i <= g.i_max; ++i) {
        auto& row = g.rows[std::size_t(i - 1)];
        row.resize(std::size_t(std::min(i, g.n)));
        for (long& v : row) v = sample_geometric(rates[std::size_t(i - 1)], rng);
    }
}

std::vector<double> tie_rates(const ModelParams& params, int i_max) {
    std::vector<double> r(static_cast<std::size_t>(i_max));
    for (int i = 1; i <= i_max; ++i) r[std::size_t(i - 1)] = params.a * std::pow(params.q, i);
    return r;
}

}  // namespace

TieGrid build_tie_grid(const ModelParams& params, double tail_tol, RngStream& rng) {
    TieGrid g;
    g.n = params.n;
    g.i_max = tie_truncation(params, tail_tol, &g.tail_mass_bound);
    fill_tie_grid(g, tie_rates(params, g.i_max), rng);
    return g;
}

long lpp_longest_path(const TieGrid& grid) {
    const int m = 2 * grid.n;
    // below[p] is the best path value from slice i+1 onward starting at circle position p, -1 if absent
    std::vector<long> below(static_cast<std::size_t>(m), 0), here(static_cast<std::size_t>(m));
    for (int i = grid.i_max; i >= 1; --i) {
        std::fill(here.begin(), here.end(), -1);
        const auto& row = grid.rows[std::size_t(i - 1)];
        for (int k = 0; k < int(row.size()); ++k) {
            const int p = grid.position(i, k);
            const long best = std::max(below[std::size_t((p + 1) % m)], below[std::size_t((p + m - 1) % m)]);
            here[std::size_t(p)] = row[std::size_t(k)] + std::max(best, 0L);
        }
        std::swap(here, below);
    }
    if (grid.i_max == 0) return 0;
    return below[std::size_t(grid.position(1, 0))];
}

ChiSampler::ChiSampler(const ModelParams& params) {
    double c = 0.0;
    for (long m = 0; c < 1.0 - 1e-16 && m < 100'000; ++m) {
        c = chi_cdf(m, params);
        cdf_.push_back(c);
    }
}

long ChiSampler::operator()(RngStream& rng) const {
    const double v = rng.uniform();
    return long(std::lower_bound(cdf_.begin(), cdf_.end(), v) - cdf_.begin());
}

ShiftSampler::ShiftSampler(const ModelParams& params) {
    const Pmf p = shift_pmf(params);
    offset_ = p.support.front().first;
    double acc = 0.0;
    for (const auto& e : p.support) {
        acc += e.second;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
}

long ShiftSampler::operator()(RngStream& rng) const {
    const double v = rng.uniform();
    return offset_ + long(std::lower_bound(cdf_.begin(), cdf_.end(), v) - cdf_.begin());
}

long sample_chi(const ModelParams& params, RngStream& rng) { return ChiSampler(params)(rng); }
long sample_shift(const ModelParams& params, RngStream& rng) { return ShiftSampler(params)(rng); }

PeakSample sample_peak(const ModelParams& params, double tail_tol, RngStream& rng) {
    PeakSample s;
    s.L = lpp_longest_path(build_tie_grid(params, tail_tol, rng));
    s.chi = sample_chi(params, rng);
    return s;
}

std::vector<PeakSample> sample_peaks(const ModelParams& params, long count, std::uint64_t seed, double tail_tol,
                                     long batch) {
    if (count < 0) throw DomainError("sample_peaks: count must be >= 0");
    if (batch < 1) throw DomainError("sample_peaks: batch must be >= 1");
    std::vector<PeakSample> out(static_cast<std::size_t>(count));
    const ChiSampler chi(params);
    TieGrid shape;
    shape.n = params.n;
    shape.i_max = tie_truncation(params, tail_tol, &shape.tail_mass_bound);
    const std::vector<double> rates = tie_rates(params, shape.i_max);
    const long batches = (count + batch - 1) / batch;
    parallel_for(std::size_t(batches), [&](std::size_t b) {
        RngStream rng(seed, b);
        TieGrid g = shape;
        const long lo = long(b) * batch, hi = std::min(count, lo + batch);
        for (long k = lo; k < hi; ++k) {
            PeakSample& s = out[std::size_t(k)];
            fill_tie_grid(g, rates, rng);
            s.L = lpp_longest_path(g);
            s.chi = chi(rng);
        }
    });
    return out;
}

double Ecdf::operator()(long x) const {
    if (sorted.empty()) throw EmptySample("ecdf: no samples");
    return double(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) / double(sorted.size());
}

Ecdf ecdf(std::vector<long> samples) {
    if (samples.empty()) throw EmptySample("ecdf: no samples");
    std::sort(samples.begin(), samples.end());
    return Ecdf{std::move(samples)};
}

double ks_distance(const Ecdf& e, const std::function<double(long)>& cdf) {
    if (e.sorted.empty()) throw EmptySample("ks_distance: no samples");
    // both laws live on the integers, so checking each integer on [min - 1, max] is the full sup
    double d = 0.0;
    for (long x = e.sorted.front() - 1; x <= e.sorted.back(); ++x) d = std::max(d, std::abs(e(x) - cdf(x)));
    return std::min(d, 1.0);
}

}  // namespace cylpeak
