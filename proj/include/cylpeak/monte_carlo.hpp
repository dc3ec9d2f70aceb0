#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cylpeak/combinatorics.hpp"
#include "cylpeak/model.hpp"

namespace cylpeak {

// Reproducible stream: identical (seed, stream_id) give identical draws.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    // Uniform on the open interval (0, 1), 53 random bits.
    double uniform();
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t seed_, stream_id_;
    std::mt19937_64 engine_;
};

// P(X = k) = (1 - t) t^k.
long sample_geometric(double t, RngStream& rng);

struct TieGrid {
    int n = 1;
    std::vector<std::vector<long>> rows;  // rows[i-1] is slice i
    int i_max = 0;
    double tail_mass_bound = 0.0;

    // Circle position of cell k in slice i, in [0, 2N).
    int position(int i, int k) const;
};

// Smallest i_max with sum_{i > i_max} min(i,N) a q^i / (1 - a q^i) < tail_tol.
int tie_truncation(const ModelParams& params, double tail_tol, double* bound = nullptr);
TieGrid build_tie_grid(const ModelParams& params, double tail_tol, RngStream& rng);
long lpp_longest_path(const TieGrid& grid);

// Inverse-CDF tables for chi and the shift c.
class ChiSampler {
public:
    explicit ChiSampler(const ModelParams& params);
    long operator()(RngStream& rng) const;

private:
    std::vector<double> cdf_;
};

class ShiftSampler {
public:
    explicit ShiftSampler(const ModelParams& params);
    long operator()(RngStream& rng) const;

private:
    std::vector<double> cdf_;
    long offset_ = 0;
};

long sample_chi(const ModelParams& params, RngStream& rng);
long sample_shift(const ModelParams& params, RngStream& rng);

struct PeakSample {
    long L = 0, chi = 0;
    long peak() const { return L + chi; }
};

PeakSample sample_peak(const ModelParams& params, double tail_tol, RngStream& rng);

// count samples; batch b uses stream_id b, so the output does not depend on the worker count.
std::vector<PeakSample> sample_peaks(const ModelParams& params, long count, std::uint64_t seed,
                                     double tail_tol = 1e-9, long batch = 4096);

struct Ecdf {
    std::vector<long> sorted;

    double operator()(long x) const;
    std::size_t count() const { return sorted.size(); }
};

Ecdf ecdf(std::vector<long> samples);
// sup |F_hat - F| over the jump points, both one-sided gaps.
double ks_distance(const Ecdf& e, const std::function<double(long)>& cdf);

}  // namespace cylpeak
