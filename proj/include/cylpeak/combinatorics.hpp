#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cylpeak/model.hpp"

namespace cylpeak {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) {}
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {}

    long size() const;
    int first() const { return parts.empty() ? 0 : parts.front(); }
    int part(std::size_t i) const { return i < parts.size() ? parts[i] : 0; }
    std::size_t length() const { return parts.size(); }
    bool valid() const;
    bool operator==(const Partition&) const = default;
};

// mu < lambda: lambda_i >= mu_i >= lambda_{i+1} for all i.
bool interlaces(const Partition& mu, const Partition& lambda);

// seq holds lambda^(-N), ..., lambda^(N); the first and last entries are both mu.
struct CylindricPlanePartition {
    int n = 1;
    std::vector<Partition> seq;

    static CylindricPlanePartition empty(int n);

    const Partition& at(int i) const { return seq[std::size_t(i + n)]; }  // i in [-N, N]
    bool valid() const;
    long trace() const { return at(0).size(); }
    long seam() const { return at(-n).size(); }
    long volume() const;  // sum over i in [-N, N-1]
    int peak() const { return at(0).first(); }
};

double log_weight_tsv(const CylindricPlanePartition& lam, const ModelParams& params);
double weight_tsv(const CylindricPlanePartition& lam, const ModelParams& params);
double weight_schur(const CylindricPlanePartition& lam, const ModelParams& params);

double partition_function(const ModelParams& params);
double log_partition_function(const ModelParams& params);

struct Pmf {
    std::vector<std::pair<long, double>> support;  // sorted by value
    double tail_bound = 0.0;

    double prob(long v) const;
    double cdf(long v) const;
    double total() const;
};

// Visits every cylindric plane partition of half-width n with volume <= max_volume.
// Throws BudgetExceeded after `cap` objects.
void enumerate_cylpp(int n, int max_volume, const std::function<void(const CylindricPlanePartition&)>& visit,
                     std::int64_t cap = 100'000'000);
std::vector<CylindricPlanePartition> enumerate_cylpp(int n, int max_volume);
// Number of objects, without materialising them.
std::int64_t count_cylpp(int n, int max_volume, std::int64_t cap = 100'000'000);

// Law of the peak lambda^(0)_1 from all objects with volume <= max_volume.
Pmf exact_peak_pmf(const ModelParams& params, int max_volume);
// Enumerated mass over Z.
double enumerated_mass(const ModelParams& params, int max_volume);

// P(c) = t^c u^{c^2/2} / theta_3(t;u), u = q^N, truncated where u^{c^2/2} < tol.
Pmf shift_pmf(const ModelParams& params, double tol = 1e-17);

// P(chi <= m) = (u^{m+1}; u)_infinity.
double chi_cdf(long m, const ModelParams& params);
Pmf chi_pmf(const ModelParams& params, double tol = 1e-16);

Pmf convolve_pmf(const Pmf& a, const Pmf& b);

}  // namespace cylpeak
