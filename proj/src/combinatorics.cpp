#include "cylpeak/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cylpeak/special_functions.hpp"

namespace cylpeak {

long Partition::size() const {
    long s = 0;
    for (int p : parts) s += p;
    return s;
}

bool Partition::valid() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) return false;
        if (i > 0 && parts[i] > parts[i - 1]) return false;
    }
    return true;
}

bool interlaces(const Partition& mu, const Partition& lambda) {
    const std::size_t n = std::max(mu.length(), lambda.length()) + 1;
    for (std::size_t i = 0; i < n; ++i)
        if (!(lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))) return false;
    return true;
}

CylindricPlanePartition CylindricPlanePartition::empty(int n) {
    CylindricPlanePartition c;
    c.n = n;
    c.seq.assign(std::size_t(2 * n + 1), Partition{});
    return c;
}

bool CylindricPlanePartition::valid() const {
    if (n < 1 || seq.size() != std::size_t(2 * n + 1)) return false;
    for (const auto& p : seq)
        if (!p.valid()) return false;
    if (!(seq.front() == seq.back())) return false;
    for (int i = -n; i < 0; ++i)
        if (!interlaces(at(i), at(i + 1))) return false;
    for (int i = 0; i < n; ++i)
        if (!interlaces(at(i + 1), at(i))) return false;
    return true;
}

long CylindricPlanePartition::volume() const {
    long v = 0;
    for (int i = -n; i < n; ++i) v += at(i).size();
    return v;
}

double log_weight_tsv(const CylindricPlanePartition& lam, const ModelParams& params) {
    const double la = std::log(params.a), lq = std::log(params.q);
    const long tr = lam.trace(), sm = lam.seam(), vol = lam.volume();
    return double(tr - sm) * la + double(vol - long(params.n) * sm) * lq;
}

double weight_tsv(const CylindricPlanePartition& lam, const ModelParams& params) {
    return std::exp(log_weight_tsv(lam, params));
}

double weight_schur(const CylindricPlanePartition& lam, const ModelParams& params) {
    const int n = lam.n;
    for (int i = -n; i < 0; ++i)
        if (!interlaces(lam.at(i), lam.at(i + 1))) return 0.0;
    for (int i = 1; i <= n; ++i)
        if (!interlaces(lam.at(i), lam.at(i - 1))) return 0.0;
    const double la = std::log(params.a), lq = std::log(params.q);
    auto logx = [&](int i) { return 0.5 * la + (i - 0.5) * lq; };
    double lw = double(n) * lq * double(lam.at(-n).size());
    for (int i = -n; i <= -1; ++i) lw += logx(-i) * double(lam.at(i + 1).size() - lam.at(i).size());
    for (int i = 1; i <= n; ++i) lw += logx(i) * double(lam.at(i - 1).size() - lam.at(i).size());
    return std::exp(lw);
}

double log_partition_function(const ModelParams& params) {
    params.validate();
    const double u = params.u();
    Tolerance tol;
    tol.abs_tol = 1e-17;
    double lz = -log_q_pochhammer_inf(u, u, tol).value;
    for (int i = 1; i <= params.n; ++i)
        for (int j = 1; j <= params.n; ++j)
            lz -= log_q_pochhammer_inf(params.a * std::pow(params.q, i + j - 1), u, tol).value;
    return lz;
}

double partition_function(const ModelParams& params) { return std::exp(log_partition_function(params)); }

double Pmf::prob(long v) const {
    auto it = std::lower_bound(support.begin(), support.end(), v,
                               [](const std::pair<long, double>& e, long x) { return e.first < x; });
    return (it != support.end() && it->first == v) ? it->second : 0.0;
}

double Pmf::cdf(long v) const {
    double acc = 0.0;
    for (const auto& [x, p] : support) {
        if (x > v) break;
        acc += p;
    }
    return acc;
}

double Pmf::total() const {
    double acc = 0.0;
    for (const auto& e : support) acc += e.second;
    return acc;
}

// ------------------------------------------------------------ enumeration

namespace {

// Depth-first walk over the 2N-level chain mu = L0 < L1 < ... < LN > ... > L(2N-1) > mu.
class ChainWalker {
public:
    ChainWalker(int n, int max_volume, std::int64_t cap)
        : n_(n), v_(max_volume), cap_(cap), width_(std::size_t(max_volume) + 2),
          parts_(std::size_t(2 * n), std::vector<int>(width_ + 1, 0)), len_(std::size_t(2 * n), 0),
          size_(std::size_t(2 * n), 0), lo_(width_ + 1), hi_(width_ + 1), lowsum_(width_ + 2) {
        if (n < 1) throw DomainError("enumerate_cylpp: n must be >= 1");
        if (max_volume < 0) throw DomainError("enumerate_cylpp: max_volume must be >= 0");
    }

    template <class Visit>
    void run(Visit&& visit) {
        std::vector<int> buf(width_ + 1, 0);
        mu_rec(0, v_ / (2 * n_), v_ / (2 * n_), buf, visit);
    }

    int levels() const { return 2 * n_; }
    long size(int j) const { return size_[std::size_t(j)]; }
    const std::vector<int>& parts(int j) const { return parts_[std::size_t(j)]; }
    int length(int j) const { return len_[std::size_t(j)]; }
    std::int64_t visited() const { return count_; }

private:
    template <class Visit>
    void mu_rec(std::size_t i, int maxpart, int budget, std::vector<int>& buf, Visit& visit) {
        // emit current prefix as mu
        std::fill(parts_[0].begin(), parts_[0].end(), 0);
        std::copy(buf.begin(), buf.begin() + long(i), parts_[0].begin());
        len_[0] = int(i);
        long s = 0;
        for (std::size_t k = 0; k < i; ++k) s += buf[k];
        size_[0] = s;
        level(1, s, visit);
        for (int p = std::min(maxpart, budget); p >= 1; --p) {
            buf[i] = p;
            mu_rec(i + 1, p, budget - p, buf, visit);
            buf[i] = 0;
            // restore level-0 state for siblings
        }
    }

    template <class Visit>
    void level(int j, long used, Visit& visit) {
        if (j == 2 * n_) {
            if (++count_ > cap_) throw BudgetExceeded("enumerate_cylpp: object cap exceeded");
            visit(*this);
            return;
        }
        const std::vector<int>& prev = parts_[std::size_t(j - 1)];
        const std::vector<int>& mu = parts_[0];
        const long mus = size_[0];
        long cap;
        std::size_t lmax;
        const bool grow = j <= n_;
        if (grow) {
            cap = (v_ - used - long(n_ - 1) * mus) / long(n_ - j + 1);
            lmax = std::size_t(len_[std::size_t(j - 1)]) + 1;
        } else {
            cap = v_ - used - long(2 * n_ - 1 - j) * mus;
            lmax = std::size_t(len_[std::size_t(j - 1)]);
        }
        if (cap < 0) return;
        lmax = std::min(lmax, width_);
        for (std::size_t i = 0; i < lmax; ++i) {
            if (grow) {
                lo_[i] = prev[i];
                hi_[i] = i == 0 ? int(cap) : prev[i - 1];
            } else {
                lo_[i] = std::max(prev[i + 1], mu[i]);
                hi_[i] = prev[i];
                if (j == 2 * n_ - 1 && i > 0) hi_[i] = std::min(hi_[i], mu[i - 1]);
            }
        }
        lowsum_[lmax] = 0;
        for (std::size_t i = lmax; i-- > 0;) lowsum_[i] = lowsum_[i + 1] + lo_[i];
        if (lowsum_[0] > cap) return;
        // lo_/hi_ are overwritten deeper in the recursion; keep a copy per level
        std::vector<int> lo(lo_.begin(), lo_.begin() + long(lmax)), hi(hi_.begin(), hi_.begin() + long(lmax));
        std::vector<long> ls(lowsum_.begin(), lowsum_.begin() + long(lmax) + 1);
        place(j, 0, lmax, cap, 0, lo, hi, ls, used, visit);
    }

    template <class Visit>
    void place(int j, std::size_t i, std::size_t lmax, long cap, long sum, const std::vector<int>& lo,
               const std::vector<int>& hi, const std::vector<long>& ls, long used, Visit& visit) {
        std::vector<int>& cur = parts_[std::size_t(j)];
        if (i == lmax) {
            for (std::size_t k = lmax; k < width_ + 1; ++k) cur[k] = 0;
            int l = 0;
            while (std::size_t(l) < lmax && cur[std::size_t(l)] > 0) ++l;
            len_[std::size_t(j)] = l;
            size_[std::size_t(j)] = sum;
            level(j + 1, used + sum, visit);
            return;
        }
        const long room = cap - sum - ls[i + 1];
        const int top = int(std::min<long>(hi[i], room));
        for (int v = lo[i]; v <= top; ++v) {
            cur[i] = v;
            place(j, i + 1, lmax, cap, sum + v, lo, hi, ls, used, visit);
        }
    }

    int n_, v_;
    std::int64_t cap_, count_ = 0;
    std::size_t width_;
    std::vector<std::vector<int>> parts_;
    std::vector<int> len_;
    std::vector<long> size_;
    std::vector<int> lo_, hi_;
    std::vector<long> lowsum_;
};

Partition to_partition(const std::vector<int>& p, int len) {
    return Partition(std::vector<int>(p.begin(), p.begin() + len));
}

}  // namespace

void enumerate_cylpp(int n, int max_volume, const std::function<void(const CylindricPlanePartition&)>& visit,
                     std::int64_t cap) {
    ChainWalker w(n, max_volume, cap);
    CylindricPlanePartition c;
    c.n = n;
    c.seq.resize(std::size_t(2 * n + 1));
    w.run([&](const ChainWalker& s) {
        for (int j = 0; j < 2 * n; ++j) c.seq[std::size_t(j)] = to_partition(s.parts(j), s.length(j));
        c.seq[std::size_t(2 * n)] = c.seq[0];
        visit(c);
    });
}

std::vector<CylindricPlanePartition> enumerate_cylpp(int n, int max_volume) {
    std::vector<CylindricPlanePartition> out;
    enumerate_cylpp(n, max_volume, [&](const CylindricPlanePartition& c) { out.push_back(c); });
    return out;
}

std::int64_t count_cylpp(int n, int max_volume, std::int64_t cap) {
    ChainWalker w(n, max_volume, cap);
    w.run([](const ChainWalker&) {});
    return w.visited();
}

namespace {

// Weights a^{tr - sm} q^{vol - N sm} summed by peak.
std::vector<double> peak_weights(const ModelParams& params, int max_volume) {
    params.validate();
    const int n = params.n;
    std::vector<double> apow(std::size_t(max_volume) + 1), qpow(std::size_t(max_volume) + 1);
    for (int k = 0; k <= max_volume; ++k) {
        apow[std::size_t(k)] = std::pow(params.a, k);
        qpow[std::size_t(k)] = std::pow(params.q, k);
    }
    std::vector<double> bins(std::size_t(max_volume) + 1, 0.0);
    ChainWalker w(n, max_volume, 100'000'000'000LL);
    w.run([&](const ChainWalker& s) {
        long vol = 0;
        for (int j = 0; j < 2 * n; ++j) vol += s.size(j);
        const long sm = s.size(0), tr = s.size(n);
        bins[std::size_t(s.parts(n)[0])] += apow[std::size_t(tr - sm)] * qpow[std::size_t(vol - n * sm)];
    });
    return bins;
}

}  // namespace

Pmf exact_peak_pmf(const ModelParams& params, int max_volume) {
    const std::vector<double> bins = peak_weights(params, max_volume);
    const double lz = log_partition_function(params);
    Pmf out;
    double mass = 0.0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        if (bins[k] == 0.0) continue;
        const double p = std::exp(std::log(bins[k]) - lz);
        out.support.emplace_back(long(k), p);
        mass += p;
    }
    out.tail_bound = std::max(0.0, 1.0 - mass);
    return out;
}

double enumerated_mass(const ModelParams& params, int max_volume) {
    const std::vector<double> bins = peak_weights(params, max_volume);
    double s = 0.0;
    for (double b : bins) s += b;
    return s / partition_function(params);
}

// ------------------------------------------------------- auxiliary laws

Pmf shift_pmf(const ModelParams& params, double tol) {
    params.validate();
    const double u = params.u(), t = params.t_shift;
    const double th = jacobi_theta3(t, u);
    Pmf out;
    const double lu = std::log(u), lt = std::log(t);
    long cmax = 0;
    while (0.5 * double(cmax) * double(cmax) * lu + std::abs(lt) * double(cmax) > std::log(tol) - 40.0 &&
           0.5 * double(cmax) * double(cmax) * lu >= std::log(tol))
        ++cmax;
    double mass = 0.0;
    for (long c = -cmax; c <= cmax; ++c) {
        const double p = std::exp(double(c) * lt + 0.5 * double(c) * double(c) * lu) / th;
        out.support.emplace_back(c, p);
        mass += p;
    }
    out.tail_bound = std::max(0.0, 1.0 - mass);
    return out;
}

double chi_cdf(long m, const ModelParams& params) {
    params.validate();
    if (m < 0) return 0.0;
    const double u = params.u();
    Tolerance tol;
    tol.abs_tol = 1e-17;
    return std::exp(log_q_pochhammer_inf(std::pow(u, double(m + 1)), u, tol).value);
}

Pmf chi_pmf(const ModelParams& params, double tol) {
    Pmf out;
    double prev = 0.0;
    for (long m = 0;; ++m) {
        const double c = chi_cdf(m, params);
        out.support.emplace_back(m, c - prev);
        prev = c;
        if (1.0 - c < tol || m > 100'000) break;
    }
    out.tail_bound = std::max(0.0, 1.0 - prev);
    return out;
}

Pmf convolve_pmf(const Pmf& a, const Pmf& b) {
    std::map<long, double> acc;
    for (const auto& [x, p] : a.support)
        for (const auto& [y, r] : b.support) acc[x + y] += p * r;
    Pmf out;
    out.support.assign(acc.begin(), acc.end());
    out.tail_bound = a.tail_bound + b.tail_bound;
    return out;
}

}  // namespace cylpeak
