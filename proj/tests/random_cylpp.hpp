#pragma once

#include <random>
#include <vector>

#include "cylpeak/combinatorics.hpp"

namespace cylpeak::testing {

// Random valid object: grow from mu by horizontal strips, then shrink back.
inline CylindricPlanePartition random_cylpp(int n, int max_part, std::mt19937_64& gen) {
    for (;;) {
        CylindricPlanePartition c = CylindricPlanePartition::empty(n);
        auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
        auto trim = [](std::vector<int> v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
            return Partition(v);
        };
        std::vector<int> mu;
        for (int i = 0, top = max_part; i < 4 && top > 0; ++i) {
            top = pick(0, top);
            mu.push_back(top);
        }
        c.seq[0] = trim(mu);
        bool ok = true;
        for (int j = 1; j <= n && ok; ++j) {
            const Partition& prev = c.seq[std::size_t(j - 1)];
            std::vector<int> v(prev.length() + 1);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const int hi = i == 0 ? max_part : prev.part(i - 1);
                if (hi < prev.part(i)) ok = false;
                v[i] = ok ? pick(prev.part(i), hi) : 0;
            }
            c.seq[std::size_t(j)] = trim(v);
        }
        for (int j = n + 1; j < 2 * n && ok; ++j) {
            const Partition& prev = c.seq[std::size_t(j - 1)];
            const Partition& m = c.seq[0];
            std::vector<int> v(prev.length());
            for (std::size_t i = 0; i < v.size(); ++i) {
                const int lo = std::max(prev.part(i + 1), m.part(i));
                int hi = prev.part(i);
                if (j == 2 * n - 1 && i > 0) hi = std::min(hi, m.part(i - 1));
                if (hi < lo) {
                    ok = false;
                    break;
                }
                v[i] = pick(lo, hi);
            }
            c.seq[std::size_t(j)] = trim(v);
        }
        c.seq[std::size_t(2 * n)] = c.seq[0];
        if (ok && c.valid()) return c;
    }
}

}  // namespace cylpeak::testing
