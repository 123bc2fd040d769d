#pragma once

#include <complex>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "maass/weight.hpp"

namespace maass::kloosterman {

using cplx = std::complex<double>;
using std::int64_t;

struct four_not_invertible : std::domain_error {
    using std::domain_error::domain_error;
};

// K_k(m,n,c) depends on the weight only through "integral or not" and, for
// half-integral k, the parity of lambda (eps_v^{2k} = eps_v^{2 lambda + 1}).
struct weight_class {
    bool half = false;
    int lambda_parity = 0;

    static weight_class of(weight k) {
        if (!k.is_half()) return {false, 0};
        int lp = k.lambda() % 2;
        if (lp < 0) lp += 2;
        return {true, lp};
    }
    bool operator==(const weight_class&) const = default;
};

struct key {
    weight_class wc;
    int64_t m = 0;  // reduced mod modulus
    int64_t n = 0;  // reduced mod modulus
    int64_t modulus = 1;
    bool operator==(const key&) const = default;
};

struct key_hash {
    size_t operator()(const key& k) const {
        size_t h = std::hash<int64_t>{}(k.modulus);
        auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(std::hash<int64_t>{}(k.m));
        mix(std::hash<int64_t>{}(k.n));
        mix(k.wc.half ? 0x51u : 0x13u);
        mix(static_cast<size_t>(k.wc.lambda_parity));
        return h;
    }
};

// Concurrent read / exclusive insert map of evaluated sums.  No eviction;
// bounded by run scope.
class cache {
  public:
    bool lookup(const key& k, cplx& out) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(k);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void insert(const key& k, cplx v) {
        std::unique_lock lock(mutex_);
        map_.emplace(k, v);
    }
    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }
    size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<key, cplx, key_hash> map_;
};

cache& default_cache();

// e(j/M) for j = 0..M-1, appended into `out` (resized).  Built the same way
// everywhere so cached and uncached evaluations agree bit for bit.
void unit_roots(int64_t modulus, std::vector<cplx>& out);

// K_k(m, n_j, modulus) for every j, one pass over the primitive residues.
// Half-integral weights require 4 | modulus.
std::vector<cplx> kloosterman_row(weight_class wc, int64_t m, std::span<const int64_t> ns,
                                  int64_t modulus);

// Single sum through the cache.
cplx kloosterman_sum(weight_class wc, int64_t m, int64_t n, int64_t modulus,
                     cache& c = default_cache());
cplx kloosterman_sum(weight k, int64_t m, int64_t n, int64_t modulus,
                     cache& c = default_cache());

// Twisted character sum H(m/4, n) at modulus N'c (c odd):
//   (4|-N'c) (-4|N'c)^{-k} sum_{delta (N'c)^*} (delta|N'c) e((n delta + 4^{-1} m delta^{-1})/N'c)
// m enters through 4^{-1} m mod N'c.  Throws four_not_invertible when 4 has
// no inverse mod N'c.
cplx h_sum(int64_t m, int64_t n, int64_t nprime, int64_t c, weight k);

}  // namespace maass::kloosterman
