#pragma once

#include <mutex>
#include <unordered_map>
#include <utility>

#include "bma/jet.hpp"

namespace bma::detail {

// memo for quadrature-computed map values; concurrent reads and idempotent
// concurrent writes are safe, recomputation is acceptable
class ValueCache {
public:
  template <class F>
  complex get_or_compute(complex z, const F& compute) const {
    std::pair<double, double> key{z.real(), z.imag()};
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    complex v = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    map_.emplace(key, v);
    return v;
  }

private:
  struct KeyHash {
    size_t operator()(const std::pair<double, double>& k) const {
      std::hash<double> h;
      return h(k.first) ^ (h(k.second) << 1);
    }
  };

  mutable std::mutex mutex_;
  mutable std::unordered_map<std::pair<double, double>, complex, KeyHash> map_;
};

}  // namespace bma::detail
