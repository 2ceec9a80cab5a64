#pragma once

#include <cstdint>
#include <random>
#include <vector>

// Small deterministic generators for property tests.
namespace gen {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(0x5eed1234u);
  return r;
}

inline int int_in(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }
inline double real_in(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline bool coin() { return int_in(0, 1) == 1; }

template <class T>
const T& pick(const std::vector<T>& v) {
  return v[static_cast<std::size_t>(int_in(0, static_cast<int>(v.size()) - 1))];
}

// Runs `body` for `n` generated cases.
template <class F>
void forall(int n, F&& body) {
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace gen
