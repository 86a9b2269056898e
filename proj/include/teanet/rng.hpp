#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace teanet {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// One named stream of a root seed. All randomness in the toolkit flows from
// (root seed, stream name, index) so components reseed independently and
// reports stay byte-identical for a fixed seed. Uniform/normal/shuffle are
// spelled out rather than taken from <random> distributions, whose output is
// implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::string_view name, std::uint64_t index = 0)
      : engine_(detail::splitmix64(root_seed ^ detail::fnv1a64(name)) ^
                detail::splitmix64(index + 0x51ed2701ULL)) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the sine mate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Inclusive bounds.
  std::uint64_t uniform_index(std::uint64_t bound_inclusive) {
    return next_u64() % (bound_inclusive + 1);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Fold a fold/epoch style index into a root seed deterministically.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return detail::splitmix64(detail::splitmix64(root) ^ (index + 1));
}

}  // namespace teanet
