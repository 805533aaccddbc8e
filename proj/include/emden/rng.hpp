#ifndef EMDEN_RNG_HPP
#define EMDEN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace emden {

// splitmix64: the usual seeding/stream-splitting mixer. Used both as a
// sequential generator and, keyed by (seed, index...), as a counter RNG so
// ensemble members are independent and order-free (safe to draw in parallel).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  std::uint64_t z = splitmix64(s);
  return splitmix64(s) ^ z;
}

// uniform in (0, 1]; never returns 0 so log() below is safe
inline double u64_to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 1.0) * 0x1p-53;
}

// Sequential stream of standard normals (Box-Muller, both branches kept).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : state_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = u64_to_unit(splitmix64(state_));
    double u2 = u64_to_unit(splitmix64(state_));
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// One pair of standard normals addressed by a counter; O(1) random access.
inline void counter_normal_pair(std::uint64_t key, std::uint64_t counter, double& z0, double& z1) {
  std::uint64_t s = mix_key(key, counter);
  double u1 = u64_to_unit(splitmix64(s));
  double u2 = u64_to_unit(splitmix64(s));
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * 3.14159265358979323846 * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

}  // namespace emden

#endif
