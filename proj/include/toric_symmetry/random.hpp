#ifndef TORIC_SYMMETRY_RANDOM_HPP
#define TORIC_SYMMETRY_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace toric {

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of child stream `index` of a parent seed. Streams for different
/// indices (or parents) are statistically independent.
constexpr std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index)
{
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Reproducible generator: std::mt19937_64 is fully specified by the
/// standard, and the bounded draws below avoid the implementation-defined
/// standard distributions, so output is identical across platforms.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound)
  {
    if (bound <= 1)
      return 0;
    std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T> &v)
  {
    for (std::size_t k = v.size(); k > 1; --k)
      std::swap(v[k - 1], v[below(k)]);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace toric

#endif
