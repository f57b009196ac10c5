#ifndef TORIC_SYMMETRY_PERMUTATION_HPP
#define TORIC_SYMMETRY_PERMUTATION_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace toric {

/// A bijection of [0, n) in one-line notation: image()[k] is the image of k.
///
/// Used both for permutations of cells (CellPermutation, n = p) and for
/// permutations of marginal cells inside a wreath component.
class Permutation
{
public:
  Permutation() = default;

  explicit Permutation(std::vector<std::uint32_t> image)
    : image_(std::move(image))
  {
    std::vector<bool> hit(image_.size(), false);
    for (auto v : image_) {
      if (v >= image_.size() || hit[v])
        throw std::invalid_argument("not a permutation");
      hit[v] = true;
    }
  }

  static Permutation identity(std::size_t n)
  {
    std::vector<std::uint32_t> image(n);
    for (std::size_t k = 0; k < n; ++k)
      image[k] = static_cast<std::uint32_t>(k);
    return Permutation(std::move(image), unchecked{});
  }

  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b)
  {
    if (a >= n || b >= n)
      throw std::out_of_range("transposition point out of range");
    auto out = identity(n);
    std::swap(out.image_[a], out.image_[b]);
    return out;
  }

  std::size_t size() const { return image_.size(); }
  std::vector<std::uint32_t> const &image() const { return image_; }
  std::size_t operator()(std::size_t k) const { return image_[k]; }
  std::size_t operator[](std::size_t k) const { return image_[k]; }

  bool is_identity() const
  {
    for (std::size_t k = 0; k < image_.size(); ++k) {
      if (image_[k] != k)
        return false;
    }
    return true;
  }

  Permutation inverse() const
  {
    std::vector<std::uint32_t> inv(image_.size());
    for (std::size_t k = 0; k < image_.size(); ++k)
      inv[image_[k]] = static_cast<std::uint32_t>(k);
    return Permutation(std::move(inv), unchecked{});
  }

  /// (a * b)(k) = a(b(k)).
  friend Permutation operator*(Permutation const &a, Permutation const &b)
  {
    if (a.size() != b.size())
      throw std::invalid_argument("permutation size mismatch");
    std::vector<std::uint32_t> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      out[k] = a.image_[b.image_[k]];
    return Permutation(std::move(out), unchecked{});
  }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

private:
  struct unchecked {};
  Permutation(std::vector<std::uint32_t> image, unchecked)
    : image_(std::move(image))
  {}

  std::vector<std::uint32_t> image_;
};

/// A permutation of the cells, indexed by cell_index.
using CellPermutation = Permutation;

/// A permutation of the marginal cells I_rho of one pseudofactor.
using LevelPermutation = Permutation;

} // namespace toric

#endif
