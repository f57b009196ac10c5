#ifndef TORIC_SYMMETRY_FACTOR_SET_HPP
#define TORIC_SYMMETRY_FACTOR_SET_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

/// A subset of the factors [m], stored as a bitmask over 0-based factor
/// indices. Supports at most 64 factors.
class FactorSet
{
public:
  static constexpr int max_factors = 64;

  constexpr FactorSet() = default;

  static constexpr FactorSet from_bits(std::uint64_t bits)
  {
    FactorSet s;
    s.bits_ = bits;
    return s;
  }

  /// {0, ..., m-1}
  static constexpr FactorSet all(int m)
  {
    return from_bits(m >= 64 ? ~std::uint64_t{0}
                             : (std::uint64_t{1} << m) - 1);
  }

  /// From 0-based factor indices.
  static FactorSet of(std::initializer_list<int> factors)
  {
    return of(std::vector<int>(factors));
  }

  static FactorSet of(std::vector<int> const &factors)
  {
    FactorSet s;
    for (int j : factors)
      s.insert(j);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr bool contains(int j) const { return (bits_ >> j) & 1u; }

  void insert(int j)
  {
    if (j < 0 || j >= max_factors)
      throw std::out_of_range("factor index out of range");
    bits_ |= std::uint64_t{1} << j;
  }

  void erase(int j) { bits_ &= ~(std::uint64_t{1} << j); }

  constexpr bool subset_of(FactorSet other) const
  {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr bool proper_subset_of(FactorSet other) const
  {
    return subset_of(other) && bits_ != other.bits_;
  }

  /// Ascending 0-based members.
  std::vector<int> members() const
  {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  /// Smallest member, or -1 for the empty set.
  constexpr int front() const
  {
    return bits_ ? std::countr_zero(bits_) : -1;
  }

  /// Every subset of this set, including the empty set and the set itself.
  std::vector<FactorSet> subsets() const
  {
    std::vector<FactorSet> out;
    std::uint64_t sub = bits_;
    for (;;) {
      out.push_back(from_bits(sub));
      if (sub == 0)
        break;
      sub = (sub - 1) & bits_;
    }
    return out;
  }

  friend constexpr FactorSet operator|(FactorSet a, FactorSet b)
  {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr FactorSet operator&(FactorSet a, FactorSet b)
  {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr FactorSet operator-(FactorSet a, FactorSet b)
  {
    return from_bits(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(FactorSet a, FactorSet b) = default;

  /// Lexicographic order on the ascending member lists.
  /// "{1,3}" with 1-based factor labels.
  std::string str() const
  {
    std::string out = "{";
    bool first = true;
    for (int j : members()) {
      if (!first)
        out += ",";
      out += std::to_string(j + 1);
      first = false;
    }
    return out + "}";
  }

private:
  std::uint64_t bits_ = 0;
};

/// Lexicographic order on the ascending member lists.
inline bool lex_less(FactorSet a, FactorSet b)
{
  return a.members() < b.members();
}

} // namespace toric

#endif
