#ifndef TORIC_SYMMETRY_EXACTLA_HPP
#define TORIC_SYMMETRY_EXACTLA_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "factor_set.hpp"
#include "model.hpp"
#include "permutation.hpp"

namespace toric {

/// Exact rational table over the cells of a CellSpace, indexed by cell_index.
class CellTable
{
public:
  CellTable() = default;

  CellTable(CellSpace space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values))
  {
    if (values_.size() != space_.p())
      throw std::invalid_argument("table length does not match cell count");
  }

  static CellTable zeros(CellSpace space)
  {
    std::size_t p = space.p();
    return CellTable(std::move(space), std::vector<Rational>(p));
  }

  static CellTable from_integers(CellSpace space,
                                 std::vector<BigInt> const &values)
  {
    std::vector<Rational> q(values.begin(), values.end());
    return CellTable(std::move(space), std::move(q));
  }

  CellSpace const &space() const { return space_; }
  std::vector<Rational> const &values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Rational const &operator[](std::size_t k) const { return values_[k]; }
  Rational &operator[](std::size_t k) { return values_[k]; }

  bool is_zero() const
  {
    return std::all_of(values_.begin(), values_.end(),
                       [](Rational const &v) { return v == 0; });
  }

  CellTable &operator+=(CellTable const &other)
  {
    check_same(other);
    for (std::size_t k = 0; k < values_.size(); ++k)
      values_[k] += other.values_[k];
    return *this;
  }

  CellTable &operator-=(CellTable const &other)
  {
    check_same(other);
    for (std::size_t k = 0; k < values_.size(); ++k)
      values_[k] -= other.values_[k];
    return *this;
  }

  CellTable &operator*=(Rational const &c)
  {
    for (auto &v : values_)
      v *= c;
    return *this;
  }

  friend CellTable operator+(CellTable a, CellTable const &b) { return a += b; }
  friend CellTable operator-(CellTable a, CellTable const &b) { return a -= b; }
  friend CellTable operator*(Rational const &c, CellTable a) { return a *= c; }

  friend bool operator==(CellTable const &a, CellTable const &b)
  {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

  /// Standard inner product.
  friend Rational dot(CellTable const &a, CellTable const &b)
  {
    a.check_same(b);
    Rational out = 0;
    for (std::size_t k = 0; k < a.values_.size(); ++k)
      out += a.values_[k] * b.values_[k];
    return out;
  }

private:
  void check_same(CellTable const &other) const
  {
    if (!(space_ == other.space_))
      throw std::invalid_argument("tables over different cell sets");
  }

  CellSpace space_;
  std::vector<Rational> values_;
};

/// A function on the marginal cells I_D, in mixed-radix order.
struct MarginalTable
{
  FactorSet support;
  std::vector<Rational> values;
  friend bool operator==(MarginalTable const &, MarginalTable const &) = default;
};

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix
{
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
  {}

  static IntMatrix identity(std::size_t n)
  {
    IntMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k)
      out(k, k) = 1;
    return out;
  }

  static IntMatrix from_rows(std::vector<std::vector<BigInt>> const &rows)
  {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix out(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw std::invalid_argument("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c)
        out(r, c) = rows[r][c];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<BigInt> const &entries() const { return entries_; }

  BigInt &operator()(std::size_t r, std::size_t c)
  {
    return entries_[r * cols_ + c];
  }
  BigInt const &operator()(std::size_t r, std::size_t c) const
  {
    return entries_[r * cols_ + c];
  }

  std::vector<BigInt> row(std::size_t r) const
  {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  std::vector<std::vector<BigInt>> row_list() const
  {
    std::vector<std::vector<BigInt>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      out.push_back(row(r));
    return out;
  }

  std::vector<BigInt> multiply(std::vector<BigInt> const &v) const
  {
    if (v.size() != cols_)
      throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<BigInt> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (entries_[r * cols_ + c] != 0 && v[c] != 0)
          out[r] += entries_[r * cols_ + c] * v[c];
      }
    }
    return out;
  }

  friend bool operator==(IntMatrix const &, IntMatrix const &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

namespace detail {

using IntVector = std::vector<BigInt>;

/// Divides a row by the gcd of its entries and makes its leading nonzero
/// entry positive.
inline void normalize_content(IntVector &row)
{
  BigInt g = 0;
  for (auto const &v : row) {
    if (v != 0) {
      g = gcd(g, v);
      if (g == 1)
        break;
    }
  }
  if (g == 0)
    return;
  auto lead = std::find_if(row.begin(), row.end(),
                           [](BigInt const &v) { return v != 0; });
  if (*lead < 0)
    g = -g;
  if (g != 1) {
    for (auto &v : row) {
      if (v != 0)
        v /= g;
    }
  }
}

/// target <- (d/g) * target - (a/g) * pivot_row where a = target[col],
/// d = pivot_row[col], g = gcd(a, d). Clears target[col].
inline void eliminate(IntVector &target, IntVector const &pivot_row,
                      std::size_t col)
{
  BigInt const &d = pivot_row[col];
  BigInt g = gcd(target[col], d);
  BigInt scale = d / g;
  BigInt factor = target[col] / g;
  if (scale != 1) {
    for (auto &v : target) {
      if (v != 0)
        v *= scale;
    }
  }
  for (std::size_t c = 0; c < target.size(); ++c) {
    if (pivot_row[c] != 0)
      target[c] -= factor * pivot_row[c];
  }
  normalize_content(target);
}

/// Row echelon form over the integers: pivot columns strictly increasing,
/// each row zero before its pivot. With `reduced`, entries above pivots are
/// cleared as well.
struct Echelon
{
  std::size_t cols = 0;
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return rows.size(); }

  /// Reduces v against the rows; v ends up zero iff it lies in their span.
  void reduce(IntVector &v) const
  {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (v[pivots[r]] != 0)
        eliminate(v, rows[r], pivots[r]);
    }
  }
};

/// Fraction-free elimination: every row operation is an integer combination
/// followed by division by the row content, so entries stay integral.
inline Echelon echelonize(std::vector<IntVector> rows, std::size_t cols,
                          bool reduced)
{
  for (auto const &r : rows) {
    if (r.size() != cols)
      throw std::invalid_argument("ragged rows in elimination");
  }
  std::vector<IntVector> work;
  work.reserve(rows.size());
  for (auto &r : rows) {
    normalize_content(r);
    if (std::any_of(r.begin(), r.end(), [](BigInt const &v) { return v != 0; }))
      work.push_back(std::move(r));
  }

  Echelon out;
  out.cols = cols;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < work.size(); ++c) {
    std::size_t best = work.size();
    for (std::size_t r = top; r < work.size(); ++r) {
      if (work[r][c] != 0 &&
          (best == work.size() || abs(work[r][c]) < abs(work[best][c])))
        best = r;
    }
    if (best == work.size())
      continue;
    std::swap(work[top], work[best]);
    for (std::size_t r = top + 1; r < work.size(); ++r) {
      if (work[r][c] != 0)
        eliminate(work[r], work[top], c);
    }
    if (reduced) {
      for (std::size_t r = 0; r < top; ++r) {
        if (work[r][c] != 0)
          eliminate(work[r], work[top], c);
      }
    }
    out.pivots.push_back(c);
    ++top;
  }
  work.resize(top);
  out.rows = std::move(work);
  return out;
}

/// Scales a rational vector to an integer vector with the same span.
inline IntVector clear_denominators(std::vector<Rational> const &values)
{
  BigInt l = 1;
  for (auto const &q : values) {
    BigInt d = denominator(q);
    if (d != 1)
      l = l / gcd(l, d) * d;
  }
  IntVector out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    out[k] = numerator(values[k]) * (l / denominator(values[k]));
  return out;
}

} // namespace detail

/// A basis of a subspace of Q^n with integer vectors, plus an echelon form
/// for membership queries.
class Basis
{
public:
  Basis() = default;

  /// A basis of the span of arbitrary (possibly dependent) generators.
  static Basis span(std::size_t ambient,
                    std::vector<std::vector<BigInt>> generators)
  {
    Basis out;
    out.ambient_ = ambient;
    out.echelon_ = detail::echelonize(std::move(generators), ambient, false);
    out.vectors_ = out.echelon_.rows;
    return out;
  }

  /// Keeps the given vectors, which must be linearly independent.
  static Basis from_independent(std::size_t ambient,
                                std::vector<std::vector<BigInt>> vectors)
  {
    Basis out;
    out.ambient_ = ambient;
    out.echelon_ = detail::echelonize(vectors, ambient, false);
    if (out.echelon_.rank() != vectors.size())
      throw std::invalid_argument("basis vectors are linearly dependent");
    out.vectors_ = std::move(vectors);
    return out;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  std::vector<std::vector<BigInt>> const &vectors() const { return vectors_; }
  detail::Echelon const &echelon() const { return echelon_; }

  CellTable table(CellSpace const &space, std::size_t k) const
  {
    return CellTable::from_integers(space, vectors_.at(k));
  }

  bool contains(std::vector<BigInt> v) const
  {
    if (v.size() != ambient_)
      throw std::invalid_argument("vector dimension does not match basis");
    echelon_.reduce(v);
    return std::all_of(v.begin(), v.end(),
                       [](BigInt const &x) { return x == 0; });
  }

private:
  std::size_t ambient_ = 0;
  std::vector<std::vector<BigInt>> vectors_;
  detail::Echelon echelon_;
};

/// The nu x p 0/1 configuration matrix: the column of cell i stacks the unit
/// vectors of its facet marginal cells, row blocks in facet order.
inline IntMatrix configuration_matrix(HierarchicalModel const &model)
{
  IntMatrix a(model.nu(), model.p());
  std::size_t offset = 0;
  for (FactorSet d : model.facets()) {
    auto idx = marginal_indices(model, d);
    for (std::size_t k = 0; k < model.p(); ++k)
      a(offset + idx[k], k) = 1;
    offset += model.size_of(d);
  }
  return a;
}

/// x^+(i_D) = sum of x(j) over cells with j_D = i_D.
inline MarginalTable marginal(CellTable const &x, FactorSet d)
{
  auto const &space = x.space();
  MarginalTable out{d, std::vector<Rational>(space.size_of(d))};
  auto idx = marginal_indices(space, d);
  for (std::size_t k = 0; k < x.size(); ++k)
    out.values[idx[k]] += x[k];
  return out;
}

/// Extends theta from I_D to I by theta(i) = theta(i_D).
inline CellTable lift(CellSpace const &space, MarginalTable const &theta)
{
  if (theta.values.size() != space.size_of(theta.support))
    throw std::invalid_argument("marginal table has wrong length");
  auto idx = marginal_indices(space, theta.support);
  std::vector<Rational> values(space.p());
  for (std::size_t k = 0; k < space.p(); ++k)
    values[k] = theta.values[idx[k]];
  return CellTable(space, std::move(values));
}

/// Reads x as a function of i_E. Throws if x depends on other coordinates.
inline MarginalTable as_marginal(CellTable const &x, FactorSet e)
{
  auto const &space = x.space();
  auto idx = marginal_indices(space, e);
  MarginalTable out{e, std::vector<Rational>(space.size_of(e))};
  std::vector<bool> seen(out.values.size(), false);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!seen[idx[k]]) {
      out.values[idx[k]] = x[k];
      seen[idx[k]] = true;
    } else if (out.values[idx[k]] != x[k]) {
      throw std::invalid_argument("table does not depend only on " + e.str());
    }
  }
  return out;
}

inline std::size_t rank(IntMatrix const &a)
{
  return detail::echelonize(a.row_list(), a.cols(), false).rank();
}

/// Integer basis of {y : Ay = 0}, one vector per free column of the reduced
/// echelon form.
inline Basis kernel_basis(IntMatrix const &a)
{
  auto ech = detail::echelonize(a.row_list(), a.cols(), true);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivots)
    is_pivot[c] = true;

  std::vector<std::vector<BigInt>> vectors;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f])
      continue;
    BigInt l = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
      if (ech.rows[r][f] != 0) {
        BigInt const &d = ech.rows[r][ech.pivots[r]];
        l = l / gcd(l, d) * d;
      }
    }
    std::vector<BigInt> v(a.cols());
    v[f] = l;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
      if (ech.rows[r][f] != 0)
        v[ech.pivots[r]] = -ech.rows[r][f] * (l / ech.rows[r][ech.pivots[r]]);
    }
    detail::normalize_content(v);
    vectors.push_back(std::move(v));
  }

  // Vectors from distinct free columns are independent by construction.
  Basis out = Basis::from_independent(a.cols(), std::move(vectors));
  return out;
}

/// Basis of the row space r(A).
inline Basis row_space_basis(IntMatrix const &a)
{
  return Basis::span(a.cols(), a.row_list());
}

inline bool member(Basis const &basis, CellTable const &x)
{
  if (x.size() != basis.ambient())
    throw std::invalid_argument("table dimension does not match basis");
  return basis.contains(detail::clear_denominators(x.values()));
}

/// dim(U + W), from the rank of the stacked generators.
inline std::size_t sum_dimension(Basis const &u, Basis const &w)
{
  if (u.ambient() != w.ambient())
    throw std::invalid_argument("bases of different ambient spaces");
  auto rows = u.vectors();
  rows.insert(rows.end(), w.vectors().begin(), w.vectors().end());
  return detail::echelonize(std::move(rows), u.ambient(), false).rank();
}

/// dim(U ∩ W) = dim U + dim W - dim(U + W).
inline std::size_t intersection_dimension(Basis const &u, Basis const &w)
{
  return u.dim() + w.dim() - sum_dimension(u, w);
}

/// d_E x, where (d_j x)(i) = x(i) - x(i with i_j replaced by level 1).
inline CellTable partial_difference(CellTable x, FactorSet e)
{
  CellSpace const space = x.space();
  for (int j : e.members()) {
    std::vector<Rational> next(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::size_t base =
          k - static_cast<std::size_t>(space.digit(k, j)) * space.stride(j);
      next[k] = x[k] - x[base];
    }
    x = CellTable(space, std::move(next));
  }
  return x;
}

/// Orthogonal projection onto the incremental subspace N_E:
///   (pi x)(i) = sum_{F ⊆ E} (-1)^{|E \ F|} x^+(i_F) / |I_{F^C}|.
inline CellTable project_increment(CellTable const &x, FactorSet e)
{
  auto const &space = x.space();
  CellTable out = CellTable::zeros(space);
  for (FactorSet f : e.subsets()) {
    MarginalTable mf = marginal(x, f);
    Rational scale(1, static_cast<long long>(
                          space.size_of(space.all_factors() - f)));
    if ((e - f).size() % 2 == 1)
      scale = -scale;
    auto idx = marginal_indices(space, f);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] += scale * mf.values[idx[k]];
  }
  return out;
}

/// Orthogonal projection onto L_E: the E-marginal mean lifted back to I.
inline CellTable project_marginal_space(CellTable const &x, FactorSet e)
{
  auto const &space = x.space();
  MarginalTable me = marginal(x, e);
  Rational scale(1, static_cast<long long>(
                        space.size_of(space.all_factors() - e)));
  for (auto &v : me.values)
    v *= scale;
  return lift(space, me);
}

/// (g x)(i) = x(g^{-1}(i)).
inline CellTable apply_permutation(CellPermutation const &g,
                                   CellTable const &x)
{
  if (g.size() != x.size())
    throw std::invalid_argument("permutation size does not match table");
  std::vector<Rational> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    out[g[k]] = x[k];
  return CellTable(x.space(), std::move(out));
}

/// Precomputed data for testing g(ker A) = ker A over many permutations.
/// Checks A (g v) = 0 for each kernel basis vector v; since g is invertible
/// and dimensions are finite, that suffices.
class KernelStabilizerCheck
{
public:
  KernelStabilizerCheck(IntMatrix const &a, Basis const &kernel)
    : rows_(a.rows()), cols_(a.cols())
  {
    if (kernel.ambient() != a.cols())
      throw std::invalid_argument("kernel basis does not match matrix");
    columns_.resize(cols_);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a(r, c) != 0)
          columns_[c].push_back({r, a(r, c)});
      }
    }
    for (auto const &v : kernel.vectors()) {
      std::vector<std::pair<std::size_t, BigInt>> nz;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] != 0)
          nz.push_back({c, v[c]});
      }
      kernel_.push_back(std::move(nz));
    }
  }

  bool operator()(CellPermutation const &g) const
  {
    if (g.size() != cols_)
      throw std::invalid_argument("permutation size does not match matrix");
    std::vector<BigInt> acc(rows_);
    for (auto const &v : kernel_) {
      // (g v)[g[c]] = v[c]
      for (auto const &[c, value] : v) {
        for (auto const &[r, a] : columns_[g[c]])
          acc[r] += a * value;
      }
      bool zero = true;
      for (auto &x : acc) {
        if (x != 0) {
          zero = false;
          x = 0;
        }
      }
      if (!zero)
        return false;
    }
    return true;
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> columns_;
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> kernel_;
};

/// True iff g maps ker A onto itself; kb must be a basis of ker A.
inline bool stabilizes_kernel(IntMatrix const &a, Basis const &kb,
                              CellPermutation const &g)
{
  return KernelStabilizerCheck(a, kb)(g);
}

} // namespace toric

#endif
