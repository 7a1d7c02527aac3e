#pragma once

#include <algorithm>
#include <vector>

#include "hlsplit/matrix.hpp"

namespace hls {

/// Subspace of Q^n in canonical reduced column-echelon form: basis columns
/// are the transposed nonzero rows of rref(span^T), ordered by pivot row.
/// Two equal subspaces therefore have bit-identical bases.
class Subspace {
 public:
  Subspace() : ambient_(0) {}

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat(ambient, 0);
    return s;
  }

  static Subspace full(std::size_t ambient) { return span(Mat::identity(ambient)); }

  /// Canonical subspace spanned by the given columns.
  static Subspace span(const Mat& columns) {
    Subspace s;
    s.ambient_ = columns.rows();
    RrefResult r = rref(columns.transpose());
    s.basis_ = Mat(s.ambient_, r.rank);
    s.pivot_rows_ = r.pivots;
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < s.ambient_; ++j) s.basis_(j, i) = r.reduced(i, j);
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }

  bool contains(const Mat& v) const {
    if (v.rows() != ambient_) throw error("Subspace: ambient mismatch");
    SolveResult s = solve(basis_, v);
    return s.kind != SolveResult::Kind::none;
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw error("Subspace: ambient mismatch");
    if (other.dim() > dim()) return false;
    return contains(other.basis_);
  }

  /// Coordinates of columns v in this basis; throws if v is not inside.
  Mat coords_of(const Mat& v) const {
    SolveResult s = solve(basis_, v);
    if (s.kind == SolveResult::Kind::none) throw error("Subspace: vector not in subspace");
    return s.solution;  // basis columns are independent, so this is unique
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_;
  Mat basis_;
  std::vector<std::size_t> pivot_rows_;
};

inline Subspace kernel(const Mat& m) { return Subspace::span(kernel_raw(m)); }

inline Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw error("sum: ambient mismatch");
  return Subspace::span(Mat::hcat(u.basis(), w.basis()));
}

inline Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw error("intersect: ambient mismatch");
  // Solutions of U x = W y; the intersection is U applied to the x-part.
  Mat stacked = Mat::hcat(u.basis(), Rat(-1) * w.basis());
  Mat ker = kernel_raw(stacked);
  Mat xpart = ker.block(0, 0, u.dim(), ker.cols());
  return Subspace::span(u.basis() * xpart);
}

/// Annihilator {xi : xi^T u = 0} in dual coordinates.
inline Subspace annihilator(const Subspace& u) { return kernel(u.basis().transpose()); }

/// Deterministic complement of inner inside outer: greedily keeps the
/// outer-basis columns whose pivot rows are not pivot rows of inner.
inline Subspace complement_in(const Subspace& inner, const Subspace& outer) {
  if (inner.ambient_dim() != outer.ambient_dim()) throw error("complement_in: ambient mismatch");
  if (!outer.contains(inner)) throw error("complement_in: inner not contained in outer");
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < outer.dim(); ++c) {
    std::size_t pr = outer.pivot_rows()[c];
    bool used = std::find(inner.pivot_rows().begin(), inner.pivot_rows().end(), pr) !=
                inner.pivot_rows().end();
    if (!used) keep.push_back(c);
  }
  Mat cols(outer.ambient_dim(), keep.size());
  for (std::size_t t = 0; t < keep.size(); ++t)
    cols.set_block(0, t, outer.basis().col(keep[t]));
  Subspace c = Subspace::span(cols);
  if (c.dim() + inner.dim() != outer.dim())
    throw error("complement_in: pivot rule failed (non-canonical input?)");
  return c;
}

}  // namespace hls
