#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "hlsplit/rational.hpp"

namespace hls {

/// Dense matrix over Rat, row-major. Rows or columns may be zero (empty
/// blocks show up routinely as graded pieces of dimension zero).
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw error("Mat: ragged initializer");
      for (long v : r) a_.emplace_back(v);
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? Rat(1) : Rat(0))) return false;
    return true;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw error("Mat: product dimension mismatch");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rat& bkj = b(k, j);
          if (!bkj.is_zero()) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("Mat: sum dimension mismatch");
    Mat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("Mat: difference dimension mismatch");
    Mat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }

  friend Mat operator*(const Rat& s, Mat m) {
    for (auto& x : m.a_) x *= s;
    return m;
  }

  Mat pow(std::size_t k) const {
    if (rows_ != cols_) throw error("Mat: pow of non-square matrix");
    Mat r = identity(rows_);
    for (std::size_t t = 0; t < k; ++t) r = r * (*this);
    return r;
  }

  /// Kronecker product; index (i1,i2) maps to i1*b.rows()+i2.
  static Mat kron(const Mat& a, const Mat& b) {
    Mat c(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            if (!b(k, l).is_zero()) c(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return c;
  }

  static Mat hcat(const Mat& a, const Mat& b) {
    if (a.cols_ == 0 && a.rows_ == 0) return b;
    if (b.cols_ == 0 && b.rows_ == 0) return a;
    if (a.rows_ != b.rows_) throw error("Mat: hcat row mismatch");
    Mat c(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
    }
    return c;
  }

  static Mat vcat(const Mat& a, const Mat& b) {
    if (a.rows_ == 0 && a.cols_ == 0) return b;
    if (b.rows_ == 0 && b.cols_ == 0) return a;
    if (a.cols_ != b.cols_) throw error("Mat: vcat column mismatch");
    Mat c(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) c(a.rows_ + i, j) = b(i, j);
    return c;
  }

  Mat block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) throw error("Mat: block out of range");
    Mat b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
      for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
  }

  void set_block(std::size_t row0, std::size_t col0, const Mat& b) {
    if (row0 + b.rows_ > rows_ || col0 + b.cols_ > cols_) throw error("Mat: set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(row0 + i, col0 + j) = b(i, j);
  }

  Mat col(std::size_t j) const { return block(0, j, rows_, 1); }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) out += (j ? "," : "") + (*this)(i, j).str();
    }
    return out + "]";
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;  // pivot column indices, increasing
  std::size_t rank = 0;
};

/// Unique reduced row-echelon form, computed by exact Gauss-Jordan.
inline RrefResult rref(const Mat& m) {
  RrefResult res{m, {}, 0};
  Mat& a = res.reduced;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < a.cols() && pr < a.rows(); ++pc) {
    std::size_t sel = pr;
    while (sel < a.rows() && a(sel, pc).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(sel, j));
    Rat inv = a(pr, pc).inv();
    for (std::size_t j = pc; j < a.cols(); ++j) a(pr, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pr || a(i, pc).is_zero()) continue;
      Rat f = a(i, pc);
      for (std::size_t j = pc; j < a.cols(); ++j) a(i, j) -= f * a(pr, j);
    }
    res.pivots.push_back(pc);
    ++pr;
  }
  res.rank = res.pivots.size();
  return res;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

/// Columns spanning the kernel {x : m x = 0}. One column per free variable,
/// with the free variable set to 1 (deterministic, not yet canonicalized).
inline Mat kernel_raw(const Mat& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::size_t nfree = m.cols() - r.rank;
  Mat k(m.cols(), nfree);
  std::size_t col = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    k(j, col) = Rat(1);
    for (std::size_t i = 0; i < r.rank; ++i) k(r.pivots[i], col) = -r.reduced(i, j);
    ++col;
  }
  return k;
}

struct SolveResult {
  enum class Kind { unique, none, many };
  Kind kind = Kind::none;
  Mat solution;    // one exact solution when kind != none
  Mat kernel_cols; // spanning columns of Ker(a) when kind == many
};

/// Exact solve a x = b (b may have several columns; all share the outcome
/// classification).
inline SolveResult solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw error("solve: row mismatch");
  RrefResult r = rref(Mat::hcat(a, b));
  SolveResult out;
  // A pivot in the b-part of the augmented matrix means some column of b is
  // outside the image of a.
  for (std::size_t p : r.pivots)
    if (p >= a.cols()) return out;  // none
  Mat x(a.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, a.cols() + j);
  out.solution = x;
  if (r.rank == a.cols()) {
    out.kind = SolveResult::Kind::unique;
  } else {
    out.kind = SolveResult::Kind::many;
    out.kernel_cols = kernel_raw(a);
  }
  return out;
}

inline std::optional<Mat> try_inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  SolveResult s = solve(m, Mat::identity(m.rows()));
  if (s.kind != SolveResult::Kind::unique) return std::nullopt;
  return s.solution;
}

inline Mat inverse(const Mat& m) {
  auto inv = try_inverse(m);
  if (!inv) throw error("inverse: matrix is singular");
  return *inv;
}

}  // namespace hls
