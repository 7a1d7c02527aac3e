#pragma once

#include <string>
#include <vector>

#include "hlsplit/matrix.hpp"

namespace hls {

/// Finite graded supercommutative ring given by structure constants on a
/// homogeneous basis (Koszul signs pre-baked into the constants). Unit law,
/// gradedness, supercommutativity and associativity are checked on
/// construction.
class GradedRing {
 public:
  GradedRing(std::vector<unsigned> degrees, std::vector<std::string> labels,
             std::vector<std::vector<std::vector<Rat>>> mult, std::size_t unit_index)
      : deg_(std::move(degrees)), labels_(std::move(labels)), mult_(std::move(mult)),
        unit_(unit_index) {
    std::size_t n = deg_.size();
    if (labels_.size() != n || mult_.size() != n) throw error("GradedRing: inconsistent sizes");
    top_ = 0;
    for (unsigned d : deg_) top_ = std::max(top_, d);
    for (std::size_t a = 0; a < n; ++a) {
      if (mult_[a].size() != n) throw error("GradedRing: inconsistent table");
      for (std::size_t b = 0; b < n; ++b)
        if (mult_[a][b].size() != n) throw error("GradedRing: inconsistent table row");
    }
    check_unit();
    check_graded();
    check_supercommutative();
    check_associative();
  }

  std::size_t dim() const { return deg_.size(); }
  unsigned top_degree() const { return top_; }
  unsigned degree(std::size_t i) const { return deg_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t unit_index() const { return unit_; }

  std::size_t find_label(const std::string& s) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == s) return i;
    throw error("GradedRing: no basis element labelled '" + s + "'");
  }

  const std::vector<Rat>& mult(std::size_t a, std::size_t b) const { return mult_[a][b]; }

  /// Product of coefficient vectors.
  std::vector<Rat> mul(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> out(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < dim(); ++b) {
        if (y[b].is_zero()) continue;
        Rat c = x[a] * y[b];
        for (std::size_t t = 0; t < dim(); ++t)
          if (!mult_[a][b][t].is_zero()) out[t] += c * mult_[a][b][t];
      }
    }
    return out;
  }

  std::size_t dim_in_degree(unsigned d) const {
    std::size_t out = 0;
    for (unsigned x : deg_)
      if (x == d) ++out;
    return out;
  }

  /// Truncated polynomial ring Q[h]/(h^{n+1}), deg h = 2: the cohomology of
  /// the projective space P^n.
  static GradedRing proj_space(unsigned n) {
    std::size_t dim = n + 1;
    std::vector<unsigned> deg(dim);
    std::vector<std::string> lab(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      deg[i] = static_cast<unsigned>(2 * i);
      lab[i] = i == 0 ? "1" : (i == 1 ? "h" : "h^" + std::to_string(i));
    }
    std::vector<std::vector<std::vector<Rat>>> mult(
        dim, std::vector<std::vector<Rat>>(dim, std::vector<Rat>(dim)));
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        if (a + b < dim) mult[a][b][a + b] = Rat(1);
    return GradedRing(std::move(deg), std::move(lab), std::move(mult), 0);
  }

  /// The cohomology ring of an elliptic curve: basis 1, alpha, beta (degree
  /// one), omega (degree two) with alpha beta = omega = -beta alpha.
  static GradedRing elliptic_curve() {
    std::vector<unsigned> deg{0, 1, 1, 2};
    std::vector<std::string> lab{"1", "alpha", "beta", "omega"};
    std::vector<std::vector<std::vector<Rat>>> mult(
        4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4)));
    for (std::size_t a = 0; a < 4; ++a) {
      mult[0][a][a] = Rat(1);
      if (a != 0) mult[a][0][a] = Rat(1);
    }
    mult[1][2][3] = Rat(1);   // alpha beta = omega
    mult[2][1][3] = Rat(-1);  // beta alpha = -omega
    return GradedRing(std::move(deg), std::move(lab), std::move(mult), 0);
  }

  /// Tensor product ring with the Koszul sign
  /// (y1 (x) z1)(y2 (x) z2) = (-1)^{deg z1 deg y2} (y1 y2 (x) z1 z2);
  /// basis index (a,b) -> a*z.dim()+b, labelled "ya*zb".
  static GradedRing tensor(const GradedRing& y, const GradedRing& z) {
    std::size_t ny = y.dim(), nz = z.dim(), n = ny * nz;
    std::vector<unsigned> deg(n);
    std::vector<std::string> lab(n);
    for (std::size_t a = 0; a < ny; ++a)
      for (std::size_t b = 0; b < nz; ++b) {
        deg[a * nz + b] = y.degree(a) + z.degree(b);
        lab[a * nz + b] = y.label(a) + "*" + z.label(b);
      }
    std::vector<std::vector<std::vector<Rat>>> mult(
        n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
    for (std::size_t a1 = 0; a1 < ny; ++a1)
      for (std::size_t b1 = 0; b1 < nz; ++b1)
        for (std::size_t a2 = 0; a2 < ny; ++a2)
          for (std::size_t b2 = 0; b2 < nz; ++b2) {
            long signexp = static_cast<long>(z.degree(b1)) * static_cast<long>(y.degree(a2));
            Rat sign(signexp % 2 == 0 ? 1 : -1);
            const auto& my = y.mult(a1, a2);
            const auto& mz = z.mult(b1, b2);
            auto& row = mult[a1 * nz + b1][a2 * nz + b2];
            for (std::size_t ta = 0; ta < ny; ++ta) {
              if (my[ta].is_zero()) continue;
              for (std::size_t tb = 0; tb < nz; ++tb)
                if (!mz[tb].is_zero()) row[ta * nz + tb] = sign * my[ta] * mz[tb];
            }
          }
    return GradedRing(std::move(deg), std::move(lab), std::move(mult), y.unit_ * nz + z.unit_);
  }

 private:
  void check_unit() const {
    if (unit_ >= dim() || deg_[unit_] != 0) throw error("GradedRing: bad unit");
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t t = 0; t < dim(); ++t) {
        Rat expect(t == a ? 1 : 0);
        if (mult_[unit_][a][t] != expect || mult_[a][unit_][t] != expect)
          throw error("GradedRing: unit law fails at " + labels_[a]);
      }
  }

  void check_graded() const {
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = 0; b < dim(); ++b)
        for (std::size_t t = 0; t < dim(); ++t)
          if (!mult_[a][b][t].is_zero() && deg_[t] != deg_[a] + deg_[b])
            throw error("GradedRing: product not graded at " + labels_[a] + "*" + labels_[b]);
  }

  void check_supercommutative() const {
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = 0; b < dim(); ++b) {
        Rat sign((deg_[a] * deg_[b]) % 2 == 0 ? 1 : -1);
        for (std::size_t t = 0; t < dim(); ++t)
          if (mult_[a][b][t] != sign * mult_[b][a][t])
            throw error("GradedRing: supercommutativity fails at " + labels_[a] + "," +
                        labels_[b]);
      }
  }

  void check_associative() const {
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = 0; b < dim(); ++b)
        for (std::size_t c = 0; c < dim(); ++c) {
          std::vector<Rat> left(dim()), right(dim());
          for (std::size_t t = 0; t < dim(); ++t) {
            if (!mult_[a][b][t].is_zero())
              for (std::size_t u = 0; u < dim(); ++u) left[u] += mult_[a][b][t] * mult_[t][c][u];
            if (!mult_[b][c][t].is_zero())
              for (std::size_t u = 0; u < dim(); ++u) right[u] += mult_[b][c][t] * mult_[a][t][u];
          }
          if (left != right)
            throw error("GradedRing: associativity fails at " + labels_[a] + "," + labels_[b] +
                        "," + labels_[c]);
        }
  }

  std::vector<unsigned> deg_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::vector<Rat>>> mult_;
  std::size_t unit_;
  unsigned top_;
};

}  // namespace hls
