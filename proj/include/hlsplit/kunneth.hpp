#pragma once

#include <string>
#include <vector>

#include "hlsplit/graded_ring.hpp"
#include "hlsplit/splitting.hpp"

namespace hls {

/// One term of a degree-2 class on a product: coefficient times
/// y-basis (x) z-basis.
struct EtaTerm {
  std::size_t y = 0;
  std::size_t z = 0;
  Rat coeff;
};

/// A geometric product instance H(Y) (x) H(Z) filtered by the Z-degree
/// (shifted so the type is [-r, r], r = dim_C Z), with e the cup product
/// with a degree-2 class eta. HL holds iff eta's fiber component behaves
/// like an ample class on Z; the verdict is in `hl` and callers must
/// inspect it before asking for splittings.
struct ProductInstance {
  GradedRing y;
  GradedRing z;
  std::vector<EtaTerm> eta;
  int r = 0;
  std::vector<Rat> eta_vector;  // eta as an element of the product ring
  HLPair pair;
  HLReport hl;
};

inline ProductInstance product_pair(const GradedRing& y, const GradedRing& z,
                                    const std::vector<EtaTerm>& eta) {
  if (z.top_degree() % 2 != 0)
    throw error("product_pair: Z must have even top degree (a complex variety)");
  std::size_t ny = y.dim(), nz = z.dim(), n = ny * nz;
  int r = static_cast<int>(z.top_degree() / 2);

  std::vector<Rat> eta_vec(n);
  for (const auto& t : eta) {
    if (t.y >= ny || t.z >= nz) throw error("product_pair: eta term out of range");
    if (y.degree(t.y) + z.degree(t.z) != 2)
      throw error("product_pair: eta term " + y.label(t.y) + "*" + z.label(t.z) +
                  " has total degree != 2");
    eta_vec[t.y * nz + t.z] += t.coeff;
  }

  GradedRing prod = GradedRing::tensor(y, z);

  // e = cup product with eta, column action.
  Mat e(n, n);
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<Rat> unit(n);
    unit[b] = Rat(1);
    std::vector<Rat> image = prod.mul(eta_vec, unit);
    for (std::size_t t = 0; t < n; ++t) e(t, b) = image[t];
  }

  // F_p = span of the monomials y (x) z with deg z <= p + r.
  std::map<int, Subspace> steps;
  for (unsigned zdeg = 0; zdeg <= z.top_degree(); ++zdeg) {
    if (z.dim_in_degree(zdeg) == 0) continue;
    int p = static_cast<int>(zdeg) - r;
    std::size_t count = 0;
    for (std::size_t a = 0; a < ny; ++a)
      for (std::size_t b = 0; b < nz; ++b)
        if (z.degree(b) <= zdeg) ++count;
    Mat cols(n, count);
    std::size_t c = 0;
    for (std::size_t a = 0; a < ny; ++a)
      for (std::size_t b = 0; b < nz; ++b)
        if (z.degree(b) <= zdeg) cols(a * nz + b, c++) = Rat(1);
    steps[p] = Subspace::span(cols);
  }

  ProductInstance out{y, z, eta, r, std::move(eta_vec),
                      HLPair(FilteredSpace(n, std::move(steps)), std::move(e)), HLReport{}};
  out.hl = check_hl(out.pair);
  return out;
}

/// The Kunneth splitting: the graded class of a monomial y (x) z goes to the
/// element y (x) z itself. In the monomial coordinates this is exactly the
/// graded-model section matrix.
inline Splitting kunneth_splitting(const ProductInstance& pi) {
  if (!pi.hl.ok) throw error("kunneth_splitting: instance does not satisfy HL");
  return identity_splitting(pi.pair, Method::kunneth);
}

/// The 3-dimensional non-nilpotent pair with basis (v_{-2}, v_0, v_2),
/// e: v_{-2} -> v_0 -> v_2 -> v_2 and filtration steps at -2, 0, 2.
inline HLPair snzdiff() {
  Mat e{{0, 0, 0}, {1, 0, 0}, {0, 1, 1}};
  std::map<int, Subspace> steps;
  Mat b1(3, 1);
  b1(0, 0) = Rat(1);
  Mat b2(3, 2);
  b2(0, 0) = Rat(1);
  b2(1, 1) = Rat(1);
  steps[-2] = Subspace::span(b1);
  steps[0] = Subspace::span(b2);
  steps[2] = Subspace::full(3);
  return HLPair(FilteredSpace(3, std::move(steps)), std::move(e));
}

}  // namespace hls
