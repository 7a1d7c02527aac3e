#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hlsplit/filtration.hpp"

namespace hls {

/// Degree-d part of a square matrix written in graded coordinates: keeps the
/// blocks Gr_p -> Gr_{p+d} and zeroes everything else.
inline Mat degree_part(const GradedModel& m, const Mat& g, int d) {
  Mat out(g.rows(), g.cols());
  for (const auto& src : m.pieces()) {
    const GradedModel::Piece* tgt = m.find(src.index + d);
    if (!tgt) continue;
    out.set_block(tgt->offset, src.offset,
                  g.block(tgt->offset, src.offset, tgt->dim(), src.dim()));
  }
  return out;
}

/// Degrees d with a nonzero block in g (graded coordinates), ascending.
inline std::vector<int> nonzero_degrees(const GradedModel& m, const Mat& g) {
  std::map<int, bool> seen;
  for (const auto& src : m.pieces())
    for (const auto& tgt : m.pieces()) {
      int d = tgt.index - src.index;
      if (seen.count(d) && seen[d]) continue;
      if (!g.block(tgt.offset, src.offset, tgt.dim(), src.dim()).is_zero()) seen[d] = true;
    }
  std::vector<int> out;
  for (const auto& [d, nz] : seen)
    if (nz) out.push_back(d);
  return out;
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Iterated ad-action u -> x u - u x.
inline Mat ad_pow(const Mat& x, Mat u, std::size_t k) {
  for (std::size_t t = 0; t < k; ++t) u = commutator(x, u);
  return u;
}

struct HLReport {
  struct PerK {
    int k = 0;
    std::size_t dim_neg = 0;
    std::size_t dim_pos = 0;
    std::size_t rank = 0;
  };
  bool ok = false;
  std::vector<PerK> per_k;
};

/// A filtered rational vector space of type [-r,r] together with an
/// endomorphism e of translation 2 (the twist tag is pure bookkeeping).
/// The filtration is auto-centered on construction when the constructor is
/// asked to; e is required to be filtered.
class HLPair {
 public:
  HLPair() : r_(0) {}

  HLPair(FilteredSpace space, Mat e, std::optional<GradedModel> model = std::nullopt,
         bool auto_center = true)
      : space_(std::move(space)), e_(std::move(e)), r_(0) {
    TypeRange tr = space_.validate();
    if (space_.declared_range()) {
      const auto& d = *space_.declared_range();
      if (d.first > tr.lo || d.second < tr.hi)
        throw error("HLPair: declared range does not contain the filtration's type range");
      tr = TypeRange{d.first, d.second};
    }
    if (space_.ambient_dim() > 0) {
      if (auto_center) {
        if ((tr.hi - tr.lo) % 2 != 0)
          throw error("HLPair: range [" + std::to_string(tr.lo) + "," + std::to_string(tr.hi) +
                      "] has odd width; declare a one-wider range to center it");
        int center = (tr.lo + tr.hi) / 2;
        if (center != 0) space_ = space_.translate(center);
        r_ = (tr.hi - tr.lo) / 2;
      } else {
        r_ = std::max(tr.hi, -tr.lo);
      }
    }
    if (e_.rows() != space_.ambient_dim() || e_.cols() != space_.ambient_dim())
      throw error("HLPair: e has wrong dimensions");
    if (auto v = filtered_violation(FilteredMap{e_, space_, space_, 2, 1}))
      throw error("HLPair: e is not filtered of translation 2 (violation at p=" +
                  std::to_string(*v) + ")");
    model_ = model ? std::move(*model) : GradedModel::from(space_);
  }

  const FilteredSpace& space() const { return space_; }
  const Mat& e() const { return e_; }
  const GradedModel& model() const { return model_; }
  int r() const { return r_; }
  int twist() const { return 1; }
  std::size_t dim() const { return space_.ambient_dim(); }

  /// Graded-coordinate matrix of e (all degrees <= 2).
  Mat e_graded() const { return model_.to_graded(e_); }

  friend bool operator==(const HLPair& a, const HLPair& b) {
    return a.space_.steps() == b.space_.steps() && a.e_ == b.e_ &&
           a.model_.section_matrix() == b.model_.section_matrix();
  }

 private:
  FilteredSpace space_;
  Mat e_;
  GradedModel model_;
  int r_;
};

/// Graded hard-Lefschetz check: e^k must induce an isomorphism
/// Gr_{-k} -> Gr_k for every k >= 0.
inline HLReport check_hl(const HLPair& p) {
  HLReport rep;
  rep.ok = true;
  Mat ek = Mat::identity(p.dim());
  for (int k = 0; k <= p.r(); ++k) {
    if (k > 0) ek = ek * p.e();
    std::size_t dn = p.model().dim_at(-k), dp = p.model().dim_at(k);
    std::size_t rk = 0;
    if (dn > 0 && dp > 0) {
      const auto* src = p.model().find(-k);
      const auto* tgt = p.model().find(k);
      Mat blockmap = tgt->projection * ek * src->section;
      rk = rank(blockmap);
    }
    rep.per_k.push_back({k, dn, dp, rk});
    if (dn != dp || rk != dn) rep.ok = false;
  }
  return rep;
}

/// Full graded matrix of e restricted to its degree-2 part, i.e. the induced
/// maps e'_p : Gr_p -> Gr_{p+2} assembled into one matrix.
inline Mat graded_e_full(const HLPair& p) { return degree_part(p.model(), p.e_graded(), 2); }

/// The individual graded blocks e'_p.
inline std::map<int, Mat> graded_e(const HLPair& p) {
  std::map<int, Mat> out;
  Mat g = p.e_graded();
  for (const auto& src : p.model().pieces()) {
    const auto* tgt = p.model().find(src.index + 2);
    if (tgt) out[src.index] = g.block(tgt->offset, src.offset, tgt->dim(), src.dim());
  }
  return out;
}

/// Label of one splitting/PLD column: graded index p, primitive level i,
/// Lefschetz power j (p = -i + 2j), and index k within P_{-i}.
struct PldLabel {
  int p = 0;
  int i = 0;
  int j = 0;
  std::size_t k = 0;
  friend bool operator==(const PldLabel& a, const PldLabel& b) {
    return a.p == b.p && a.i == b.i && a.j == b.j && a.k == b.k;
  }
};

/// Primitive Lefschetz decomposition of the graded space: the primitive
/// subspaces P_{-i} = Ker(e'^{i+1} : Gr_{-i} -> Gr_{i+2}) and the assembled
/// isomorphism eps sending the PLD basis e'^j(P_{-i} basis) to graded
/// coordinates.
struct PrimitiveDecomp {
  struct Part {
    int i = 0;
    Subspace basis;  // inside Gr_{-i} coordinates
  };
  struct Group {
    int i = 0;
    int j = 0;
    int p = 0;  // = -i + 2j
    std::size_t offset = 0;
    std::size_t dim = 0;
  };
  std::vector<Part> parts;            // i = 0..r
  std::vector<Group> groups;          // PLD column groups of eps, graded order
  std::vector<PldLabel> column_labels;
  Mat eps;      // graded coords x PLD coords
  Mat eps_inv;

  const Group* find_group(int i, int j) const {
    for (const auto& g : groups)
      if (g.i == i && g.j == j) return &g;
    return nullptr;
  }
};

inline PrimitiveDecomp primitives(const HLPair& p) {
  PrimitiveDecomp out;
  const GradedModel& m = p.model();
  std::size_t n = p.dim();
  Mat e2 = graded_e_full(p);

  for (int i = 0; i <= p.r(); ++i) {
    const auto* src = m.find(-i);
    if (!src) {
      out.parts.push_back({i, Subspace::zero(0)});
      continue;
    }
    // e'^{i+1} block from Gr_{-i}; the target block Gr_{i+2} may be absent,
    // in which case the whole graded piece is primitive.
    Mat power = Mat::identity(n);
    for (int t = 0; t <= i; ++t) power = e2 * power;
    const auto* tgt = m.find(i + 2);
    if (!tgt) {
      out.parts.push_back({i, Subspace::full(src->dim())});
      continue;
    }
    Mat blockmap = power.block(tgt->offset, src->offset, tgt->dim(), src->dim());
    out.parts.push_back({i, kernel(blockmap)});
  }

  out.eps = Mat(n, n);
  std::size_t col = 0;
  for (const auto& piece : m.pieces()) {
    int pdeg = piece.index;
    for (int i = std::abs(pdeg); i <= p.r(); i += 2) {
      int j = (pdeg + i) / 2;
      if (j < 0 || j > i) continue;
      const Subspace& prim = out.parts[i].basis;
      if (prim.dim() == 0) continue;
      const auto* neg = m.find(-i);
      // Embed P_{-i} into the full graded space and raise it j times.
      Mat embedded(n, prim.dim());
      embedded.set_block(neg->offset, 0, prim.basis());
      for (int t = 0; t < j; ++t) embedded = e2 * embedded;
      out.eps.set_block(0, col, embedded);
      out.groups.push_back({i, j, pdeg, col, prim.dim()});
      for (std::size_t k = 0; k < prim.dim(); ++k)
        out.column_labels.push_back({pdeg, i, j, k});
      col += prim.dim();
    }
  }
  if (col != n) throw error("primitives: PLDFailure (primitive columns do not fill the space)");
  auto inv = try_inverse(out.eps);
  if (!inv) throw error("primitives: PLDFailure (eps is singular)");
  out.eps_inv = *inv;
  return out;
}

/// The sl2 triple on the graded space: e' (degree 2), the canonical lowering
/// operator f' (degree -2, defined on the PLD basis by
/// f'(e'^j x) = j(i-j+1) e'^{j-1} x for x in P_{-i}), and h = p Id on Gr_p.
struct Sl2Model {
  Mat e2;
  Mat f2;
  Mat h;
};

inline Sl2Model lower_f(const HLPair& p) {
  PrimitiveDecomp pd = primitives(p);
  std::size_t n = p.dim();
  Mat d(n, n);
  for (const auto& g : pd.groups) {
    if (g.j == 0) continue;
    const auto* down = pd.find_group(g.i, g.j - 1);
    if (!down) throw error("lower_f: missing PLD group");
    Rat c(static_cast<long>(g.j) * (g.i - g.j + 1));
    for (std::size_t k = 0; k < g.dim; ++k) d(down->offset + k, g.offset + k) = c;
  }
  Sl2Model out;
  out.e2 = graded_e_full(p);
  out.f2 = pd.eps * d * pd.eps_inv;
  out.h = Mat(n, n);
  for (const auto& piece : p.model().pieces())
    for (std::size_t k = 0; k < piece.dim(); ++k)
      out.h(piece.offset + k, piece.offset + k) = Rat(piece.index);
  return out;
}

/// Tensor product of HL pairs: F_p = sum of F'_{p'} (x) F''_{p''} over
/// p'+p''=p and e = e (x) 1 + 1 (x) e. Kronecker index (i1,i2) -> i1*n2+i2.
inline HLPair tensor(const HLPair& a, const HLPair& b) {
  std::size_t na = a.dim(), nb = b.dim();
  std::map<int, Subspace> steps;
  std::vector<int> ja = a.space().jumps(), jb = b.space().jumps();
  std::map<int, bool> candidates;
  for (int pa : ja)
    for (int pb : jb) candidates[pa + pb] = true;
  for (const auto& [p, unused] : candidates) {
    (void)unused;
    Mat cols(na * nb, 0);
    for (int pa : ja) {
      const Subspace& fa = a.space().step_at(pa);
      const Subspace& fb = b.space().step_at(p - pa);
      if (fa.dim() == 0 || fb.dim() == 0) continue;
      cols = Mat::hcat(cols, Mat::kron(fa.basis(), fb.basis()));
    }
    steps[p] = Subspace::span(cols);
  }
  Mat e = Mat::kron(a.e(), Mat::identity(nb)) + Mat::kron(Mat::identity(na), b.e());
  return HLPair(FilteredSpace(na * nb, std::move(steps)), std::move(e));
}

/// The sub-pair carried by an e-stable subspace K (new ambient = K, induced
/// filtration, restricted e). Grading indices are preserved, not recentered.
inline HLPair sub_pair(const HLPair& a, const Subspace& k) {
  Mat basis = k.basis();
  SolveResult s = solve(basis, a.e() * basis);
  if (s.kind != SolveResult::Kind::unique)
    throw error("sub_pair: subspace is not e-stable");
  std::map<int, Subspace> steps;
  for (int p : a.space().jumps()) {
    Subspace cut = intersect(a.space().step_at(p), k);
    steps[p] = cut.dim() ? Subspace::span(k.coords_of(cut.basis())) : Subspace::zero(k.dim());
  }
  if (k.dim() > 0) steps[a.r()] = Subspace::full(k.dim());
  return HLPair(FilteredSpace(k.dim(), std::move(steps)), s.solution, std::nullopt, false);
}

/// Kernel of a morphism of HL pairs (filtered, translation 0, commuting with
/// both e's), with induced filtration and restricted e. The result must again
/// satisfy HL and be strict (graded of the kernel = kernel of the graded);
/// both facts are verified and failures are hard errors.
inline HLPair morphism_kernel(const HLPair& a, const HLPair& b, const Mat& g) {
  if (auto v = filtered_violation(FilteredMap{g, a.space(), b.space(), 0, 0}))
    throw error("morphism_kernel: map is not filtered (violation at p=" + std::to_string(*v) +
                ")");
  if (g * a.e() != b.e() * g) throw error("morphism_kernel: CommutationFailure");
  Subspace k = kernel(g);
  HLPair kp = sub_pair(a, k);
  if (!check_hl(kp).ok) throw error("morphism_kernel: HLFailureOnKernel");
  // Strictness: graded dims of the kernel match kernels of the graded blocks.
  for (const auto& piece : a.model().pieces()) {
    const auto* tgt = b.model().find(piece.index);
    Mat block = tgt ? (tgt->projection * g * piece.section)
                    : Mat(0, piece.dim());
    std::size_t expect = piece.dim() - rank(block);
    if (kp.model().dim_at(piece.index) != expect)
      throw error("morphism_kernel: strictness failure at p=" + std::to_string(piece.index));
  }
  return kp;
}

/// Direct sum of two pairs (block filtration and block-diagonal e).
inline HLPair direct_sum(const HLPair& a, const HLPair& b) {
  std::size_t na = a.dim(), nb = b.dim();
  std::map<int, Subspace> steps;
  std::map<int, bool> idx;
  for (int p : a.space().jumps()) idx[p] = true;
  for (int p : b.space().jumps()) idx[p] = true;
  for (const auto& [p, unused] : idx) {
    (void)unused;
    const Mat& ba = a.space().step_at(p).basis();
    const Mat& bb = b.space().step_at(p).basis();
    Mat cols(na + nb, ba.cols() + bb.cols());
    cols.set_block(0, 0, ba);
    cols.set_block(na, ba.cols(), bb);
    steps[p] = Subspace::span(cols);
  }
  Mat e(na + nb, na + nb);
  e.set_block(0, 0, a.e());
  e.set_block(na, na, b.e());
  return HLPair(FilteredSpace(na + nb, std::move(steps)), std::move(e));
}

/// Transpose-dual pair on the dual space, with the graded model derived from
/// the primal one so that Gr_p(V^o) = (Gr_{-p} V)^o is the identity matrix.
inline HLPair dual_pair(const HLPair& p) {
  return HLPair(p.space().dual(), p.e().transpose(), GradedModel::dual_of(p.model()));
}

struct RandomProfile {
  int r = 0;
  std::vector<unsigned> q;        // primitive dims q_0..q_r
  unsigned density_pct = 50;      // chance of a nonzero noise entry
  unsigned long coefficient_bound = 3;
};

/// Deterministic random HL pair: the sl2 model with primitive dims q_i plus
/// filtration-preserving noise of degree <= 0. HL holds by construction since
/// the top-degree graded part of e is the model's.
inline HLPair random_hl(std::uint64_t seed, const RandomProfile& prof) {
  if (prof.q.size() != static_cast<std::size_t>(prof.r) + 1)
    throw error("random_hl: profile needs q_0..q_r");
  struct BasisVec {
    int p, i, j;
    unsigned t;
  };
  std::vector<BasisVec> basis;
  std::vector<std::size_t> block_start;
  std::vector<int> block_index;
  for (int p = -prof.r; p <= prof.r; ++p) {
    std::size_t start = basis.size();
    for (int i = std::abs(p); i <= prof.r; i += 2) {
      int j = (p + i) / 2;
      for (unsigned t = 0; t < prof.q[i]; ++t) basis.push_back({p, i, j, t});
    }
    if (basis.size() > start) {
      block_start.push_back(start);
      block_index.push_back(p);
    }
  }
  std::size_t n = basis.size();
  auto find_index = [&](int p, int i, int j, unsigned t) -> std::size_t {
    for (std::size_t x = 0; x < n; ++x)
      if (basis[x].p == p && basis[x].i == i && basis[x].j == j && basis[x].t == t) return x;
    throw error("random_hl: internal index error");
  };

  Mat e(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& v = basis[x];
    if (v.j < v.i) e(find_index(v.p + 2, v.i, v.j + 1, v.t), x) = Rat(1);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pct(0, 99);
  long bound = static_cast<long>(prof.coefficient_bound);
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound > 0 ? bound : 1);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t colv = 0; colv < n; ++colv) {
      if (basis[row].p > basis[colv].p) continue;  // keep noise at degrees <= 0
      if (pct(rng) >= static_cast<int>(prof.density_pct)) continue;
      e(row, colv) += Rat(num(rng), den(rng));
    }

  std::map<int, Subspace> steps;
  std::size_t covered = 0;
  for (std::size_t b = 0; b < block_start.size(); ++b) {
    std::size_t end = (b + 1 < block_start.size()) ? block_start[b + 1] : n;
    covered = end;
    Mat cols(n, covered);
    for (std::size_t x = 0; x < covered; ++x) cols(x, x) = Rat(1);
    steps[block_index[b]] = Subspace::span(cols);
  }
  if (n == 0) return HLPair(FilteredSpace(0, {}), Mat(0, 0));
  return HLPair(FilteredSpace(n, std::move(steps)), std::move(e));
}

}  // namespace hls
