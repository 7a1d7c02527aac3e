#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hlsplit/hl_pair.hpp"

namespace hls {

enum class Method { omega1, omega2, phi1, phi2, phi3, kunneth, custom };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::omega1: return "omega1";
    case Method::omega2: return "omega2";
    case Method::phi1: return "phi1";
    case Method::phi2: return "phi2";
    case Method::phi3: return "phi3";
    case Method::kunneth: return "kunneth";
    default: return "custom";
  }
}

struct GradedBlock {
  int index = 0;
  std::size_t offset = 0;
  std::size_t dim = 0;
  friend bool operator==(const GradedBlock& a, const GradedBlock& b) {
    return a.index == b.index && a.offset == b.offset && a.dim == b.dim;
  }
};
using GradedShape = std::vector<GradedBlock>;

inline GradedShape shape_of(const GradedModel& m) {
  GradedShape s;
  for (const auto& piece : m.pieces()) s.push_back({piece.index, piece.offset, piece.dim()});
  return s;
}

/// A good splitting of an HL pair: an invertible matrix whose columns are the
/// images in V (ambient coordinates) of the graded-model basis of (+) Gr_p,
/// inducing the identity on every graded piece.
struct Splitting {
  Mat matrix;
  Method method = Method::custom;
  GradedShape shape;
  std::vector<PldLabel> labels;  // PLD label attached to each column position
};

/// Builds a Splitting from a raw invertible filtered matrix: verifies column
/// blocks land in F_p and applies the graded pre-composition trick so the
/// result is good. Labels come from the pair's PLD.
inline Splitting make_splitting(const HLPair& pair, Mat raw, Method method,
                                const PrimitiveDecomp* pd = nullptr) {
  std::size_t n = pair.dim();
  if (raw.rows() != n || raw.cols() != n) throw error("Splitting: wrong dimensions");
  for (const auto& piece : pair.model().pieces()) {
    Mat cols = raw.block(0, piece.offset, n, piece.dim());
    if (!pair.space().step_at(piece.index).contains(Subspace::span(cols)))
      throw error("Splitting: column block " + std::to_string(piece.index) +
                  " leaves the filtration step");
    Mat diag = piece.projection * cols;
    if (!diag.is_identity()) {
      auto inv = try_inverse(diag);
      if (!inv) throw error("Splitting: graded diagonal block is singular");
      raw.set_block(0, piece.offset, cols * *inv);
    }
  }
  // Filtered with identity graded diagonal: unitriangular in graded
  // coordinates, hence invertible.
  Splitting s;
  s.matrix = std::move(raw);
  s.method = method;
  s.shape = shape_of(pair.model());
  if (n > 0) {
    if (pd) {
      s.labels = pd->column_labels;
    } else {
      PrimitiveDecomp fresh = primitives(pair);
      s.labels = fresh.column_labels;
    }
  }
  return s;
}

/// The splitting given by the graded model sections themselves.
inline Splitting identity_splitting(const HLPair& pair, Method method = Method::custom,
                                    const PrimitiveDecomp* pd = nullptr) {
  return make_splitting(pair, pair.model().section_matrix(), method, pd);
}

inline bool is_good(const HLPair& pair, const Splitting& s) {
  for (const auto& piece : pair.model().pieces()) {
    Mat diag = piece.projection * s.matrix.block(0, piece.offset, pair.dim(), piece.dim());
    if (!diag.is_identity()) return false;
  }
  return true;
}

struct CompareResult {
  bool equal = false;
  Mat difference;
  std::vector<int> agreeing_blocks;  // graded indices whose column blocks agree
};

inline CompareResult compare(const Splitting& a, const Splitting& b) {
  if (a.shape != b.shape) throw error("compare: pair mismatch");
  CompareResult out;
  out.difference = a.matrix - b.matrix;
  out.equal = out.difference.is_zero();
  for (const auto& blk : a.shape)
    if (out.difference.block(0, blk.offset, a.matrix.rows(), blk.dim).is_zero())
      out.agreeing_blocks.push_back(blk.index);
  return out;
}

// ---------------------------------------------------------------------------
// Peeling (the splitting mechanism) and omega_I / omega_II.
// ---------------------------------------------------------------------------

/// One peeling step via l = e^r: sections of the extreme graded pieces and
/// the interior kernel pair Ker(p_b l) /\ Ker(p_b) with its induced
/// filtration. The kernel is not e-stable in general; its endomorphism is the
/// middle component of e conjugated by the witness w = (i_a, iota, l i_a l_a^{-1}).
struct PeelResult {
  Mat i_a;              // section of Gr_{-r} (canonical basis of F_{-r})
  Mat top;              // l . i_a . l_a^{-1}, images of Gr_r in V
  Subspace ker;         // the kernel subspace inside V
  HLPair kernel_pair;   // induced pair on the kernel, type [-r+1, r-1]
  Mat witness;          // [i_a | ker basis | top], invertible
};

inline PeelResult peel(const HLPair& pair) {
  int r = pair.r();
  if (r == 0 || pair.dim() == 0) throw error("peel: RangeTooSmall (r = 0)");
  const GradedModel& m = pair.model();
  const auto* lo = m.find(-r);
  const auto* hi = m.find(r);
  if (!lo || !hi) throw error("peel: extreme graded pieces are absent (HL fails)");
  Mat l = pair.e().pow(static_cast<std::size_t>(r));
  Mat la = hi->projection * l * lo->section;
  auto la_inv = try_inverse(la);
  if (!la_inv) throw error("peel: graded e^r is not invertible (HL fails)");

  PeelResult out;
  out.i_a = lo->section;
  out.top = l * lo->section * *la_inv;
  out.ker = intersect(kernel(hi->projection * l), kernel(hi->projection));
  out.witness = Mat::hcat(Mat::hcat(out.i_a, out.ker.basis()), out.top);
  auto w_inv = try_inverse(out.witness);
  if (!w_inv) throw error("peel: witness is singular");

  // Middle component of w^{-1} e w.
  Mat conj = *w_inv * pair.e() * out.witness;
  std::size_t ka = out.i_a.cols(), kk = out.ker.dim();
  Mat e_mid = conj.block(ka, ka, kk, kk);

  std::map<int, Subspace> steps;
  for (int p : pair.space().jumps()) {
    if (p >= r) continue;
    Subspace cut = intersect(pair.space().step_at(p), out.ker);
    steps[p] = cut.dim() ? Subspace::span(out.ker.coords_of(cut.basis()))
                         : Subspace::zero(kk);
  }
  if (kk > 0) steps[r - 1] = Subspace::full(kk);
  out.kernel_pair = HLPair(FilteredSpace(kk, std::move(steps)), std::move(e_mid),
                           std::nullopt, false);
  return out;
}

/// omega_I: descending recursion on r, un-wrapping the outermost layer with
/// e^r at each step; base case r = 0 is the graded section.
inline Splitting omega1(const HLPair& pair) {
  if (pair.r() == 0 || pair.dim() == 0) return identity_splitting(pair, Method::omega1);
  PeelResult pr = peel(pair);
  Splitting inner = omega1(pr.kernel_pair);
  std::size_t n = pair.dim();
  Mat raw(n, n);
  const auto* lo = pair.model().find(-pair.r());
  const auto* hi = pair.model().find(pair.r());
  raw.set_block(0, lo->offset, pr.i_a);
  raw.set_block(0, hi->offset, pr.top);
  Mat middle = pr.ker.basis() * inner.matrix;
  for (const auto& blk : inner.shape) {
    const auto* piece = pair.model().find(blk.index);
    if (!piece || piece->dim() != blk.dim)
      throw error("omega1: kernel grading does not match (HL fails)");
    raw.set_block(0, piece->offset, middle.block(0, blk.offset, n, blk.dim));
  }
  return make_splitting(pair, std::move(raw), Method::omega1);
}

/// Transports a good splitting of the dual pair back through transpose and
/// inverse; the graded identification Gr_p(V^o) = (Gr_{-p} V)^o is the
/// identity by construction of the dual model, so only the column blocks get
/// re-indexed (p' -> -p').
inline Splitting dualize_splitting(const HLPair& pair, const Splitting& dual_splitting,
                                   Method method) {
  std::size_t n = pair.dim();
  Mat t_inv = n ? inverse(dual_splitting.matrix.transpose()) : Mat(0, 0);
  Mat raw(n, n);
  for (const auto& blk : dual_splitting.shape) {
    const auto* piece = pair.model().find(-blk.index);
    if (!piece || piece->dim() != blk.dim)
      throw error("dualize_splitting: block mismatch with the dual shape");
    raw.set_block(0, piece->offset, t_inv.block(0, blk.offset, n, blk.dim));
  }
  return make_splitting(pair, std::move(raw), method);
}

inline Splitting omega2(const HLPair& pair) {
  return dualize_splitting(pair, omega1(dual_pair(pair)), Method::omega2);
}

// ---------------------------------------------------------------------------
// phi_I / phi_II: the unique primitive lifts.
// ---------------------------------------------------------------------------

/// The unique filtered lift f_i : P_{-i} -> V of the inclusion P_{-i} into
/// Gr_{-i} killed by the projections of e^s to the quotients V_{>=s} for
/// every s > i. Solved as one exact linear system in the unknown lower
/// graded blocks; uniqueness of the solution is asserted.
inline Mat lift_fi(const HLPair& pair, int i, const PrimitiveDecomp& pd) {
  if (i < 0 || i > pair.r()) throw error("lift_fi: index out of range");
  const GradedModel& m = pair.model();
  const Subspace& prim = pd.parts[static_cast<std::size_t>(i)].basis;
  std::size_t q = prim.dim();
  std::size_t n = pair.dim();
  const auto* home = m.find(-i);
  if (q == 0) return Mat(n, 0);
  Mat fixed = home->section * prim.basis();  // the chosen graded representative

  std::vector<const GradedModel::Piece*> unknowns;
  for (const auto& piece : m.pieces())
    if (piece.index < -i) unknowns.push_back(&piece);

  // Precompute powers of e once.
  std::vector<Mat> epow(static_cast<std::size_t>(pair.r()) + 1);
  epow[0] = Mat::identity(n);
  for (int s = 1; s <= pair.r(); ++s)
    epow[static_cast<std::size_t>(s)] = epow[static_cast<std::size_t>(s - 1)] * pair.e();

  Mat a(0, 0), rhs(0, 0);
  bool first = true;
  for (int s = i + 1; s <= pair.r(); ++s) {
    for (const auto& level : m.pieces()) {
      if (level.index < s) continue;
      Mat pe = level.projection * epow[static_cast<std::size_t>(s)];
      Mat row(level.dim(), 0);
      for (const auto* u : unknowns) row = Mat::hcat(row, pe * u->section);
      Mat rrow = Rat(-1) * (pe * fixed);
      if (first) {
        a = row;
        rhs = rrow;
        first = false;
      } else {
        a = Mat::vcat(a, row);
        rhs = Mat::vcat(rhs, rrow);
      }
    }
  }

  Mat f = fixed;
  if (!unknowns.empty() || !first) {
    std::size_t ucols = 0;
    for (const auto* u : unknowns) ucols += u->dim();
    if (first) {
      a = Mat(0, ucols);
      rhs = Mat(0, q);
    }
    SolveResult sol = solve(a, rhs);
    if (sol.kind == SolveResult::Kind::none) throw error("lift_fi: NoLift");
    if (sol.kind == SolveResult::Kind::many) throw error("lift_fi: NonUniqueLift");
    std::size_t off = 0;
    for (const auto* u : unknowns) {
      f = f + u->section * sol.solution.block(off, 0, u->dim(), q);
      off += u->dim();
    }
  }
  return f;
}

inline Mat lift_fi(const HLPair& pair, int i) { return lift_fi(pair, i, primitives(pair)); }

/// phi_I: column block for the PLD label (i,j) is e^j f_i applied to the
/// basis of P_{-i}, composed with eps^{-1} to index columns by the graded
/// basis.
inline Splitting phi1(const HLPair& pair) {
  std::size_t n = pair.dim();
  if (n == 0) return identity_splitting(pair, Method::phi1);
  PrimitiveDecomp pd = primitives(pair);
  std::vector<Mat> lifts(static_cast<std::size_t>(pair.r()) + 1);
  for (int i = 0; i <= pair.r(); ++i) lifts[static_cast<std::size_t>(i)] = lift_fi(pair, i, pd);
  Mat a(n, n);
  for (const auto& g : pd.groups) {
    Mat cols = lifts[static_cast<std::size_t>(g.i)];
    for (int t = 0; t < g.j; ++t) cols = pair.e() * cols;
    a.set_block(0, g.offset, cols);
  }
  return make_splitting(pair, a * pd.eps_inv, Method::phi1, &pd);
}

inline Splitting phi2(const HLPair& pair) {
  return dualize_splitting(pair, phi1(dual_pair(pair)), Method::phi2);
}

// ---------------------------------------------------------------------------
// e-tilde / e-hat and the goodness diagnostics.
// ---------------------------------------------------------------------------

/// The matrix of e conjugated by a splitting, in graded coordinates, with its
/// decomposition into homogeneous degree parts (all degrees > 2 vanish; the
/// degree 2 part of a good splitting is the graded e).
struct EMatrix {
  Mat full;
  std::map<int, Mat> parts;  // degree -> full-size mask
};

inline EMatrix e_tilde(const HLPair& pair, const Splitting& s) {
  EMatrix out;
  out.full = pair.dim() ? inverse(s.matrix) * pair.e() * s.matrix : Mat(0, 0);
  for (int d : nonzero_degrees(pair.model(), out.full))
    out.parts[d] = degree_part(pair.model(), out.full, d);
  for (const auto& [d, part] : out.parts) {
    (void)part;
    if (d > 2) throw error("e_tilde: nonzero part of degree > 2 (splitting not filtered?)");
  }
  if (degree_part(pair.model(), out.full, 2) != graded_e_full(pair))
    throw error("e_tilde: degree-2 part differs from graded e (splitting not good?)");
  return out;
}

/// The PLD refinement of e-tilde: eps^{-1} e-tilde eps, addressable in blocks
/// P_{-i}(-j) -> P_{-k}(-l).
struct EHat {
  Mat full;  // PLD coordinates
  PrimitiveDecomp pld;

  Mat block(int i, int j, int k, int l) const {
    const auto* src = pld.find_group(i, j);
    const auto* tgt = pld.find_group(k, l);
    if (!src || !tgt) throw error("EHat: no such block");
    return full.block(tgt->offset, src->offset, tgt->dim, src->dim);
  }
};

inline EHat e_hat(const HLPair& pair, const Splitting& s) {
  EHat out;
  out.pld = primitives(pair);
  Mat et = pair.dim() ? inverse(s.matrix) * pair.e() * s.matrix : Mat(0, 0);
  out.full = out.pld.eps_inv * et * out.pld.eps;
  return out;
}

/// e-goodness: e-tilde is homogeneous of degree two. Checked two ways (the
/// degree parts, and e^{i+1} killing the embedded primitives); the two
/// answers must agree.
inline bool is_e_good(const HLPair& pair, const Splitting& s) {
  EMatrix et = e_tilde(pair, s);
  bool by_degree = true;
  for (const auto& [d, part] : et.parts)
    if (d <= 1 && !part.is_zero()) by_degree = false;

  bool by_primitives = true;
  PrimitiveDecomp pd = primitives(pair);
  std::size_t n = pair.dim();
  for (const auto& g : pd.groups) {
    if (g.j != 0) continue;
    Mat embedded = s.matrix * pd.eps.block(0, g.offset, n, g.dim);
    for (int t = 0; t <= g.i; ++t) embedded = pair.e() * embedded;
    if (!embedded.is_zero()) by_primitives = false;
  }
  if (by_degree != by_primitives)
    throw error("is_e_good: the two characterizations disagree (internal inconsistency)");
  return by_degree;
}

/// Characterization of phi_I among good splittings: for j < i the only
/// nonzero e-hat block out of (i,j) is the identity into (i,j+1); blocks out
/// of (i,i) may be nonzero only toward labels with l <= i.
inline bool chardel1_check(const HLPair& pair, const Splitting& s) {
  EHat eh = e_hat(pair, s);
  for (const auto& src : eh.pld.groups) {
    for (const auto& tgt : eh.pld.groups) {
      Mat b = eh.full.block(tgt.offset, src.offset, tgt.dim, src.dim);
      if (src.j < src.i) {
        bool is_next = (tgt.i == src.i && tgt.j == src.j + 1);
        if (is_next) {
          if (!b.is_identity()) return false;
        } else if (!b.is_zero()) {
          return false;
        }
      } else {  // src.j == src.i
        if (tgt.j > src.i && !b.is_zero()) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// phi_III: the sl2 correction recursion.
// ---------------------------------------------------------------------------

struct Phi3Step {
  int d = 0;
  Mat residual;  // e-tilde^{d} before the correction (graded coordinates)
  Mat psi;       // the degree d-2 correction
};
using Phi3Trace = std::vector<Phi3Step>;

namespace detail {

/// Entry positions (global row, global col) of the homogeneous degree-d
/// block-map space, in deterministic order.
inline std::vector<std::pair<std::size_t, std::size_t>> hom_positions(const GradedModel& m,
                                                                      int d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& src : m.pieces()) {
    const auto* tgt = m.find(src.index + d);
    if (!tgt) continue;
    for (std::size_t c = 0; c < src.dim(); ++c)
      for (std::size_t r = 0; r < tgt->dim(); ++r)
        out.emplace_back(tgt->offset + r, src.offset + c);
  }
  return out;
}

/// Matrix of the ad-action u -> e2 u - u e2 from degree k to degree k+2,
/// w.r.t. the entry bases of hom_positions.
inline Mat ad_e_matrix(const GradedModel& m, const Mat& e2, int k) {
  auto src_pos = hom_positions(m, k);
  auto tgt_pos = hom_positions(m, k + 2);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> tgt_index;
  for (std::size_t t = 0; t < tgt_pos.size(); ++t) tgt_index[tgt_pos[t]] = t;
  std::size_t n = e2.rows();
  Mat out(tgt_pos.size(), src_pos.size());
  for (std::size_t c = 0; c < src_pos.size(); ++c) {
    auto [a, b] = src_pos[c];  // unit map E_{ab}: e_b -> e_a
    for (std::size_t t = 0; t < n; ++t) {
      if (!e2(t, a).is_zero()) {
        auto it = tgt_index.find({t, b});
        if (it != tgt_index.end()) out(it->second, c) += e2(t, a);
      }
      if (!e2(b, t).is_zero()) {
        auto it = tgt_index.find({a, t});
        if (it != tgt_index.end()) out(it->second, c) -= e2(b, t);
      }
    }
  }
  return out;
}

inline Mat from_coords(const GradedModel& m, int d, const Mat& coords, std::size_t n) {
  auto pos = hom_positions(m, d);
  Mat out(n, n);
  for (std::size_t t = 0; t < pos.size(); ++t) out(pos[t].first, pos[t].second) = coords(t, 0);
  return out;
}

inline Mat to_coords(const GradedModel& m, int d, const Mat& full) {
  auto pos = hom_positions(m, d);
  Mat out(pos.size(), 1);
  for (std::size_t t = 0; t < pos.size(); ++t) out(t, 0) = full(pos[t].first, pos[t].second);
  return out;
}

}  // namespace detail

/// Runs the correction recursion from an arbitrary good splitting: for
/// d = 1, 0, ..., -2r, if e^{1-d}(e-tilde^{d}) != 0, solve
/// e^{2-d}(psi) = -e^{1-d}(e-tilde^{d}) for the unique homogeneous psi of
/// degree d-2 and replace s by s (Id + psi). The result satisfies the
/// vanishing conditions for every d <= 1 and is independent of the start.
inline std::pair<Splitting, Phi3Trace> phi3_from(const HLPair& pair, const Splitting& start) {
  const GradedModel& m = pair.model();
  std::size_t n = pair.dim();
  Mat e2 = graded_e_full(pair);
  Mat phi = start.matrix;
  Phi3Trace trace;
  for (int d = 1; d >= -2 * pair.r(); --d) {
    Mat et = n ? inverse(phi) * pair.e() * phi : Mat(0, 0);
    Mat residual = degree_part(m, et, d);
    Mat target = ad_pow(e2, residual, static_cast<std::size_t>(1 - d));
    Mat psi(n, n);
    if (!target.is_zero()) {
      // Solve (ad e2)^{2-d} psi = -target over the degree d-2 block maps.
      Mat op;
      bool first = true;
      for (int k = d - 2; k < 2 - d; k += 2) {
        Mat step = detail::ad_e_matrix(m, e2, k);
        op = first ? step : step * op;
        first = false;
      }
      if (op.rows() != op.cols())
        throw error("phi3: AdSolveInfeasible (homogeneous hom-spaces have unequal dims)");
      Mat rhs = Rat(-1) * detail::to_coords(m, 2 - d, target);
      SolveResult sol = solve(op, rhs);
      if (sol.kind == SolveResult::Kind::none) throw error("phi3: AdSolveInfeasible");
      if (sol.kind == SolveResult::Kind::many) throw error("phi3: AdSolveNonUnique");
      psi = detail::from_coords(m, d - 2, sol.solution, n);
      phi = phi * (Mat::identity(n) + psi);
    }
    if (!residual.is_zero() || !psi.is_zero()) trace.push_back({d, residual, psi});
  }
  Splitting out = make_splitting(pair, std::move(phi), Method::phi3);
  return {std::move(out), std::move(trace)};
}

inline std::pair<Splitting, Phi3Trace> phi3_with_trace(const HLPair& pair) {
  return phi3_from(pair, phi1(pair));
}

inline Splitting phi3(const HLPair& pair) { return phi3_with_trace(pair).first; }

/// The defining conditions of phi_III, checked directly on a splitting:
/// e^{1-d}(e-tilde^{d}) = 0 for every d <= 1.
inline bool satisfies_condtr(const HLPair& pair, const Splitting& s) {
  Mat e2 = graded_e_full(pair);
  EMatrix et = e_tilde(pair, s);
  for (const auto& [d, part] : et.parts) {
    if (d > 1) continue;
    if (!ad_pow(e2, part, static_cast<std::size_t>(1 - d)).is_zero()) return false;
  }
  return true;
}

/// The letter's characterization: with X defined by u^{-1} e u = e + X in
/// graded coordinates, the splitting is phi_III iff [f, X] = 0 for the
/// canonical sl2 lowering operator f.
inline bool fX_check(const HLPair& pair, const Splitting& s) {
  Sl2Model sl2 = lower_f(pair);
  EMatrix et = e_tilde(pair, s);
  Mat x = et.full - graded_e_full(pair);
  return commutator(sl2.f2, x).is_zero();
}

/// An e-good splitting, if one exists, is unique and equals phi_III.
inline std::optional<Splitting> e_good_exists(const HLPair& pair) {
  Splitting candidate = phi3(pair);
  if (is_e_good(pair, candidate)) return candidate;
  return std::nullopt;
}

inline Splitting split_by_method(const HLPair& pair, Method m) {
  switch (m) {
    case Method::omega1: return omega1(pair);
    case Method::omega2: return omega2(pair);
    case Method::phi1: return phi1(pair);
    case Method::phi2: return phi2(pair);
    case Method::phi3: return phi3(pair);
    default: throw error("split_by_method: not a construction method");
  }
}

}  // namespace hls
