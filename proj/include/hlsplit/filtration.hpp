#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hlsplit/subspace.hpp"

namespace hls {

struct TypeRange {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const TypeRange& a, const TypeRange& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// Finite increasing filtration on Q^n. Steps are stored at the indices
/// where F jumps; F_p for any p is the step at the largest stored index <= p.
class FilteredSpace {
 public:
  FilteredSpace() : ambient_(0) {}
  FilteredSpace(std::size_t ambient, std::map<int, Subspace> steps,
                std::optional<std::pair<int, int>> declared_range = std::nullopt)
      : ambient_(ambient), steps_(std::move(steps)), declared_(declared_range),
        zero_(Subspace::zero(ambient)) {
    for (auto& [p, s] : steps_)
      if (s.ambient_dim() != ambient_) throw error("FilteredSpace: ambient mismatch at step " + std::to_string(p));
  }

  /// Single-step filtration {index -> full space} (the trivial filtration
  /// translated into the given position).
  static FilteredSpace trivial(std::size_t ambient, int index) {
    std::map<int, Subspace> steps;
    steps[index] = Subspace::full(ambient);
    return FilteredSpace(ambient, std::move(steps));
  }

  std::size_t ambient_dim() const { return ambient_; }
  const std::map<int, Subspace>& steps() const { return steps_; }
  const std::optional<std::pair<int, int>>& declared_range() const { return declared_; }

  const Subspace& step_at(int p) const {
    auto it = steps_.upper_bound(p);
    if (it == steps_.begin()) return zero_;
    --it;
    return it->second;
  }

  /// Checks nesting and exhaustiveness; returns the minimal type range
  /// [a,b] outside which the graded pieces vanish.
  TypeRange validate() const {
    if (ambient_ == 0) return TypeRange{0, 0};
    if (steps_.empty()) throw error("FilteredSpace: NotExhaustive (no steps)");
    const Subspace* prev = nullptr;
    int prev_idx = 0;
    for (const auto& [p, s] : steps_) {
      if (prev && !s.contains(*prev))
        throw error("FilteredSpace: NonNested(" + std::to_string(prev_idx) + "," +
                    std::to_string(p) + ")");
      prev = &s;
      prev_idx = p;
    }
    if (steps_.rbegin()->second.dim() != ambient_)
      throw error("FilteredSpace: NotExhaustive (top step is not the full space)");
    int a = 0, b = 0;
    bool found = false;
    std::size_t prev_dim = 0;
    for (const auto& [p, s] : steps_) {
      if (s.dim() > prev_dim) {
        if (!found) a = p;
        b = p;
        found = true;
      }
      prev_dim = s.dim();
    }
    if (!found) throw error("FilteredSpace: NotExhaustive (all steps empty)");
    return TypeRange{a, b};
  }

  /// Indices where the filtration jumps (dim increases).
  std::vector<int> jumps() const {
    std::vector<int> out;
    std::size_t prev = 0;
    for (const auto& [p, s] : steps_) {
      if (s.dim() > prev) out.push_back(p);
      prev = s.dim();
    }
    return out;
  }

  /// F'[k]_p = F_{p+k}: stored index q moves to q-k.
  FilteredSpace translate(int k) const {
    std::map<int, Subspace> steps;
    for (const auto& [p, s] : steps_) steps[p - k] = s;
    std::optional<std::pair<int, int>> declared;
    if (declared_) declared = std::make_pair(declared_->first - k, declared_->second - k);
    return FilteredSpace(ambient_, std::move(steps), declared);
  }

  /// Transpose-dual filtration on the coordinate-dual space:
  /// F^o_p = annihilator(F_{-p-1}). A valid range [a,b] becomes [-b,-a].
  FilteredSpace dual() const {
    std::map<int, Subspace> steps;
    for (int p : jumps()) steps[-p] = annihilator(step_at(p - 1));
    if (ambient_ > 0 && steps.empty()) steps[0] = Subspace::full(ambient_);
    return FilteredSpace(ambient_, std::move(steps));
  }

 private:
  std::size_t ambient_;
  std::map<int, Subspace> steps_;
  std::optional<std::pair<int, int>> declared_;
  Subspace zero_;
};

/// Deterministic graded model of a filtration: for each jump index p a
/// section (columns of representatives of Gr_p chosen by the pivot rule of
/// complement_in) and the projection along the resulting total decomposition.
class GradedModel {
 public:
  struct Piece {
    int index = 0;
    std::size_t offset = 0;  // column offset in the total section matrix
    Mat section;             // ambient x dim_p
    Mat projection;          // dim_p x ambient
    std::size_t dim() const { return section.cols(); }
  };

  GradedModel() : ambient_(0) {}

  static GradedModel from(const FilteredSpace& f) {
    TypeRange tr = f.validate();
    (void)tr;
    GradedModel m;
    m.ambient_ = f.ambient_dim();
    Mat s(m.ambient_, 0);
    std::size_t offset = 0;
    for (int p : f.jumps()) {
      Subspace comp = complement_in(f.step_at(p - 1), f.step_at(p));
      Piece piece;
      piece.index = p;
      piece.offset = offset;
      piece.section = comp.basis();
      offset += piece.dim();
      s = Mat::hcat(s, piece.section);
      m.pieces_.push_back(std::move(piece));
    }
    m.finish(s);
    return m;
  }

  /// Model of the dual filtration derived from a primal model: the section
  /// of Gr_p(V^o) is the dual basis of the primal block -p, so the canonical
  /// identification Gr_p(V^o) = (Gr_{-p} V)^o is the identity matrix.
  static GradedModel dual_of(const GradedModel& primal) {
    GradedModel m;
    m.ambient_ = primal.ambient_;
    Mat s(m.ambient_, 0);
    std::size_t offset = 0;
    for (auto it = primal.pieces_.rbegin(); it != primal.pieces_.rend(); ++it) {
      Piece piece;
      piece.index = -it->index;
      piece.offset = offset;
      piece.section = it->projection.transpose();
      offset += piece.dim();
      s = Mat::hcat(s, piece.section);
      m.pieces_.push_back(std::move(piece));
    }
    m.finish(s);
    return m;
  }

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Mat& section_matrix() const { return section_; }        // ambient x ambient
  const Mat& projection_matrix() const { return projection_; }  // inverse of section matrix

  const Piece* find(int p) const {
    for (const auto& piece : pieces_)
      if (piece.index == p) return &piece;
    return nullptr;
  }

  std::size_t dim_at(int p) const {
    const Piece* piece = find(p);
    return piece ? piece->dim() : 0;
  }

  /// Graded-coordinate matrix of an ambient-coordinate square matrix.
  Mat to_graded(const Mat& ambient_sq) const { return projection_ * ambient_sq * section_; }

 private:
  void finish(const Mat& s) {
    section_ = s;
    if (ambient_ == 0) {
      projection_ = Mat(0, 0);
      return;
    }
    projection_ = inverse(section_);
    for (auto& piece : pieces_)
      piece.projection = projection_.block(piece.offset, 0, piece.dim(), ambient_);
  }

  std::size_t ambient_;
  std::vector<Piece> pieces_;
  Mat section_;
  Mat projection_;
};

/// A linear map between filtered spaces carrying its translation [n] and a
/// formal twist tag (m); the twist acts as the identity on spaces.
struct FilteredMap {
  Mat matrix;
  FilteredSpace source;
  FilteredSpace target;
  int translation = 0;
  int twist = 0;
};

/// Returns the smallest source index p with matrix . F_p not contained in
/// F_{p+n}, or nullopt when the map is filtered.
inline std::optional<int> filtered_violation(const FilteredMap& m) {
  if (m.matrix.rows() != m.target.ambient_dim() || m.matrix.cols() != m.source.ambient_dim())
    throw error("FilteredMap: dimension mismatch");
  for (int p : m.source.jumps()) {
    const Subspace& src = m.source.step_at(p);
    Subspace image = Subspace::span(m.matrix * src.basis());
    if (!m.target.step_at(p + m.translation).contains(image)) return p;
  }
  return std::nullopt;
}

inline bool is_filtered(const FilteredMap& m) { return !filtered_violation(m).has_value(); }

/// Transpose-dual map between the dual filtered spaces. The effective
/// translation on duals is unchanged; the twist tag is negated.
inline FilteredMap dual_map(const FilteredMap& m) {
  return FilteredMap{m.matrix.transpose(), m.target.dual(), m.source.dual(), m.translation,
                     -m.twist};
}

}  // namespace hls
