#pragma once

#include <random>
#include <string>
#include <vector>

#include "hlsplit/hlsplit.hpp"

namespace hls::testing {

/// Matrix literal with rational-string entries.
inline Mat mat_q(const std::vector<std::vector<std::string>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw error("mat_q: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rat::parse(rows[i][j]);
  }
  return m;
}

/// A random good splitting: the graded sections perturbed by a random
/// strictly lower unipotent graded map.
inline Splitting random_good_splitting(const HLPair& pair, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 2);
  std::uniform_int_distribution<int> pct(0, 99);
  std::size_t n = pair.dim();
  Mat psi(n, n);
  for (const auto& src : pair.model().pieces())
    for (const auto& tgt : pair.model().pieces()) {
      if (tgt.index >= src.index) continue;
      for (std::size_t i = 0; i < tgt.dim(); ++i)
        for (std::size_t j = 0; j < src.dim(); ++j)
          if (pct(rng) < 60) psi(tgt.offset + i, src.offset + j) = Rat(num(rng), den(rng));
    }
  Mat raw = pair.model().section_matrix() * (Mat::identity(n) + psi);
  return make_splitting(pair, raw, Method::custom);
}

}  // namespace hls::testing
