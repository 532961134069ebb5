#pragma once

// Block-matrix assembly kernels.  Every entry is a pure function of its own
// indices, so the OpenMP version is bitwise identical to the serial one for
// any schedule; the serial version is kept as the reference in tests and
// benchmarks.

#include "nevpick/types.hpp"

namespace nevpick::assembly {

enum class Exec { serial, parallel };

/// Fills an (m*b) x (m*b) matrix whose (i, j) block is block_fn(i, j, out)
/// where out is a b x b view to write into.
template <class BlockFn>
CMatrix fill_blocks_serial(Eigen::Index m, Eigen::Index b, BlockFn&& block_fn) {
  CMatrix out(m * b, m * b);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      auto blk = out.block(i * b, j * b, b, b);
      block_fn(i, j, blk);
    }
  }
  return out;
}

template <class BlockFn>
CMatrix fill_blocks_parallel(Eigen::Index m, Eigen::Index b, BlockFn&& block_fn) {
  CMatrix out(m * b, m * b);
  const Eigen::Index pairs = m * m;
#pragma omp parallel for schedule(static)
  for (Eigen::Index ij = 0; ij < pairs; ++ij) {
    const Eigen::Index i = ij / m;
    const Eigen::Index j = ij % m;
    auto blk = out.block(i * b, j * b, b, b);
    block_fn(i, j, blk);
  }
  return out;
}

template <class BlockFn>
CMatrix fill_blocks(Exec exec, Eigen::Index m, Eigen::Index b, BlockFn&& block_fn) {
  return exec == Exec::parallel ? fill_blocks_parallel(m, b, block_fn)
                                : fill_blocks_serial(m, b, block_fn);
}

/// Applies fn(s) for s in [0, count), in any order.
template <class Fn>
void for_each_index(Exec exec, Eigen::Index count, Fn&& fn) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index s = 0; s < count; ++s) fn(s);
  } else {
    for (Eigen::Index s = 0; s < count; ++s) fn(s);
  }
}

}  // namespace nevpick::assembly
