#include "treeising/moments.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "treeising/errors.hpp"

namespace treeising {

MomentEstimate empirical_moments(const SampleBatch& batch,
                                 MomentSource source) {
  const int m = batch.m();
  const int n = batch.n();
  if (m < 2) throw structure_error("need at least 2 samples for moments");

  std::vector<std::int64_t> sum(n, 0);
  std::vector<std::int64_t> sum2(static_cast<std::size_t>(n) * n, 0);
  const std::int8_t* row = batch.values().data();
  for (int k = 0; k < m; ++k, row += n) {
    for (int i = 0; i < n; ++i) {
      sum[i] += row[i];
      for (int j = i + 1; j < n; ++j)
        sum2[static_cast<std::size_t>(i) * n + j] += row[i] * row[j];
    }
  }

  MomentEstimate out;
  out.source = source;
  out.mean.resize(n);
  for (int i = 0; i < n; ++i) out.mean(i) = double(sum[i]) / m;
  for (int i = 0; i < n; ++i) {
    if (std::llabs(sum[i]) == m) {
      throw degenerate_column_error(
          i, "column " + std::to_string(i) + " is constant; variance is zero");
    }
  }

  out.cov.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.cov(i, i) = 1.0 - out.mean(i) * out.mean(i);
    for (int j = i + 1; j < n; ++j) {
      double eij = double(sum2[static_cast<std::size_t>(i) * n + j]) / m;
      double c = eij - out.mean(i) * out.mean(j);
      out.cov(i, j) = c;
      out.cov(j, i) = c;
    }
  }

  out.corr.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.corr(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double r = out.cov(i, j) / std::sqrt(out.cov(i, i) * out.cov(j, j));
      out.corr(i, j) = r;
      out.corr(j, i) = r;
    }
  }
  return out;
}

}  // namespace treeising
