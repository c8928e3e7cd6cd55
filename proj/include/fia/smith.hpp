#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <utility>
#include <vector>

namespace fia {

using SmithInt = boost::multiprecision::cpp_int;
using SmithMatrix = std::vector<std::vector<SmithInt>>;

// Invariant factors d1 | d2 | ... (positive, nonzero entries only) of an
// integer matrix. Exact arithmetic, so no overflow concerns.
inline std::vector<SmithInt> smith_invariants(SmithMatrix m) {
  using boost::multiprecision::abs;
  using boost::multiprecision::gcd;

  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  std::vector<SmithInt> diag;

  int t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero absolute value in the remaining block
    int pr = -1, pc = -1;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c)
        if (m[r][c] != 0 && (pr < 0 || abs(m[r][c]) < abs(m[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;  // block is zero
    std::swap(m[t], m[pr]);
    for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        SmithInt q = m[r][t] / m[t][t];
        for (int c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) {  // remainder smaller than pivot: swap up and redo
          std::swap(m[t], m[r]);
          clean = false;
        }
      }
      for (int c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        SmithInt q = m[t][c] / m[t][t];
        for (int r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) {
          for (int r = t; r < rows; ++r) std::swap(m[r][t], m[r][c]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      for (int r = t + 1; r < rows && clean; ++r)
        for (int c = t + 1; c < cols && clean; ++c)
          if (m[r][c] % m[t][t] != 0) {
            for (int cc = t; cc < cols; ++cc) m[t][cc] += m[r][cc];
            clean = false;
          }
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace fia
