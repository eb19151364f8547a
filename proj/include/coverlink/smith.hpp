#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coverlink/integer.hpp"

namespace coverlink {

// Finitely generated abelian group  Z^free_rank + Z_{f1} + ... + Z_{fk},
// with 2 <= f1 | f2 | ... | fk.
struct AbelianGroupInvariants {
  std::vector<BigInt> invariant_factors;
  std::size_t free_rank = 0;

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }

  // Group order when finite.
  std::optional<BigInt> order() const {
    if (free_rank != 0) return std::nullopt;
    BigInt o = 1;
    for (const auto& f : invariant_factors) o *= f;
    return o;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    const char* sep = "";
    if (free_rank == 1) {
      os << "Z";
      sep = " + ";
    } else if (free_rank > 1) {
      os << "Z^" << free_rank;
      sep = " + ";
    }
    for (const auto& f : invariant_factors) {
      os << sep << "Z_" << f;
      sep = " + ";
    }
    return os.str();
  }

  friend bool operator==(const AbelianGroupInvariants&, const AbelianGroupInvariants&) = default;
};

namespace detail {

// Diagonalizes `a` in place by unimodular row and column operations and
// returns the nonzero diagonal (absolute values), which forms a divisibility
// chain. The pivot is always an entry of minimal absolute value in the
// remaining block; ties go to the lowest row, then the lowest column.
template <class Int>
std::vector<Int> smith_diagonal(Matrix<Int>& a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<Int> diagonal;
  const std::size_t limit = std::min(rows, cols);

  for (std::size_t t = 0; t < limit; ++t) {
    for (;;) {
      // pivot search
      std::size_t pi = rows, pj = cols;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          Int v = abs_value(a[i][j]);
          if (pi == rows || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) return diagonal;

      if (pi != t) std::swap(a[pi], a[t]);
      if (pj != t)
        for (std::size_t i = t; i < rows; ++i) std::swap(a[i][pj], a[i][t]);

      const Int pivot = a[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Int q = a[i][t] / pivot;
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j)
            if (a[t][j] != 0) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Int q = a[t][j] / pivot;
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i)
            if (a[i][t] != 0) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % pivot != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] = checked_add(a[t][k], a[i][k]);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diagonal.push_back(abs_value(a[t][t]));
  }
  return diagonal;
}

inline AbelianGroupInvariants invariants_from_diagonal(const std::vector<BigInt>& diagonal,
                                                       std::size_t cols) {
  AbelianGroupInvariants out;
  out.free_rank = cols - diagonal.size();
  for (const auto& d : diagonal)
    if (d != 1) out.invariant_factors.push_back(d);
  return out;
}

}  // namespace detail

// Cokernel of the integer matrix `relations` (one row per relation, `cols`
// generators). Runs in checked 64-bit arithmetic and falls back to arbitrary
// precision on overflow.
inline AbelianGroupInvariants cokernel_invariants(const IntMatrix& relations, std::size_t cols) {
  std::vector<BigInt> diagonal;
  try {
    IntMatrix work = relations;
    for (auto v : detail::smith_diagonal(work, cols)) diagonal.emplace_back(v);
  } catch (const detail::Overflow&) {
    BigMatrix work = to_big(relations);
    diagonal = detail::smith_diagonal(work, cols);
  }
  return detail::invariants_from_diagonal(diagonal, cols);
}

inline AbelianGroupInvariants cokernel_invariants(const BigMatrix& relations, std::size_t cols) {
  BigMatrix work = relations;
  return detail::invariants_from_diagonal(detail::smith_diagonal(work, cols), cols);
}

// Nonzero Smith invariants (including ones) of a square or rectangular matrix.
inline std::vector<BigInt> smith_form_diagonal(const IntMatrix& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  try {
    IntMatrix work = m;
    std::vector<BigInt> out;
    for (auto v : detail::smith_diagonal(work, cols)) out.emplace_back(v);
    return out;
  } catch (const detail::Overflow&) {
    BigMatrix work = to_big(m);
    return detail::smith_diagonal(work, cols);
  }
}

}  // namespace coverlink
