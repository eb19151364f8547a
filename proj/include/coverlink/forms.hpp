#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coverlink/clasp.hpp"
#include "coverlink/errors.hpp"
#include "coverlink/integer.hpp"

namespace coverlink {

using Rational = boost::multiprecision::cpp_rational;

class IntegerSymmetricForm {
 public:
  IntegerSymmetricForm() = default;

  explicit IntegerSymmetricForm(BigMatrix m) : m_(std::move(m)) {
    if (!is_symmetric(m_)) throw NotSymmetric("form matrix is not square and symmetric");
  }

  explicit IntegerSymmetricForm(const IntMatrix& m) : IntegerSymmetricForm(to_big(m)) {}

  std::size_t rank() const { return m_.size(); }
  const BigMatrix& matrix() const { return m_; }

  friend bool operator==(const IntegerSymmetricForm&, const IntegerSymmetricForm&) = default;

 private:
  BigMatrix m_;
};

inline IntegerSymmetricForm hyperbolic_form() { return IntegerSymmetricForm(IntMatrix{{0, 1}, {1, 0}}); }

// Cartan matrix of E8: a chain of seven nodes with the eighth attached to
// the fifth.
inline IntegerSymmetricForm e8_form() {
  IntMatrix m(8, std::vector<std::int64_t>(8, 0));
  for (std::size_t i = 0; i < 8; ++i) m[i][i] = 2;
  auto link = [&](std::size_t a, std::size_t b) { m[a][b] = m[b][a] = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return IntegerSymmetricForm(m);
}

inline IntegerSymmetricForm negate(const IntegerSymmetricForm& f) {
  BigMatrix m = f.matrix();
  for (auto& row : m)
    for (auto& v : row) v = -v;
  return IntegerSymmetricForm(std::move(m));
}

inline IntegerSymmetricForm direct_sum(const IntegerSymmetricForm& a, const IntegerSymmetricForm& b) {
  const std::size_t n = a.rank() + b.rank();
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) m[i][j] = a.matrix()[i][j];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) m[a.rank() + i][a.rank() + j] = b.matrix()[i][j];
  return IntegerSymmetricForm(std::move(m));
}

inline IntegerSymmetricForm direct_sum_power(const IntegerSymmetricForm& a, std::size_t k) {
  IntegerSymmetricForm out;
  for (std::size_t i = 0; i < k; ++i) out = direct_sum(out, a);
  return out;
}

// U^T F U.
inline IntegerSymmetricForm congruent(const IntegerSymmetricForm& f, const BigMatrix& u) {
  return IntegerSymmetricForm(multiply(multiply(transpose(u), f.matrix()), u));
}

inline IntegerSymmetricForm augment_form(const RingMatrix& b) {
  const std::size_t n = b.size();
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i].size() != n) throw NotHermitian("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(b[j][i] == b[i][j].involute()))
        throw NotHermitian("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      m[i][j] = b[i][j].augment();
    }
  }
  return IntegerSymmetricForm(std::move(m));
}

inline IntegerSymmetricForm augment_form(const TwistedLinkingMatrix& t) { return augment_form(t.lambda()); }

inline bool is_even(const IntegerSymmetricForm& f) {
  for (std::size_t i = 0; i < f.rank(); ++i)
    if (f.matrix()[i][i] % 2 != 0) return false;
  return true;
}

inline BigInt determinant(const IntegerSymmetricForm& f) { return determinant(f.matrix()); }

inline bool is_unimodular(const IntegerSymmetricForm& f) {
  const BigInt d = determinant(f);
  return d == 1 || d == -1;
}

// Exact signature by symmetric elimination over the rationals. A nonzero
// diagonal entry is a 1x1 pivot; if the remaining diagonal vanishes, a
// nonzero off-diagonal entry b gives the 2x2 pivot [[0, b], [b, 0]], which
// contributes one positive and one negative square.
inline long signature(const IntegerSymmetricForm& f) {
  const std::size_t n = f.rank();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(f.matrix()[i][j]);
  std::vector<char> done(n, 0);
  long sig = 0;
  std::size_t left = n;
  while (left > 0) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n && p == n; ++i)
      if (!done[i] && a[i][i] != 0) p = i;
    if (p != n) {
      sig += a[p][p] > 0 ? 1 : -1;
      done[p] = 1;
      --left;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i] || a[i][p] == 0) continue;
        const Rational c = a[i][p] / a[p][p];
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j]) a[i][j] -= c * a[p][j];
      }
      continue;
    }
    std::size_t r = n, s = n;
    for (std::size_t i = 0; i < n && r == n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
          r = i;
          s = j;
          break;
        }
    if (r == n) throw Degenerate("form is degenerate");
    // Both diagonal entries are zero; the block [[0, b], [b, 0]] has inverse
    // [[0, 1/b], [1/b, 0]]. Subtract M B^-1 M^T from the rest.
    const Rational b = a[r][s];
    done[r] = done[s] = 1;
    left -= 2;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) rest.push_back(i);
    std::vector<Rational> col_r(n), col_s(n);
    for (std::size_t i : rest) {
      col_r[i] = a[i][r];
      col_s[i] = a[i][s];
    }
    for (std::size_t i : rest)
      for (std::size_t j : rest) a[i][j] -= (col_r[i] * col_s[j] + col_s[i] * col_r[j]) / b;
  }
  return sig;
}

enum class Category { topological, smooth };

// Adjoin `count` copies of a block of signature `block_signature`: -E8
// (topological) or -(E8 + E8) (smooth) when the signature is positive, the
// opposite sign otherwise.
struct Stabilization {
  long count = 0;
  long block_signature = 0;
  friend bool operator==(const Stabilization&, const Stabilization&) = default;
};

inline void require_even_unimodular(const IntegerSymmetricForm& f) {
  if (!is_even(f)) throw NotEven("form has an odd diagonal entry");
  if (!is_unimodular(f)) throw NotUnimodular("determinant is " + determinant(f).str());
}

inline Stabilization e8_stabilization(const IntegerSymmetricForm& f, Category category) {
  require_even_unimodular(f);
  const long sig = signature(f);
  const long step = category == Category::smooth ? 16 : 8;
  if (sig % step != 0)
    throw SignatureObstructed("signature " + std::to_string(sig) + " is not divisible by " + std::to_string(step));
  if (sig == 0) return {0, 0};
  return {(sig < 0 ? -sig : sig) / step, sig > 0 ? -step : step};
}

struct HyperbolicDecomposition {
  BigMatrix basis_change;  // columns e_1, f_1, e_2, f_2, ...
  std::size_t blocks = 0;
};

inline constexpr long default_search_bound = 4;
inline constexpr long max_search_bound = 32;

namespace detail {

inline BigInt pair(const BigMatrix& g, const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  BigInt s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s += x[i] * g[i][j] * y[j];
  }
  return s;
}

inline BigInt gcd_of(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// First primitive isotropic vector with max-norm exactly b. Coordinates run
// through 0, 1, -1, 2, -2, ..., the first coordinate fastest, so small and
// positive vectors come first.
inline bool isotropic_in_layer(const BigMatrix& g, long b, std::vector<BigInt>& out) {
  const std::size_t k = g.size();
  std::vector<std::int64_t> small(k * k);
  bool fits = true;
  for (std::size_t i = 0; i < k && fits; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (abs_value(g[i][j]) > BigInt(1) << 24) {
        fits = false;
        break;
      }
      small[i * k + j] = static_cast<std::int64_t>(g[i][j]);
    }
  std::vector<long> digit(k, 0), v(k, 0);
  for (;;) {
    long top = 0;
    for (long x : v) top = std::max(top, x < 0 ? -x : x);
    if (top == b) {
      bool zero = false;
      if (fits) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (v[i] == 0) continue;
          std::int64_t row = 0;
          for (std::size_t j = 0; j < k; ++j) row += small[i * k + j] * v[j];
          s += row * v[i];
        }
        zero = s == 0;
      } else {
        std::vector<BigInt> big(v.begin(), v.end());
        zero = pair(g, big, big) == 0;
      }
      if (zero) {
        std::vector<BigInt> big(v.begin(), v.end());
        if (gcd_of(big) == 1) {
          out = std::move(big);
          return true;
        }
      }
    }
    std::size_t i = 0;
    while (i < k && digit[i] == 2 * b) {
      digit[i] = 0;
      v[i] = 0;
      ++i;
    }
    if (i == k) return false;
    ++digit[i];
    v[i] = (digit[i] + 1) / 2 * (digit[i] % 2 ? 1 : -1);
  }
}

// Coefficients c with sum c_i u_i = gcd(u).
inline std::vector<BigInt> bezout(const std::vector<BigInt>& u) {
  std::vector<BigInt> c(u.size(), 0);
  BigInt g = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if (g == 0) {
      g = u[i];
      c[i] = 1;
      continue;
    }
    // s g + t u_i = h
    BigInt r0 = g, r1 = u[i], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const BigInt q = r0 / r1;
      BigInt tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    for (std::size_t j = 0; j < i; ++j) c[j] *= s0;
    c[i] = t0;
    g = r0;
  }
  if (g < 0)
    for (auto& x : c) x = -x;
  return c;
}

// Integer kernel basis of the rows of p (columns of the returned matrix),
// by unimodular column operations.
inline BigMatrix integer_kernel(BigMatrix p, std::size_t k) {
  BigMatrix t = identity_matrix<BigInt>(k);
  std::size_t lead = 0;
  for (std::size_t row = 0; row < p.size() && lead < k; ++row) {
    for (std::size_t j = lead + 1; j < k; ++j)
      while (p[row][j] != 0) {
        const BigInt q = p[row][lead] / p[row][j];
        for (std::size_t i = 0; i < p.size(); ++i) p[i][lead] -= q * p[i][j];
        for (std::size_t i = 0; i < k; ++i) t[i][lead] -= q * t[i][j];
        for (std::size_t i = 0; i < p.size(); ++i) std::swap(p[i][lead], p[i][j]);
        for (std::size_t i = 0; i < k; ++i) std::swap(t[i][lead], t[i][j]);
      }
    if (p[row][lead] != 0) ++lead;
  }
  BigMatrix out(k, std::vector<BigInt>(k - lead));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = lead; j < k; ++j) out[i][j - lead] = t[i][j];
  return out;
}

// Greedy size reduction: b_i -> b_i - q b_j (q = +-1) while the total of the
// absolute Gram entries strictly drops. Keeps the box search short after a
// few planes have been split off. Updates g and the basis columns in place.
inline void reduce_gram(BigMatrix& g, BigMatrix& basis) {
  const std::size_t k = g.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        for (int q : {1, -1}) {
          // Change in sum |g| from the new row i, column i and diagonal.
          BigInt delta = 0;
          const BigInt dii = g[i][i] - 2 * q * g[i][j] + g[j][j];
          delta += abs_value(dii) - abs_value(g[i][i]);
          for (std::size_t t = 0; t < k; ++t) {
            if (t == i) continue;
            delta += 2 * (abs_value(g[i][t] - q * g[j][t]) - abs_value(g[i][t]));
          }
          if (delta >= 0) continue;
          for (std::size_t t = 0; t < k; ++t) {
            if (t == i) continue;
            g[i][t] -= q * g[j][t];
            g[t][i] = g[i][t];
          }
          g[i][i] = dii;
          for (auto& row : basis) row[i] -= q * row[j];
          changed = true;
        }
      }
  }
}

}  // namespace detail

// Splits off hyperbolic planes one at a time: a primitive isotropic vector e
// in the current summand, a partner f with e.f = 1 and f.f = 0, then the
// orthogonal complement of span(e, f). The result is checked exactly.
inline HyperbolicDecomposition hyperbolic_basis(const IntegerSymmetricForm& f, long search_bound = default_search_bound) {
  require_even_unimodular(f);
  if (signature(f) != 0) throw NonzeroSignature("signature " + std::to_string(signature(f)) + " is not zero");
  const std::size_t r = f.rank();
  const long ceiling = std::max(search_bound, max_search_bound);

  BigMatrix basis = identity_matrix<BigInt>(r);  // columns span the remaining summand
  BigMatrix u(r, std::vector<BigInt>());
  std::size_t blocks = 0;
  while (!basis.empty() && !basis[0].empty()) {
    const std::size_t k = basis[0].size();
    BigMatrix g = multiply(multiply(transpose(basis), f.matrix()), basis);
    detail::reduce_gram(g, basis);

    std::vector<BigInt> e;
    bool found = false;
    for (long bound = search_bound, b = 1; !found && bound <= ceiling; bound *= 2)
      for (; b <= bound && !found; ++b) found = detail::isotropic_in_layer(g, b, e);
    if (!found)
      throw SearchExhausted("no primitive isotropic vector with entries up to " + std::to_string(ceiling));

    std::vector<BigInt> ge(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) ge[i] += g[i][j] * e[j];
    std::vector<BigInt> w = detail::bezout(ge);  // e.w = 1
    const BigInt half = detail::pair(g, w, w) / 2;
    std::vector<BigInt> fv(k);
    for (std::size_t i = 0; i < k; ++i) fv[i] = w[i] - half * e[i];

    std::vector<BigInt> gf(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gf[i] += g[i][j] * fv[j];

    // Complement of span(e, f). If some pair of coordinates of e, f has a
    // unit minor, the other basis vectors projected along the plane form a
    // basis and keep the Gram entries small; otherwise fall back to the
    // kernel of x -> (e.x, f.x).
    BigMatrix complement;
    for (std::size_t p = 0; p < k && complement.empty(); ++p)
      for (std::size_t q = p + 1; q < k && complement.empty(); ++q) {
        const BigInt minor = e[p] * fv[q] - e[q] * fv[p];
        if (minor != 1 && minor != -1) continue;
        complement.assign(k, std::vector<BigInt>());
        for (std::size_t i = 0; i < k; ++i) {
          if (i == p || i == q) continue;
          // b_i - (b_i.f) e - (b_i.e) f
          for (std::size_t t = 0; t < k; ++t)
            complement[t].push_back((t == i ? 1 : 0) - gf[i] * e[t] - ge[i] * fv[t]);
        }
      }
    if (complement.empty()) complement = detail::integer_kernel({ge, gf}, k);

    for (std::size_t i = 0; i < r; ++i) {
      BigInt ce = 0, cf = 0;
      for (std::size_t j = 0; j < k; ++j) {
        ce += basis[i][j] * e[j];
        cf += basis[i][j] * fv[j];
      }
      u[i].push_back(ce);
      u[i].push_back(cf);
    }
    ++blocks;
    basis = k == 2 ? BigMatrix(r, std::vector<BigInt>()) : multiply(basis, complement);
  }

  HyperbolicDecomposition out{u, blocks};
  if (!(congruent(f, out.basis_change) == direct_sum_power(hyperbolic_form(), blocks)))
    throw std::logic_error("hyperbolic basis failed verification");
  const BigInt d = determinant(out.basis_change);
  if (d != 1 && d != -1) throw std::logic_error("hyperbolic basis change is not unimodular");
  return out;
}

}  // namespace coverlink
