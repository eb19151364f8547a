#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coverlink/errors.hpp"
#include "coverlink/group_ring.hpp"
#include "coverlink/integer.hpp"
#include "coverlink/smith.hpp"

// Twisted linking calculus. A framed link in a 3-manifold with finite
// covering group G is tracked through its twisted linking matrix: entry
// (i, j) is sum_g lk(L_i~, L_j~ . g) g in Z[G], and the diagonal carries the
// upstairs framing n'_i at the identity. Downstairs framings obey
//   n_i = n'_i + sum_{g != 1} lambda_ii(g).
namespace coverlink {

struct ClaspOp {
  enum class Kind { clasp, self };
  Kind kind = Kind::clasp;
  std::size_t i = 0;
  std::size_t j = 0;  // unused for self-clasps
  int sign = 1;
  std::size_t element = 0;

  static ClaspOp clasp(std::size_t i, std::size_t j, int sign, std::size_t g) { return {Kind::clasp, i, j, sign, g}; }
  static ClaspOp self(std::size_t i, int sign, std::size_t g) { return {Kind::self, i, 0, sign, g}; }

  friend bool operator==(const ClaspOp&, const ClaspOp&) = default;
};

// Instructions building a link from the unlink with the given framings.
// With track_mu set, evaluation also reports the quadratic refinement.
struct ClaspProgram {
  std::size_t n = 0;
  std::vector<std::int64_t> framings;
  std::vector<ClaspOp> ops;
  bool track_mu = false;
};

using RingMatrix = std::vector<std::vector<GroupRingElement>>;

class TwistedLinkingMatrix {
 public:
  // The 0-linked unlink: lambda_ii = n_i e, nothing off the diagonal.
  TwistedLinkingMatrix(GroupPtr group, std::vector<std::int64_t> framings)
      : group_(std::move(group)), framings_(std::move(framings)) {
    const std::size_t n = framings_.size();
    lambda_.assign(n, std::vector<GroupRingElement>(n, GroupRingElement(group_)));
    ledger_.assign(n, GroupRingElement(group_));
    for (std::size_t i = 0; i < n; ++i) lambda_[i][i].add_term(0, framings_[i]);
  }

  std::size_t size() const { return framings_.size(); }
  const GroupPtr& group() const { return group_; }
  const std::vector<std::int64_t>& framings() const { return framings_; }
  const RingMatrix& lambda() const { return lambda_; }
  const GroupRingElement& lambda(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    return lambda_[i][j];
  }
  const std::optional<std::vector<GroupRingElement>>& mu() const { return mu_; }

  std::int64_t upstairs_framing(std::size_t i) const {
    check_index(i);
    return lambda_[i][i].coefficient(0);
  }

  // A tracked mu is dropped; call track_mu() again once the moves are done.
  void apply(const ClaspOp& op) {
    mu_.reset();
    check_index(op.i);
    group_->check_element(op.element);
    if (op.sign != 1 && op.sign != -1) throw BadIndex("clasp sign must be +1 or -1");
    const std::size_t g = op.element;
    if (op.kind == ClaspOp::Kind::clasp) {
      check_index(op.j);
      if (op.i == op.j) throw BadIndex("clasp joins a component to itself; use a self-clasp");
      lambda_[op.i][op.j].add_term(g, op.sign);
      lambda_[op.j][op.i].add_term(group_->inverse(g), op.sign);
      return;
    }
    if (g == group_->identity()) throw IdentitySelfClasp("self-clasp along the identity element");
    auto& d = lambda_[op.i][op.i];
    d.add_term(g, op.sign);
    if (!group_->is_involution(g)) {
      d.add_term(group_->inverse(g), op.sign);
      ledger_[op.i].add_term(g, op.sign);
    }
    // The framing downstairs is what the move preserves; n' follows.
    d.add_term(0, framings_[op.i] - d.augment());
  }

  void apply(const std::vector<ClaspOp>& ops) {
    for (const auto& op : ops) apply(op);
  }

  // mu_i = (n'_i / 2) e + (self-clasps along non-involutions) + (lambda_ii(g) / 2) g
  // over involutions g; needs the even parts to be even.
  std::vector<GroupRingElement> compute_mu() const {
    std::vector<GroupRingElement> out;
    for (std::size_t i = 0; i < size(); ++i) {
      GroupRingElement m = ledger_[i];
      for (const auto& [g, c] : lambda_[i][i].terms()) {
        if (g != 0 && !group_->is_involution(g)) continue;
        if (c % 2 != 0)
          throw MuMismatch("component " + std::to_string(i) + " has odd coefficient at " + group_->name(g) +
                           "; no quadratic refinement");
        m.add_term(g, c / 2);
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  void track_mu() { mu_ = compute_mu(); }

  // Throws if a structural invariant fails; used by property checks.
  void check_invariants() const {
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j)
        if (!(lambda_[j][i] == lambda_[i][j].involute()))
          throw NotHermitian("lambda is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (lambda_[i][i].augment() != framings_[i])
        throw FramingInconsistent("component " + std::to_string(i) + " violates n = n' + sum of lift linkings");
      if (mu_) {
        const auto& m = (*mu_)[i];
        if (!(m + m.involute() == lambda_[i][i]))
          throw MuMismatch("lambda_ii differs from mu_i + involute(mu_i) at " + std::to_string(i));
      }
    }
  }

  friend bool operator==(const TwistedLinkingMatrix& a, const TwistedLinkingMatrix& b) {
    return a.group_ == b.group_ && a.framings_ == b.framings_ && a.lambda_ == b.lambda_ && a.mu_ == b.mu_;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= size()) throw BadIndex("component " + std::to_string(i) + " out of range");
  }

  GroupPtr group_;
  std::vector<std::int64_t> framings_;
  RingMatrix lambda_;
  std::vector<GroupRingElement> ledger_;
  std::optional<std::vector<GroupRingElement>> mu_;
};

inline TwistedLinkingMatrix eval(const ClaspProgram& prog, const GroupPtr& group) {
  if (prog.framings.size() != prog.n) throw BadIndex("program lists " + std::to_string(prog.framings.size()) +
                                                     " framings for " + std::to_string(prog.n) + " components");
  TwistedLinkingMatrix t(group, prog.framings);
  t.apply(prog.ops);
  if (prog.track_mu) t.track_mu();
  return t;
}

// (n d) x (n d) integer matrix of linking numbers between all lifts.
inline IntMatrix lifted_matrix(const TwistedLinkingMatrix& t) {
  const std::size_t n = t.size(), d = t.group()->order();
  IntMatrix m(n * d, std::vector<std::int64_t>(n * d, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto block = t.lambda(i, j).regular_matrix();
      for (std::size_t h = 0; h < d; ++h)
        for (std::size_t g = 0; g < d; ++g) m[i * d + h][j * d + g] = block[h][g];
    }
  return m;
}

inline AbelianGroupInvariants cover_surgery_homology(const TwistedLinkingMatrix& t) {
  return cokernel_invariants(lifted_matrix(t), t.size() * t.group()->order());
}

inline std::int64_t upstairs_framing(const TwistedLinkingMatrix& t, std::size_t i) { return t.upstairs_framing(i); }

namespace detail {

inline int sign_of(std::int64_t c) { return c > 0 ? 1 : -1; }
inline std::int64_t magnitude(std::int64_t c) { return c < 0 ? -c : c; }

// Self-clasps that produce the non-identity part of a diagonal entry, one
// representative per pair {g, g^-1}.
inline void emit_diagonal(std::vector<ClaspOp>& ops, const FiniteGroup& g, std::size_t i,
                          const GroupRingElement& entry, int flip) {
  for (int pass : {1, -1})
    for (const auto& [x, c] : entry.terms()) {
      if (x == 0 || sign_of(c) * flip != pass) continue;
      if (!g.is_involution(x) && g.inverse(x) < x) continue;
      for (std::int64_t k = 0; k < magnitude(c); ++k) ops.push_back(ClaspOp::self(i, pass, x));
    }
}

inline void emit_offdiagonal(std::vector<ClaspOp>& ops, std::size_t i, std::size_t j, const GroupRingElement& entry,
                             int flip) {
  for (int pass : {1, -1})
    for (const auto& [x, c] : entry.terms()) {
      if (sign_of(c) * flip != pass) continue;
      for (std::int64_t k = 0; k < magnitude(c); ++k) ops.push_back(ClaspOp::clasp(i, j, pass, x));
    }
}

}  // namespace detail

// Moves that clear the first row: lambda_0j = 0 for j > 0 and lambda_00 = n'_0 e.
inline ClaspProgram trivialize_first_row(const TwistedLinkingMatrix& t) {
  ClaspProgram prog{t.size(), t.framings(), {}, t.mu().has_value()};
  if (t.size() == 0) return prog;
  detail::emit_diagonal(prog.ops, *t.group(), 0, t.lambda(0, 0), -1);
  for (std::size_t j = 1; j < t.size(); ++j) detail::emit_offdiagonal(prog.ops, 0, j, t.lambda(0, j), -1);
  return prog;
}

inline void check_realizable(const RingMatrix& b, const std::vector<std::int64_t>& framings,
                             const std::optional<std::vector<GroupRingElement>>& mu) {
  const std::size_t n = framings.size();
  if (b.size() != n) throw BadIndex("matrix size does not match the framings");
  for (const auto& row : b)
    if (row.size() != n) throw BadIndex("matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!(b[j][i] == b[i][j].involute()))
        throw NotHermitian("B is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    if (b[i][i].augment() != framings[i])
      throw FramingInconsistent("framing " + std::to_string(framings[i]) + " of component " + std::to_string(i) +
                                " differs from the augmentation of B_ii");
  }
  if (!mu) return;
  if (mu->size() != n) throw MuMismatch("mu has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    if (!((*mu)[i] + (*mu)[i].involute() == b[i][i]))
      throw MuMismatch("B_ii differs from mu_i + involute(mu_i) at " + std::to_string(i));
}

// A program whose evaluation is exactly (B, framings, mu).
inline ClaspProgram realize(const RingMatrix& b, const std::vector<std::int64_t>& framings,
                            const std::optional<std::vector<GroupRingElement>>& mu = std::nullopt) {
  check_realizable(b, framings, mu);
  const std::size_t n = framings.size();
  ClaspProgram prog{n, framings, {}, mu.has_value()};
  if (n == 0) return prog;
  const auto& group = *b[0][0].group();
  for (std::size_t i = 0; i < n; ++i) {
    if (mu) {
      // Follow mu: a self-clasp along x books x into mu, an involution needs two.
      for (int pass : {1, -1})
        for (const auto& [x, c] : (*mu)[i].terms()) {
          if (x == 0 || detail::sign_of(c) != pass) continue;
          const std::int64_t reps = detail::magnitude(c) * (group.is_involution(x) ? 2 : 1);
          for (std::int64_t k = 0; k < reps; ++k) prog.ops.push_back(ClaspOp::self(i, pass, x));
        }
    } else {
      detail::emit_diagonal(prog.ops, group, i, b[i][i], 1);
    }
    for (std::size_t j = i + 1; j < n; ++j) detail::emit_offdiagonal(prog.ops, i, j, b[i][j], 1);
  }
  return prog;
}

}  // namespace coverlink
