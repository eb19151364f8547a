#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coverlink/errors.hpp"
#include "coverlink/presentation.hpp"
#include "coverlink/word.hpp"

namespace coverlink {

enum class Strategy {
  hlt,            // Haselgrove-Leech-Trotter: scan and fill relators coset by coset
  hlt_lookahead,  // HLT, plus a lookahead pass whenever the table fills up
  felsch,         // define the first hole, then close all consequences
};

inline constexpr std::size_t default_max_cosets = 1'000'000;

struct EnumerationOptions {
  std::size_t max_cosets = default_max_cosets;
  Strategy strategy = Strategy::hlt_lookahead;
};

// A closed, complete coset table. Cosets are numbered 0..size()-1, coset 0 is
// the subgroup itself, and the numbering is standardized: cosets appear in the
// order they are first reached by a breadth-first walk over the columns
// g1, g1^-1, g2, g2^-1, ...
//
// Construction verifies that every relator fixes every coset, that every
// subgroup generator fixes coset 0, and that the action is transitive.
class CosetTable {
 public:
  CosetTable(GroupPresentation presentation, std::vector<Word> subgroup,
             std::vector<std::vector<int>> action)
      : presentation_(std::move(presentation)), subgroup_(std::move(subgroup)), action_(std::move(action)) {
    const std::size_t ngens = presentation_.generators().size();
    if (action_.size() != ngens) throw TableMismatch("one permutation per generator required");
    size_ = ngens == 0 ? 1 : action_[0].size();
    inverse_.assign(ngens, std::vector<int>(size_, -1));
    for (std::size_t g = 0; g < ngens; ++g) {
      if (action_[g].size() != size_) throw TableMismatch("permutations of unequal degree");
      for (std::size_t c = 0; c < size_; ++c) {
        const int d = action_[g][c];
        if (d < 0 || static_cast<std::size_t>(d) >= size_ || inverse_[g][d] != -1)
          throw TableMismatch("generator '" + presentation_.generators()[g] + "' does not act as a permutation");
        inverse_[g][d] = static_cast<int>(c);
      }
    }
    for (const auto& w : subgroup_) presentation_.check_word(w);

    for (const auto& r : presentation_.relators()) {
      const auto cols = presentation_.columns(r);
      for (std::size_t c = 0; c < size_; ++c)
        if (apply_columns(static_cast<int>(c), cols) != static_cast<int>(c))
          throw TableMismatch("relator " + r.to_string() + " moves coset " + std::to_string(c));
    }
    for (const auto& w : subgroup_)
      if (apply(0, w) != 0) throw TableMismatch("subgroup generator " + w.to_string() + " moves coset 0");

    std::vector<char> seen(size_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      for (std::size_t g = 0; g < ngens; ++g)
        for (int d : {action_[g][c], inverse_[g][c]})
          if (!seen[d]) {
            seen[d] = 1;
            ++reached;
            stack.push_back(d);
          }
    }
    if (reached != size_) throw TableMismatch("action is not transitive");
    build_tree();
  }

  std::size_t size() const { return size_; }
  const GroupPresentation& presentation() const { return presentation_; }
  const std::vector<Word>& subgroup() const { return subgroup_; }

  // Image of coset c under generator g (inverse when `inverse` is set).
  int image(int c, std::size_t g, bool inverse = false) const {
    return inverse ? inverse_[g][c] : action_[g][c];
  }

  // Permutation of the cosets induced by generator g.
  const std::vector<int>& permutation(std::size_t g) const { return action_[g]; }

  int apply_columns(int c, const std::vector<int>& cols) const {
    for (int x : cols) c = (x & 1) ? inverse_[x >> 1][c] : action_[x >> 1][c];
    return c;
  }

  // Right action: the coset c·w.
  int apply(int c, const Word& w) const { return apply_columns(c, presentation_.columns(w)); }

  std::vector<int> permutation(const Word& w) const {
    const auto cols = presentation_.columns(w);
    std::vector<int> out(size_);
    for (std::size_t c = 0; c < size_; ++c) out[c] = apply_columns(static_cast<int>(c), cols);
    return out;
  }

  // Edge of the breadth-first spanning tree behind the standard numbering:
  // for c > 0, the (coset, column) pair from which c was first reached.
  std::pair<int, int> tree_edge(int c) const {
    return tree_[c];
  }

  // Word w with 0·w = c, read off the spanning tree.
  Word representative(int c) const {
    std::vector<Letter> rev;
    while (c != 0) {
      auto [parent, col] = tree_[c];
      rev.push_back(Letter{presentation_.generators()[col >> 1], (col & 1) ? -1L : 1L});
      c = parent;
    }
    return Word(std::vector<Letter>(rev.rbegin(), rev.rend()));
  }

 private:
  void build_tree() {
    const std::size_t ngens = presentation_.generators().size();
    std::vector<std::pair<int, int>> tree(size_, {-1, -1});
    std::vector<char> seen(size_, 0);
    std::vector<int> order{0};
    seen[0] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int c = order[k];
      for (std::size_t col = 0; col < 2 * ngens; ++col) {
        const int d = image(c, col >> 1, col & 1);
        if (!seen[d]) {
          seen[d] = 1;
          tree[d] = {c, static_cast<int>(col)};
          order.push_back(d);
        }
      }
    }
    tree_ = std::move(tree);
  }

  GroupPresentation presentation_;
  std::vector<Word> subgroup_;
  std::vector<std::vector<int>> action_;
  std::vector<std::vector<int>> inverse_;
  std::size_t size_ = 1;
  std::vector<std::pair<int, int>> tree_;
};

namespace detail {

class CosetEnumerator {
 public:
  CosetEnumerator(const GroupPresentation& pres, const std::vector<Word>& subgroup, EnumerationOptions opts)
      : pres_(pres), subgroup_words_(subgroup), opts_(opts), ncols_(2 * static_cast<int>(pres.generators().size())) {
    if (opts_.max_cosets == 0) throw std::invalid_argument("max_cosets must be positive");
    for (const auto& r : pres.relators()) {
      auto cols = pres.columns(r);
      if (!cols.empty()) relators_.push_back(std::move(cols));
    }
    for (const auto& w : subgroup) subgroup_.push_back(pres.columns(w));
    if (opts_.strategy == Strategy::felsch) build_conjugates();
    new_row();
  }

  CosetTable run() {
    switch (opts_.strategy) {
      case Strategy::hlt:
      case Strategy::hlt_lookahead:
        run_hlt();
        break;
      case Strategy::felsch:
        run_felsch();
        break;
    }
    return finish();
  }

 private:
  struct TableFull {};

  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c) * ncols_ + x]; }
  bool alive(int c) const { return parent_[c] == c; }

  int new_row() {
    const int c = static_cast<int>(parent_.size());
    table_.resize(table_.size() + ncols_, -1);
    parent_.push_back(c);
    ++alive_count_;
    return c;
  }

  void define(int c, int x) {
    if (parent_.size() >= opts_.max_cosets) throw TableFull{};
    const int d = new_row();
    entry(c, x) = d;
    entry(d, x ^ 1) = c;
    note_deduction(c, x);
  }

  void note_deduction(int c, int x) {
    if (record_deductions_) deductions_.emplace_back(c, x);
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    const int lo = a < b ? a : b;
    const int hi = a < b ? b : a;
    parent_[hi] = lo;
    --alive_count_;
    queue_.push_back(hi);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      const int g = queue_[q];
      for (int x = 0; x < ncols_; ++x) {
        const int d = entry(g, x);
        if (d < 0) continue;
        entry(d, x ^ 1) = -1;
        const int mu = rep(g);
        const int nu = rep(d);
        if (entry(mu, x) >= 0) {
          merge(nu, entry(mu, x));
        } else if (entry(nu, x ^ 1) >= 0) {
          merge(mu, entry(nu, x ^ 1));
        } else {
          entry(mu, x) = nu;
          entry(nu, x ^ 1) = mu;
          note_deduction(mu, x);
        }
      }
    }
    queue_.clear();
  }

  // Traces w from c forwards and backwards; closes a one-letter gap as a
  // deduction and turns a complete mismatch into a coincidence. With `fill`
  // set, missing entries are defined as new cosets until the trace closes.
  void scan(int c, const std::vector<int>& w, bool fill) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, w[i]) >= 0) f = entry(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, w[j] ^ 1) >= 0) b = entry(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        entry(f, w[i]) = b;
        entry(b, w[i] ^ 1) = f;
        note_deduction(f, w[i]);
        return;
      }
      if (!fill) return;
      define(f, w[i]);
    }
  }

  void lookahead() {
    for (const auto& w : subgroup_) scan(rep(0), w, false);
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan(c, r, false);
      }
    }
  }

  // Renumbers live cosets consecutively, keeping their relative order.
  // Returns the old-to-new map (-1 for dead cosets).
  std::vector<int> compact() {
    std::vector<int> map(parent_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (alive(static_cast<int>(c))) map[c] = next++;
    std::vector<int> table(static_cast<std::size_t>(next) * ncols_, -1);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (map[c] < 0) continue;
      for (int x = 0; x < ncols_; ++x) {
        const int d = entry(static_cast<int>(c), x);
        table[static_cast<std::size_t>(map[c]) * ncols_ + x] = d < 0 ? -1 : map[d];
      }
    }
    table_ = std::move(table);
    parent_.resize(next);
    for (int c = 0; c < next; ++c) parent_[c] = c;
    alive_count_ = static_cast<std::size_t>(next);
    return map;
  }

  // Called when the table is full. Frees what it can; gives up when too
  // little room is left to make progress.
  std::vector<int> make_room(bool with_lookahead) {
    if (with_lookahead) lookahead();
    auto map = compact();
    const std::size_t slack = opts_.max_cosets / 64 + 1;
    if (alive_count_ + slack > opts_.max_cosets)
      throw LimitExceeded("coset enumeration needed more than " + std::to_string(opts_.max_cosets) +
                          " cosets (inconclusive)");
    return map;
  }

  // Where a scan that was at old coset c resumes after compaction.
  static int remap_forward(const std::vector<int>& map, int c) {
    int next = 0;
    for (std::size_t k = 0; k < map.size(); ++k) {
      if (map[k] < 0) continue;
      if (static_cast<int>(k) >= c) return map[k];
      next = map[k] + 1;
    }
    return next;
  }

  void run_hlt() {
    const bool use_lookahead = opts_.strategy == Strategy::hlt_lookahead;
    bool subgroup_done = false;
    int c = 0;
    for (;;) {
      try {
        if (!subgroup_done) {
          for (const auto& w : subgroup_) scan(rep(0), w, true);
          subgroup_done = true;
        }
        for (; c < static_cast<int>(parent_.size()); ++c) {
          if (!alive(c)) continue;
          for (const auto& r : relators_) {
            if (!alive(c)) break;
            scan(c, r, true);
          }
          for (int x = 0; x < ncols_ && alive(c); ++x)
            if (entry(c, x) < 0) define(c, x);
        }
        return;
      } catch (const TableFull&) {
        auto map = make_room(use_lookahead);
        c = remap_forward(map, c);
      }
    }
  }

  void build_conjugates() {
    conjugates_.assign(ncols_, {});
    for (const auto& r : relators_) {
      std::vector<int> inv(r.rbegin(), r.rend());
      for (int& x : inv) x ^= 1;
      for (const std::vector<int>* w : std::array<const std::vector<int>*, 2>{&r, &inv}) {
        for (std::size_t k = 0; k < w->size(); ++k) {
          std::vector<int> rot(w->begin() + k, w->end());
          rot.insert(rot.end(), w->begin(), w->begin() + k);
          auto& bucket = conjugates_[rot.front()];
          bool dup = false;
          for (const auto& existing : bucket) dup = dup || existing == rot;
          if (!dup) bucket.push_back(std::move(rot));
        }
      }
    }
  }

  void process_deductions() {
    constexpr std::size_t max_pending = 4096;
    while (!deductions_.empty()) {
      if (deductions_.size() > max_pending) {
        deductions_.clear();
        dirty_ = true;
        return;
      }
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& w : conjugates_[x]) {
        if (!alive(c)) break;
        scan(c, w, false);
      }
      if (alive(c)) {
        const int d = entry(c, x);
        if (d >= 0 && alive(d))
          for (const auto& w : conjugates_[x ^ 1]) {
            if (!alive(d)) break;
            scan(d, w, false);
          }
      }
      for (const auto& w : subgroup_) scan(rep(0), w, false);
    }
  }

  void run_felsch() {
    record_deductions_ = true;
    bool subgroup_done = false;
    bool rescanned = false;
    int c = 0;
    for (;;) {
      try {
        if (!subgroup_done) {
          for (const auto& w : subgroup_) scan(rep(0), w, true);
          subgroup_done = true;
          process_deductions();
        }
        for (;;) {
          int x = -1;
          for (; c < static_cast<int>(parent_.size()); ++c) {
            if (!alive(c)) continue;
            for (int y = 0; y < ncols_; ++y)
              if (entry(c, y) < 0) {
                x = y;
                break;
              }
            if (x >= 0) break;
          }
          if (x < 0 && !rescanned) {
            rescanned = true;
            c = 0;
            continue;
          }
          if (x < 0) {
            if (!dirty_) return;
            dirty_ = false;
            lookahead();
            process_deductions();
            c = 0;
            continue;
          }
          rescanned = false;
          define(c, x);
          process_deductions();
        }
      } catch (const TableFull&) {
        deductions_.clear();
        auto map = make_room(true);
        dirty_ = true;
        c = remap_forward(map, c);
      }
    }
  }

  CosetTable finish() {
    compact();
    const int n = static_cast<int>(parent_.size());
    // Standard numbering by first appearance.
    std::vector<int> order{0}, label(n, -1);
    label[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (int x = 0; x < ncols_; ++x) {
        const int d = entry(order[k], x);
        if (d < 0) throw std::logic_error("coset enumeration finished with an incomplete table");
        if (label[d] < 0) {
          label[d] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    const std::size_t ngens = pres_.generators().size();
    std::vector<std::vector<int>> action(ngens, std::vector<int>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t g = 0; g < ngens; ++g) action[g][k] = label[entry(order[k], static_cast<int>(2 * g))];
    return CosetTable(pres_, subgroup_words_, std::move(action));
  }

  const GroupPresentation& pres_;
  const std::vector<Word>& subgroup_words_;
  EnumerationOptions opts_;
  int ncols_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgroup_;
  std::vector<std::vector<std::vector<int>>> conjugates_;

  std::vector<int> table_;
  std::vector<int> parent_;
  std::size_t alive_count_ = 0;
  std::vector<int> queue_;
  std::vector<std::pair<int, int>> deductions_;
  bool record_deductions_ = false;
  bool dirty_ = false;
};

}  // namespace detail

// Todd-Coxeter enumeration of the cosets of the subgroup generated by
// `subgroup` in the group presented by `pres`. The returned table has exactly
// index-many cosets. Throws LimitExceeded when the working table would need
// more than opts.max_cosets rows; that outcome says nothing about finiteness.
inline CosetTable enumerate_cosets(const GroupPresentation& pres, const std::vector<Word>& subgroup = {},
                                   EnumerationOptions opts = {}) {
  for (const auto& w : subgroup) pres.check_word(w);
  return detail::CosetEnumerator(pres, subgroup, opts).run();
}

// Regular representation: cosets of the trivial subgroup.
inline CosetTable regular_table(const GroupPresentation& pres, EnumerationOptions opts = {}) {
  return enumerate_cosets(pres, {}, opts);
}

}  // namespace coverlink
