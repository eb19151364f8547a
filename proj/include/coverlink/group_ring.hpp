#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverlink/coset_enumeration.hpp"
#include "coverlink/errors.hpp"
#include "coverlink/integer.hpp"

namespace coverlink {

// A finite group read off a regular coset table. Element i is the coset
// reached by the table's tree word w_i; element 0 is the identity.
class FiniteGroup {
 public:
  static std::shared_ptr<const FiniteGroup> from_table(const CosetTable& table) {
    return std::shared_ptr<const FiniteGroup>(new FiniteGroup(table));
  }

  static std::shared_ptr<const FiniteGroup> from_presentation(const GroupPresentation& pres,
                                                              EnumerationOptions opts = {}) {
    return from_table(regular_table(pres, opts));
  }

  static std::shared_ptr<const FiniteGroup> trivial() { return from_presentation(GroupPresentation({}, {})); }

  static std::shared_ptr<const FiniteGroup> cyclic(long n, const std::string& gen = "t") {
    return from_presentation(GroupPresentation({gen}, {Word::generator(gen, n)}));
  }

  std::size_t order() const { return mult_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_.at(a).at(b); }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  bool is_involution(std::size_t a) const { return a != 0 && multiply(a, a) == 0; }
  const GroupPresentation& presentation() const { return table_.presentation(); }
  const Word& word(std::size_t a) const { return words_.at(a); }
  std::string name(std::size_t a) const { return a == 0 ? "e" : words_.at(a).to_string(); }

  // Element represented by a word over the presentation; "e" is the identity.
  std::size_t element(const Word& w) const { return static_cast<std::size_t>(table_.apply(0, w)); }
  std::size_t element(const std::string& text) const {
    if (text == "e" || text.empty()) return 0;
    return element(parse_word(text));
  }

  void check_element(std::size_t a) const {
    if (a >= order()) throw BadIndex("group element " + std::to_string(a) + " out of range");
  }

 private:
  explicit FiniteGroup(const CosetTable& table) : table_(table) {
    if (!table.subgroup().empty())
      for (const auto& w : table.subgroup())
        if (!w.empty()) throw NotRegularTable("table enumerates cosets of a nontrivial subgroup");
    const std::size_t d = table.size();
    std::vector<std::vector<int>> perms(d);
    words_.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
      words_[c] = table.representative(static_cast<int>(c));
      perms[c] = table.permutation(words_[c]);
    }
    // The action is regular iff the d permutations are closed under the
    // generators: then they form the whole image group.
    const std::size_t gens = table.presentation().generators().size();
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t g = 0; g < gens; ++g) {
        const auto& step = table.permutation(g);
        const auto& target = perms[static_cast<std::size_t>(step[c])];
        for (std::size_t k = 0; k < d; ++k)
          if (step[static_cast<std::size_t>(perms[c][k])] != target[k])
            throw NotRegularTable("coset action is not regular");
      }
    mult_.assign(d, std::vector<std::size_t>(d));
    inverse_.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        mult_[i][j] = static_cast<std::size_t>(perms[j][i]);
        if (mult_[i][j] == 0) inverse_[i] = j;
      }
  }

  CosetTable table_;
  std::vector<Word> words_;
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::size_t> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace detail {
inline std::int64_t ring_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("group ring coefficient overflow");
  return r;
}
inline std::int64_t ring_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("group ring coefficient overflow");
  return r;
}
}  // namespace detail

// Finite integer combination of group elements, sparse, zeros pruned.
class GroupRingElement {
 public:
  using Terms = std::map<std::size_t, std::int64_t>;

  explicit GroupRingElement(GroupPtr group) : group_(std::move(group)) {}

  GroupRingElement(GroupPtr group, Terms terms) : group_(std::move(group)) {
    for (const auto& [g, c] : terms) add_term(g, c);
  }

  static GroupRingElement unit(GroupPtr group, std::size_t element, std::int64_t coeff = 1) {
    GroupRingElement a(std::move(group));
    a.add_term(element, coeff);
    return a;
  }

  const GroupPtr& group() const { return group_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t coefficient(std::size_t g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(std::size_t g, std::int64_t c) {
    group_->check_element(g);
    if (c == 0) return;
    const std::int64_t v = detail::ring_add(coefficient(g), c);
    if (v == 0)
      terms_.erase(g);
    else
      terms_[g] = v;
  }

  GroupRingElement& operator+=(const GroupRingElement& b) {
    same_group(b);
    for (const auto& [g, c] : b.terms_) add_term(g, c);
    return *this;
  }

  GroupRingElement& operator-=(const GroupRingElement& b) {
    same_group(b);
    for (const auto& [g, c] : b.terms_) add_term(g, detail::ring_mul(c, -1));
    return *this;
  }

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }

  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    a.same_group(b);
    GroupRingElement out(a.group_);
    for (const auto& [g, c] : a.terms_)
      for (const auto& [h, d] : b.terms_) out.add_term(a.group_->multiply(g, h), detail::ring_mul(c, d));
    return out;
  }

  friend GroupRingElement operator*(std::int64_t k, const GroupRingElement& a) {
    GroupRingElement out(a.group_);
    for (const auto& [g, c] : a.terms_) out.add_term(g, detail::ring_mul(k, c));
    return out;
  }

  GroupRingElement involute() const {
    GroupRingElement out(group_);
    for (const auto& [g, c] : terms_) out.add_term(group_->inverse(g), c);
    return out;
  }

  std::int64_t augment() const {
    std::int64_t s = 0;
    for (const auto& [g, c] : terms_) s = detail::ring_add(s, c);
    return s;
  }

  // Sum of the coefficients away from the identity.
  std::int64_t nonidentity_sum() const { return detail::ring_add(augment(), -coefficient(0)); }

  // Entry (h, g) is the coefficient of g h^-1: the linking number of the lift
  // translated by h with the lift translated by g.
  IntMatrix regular_matrix() const {
    const std::size_t d = group_->order();
    IntMatrix m(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t h = 0; h < d; ++h)
      for (std::size_t g = 0; g < d; ++g) m[h][g] = coefficient(group_->multiply(g, group_->inverse(h)));
    return m;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [g, c] : terms_) {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const std::int64_t a = c < 0 ? -c : c;
      if (a != 1) out += std::to_string(a) + "*";
      out += g == 0 ? "e" : "(" + group_->name(g) + ")";
    }
    return out;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.group_ == b.group_ && a.terms_ == b.terms_;
  }

 private:
  void same_group(const GroupRingElement& b) const {
    if (group_ != b.group_) throw GroupMismatch("group ring elements over different groups");
  }

  GroupPtr group_;
  Terms terms_;
};

}  // namespace coverlink
