#pragma once

#include <map>
#include <string>
#include <vector>

#include "coverlink/coset_enumeration.hpp"
#include "coverlink/errors.hpp"
#include "coverlink/presentation.hpp"
#include "coverlink/smith.hpp"
#include "coverlink/word.hpp"

namespace coverlink {

// True iff w acts as the identity permutation on the cosets. On a regular
// table (trivial subgroup) this decides the word problem.
inline bool word_is_trivial(const CosetTable& table, const Word& w) {
  const auto cols = table.presentation().columns(w);
  for (std::size_t c = 0; c < table.size(); ++c)
    if (table.apply_columns(static_cast<int>(c), cols) != static_cast<int>(c)) return false;
  return true;
}

// Order of the element w in the group acting regularly on `table`.
inline std::size_t element_order(const CosetTable& table, const Word& w) {
  const auto perm = table.permutation(w);
  std::size_t order = 1;
  for (int c = perm[0]; c != 0; c = perm[c]) ++order;
  return order;
}

// Exponent-sum matrix: one row per relator, one column per generator.
inline IntMatrix relation_matrix(const GroupPresentation& pres) {
  IntMatrix m;
  for (const auto& r : pres.relators()) {
    std::vector<std::int64_t> row(pres.generators().size(), 0);
    for (const auto& l : r.letters()) row[pres.generator_index(l.generator)] += l.exponent;
    m.push_back(std::move(row));
  }
  return m;
}

inline AbelianGroupInvariants abelianization(const GroupPresentation& pres) {
  return cokernel_invariants(relation_matrix(pres), pres.generators().size());
}

// Presentation of the subgroup whose cosets `table` enumerates, on Schreier
// generators. The transversal is the breadth-first tree of the standard
// numbering; the Schreier generator for the non-tree edge (coset c, generator
// x) is named `x_c` and stands for rep(c)·x·rep(c·x)^-1.
inline GroupPresentation reidemeister_schreier(const GroupPresentation& pres, const CosetTable& table) {
  const auto& gens = pres.generators();
  if (gens != table.presentation().generators())
    throw TableMismatch("coset table was built over different generators");
  for (const auto& r : pres.relators()) {
    const auto cols = pres.columns(r);
    for (std::size_t c = 0; c < table.size(); ++c)
      if (table.apply_columns(static_cast<int>(c), cols) != static_cast<int>(c))
        throw TableMismatch("relator " + r.to_string() + " is not closed in the table");
  }

  const std::size_t d = table.size();
  std::vector<std::vector<char>> is_tree(d, std::vector<char>(gens.size(), 0));
  for (std::size_t c = 1; c < d; ++c) {
    auto [parent, col] = table.tree_edge(static_cast<int>(c));
    const std::size_t g = static_cast<std::size_t>(col >> 1);
    if (col & 1)
      is_tree[c][g] = 1;  // c·g = parent
    else
      is_tree[parent][g] = 1;
  }

  auto name = [&](std::size_t c, std::size_t g) { return gens[g] + "_" + std::to_string(c); };
  std::vector<std::string> schreier;
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (!is_tree[c][g]) schreier.push_back(name(c, g));

  std::vector<Word> relators;
  for (std::size_t c = 0; c < d; ++c)
    for (const auto& r : pres.relators()) {
      std::vector<Letter> out;
      int at = static_cast<int>(c);
      for (int col : pres.columns(r)) {
        const std::size_t g = static_cast<std::size_t>(col >> 1);
        if (col & 1) {
          const int from = table.image(at, g, true);
          if (!is_tree[from][g]) out.push_back(Letter{name(from, g), -1});
          at = from;
        } else {
          if (!is_tree[at][g]) out.push_back(Letter{name(at, g), 1});
          at = table.image(at, g);
        }
      }
      Word w(std::move(out));
      if (!w.empty()) relators.push_back(std::move(w));
    }
  return GroupPresentation(std::move(schreier), std::move(relators));
}

// Whether generator images define a homomorphism into the group acting
// regularly on dst_table: every relator of src must map to a trivial word.
inline bool check_homomorphism(const GroupPresentation& src, const CosetTable& dst_table,
                               const std::map<std::string, Word>& images) {
  for (const auto& g : src.generators())
    if (!images.count(g)) throw MissingImage("no image given for generator '" + g + "'");
  for (const auto& [g, w] : images) dst_table.presentation().check_word(w);
  for (const auto& r : src.relators()) {
    Word image;
    for (const auto& l : r.letters()) image = image * images.at(l.generator).pow(l.exponent);
    if (!word_is_trivial(dst_table, image)) return false;
  }
  return true;
}

inline Word substitute(const Word& w, const std::map<std::string, Word>& images) {
  Word out;
  for (const auto& l : w.letters()) {
    auto it = images.find(l.generator);
    out = out * (it == images.end() ? Word::generator(l.generator, l.exponent) : it->second.pow(l.exponent));
  }
  return out;
}

// The subgroup enumerated by the table is the whole group.
inline bool subgroup_generates(const CosetTable& table_over_subgroup) { return table_over_subgroup.size() == 1; }

}  // namespace coverlink
