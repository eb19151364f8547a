#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "coverlink/errors.hpp"
#include "coverlink/word.hpp"

namespace coverlink {

// Generators plus relator words. Generator names are unique and every relator
// uses only declared generators; both are checked on construction.
class GroupPresentation {
 public:
  GroupPresentation() = default;
  GroupPresentation(std::vector<std::string> generators, std::vector<Word> relators)
      : generators_(std::move(generators)), relators_(std::move(relators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (!index_.emplace(generators_[i], i).second)
        throw InvalidPresentation("duplicate generator '" + generators_[i] + "'");
    }
    for (const auto& r : relators_) check_word(r);
  }

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }

  bool has_generator(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t generator_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownGenerator("'" + name + "' is not a generator");
    return it->second;
  }

  void check_word(const Word& w) const {
    for (const auto& l : w.letters()) generator_index(l.generator);
  }

  // Letters as table columns: generator i is column 2i, its inverse 2i+1.
  std::vector<int> columns(const Word& w) const {
    std::vector<int> out;
    out.reserve(w.length());
    for (const auto& l : w.letters()) {
      const int g = static_cast<int>(generator_index(l.generator));
      const int col = l.exponent > 0 ? 2 * g : 2 * g + 1;
      for (long k = 0; k < (l.exponent > 0 ? l.exponent : -l.exponent); ++k) out.push_back(col);
    }
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "gens:";
    for (const auto& g : generators_) os << ' ' << g;
    os << '\n';
    for (const auto& r : relators_) os << "rel: " << r.to_string() << '\n';
    return os.str();
  }

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Line-based text format:
//   gens: y z
//   rel: z z y^-3
// `#` starts a comment.
inline GroupPresentation parse_presentation(std::istream& in) {
  std::vector<std::string> gens;
  std::vector<Word> rels;
  bool have_gens = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line.erase(0, first);
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'gens:' or 'rel:'");
    std::string key = line.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string body = line.substr(colon + 1);
    if (key == "gens") {
      if (have_gens) throw ParseError("line " + std::to_string(lineno) + ": duplicate 'gens:' line");
      std::istringstream ss(body);
      std::string g;
      while (ss >> g) {
        for (char c : g)
          if (!detail::is_name_char(c)) throw ParseError("line " + std::to_string(lineno) + ": bad generator '" + g + "'");
        gens.push_back(g);
      }
      have_gens = true;
    } else if (key == "rel") {
      try {
        rels.push_back(parse_word(body));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_gens) throw ParseError("missing 'gens:' line");
  try {
    return GroupPresentation(std::move(gens), std::move(rels));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline GroupPresentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

inline GroupPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_presentation(in);
}

}  // namespace coverlink
