#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "coverlink/errors.hpp"
#include "coverlink/presentation.hpp"
#include "coverlink/word.hpp"

namespace coverlink {

// Planar diagram code of an oriented link.
//
// Each crossing lists four edge labels: the incoming under-edge first, then
// the others counterclockwise, so slots 0 and 2 carry the under-strand.
// Components list their edges in the order of traversal; the orientation of
// every over-strand is recovered from those lists.
//
// Sign convention: a crossing is positive (right-handed) when the over-strand
// runs from slot 3 to slot 1. Passing under a crossing with over-arc o and
// sign s conjugates the meridian:  outgoing = o^s · incoming · o^-s.
class PdCode {
 public:
  using Crossing = std::array<int, 4>;

  PdCode() = default;
  PdCode(std::vector<Crossing> crossings, std::vector<std::vector<int>> components)
      : crossings_(std::move(crossings)), components_(std::move(components)) {
    validate_labels();
    resolve_orientation();
    build_arcs();
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<std::vector<int>>& components() const { return components_; }
  std::size_t component_count() const { return components_.size(); }

  int sign(std::size_t crossing) const { return sign_[crossing]; }
  int component_of_edge(int label) const { return edge_component_.at(label); }

  // Wirtinger arcs, numbered by their smallest edge label.
  std::size_t arc_count() const { return arc_names_.size(); }
  const std::vector<std::string>& arc_names() const { return arc_names_; }
  const std::string& arc_of_edge(int label) const { return arc_names_[edge_arc_.at(label)]; }
  int arc_component(std::size_t arc) const { return arc_component_[arc]; }

  // Lowest-numbered arc of the component; its generator is the meridian.
  const std::string& meridian(std::size_t component) const {
    check_component(component);
    for (std::size_t a = 0; a < arc_names_.size(); ++a)
      if (arc_component_[a] == static_cast<int>(component)) return arc_names_[a];
    throw MalformedPd("component " + std::to_string(component) + " has no arcs");
  }

  // Sum of the signs of crossings where the component crosses itself.
  int self_writhe(std::size_t component) const {
    check_component(component);
    int w = 0;
    for (std::size_t x = 0; x < crossings_.size(); ++x)
      if (edge_component_.at(crossings_[x][0]) == static_cast<int>(component) &&
          edge_component_.at(crossings_[x][1]) == static_cast<int>(component))
        w += sign_[x];
    return w;
  }

  // Half the signed count of crossings between two distinct components.
  int linking_number(std::size_t i, std::size_t j) const {
    check_component(i);
    check_component(j);
    int twice = 0;
    for (std::size_t x = 0; x < crossings_.size(); ++x) {
      const int under = edge_component_.at(crossings_[x][0]);
      const int over = edge_component_.at(crossings_[x][1]);
      if ((under == static_cast<int>(i) && over == static_cast<int>(j)) ||
          (under == static_cast<int>(j) && over == static_cast<int>(i)))
        twice += sign_[x];
    }
    return twice / 2;
  }

  void check_component(std::size_t component) const {
    if (component >= components_.size())
      throw MalformedPd("no component " + std::to_string(component));
  }

  // Crossing at the head of an edge and whether the edge enters it as the
  // under-strand.
  std::pair<std::size_t, bool> head(int label) const { return head_.at(label); }
  int successor(int label) const { return successor_.at(label); }

  // Slot of the over-strand that enters the crossing (1 or 3).
  int over_incoming_slot(std::size_t crossing) const { return sign_[crossing] > 0 ? 3 : 1; }

 private:
  void validate_labels() {
    std::map<int, int> count;
    for (const auto& x : crossings_)
      for (int e : x) ++count[e];
    for (const auto& [e, n] : count)
      if (n != 2) throw MalformedPd("edge " + std::to_string(e) + " appears " + std::to_string(n) + " times");
    for (std::size_t k = 0; k < components_.size(); ++k) {
      const auto& comp = components_[k];
      if (comp.empty()) throw MalformedPd("component " + std::to_string(k) + " is empty");
      for (std::size_t i = 0; i < comp.size(); ++i) {
        const int e = comp[i];
        if (!count.count(e)) throw MalformedPd("component edge " + std::to_string(e) + " is not in any crossing");
        if (!edge_component_.emplace(e, static_cast<int>(k)).second)
          throw MalformedPd("edge " + std::to_string(e) + " listed twice in components");
        successor_[e] = comp[(i + 1) % comp.size()];
      }
    }
    for (const auto& [e, n] : count)
      if (!edge_component_.count(e)) throw MalformedPd("edge " + std::to_string(e) + " belongs to no component");
  }

  // Every step e -> successor(e) of a component passes through one crossing,
  // either as the under-strand (slots 0 -> 2) or as the over-strand. Under
  // steps are explicit; over steps are matched to crossings by elimination.
  void resolve_orientation() {
    std::map<std::pair<int, int>, int> steps;
    for (const auto& [e, next] : successor_) ++steps[{e, next}];
    auto take = [&](int from, int to) {
      auto it = steps.find({from, to});
      if (it == steps.end() || it->second == 0) return false;
      --it->second;
      return true;
    };
    for (const auto& x : crossings_)
      if (!take(x[0], x[2]))
        throw MalformedPd("under-strand " + std::to_string(x[0]) + " -> " + std::to_string(x[2]) +
                          " does not follow its component");

    sign_.assign(crossings_.size(), 0);
    auto available = [&](int from, int to) {
      auto it = steps.find({from, to});
      return it != steps.end() && it->second > 0;
    };
    std::size_t unresolved = crossings_.size();
    while (unresolved > 0) {
      bool progress = false;
      std::size_t ambiguous = crossings_.size();
      for (std::size_t i = 0; i < crossings_.size(); ++i) {
        if (sign_[i] != 0) continue;
        const auto& x = crossings_[i];
        const bool forward = available(x[1], x[3]);   // b -> d
        const bool backward = available(x[3], x[1]);  // d -> b
        if (!forward && !backward)
          throw MalformedPd("over-strand " + std::to_string(x[1]) + "/" + std::to_string(x[3]) +
                            " does not follow its component");
        if (forward && backward && !(x[1] == x[3])) {
          if (ambiguous == crossings_.size()) ambiguous = i;
          continue;
        }
        sign_[i] = forward ? -1 : 1;
        take(forward ? x[1] : x[3], forward ? x[3] : x[1]);
        --unresolved;
        progress = true;
      }
      if (!progress && unresolved > 0) {
        // Both readings remain possible; settle on b -> d.
        const auto& x = crossings_[ambiguous];
        sign_[ambiguous] = -1;
        take(x[1], x[3]);
        --unresolved;
      }
    }

    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      const auto& x = crossings_[i];
      if (!head_.emplace(x[0], std::make_pair(i, true)).second)
        throw MalformedPd("edge " + std::to_string(x[0]) + " enters two crossings");
      const int over_in = x[over_incoming_slot(i)];
      if (!head_.emplace(over_in, std::make_pair(i, false)).second)
        throw MalformedPd("edge " + std::to_string(over_in) + " enters two crossings");
    }
  }

  void build_arcs() {
    std::map<int, int> parent;
    for (const auto& [e, c] : edge_component_) parent[e] = e;
    auto find = [&](int e) {
      while (parent[e] != e) e = parent[e] = parent[parent[e]];
      return e;
    };
    for (const auto& x : crossings_) {
      const int a = find(x[1]), b = find(x[3]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, std::size_t> root_to_arc;
    for (const auto& [e, c] : edge_component_) {
      const int r = find(e);
      auto [it, fresh] = root_to_arc.emplace(r, arc_names_.size());
      if (fresh) {
        arc_names_.push_back("a" + std::to_string(r));
        arc_component_.push_back(c);
      }
      edge_arc_[e] = it->second;
    }
  }

  std::vector<Crossing> crossings_;
  std::vector<std::vector<int>> components_;
  std::map<int, int> edge_component_;
  std::map<int, int> successor_;
  std::vector<int> sign_;
  std::map<int, std::pair<std::size_t, bool>> head_;
  std::vector<std::string> arc_names_;
  std::vector<int> arc_component_;
  std::map<int, std::size_t> edge_arc_;
};

// One generator per Wirtinger arc, one conjugation relator per crossing.
inline GroupPresentation wirtinger(const PdCode& pd) {
  std::vector<Word> relators;
  for (std::size_t i = 0; i < pd.crossings().size(); ++i) {
    const auto& x = pd.crossings()[i];
    const long s = pd.sign(i);
    const Word over = Word::generator(pd.arc_of_edge(x[1]));
    const Word in = Word::generator(pd.arc_of_edge(x[0]));
    const Word out = Word::generator(pd.arc_of_edge(x[2]));
    relators.push_back(over.pow(s) * in * over.pow(-s) * out.inverse());
  }
  return GroupPresentation(pd.arc_names(), std::move(relators));
}

// Zero-framed longitude of a component, based at the start of its meridian
// arc: the product of over-arc conjugators met while walking the component
// (latest crossing leftmost), corrected by the component's self-writhe so
// that its exponent sum in the component's own meridians is zero.
inline Word longitude_word(const PdCode& pd, std::size_t component) {
  pd.check_component(component);
  const auto& edges = pd.components()[component];
  const std::string& mer = pd.meridian(component);

  // Begin on the meridian arc, right after the under-crossing that starts it.
  int start = -1;
  for (int e : edges) {
    if (pd.arc_of_edge(e) != mer) continue;
    for (int f : edges)
      if (pd.successor(f) == e && pd.head(f).second) start = e;
    if (start >= 0) break;
  }
  if (start < 0) start = *std::min_element(edges.begin(), edges.end());

  Word w;
  int e = start;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [crossing, under] = pd.head(e);
    if (under) {
      const auto& x = pd.crossings()[crossing];
      w = Word::generator(pd.arc_of_edge(x[1]), pd.sign(crossing)) * w;
    }
    e = pd.successor(e);
  }
  return w * Word::generator(mer, -pd.self_writhe(component));
}

struct SurgeryDescription {
  PdCode pd;
  std::map<std::size_t, long> framings;

  void validate() const {
    for (std::size_t k = 0; k < pd.component_count(); ++k)
      if (!framings.count(k)) throw MalformedPd("component " + std::to_string(k) + " has no framing");
    for (const auto& [k, n] : framings) pd.check_component(k);
  }
};

// Link group plus, for each component with framing n, the relator λ·μ^n that
// kills the framing curve.
inline GroupPresentation surgery_group(const SurgeryDescription& sd) {
  sd.validate();
  const auto base = wirtinger(sd.pd);
  std::vector<Word> relators = base.relators();
  for (const auto& [k, n] : sd.framings)
    relators.push_back(longitude_word(sd.pd, k) * Word::generator(sd.pd.meridian(k), n));
  return GroupPresentation(base.generators(), std::move(relators));
}

struct PdFile {
  PdCode pd;
  std::map<std::size_t, long> framings;

  bool has_framings() const { return !framings.empty(); }
  SurgeryDescription surgery() const { return SurgeryDescription{pd, framings}; }
};

// Line-based PD file:
//   comp: 1 2 3 4          (edges of one component, in traversal order)
//   X 1 5 2 4              (one crossing)
//   frame: 0 -1            (component index, integer framing)
inline PdFile parse_pd(std::istream& in) {
  std::vector<PdCode::Crossing> crossings;
  std::vector<std::vector<int>> components;
  std::map<std::size_t, long> framings;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    if (key == "X") {
      PdCode::Crossing x{};
      for (int& v : x)
        if (!(ss >> v)) fail("crossing needs four integer labels");
      crossings.push_back(x);
    } else if (key == "comp:") {
      std::vector<int> comp;
      int v;
      while (ss >> v) comp.push_back(v);
      if (!ss.eof()) fail("bad edge label in component");
      components.push_back(std::move(comp));
    } else if (key == "frame:") {
      long idx, n;
      if (!(ss >> idx >> n) || idx < 0) fail("expected 'frame: <component-index> <integer>'");
      if (!framings.emplace(static_cast<std::size_t>(idx), n).second) fail("component framed twice");
    } else {
      fail("unknown line '" + key + "'");
    }
    std::string extra;
    if (key != "comp:" && (ss >> extra)) fail("trailing text '" + extra + "'");
  }
  try {
    PdFile out{PdCode(std::move(crossings), std::move(components)), std::move(framings)};
    if (out.has_framings()) out.surgery().validate();
    return out;
  } catch (const MalformedPd& e) {
    throw ParseError(e.what());
  }
}

inline PdFile load_pd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_pd(in);
}

}  // namespace coverlink
