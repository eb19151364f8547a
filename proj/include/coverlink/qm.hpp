#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coverlink/coset_enumeration.hpp"
#include "coverlink/errors.hpp"
#include "coverlink/groups.hpp"
#include "coverlink/pd_code.hpp"
#include "coverlink/presentation.hpp"
#include "coverlink/word.hpp"

// The circle bundles Q_m over RP^2 with m = -4p-3, and the chain of
// presentations of their fundamental groups G_m (order 4|m|).
namespace coverlink::qm {

struct QmInstance {
  long p = 0;
  long m = -3;

  static QmInstance from_p(long p) { return QmInstance(p, -4 * p - 3); }

  QmInstance(long p_, long m_) : p(p_), m(m_) {
    if (m != -4 * p - 3) throw std::invalid_argument("m must equal -4p-3");
  }

  long abs_m() const { return m < 0 ? -m : m; }
  long group_order() const { return 4 * abs_m(); }
};

inline Word w(const std::string& text) { return parse_word(text); }

// <y, z | z^2 y^-(4p+3), z^-1 y z y>
inline GroupPresentation qm_presentation(const QmInstance& q) {
  return GroupPresentation({"y", "z"}, {Word{{"z", 2}, {"y", -(4 * q.p + 3)}}, w("z^-1 y z y")});
}

// z_p = (xy)^p z: the image of z under p full twists around K.
inline Word twisted_z(long p) { return w("x y").pow(p) * w("z"); }

// Link group g_p relators followed by the two surgery relators:
//   y^-1 x (y z_p y^-1 z_p^-1),  y z_p x^-1 z_p^-1,  y z_p^-1 y^-1 x^-1 z_p x,
//   x y,  z y^(p+1) z y^(-3p-2).
inline GroupPresentation qm_surgery_presentation(const QmInstance& q) {
  const Word x = w("x"), y = w("y"), z = w("z"), zp = twisted_z(q.p);
  const Word xi = x.inverse(), yi = y.inverse(), zpi = zp.inverse();
  return GroupPresentation({"x", "y", "z"},
                           {yi * x * (y * zp * yi * zpi), y * zp * xi * zpi, y * zpi * yi * xi * zp * x, x * y,
                            z * y.pow(q.p + 1) * z * y.pow(-3 * q.p - 2)});
}

// After eliminating x = y^-1:
//   y^-2 (y z y^-1 z^-1),  y z y z^-1,  z y^(p+1) z y^(-3p-2).
inline GroupPresentation qm_intermediate_presentation(const QmInstance& q) {
  const Word y = w("y"), z = w("z");
  return GroupPresentation({"y", "z"}, {y.pow(-2) * w("y z y^-1 z^-1"), w("y z y z^-1"),
                                        z * y.pow(q.p + 1) * z * y.pow(-3 * q.p - 2)});
}

// The three Wirtinger relators of g_0 (the link (J, K) for p = 0).
inline GroupPresentation g0_presentation() {
  return GroupPresentation({"x", "y", "z"},
                           {w("y^-1 x y z y^-1 z^-1"), w("y z x^-1 z^-1"), w("y z^-1 y^-1 x^-1 z x")});
}

// Generator images realizing the elimination of x through xy = 1.
inline std::map<std::string, Word> eliminate_x() { return {{"x", w("y^-1")}, {"y", w("y")}, {"z", w("z")}}; }

inline std::map<std::string, Word> inclusion_yz() { return {{"y", w("y")}, {"z", w("z")}}; }

struct EtaWords {
  Word eta0;  // y z y^-1 z^-1
  Word eta1;  // y^2
};

inline EtaWords eta_words(const QmInstance&) { return {w("y z y^-1 z^-1"), w("y^2")}; }

// Diagram of the link (J, K) for p = 0: J (component 0, edges 1-4) is the
// unknot carrying framing -1, K (component 1, edges 5-8) winds twice around
// it and carries framing 0. As a link this is the (2,4) torus link with
// positive crossings.
inline PdCode p0_link_pd() {
  return PdCode({{5, 2, 6, 1}, {2, 7, 3, 6}, {7, 4, 8, 3}, {4, 5, 1, 8}}, {{1, 2, 3, 4}, {5, 6, 7, 8}});
}

inline SurgeryDescription p0_surgery() { return SurgeryDescription{p0_link_pd(), {{0, -1}, {1, 0}}}; }

// Correspondence between the generators x, y, z of g_0 and the
// Wirtinger arcs of p0_link_pd(): y and x are meridians of J, z of K.
inline std::map<std::string, Word> g0_to_pd_arcs() { return {{"x", w("a3")}, {"y", w("a1")}, {"z", w("a5")}}; }

inline std::map<std::string, Word> pd_arcs_to_g0() {
  return {{"a1", w("y")}, {"a3", w("x")}, {"a5", w("z")}, {"a6", w("y z y^-1")}};
}

// Every computable claim about G_m for one p, each decided exactly.
struct Certificate {
  long p = 0;
  std::size_t order = 0;           // regular coset table of the two-generator presentation
  std::size_t expected_order = 0;  // 4|m|
  bool orders_agree = false;       // surgery, intermediate and two-generator presentations
  bool abelianizations_z4 = false; // all three give Z_4
  bool chain = false;              // x -> y^-1 and the inclusions are homomorphisms both ways
  bool eta_is_y_squared = false;   // y^-2 eta_0 trivial
  bool eta_and_z_generate = false; // <eta_0, z> has index 1
  std::size_t kernel_index = 0;    // index of <y^2>
  AbelianGroupInvariants kernel;   // abelianized Reidemeister-Schreier presentation of <y^2>

  bool kernel_is_cyclic_m() const {
    const long am = 4 * p + 3 < 0 ? -(4 * p + 3) : 4 * p + 3;
    AbelianGroupInvariants want;
    if (am > 1) want.invariant_factors.push_back(am);
    return kernel_index == 4 && kernel == want;
  }

  bool passed() const {
    return order == expected_order && orders_agree && abelianizations_z4 && chain && eta_is_y_squared &&
           eta_and_z_generate && kernel_is_cyclic_m();
  }
};

inline Certificate certify(long p, EnumerationOptions opts = {}) {
  if (4 * p + 3 == 0) throw std::invalid_argument("4p+3 must be nonzero");
  const auto q = QmInstance::from_p(p);
  Certificate c;
  c.p = p;
  c.expected_order = static_cast<std::size_t>(q.group_order());

  const auto top = qm_presentation(q), mid = qm_intermediate_presentation(q), surg = qm_surgery_presentation(q);
  const auto top_table = enumerate_cosets(top, {}, opts);
  const auto mid_table = enumerate_cosets(mid, {}, opts);
  const auto surg_table = enumerate_cosets(surg, {}, opts);
  c.order = top_table.size();
  c.orders_agree = mid_table.size() == c.order && surg_table.size() == c.order;

  AbelianGroupInvariants z4;
  z4.invariant_factors.push_back(4);
  c.abelianizations_z4 = abelianization(top) == z4 && abelianization(mid) == z4 && abelianization(surg) == z4;

  c.chain = check_homomorphism(surg, top_table, eliminate_x()) && check_homomorphism(top, surg_table, inclusion_yz()) &&
            check_homomorphism(mid, top_table, inclusion_yz()) && check_homomorphism(top, mid_table, inclusion_yz());

  const auto eta = eta_words(q);
  c.eta_is_y_squared = word_is_trivial(top_table, eta.eta1.inverse() * eta.eta0);
  c.eta_and_z_generate = subgroup_generates(enumerate_cosets(top, {eta.eta0, w("z")}, opts));

  const auto sub = enumerate_cosets(top, {w("y^2")}, opts);
  c.kernel_index = sub.size();
  c.kernel = abelianization(reidemeister_schreier(top, sub));
  return c;
}

}  // namespace coverlink::qm
