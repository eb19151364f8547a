// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coverlink/clasp.hpp"
#include "coverlink/coset_enumeration.hpp"
#include "coverlink/forms.hpp"
#include "coverlink/groups.hpp"
#include "coverlink/pd_code.hpp"
#include "coverlink/qm.hpp"
#include "oracles.hpp"

using namespace coverlink;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Collects failures for one criterion; the first few are printed.
struct Check {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
};

int failed_criteria = 0;

void criterion(int n, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double s = seconds_since(start);
  std::printf("criterion %2d: %s  %s  (%.2f s)\n", n, c.failures ? "FAIL" : "PASS", title.c_str(), s);
  for (const auto& note : c.notes) std::printf("              - %s\n", note.c_str());
  std::fflush(stdout);
  if (c.failures) ++failed_criteria;
}

std::string ps(long p) { return "p=" + std::to_string(p); }

AbelianGroupInvariants z_n(long n) {
  AbelianGroupInvariants a;
  if (n < 0) n = -n;
  if (n > 1) a.invariant_factors.push_back(n);
  return a;
}

GroupPtr gm(long p) { return FiniteGroup::from_presentation(qm::qm_presentation(qm::QmInstance::from_p(p))); }

ClaspProgram random_program(const GroupPtr& g, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 4), len(0, 20), elem(0, g->order() - 1);
  std::uniform_int_distribution<int> fr(-3, 3), coin(0, 1);
  ClaspProgram prog;
  prog.n = size(rng);
  for (std::size_t i = 0; i < prog.n; ++i) prog.framings.push_back(fr(rng));
  const std::size_t steps = len(rng);
  std::uniform_int_distribution<std::size_t> comp(0, prog.n - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const int s = coin(rng) ? 1 : -1;
    const std::size_t i = comp(rng), j = comp(rng);
    if (i != j) {
      prog.ops.push_back(ClaspOp::clasp(i, j, s, elem(rng)));
    } else {
      std::size_t x = elem(rng);
      if (x == 0) x = 1 + elem(rng) % (g->order() - 1);
      prog.ops.push_back(ClaspOp::self(i, s, x));
    }
  }
  return prog;
}

struct Sample {
  long p;
  ClaspProgram prog;
};

// Programs shared by criteria 6 and 7: groups G_m for p = -1, 0, 1.
std::vector<Sample> criterion6_samples() {
  std::mt19937 rng(20240601);
  std::vector<Sample> out;
  const std::vector<GroupPtr> groups{gm(-1), gm(0), gm(1)};
  for (int k = 0; k < 1000; ++k) {
    const long p = k % 3 - 1;
    out.push_back({p, random_program(groups[static_cast<std::size_t>(p + 1)], rng)});
  }
  return out;
}

BigMatrix random_unimodular(std::size_t n, std::mt19937& rng) {
  BigMatrix u = identity_matrix<BigInt>(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2), coin(0, 3);
  for (int s = 0; s < 12; ++s) {
    const auto i = idx(rng), j = idx(rng);
    if (coin(rng) == 0) {
      for (auto& row : u) std::swap(row[i], row[j]);
    } else if (i != j) {
      const int c = mult(rng);
      for (auto& row : u) row[i] += c * row[j];
    }
  }
  return u;
}

}  // namespace

int main() {
  criterion(1, "orders of G_m are 4|m| for p = 0..5, each under 1 s", [](Check& c) {
    for (long p = 0; p <= 5; ++p) {
      const auto start = Clock::now();
      const auto table = enumerate_cosets(qm::qm_presentation(qm::QmInstance::from_p(p)));
      const double s = seconds_since(start);
      c.expect(table.size() == static_cast<std::size_t>(4 * (4 * p + 3)),
               ps(p) + ": order " + std::to_string(table.size()));
      c.expect(s < 1.0, ps(p) + ": took " + std::to_string(s) + " s");
    }
  });

  criterion(2, "every presentation of G_m abelianizes to Z_4 for p = -1..5", [](Check& c) {
    for (long p = -1; p <= 5; ++p) {
      const auto q = qm::QmInstance::from_p(p);
      for (const auto& pres : {qm::qm_surgery_presentation(q), qm::qm_intermediate_presentation(q), qm::qm_presentation(q)})
        c.expect(abelianization(pres) == z_n(4), ps(p) + ": got " + abelianization(pres).to_string());
    }
  });

  criterion(3, "presentation chain: homomorphisms both ways, equal orders, p = 0..5", [](Check& c) {
    for (long p = 0; p <= 5; ++p) {
      const auto q = qm::QmInstance::from_p(p);
      const auto top = qm::qm_presentation(q), mid = qm::qm_intermediate_presentation(q),
                 surg = qm::qm_surgery_presentation(q);
      const auto top_t = enumerate_cosets(top), mid_t = enumerate_cosets(mid), surg_t = enumerate_cosets(surg);
      c.expect(top_t.size() == mid_t.size() && top_t.size() == surg_t.size(), ps(p) + ": orders differ");
      c.expect(check_homomorphism(surg, top_t, qm::eliminate_x()), ps(p) + ": x -> y^-1 not a homomorphism");
      c.expect(check_homomorphism(top, surg_t, qm::inclusion_yz()), ps(p) + ": inclusion into surgery group fails");
      c.expect(check_homomorphism(mid, top_t, qm::inclusion_yz()), ps(p) + ": intermediate -> two-generator fails");
      c.expect(check_homomorphism(top, mid_t, qm::inclusion_yz()), ps(p) + ": two-generator -> intermediate fails");
    }
  });

  criterion(4, "y^-2 eta_0 trivial and <eta_0, z> = G_m, p = 0..5", [](Check& c) {
    for (long p = 0; p <= 5; ++p) {
      const auto q = qm::QmInstance::from_p(p);
      const auto pres = qm::qm_presentation(q);
      const auto eta = qm::eta_words(q);
      c.expect(word_is_trivial(enumerate_cosets(pres), parse_word("y^-2") * eta.eta0), ps(p) + ": y^-2 eta_0 nontrivial");
      c.expect(enumerate_cosets(pres, {eta.eta0, parse_word("z")}).size() == 1, ps(p) + ": index of <eta_0, z> not 1");
    }
  });

  criterion(5, "<y^2> has index 4 with abelianized kernel Z_{4p+3}, p = 0..5", [](Check& c) {
    for (long p = 0; p <= 5; ++p) {
      const auto pres = qm::qm_presentation(qm::QmInstance::from_p(p));
      const auto table = enumerate_cosets(pres, {parse_word("y^2")});
      c.expect(table.size() == 4, ps(p) + ": index " + std::to_string(table.size()));
      const auto k = abelianization(reidemeister_schreier(pres, table));
      c.expect(k == z_n(4 * p + 3), ps(p) + ": kernel " + k.to_string());
    }
  });

  const auto samples = criterion6_samples();
  const std::vector<GroupPtr> groups{gm(-1), gm(0), gm(1)};

  criterion(6, "clasp calculus on 1000 random programs, under 10 s", [&](Check& c) {
    const auto start = Clock::now();
    int k = 0;
    for (const auto& [p, prog] : samples) {
      const auto& g = groups[static_cast<std::size_t>(p + 1)];
      const std::string tag = "program " + std::to_string(k++) + " (" + ps(p) + ")";
      TwistedLinkingMatrix t(g, prog.framings);
      for (const auto& op : prog.ops) {
        t.apply(op);
        for (std::size_t i = 0; i < t.size(); ++i) {
          for (std::size_t j = 0; j < t.size(); ++j)
            c.expect(t.lambda(j, i) == t.lambda(i, j).involute(), tag + ": not Hermitian");
          c.expect(t.lambda(i, i).involute() == t.lambda(i, i), tag + ": diagonal not involution-invariant");
          c.expect(t.upstairs_framing(i) + t.lambda(i, i).nonidentity_sum() == t.framings()[i],
                   tag + ": n != n' + sum of lift linkings");
        }
      }
      const auto lifted = lifted_matrix(t);
      for (std::size_t a = 0; a < lifted.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) c.expect(lifted[a][b] == lifted[b][a], tag + ": lifted matrix asymmetric");
      const auto back = eval(realize(t.lambda(), t.framings()), g);
      c.expect(back.lambda() == t.lambda() && back.framings() == t.framings(), tag + ": realize round trip differs");
    }
    const double s = seconds_since(start);
    c.expect(s < 10.0, "took " + std::to_string(s) + " s");
  });

  criterion(7, "cover homology agrees with naive Smith reduction on the criterion 6 matrices", [&](Check& c) {
    int k = 0;
    for (const auto& [p, prog] : samples) {
      const auto t = eval(prog, groups[static_cast<std::size_t>(p + 1)]);
      const auto lifted = lifted_matrix(t);
      const auto got = cover_surgery_homology(t);
      const auto [factors, free_rank] = oracle::naive_cokernel(lifted, lifted.size());
      bool same = got.free_rank == free_rank && got.invariant_factors.size() == factors.size();
      for (std::size_t i = 0; same && i < factors.size(); ++i) same = got.invariant_factors[i] == factors[i];
      c.expect(same, "program " + std::to_string(k) + ": " + got.to_string());
      ++k;
    }
  });

  criterion(8, "first-row trivialization on 100 random matrices", [&](Check& c) {
    std::mt19937 rng(8);
    for (int k = 0; k < 100; ++k) {
      const long p = k % 3 - 1;
      const auto& g = groups[static_cast<std::size_t>(p + 1)];
      const auto t = eval(random_program(g, rng), g);
      TwistedLinkingMatrix after = t;
      after.apply(trivialize_first_row(t).ops);
      const std::string tag = "matrix " + std::to_string(k);
      c.expect(after.framings() == t.framings(), tag + ": framings changed");
      c.expect(after.lambda(0, 0) == GroupRingElement::unit(g, 0, after.upstairs_framing(0)), tag + ": lambda_00 not n' e");
      c.expect(after.upstairs_framing(0) == t.framings()[0], tag + ": n' differs from the framing");
      for (std::size_t j = 1; j < after.size(); ++j) c.expect(after.lambda(0, j).is_zero(), tag + ": row entry nonzero");
      for (std::size_t i = 1; i < after.size(); ++i)
        for (std::size_t j = 1; j < after.size(); ++j)
          c.expect(after.lambda(i, j) == t.lambda(i, j), tag + ": other block changed");
    }
  });

  criterion(9, "signatures, stabilization and hyperbolic bases, under 30 s", [](Check& c) {
    const auto start = Clock::now();
    c.expect(signature(hyperbolic_form()) == 0, "signature(H) != 0");
    c.expect(signature(e8_form()) == 8, "signature(E8) != 8");
    for (std::size_t a = 0; a <= 24; ++a)
      for (std::size_t b = 0; a + 8 * b <= 24; ++b)
        for (std::size_t cc = 0; a + 8 * b + 8 * cc <= 24; ++cc) {
          const auto f = direct_sum(direct_sum(direct_sum_power(hyperbolic_form(), a), direct_sum_power(e8_form(), b)),
                                    direct_sum_power(negate(e8_form()), cc));
          if (f.rank() == 0) continue;
          c.expect(signature(f) == 8 * (static_cast<long>(b) - static_cast<long>(cc)),
                   "a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(cc));
        }
    bool rejected = false;
    try {
      e8_stabilization(e8_form(), Category::smooth);
    } catch (const SignatureObstructed&) {
      rejected = true;
    }
    c.expect(rejected, "smooth stabilization accepted signature 8");
    c.expect(e8_stabilization(direct_sum(e8_form(), e8_form()), Category::smooth) == Stabilization{1, -16},
             "smooth stabilization of signature 16");

    std::mt19937 rng(9);
    const auto h2 = direct_sum_power(hyperbolic_form(), 2);
    for (int k = 0; k < 50; ++k) {
      const auto f = congruent(h2, random_unimodular(4, rng));
      const auto d = hyperbolic_basis(f);
      c.expect(d.blocks == 2 && congruent(f, d.basis_change) == h2, "scrambled H+H trial " + std::to_string(k));
    }
    const auto e = direct_sum(e8_form(), negate(e8_form()));
    const auto d = hyperbolic_basis(e);
    c.expect(d.blocks == 8 && congruent(e, d.basis_change) == direct_sum_power(hyperbolic_form(), 8), "E8 + -E8");
    const double s = seconds_since(start);
    c.expect(s < 30.0, "took " + std::to_string(s) + " s");
  });

  criterion(10, "+1 trefoil surgery gives 120 cosets by two strategies; 4-surgery on the unknot gives Z_4", [](Check& c) {
    const auto start = Clock::now();
    const PdCode trefoil({{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}}, {{1, 2, 3, 4, 5, 6}});
    const auto pres = surgery_group({trefoil, {{0, 1}}});
    c.expect(abelianization(pres).is_trivial(), "abelianization " + abelianization(pres).to_string());
    const auto hlt = enumerate_cosets(pres, {}, {default_max_cosets, Strategy::hlt});
    const auto felsch = enumerate_cosets(pres, {}, {default_max_cosets, Strategy::felsch});
    c.expect(hlt.size() == 120, "HLT gave " + std::to_string(hlt.size()));
    c.expect(felsch.size() == 120, "Felsch gave " + std::to_string(felsch.size()));
    const PdCode unknot({{1, 1, 2, 2}}, {{1, 2}});
    const auto lens = abelianization(surgery_group({unknot, {{0, 4}}}));
    c.expect(lens == z_n(4), "unknot 4-surgery gave " + lens.to_string());
    const double s = seconds_since(start);
    c.expect(s < 5.0, "took " + std::to_string(s) + " s");
  });

  std::printf("%s\n", failed_criteria ? "acceptance: FAILED" : "acceptance: all criteria pass");
  return failed_criteria ? 1 : 0;
}
