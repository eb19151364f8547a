// coverlink <group|qm|clasp|forms> <verb> [flags] [files]
//
// Exit codes: 0 pass, 1 failed check, 2 inconclusive (a limit was hit),
// 3 input error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "coverlink/clasp.hpp"
#include "coverlink/coset_enumeration.hpp"
#include "coverlink/forms.hpp"
#include "coverlink/groups.hpp"
#include "coverlink/json_io.hpp"
#include "coverlink/pd_code.hpp"
#include "coverlink/presentation.hpp"
#include "coverlink/qm.hpp"

namespace {

using namespace coverlink;
using json_io::Json;

enum class Status { pass, fail, inconclusive };

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

int exit_code(Status s) {
  switch (s) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::inconclusive: return 2;
  }
  return 3;
}

// One command's outcome. Text lines are for people; `result` mirrors them
// with every number as a decimal string.
struct Report {
  std::string command;
  std::vector<std::string> args;
  Status status = Status::pass;
  Json result = Json::object();
  std::vector<std::string> lines;
  double seconds = 0;

  void add(const std::string& key, const std::string& text, Json value) {
    lines.push_back(key + ": " + text);
    result[key] = std::move(value);
  }
  void add(const std::string& key, const std::string& text) { add(key, text, text); }

  void fail_with(const Error& e) {
    status = e.error_class() == ErrorClass::inconclusive ? Status::inconclusive : Status::fail;
    add("error", e.what(), Json{{"kind", e.kind()}, {"message", e.what()}});
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["args"] = args;
    j["status"] = status_name(status);
    j["result"] = result;
    j["timing_ms"] = std::to_string(static_cast<long long>(seconds * 1000));
    return j;
  }

  void print_text(std::ostream& os) const {
    for (const auto& l : lines) os << l << '\n';
    os << "status: " << status_name(status) << '\n';
  }
};

struct Settings {
  bool json = false;
  std::size_t max_cosets = default_max_cosets;
  long search_bound = default_search_bound;
  Strategy strategy = Strategy::hlt_lookahead;

  EnumerationOptions enumeration() const { return {max_cosets, strategy}; }
};

template <class T>
std::string num(const T& v) {
  if constexpr (std::is_same_v<T, BigInt>) return v.str();
  else return std::to_string(v);
}

Json invariants_json(const AbelianGroupInvariants& a) {
  Json factors = Json::array();
  for (const auto& f : a.invariant_factors) factors.push_back(num(f));
  return Json{{"free_rank", num(a.free_rank)}, {"invariant_factors", factors}, {"text", a.to_string()}};
}

std::string matrix_text(const BigMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

// Elements supported at the identity print as integers.
std::string element_text(const GroupRingElement& a) {
  if (a.is_zero()) return "0";
  if (a.terms().size() == 1 && a.terms().begin()->first == 0) return std::to_string(a.terms().begin()->second);
  return a.to_string();
}

std::string ring_matrix_text(const RingMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? ", " : "") + element_text(m[i][j]);
    out += "]";
  }
  return out + "]";
}

Json int_list(const std::vector<std::int64_t>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(num(static_cast<long long>(x)));
  return out;
}

std::string int_list_text(const std::vector<std::int64_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

std::string parent_dir(const std::string& path) {
  const auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A presentation-file group reference is relative to the JSON file naming
// it; rewrite it for a file written elsewhere.
std::string rebase_group_path(const std::string& name, const std::string& from_file, const std::string& to_file) {
  if (name == "trivial" || name.rfind("cyclic:", 0) == 0 || name.rfind("qm:", 0) == 0) return name;
  namespace fs = std::filesystem;
  fs::path target(name);
  if (target.is_relative()) target = fs::path(parent_dir(from_file)) / target;
  target = fs::weakly_canonical(target);
  const auto rel = target.lexically_relative(fs::weakly_canonical(fs::absolute(parent_dir(to_file))));
  return rel.empty() ? target.string() : rel.string();
}

// .pd files give the link group, or the surgered group when framings are
// present; anything else is read as a presentation.
GroupPresentation load_group(const std::string& path) {
  if (has_suffix(path, ".pd")) {
    const auto pd = load_pd(path);
    return pd.has_framings() ? surgery_group(pd.surgery()) : wirtinger(pd.pd);
  }
  return load_presentation(path);
}

std::vector<Word> parse_words(const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(parse_word(t));
  return out;
}

// ---- group -------------------------------------------------------------

void cmd_group(Report& r, const std::string& verb, const std::string& file, const std::vector<std::string>& words,
               const Settings& s) {
  const auto pres = load_group(file);
  r.add("generators", std::to_string(pres.generators().size()), num(pres.generators().size()));
  r.add("relators", std::to_string(pres.relators().size()), num(pres.relators().size()));
  if (verb == "abelianization") {
    const auto ab = abelianization(pres);
    r.add("abelianization", ab.to_string(), invariants_json(ab));
    return;
  }
  if (verb == "order") {
    const auto table = enumerate_cosets(pres, {}, s.enumeration());
    r.add("order", num(table.size()));
    return;
  }
  const auto subgroup = parse_words(words);
  for (const auto& w : subgroup) pres.check_word(w);
  if (verb == "word-trivial") {
    if (subgroup.size() != 1) throw ParseError("word-trivial takes exactly one word");
    const auto table = enumerate_cosets(pres, {}, s.enumeration());
    const bool trivial = word_is_trivial(table, subgroup[0]);
    r.add("word", subgroup[0].to_string());
    r.add("trivial", trivial ? "yes" : "no", trivial);
    if (!trivial) r.status = Status::fail;
    return;
  }
  const auto table = enumerate_cosets(pres, subgroup, s.enumeration());
  r.add("index", num(table.size()));
  if (verb == "kernel-homology") {
    const auto k = abelianization(reidemeister_schreier(pres, table));
    r.add("kernel_abelianization", k.to_string(), invariants_json(k));
  }
}

// ---- qm ----------------------------------------------------------------

std::vector<long> parse_p_range(const std::string& spec) {
  std::vector<long> out;
  std::stringstream ss(spec);
  std::string part;
  auto to_long = [&](const std::string& t) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw ParseError("bad p value '" + t + "'");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_long(part));
      continue;
    }
    const long a = to_long(part.substr(0, dots)), b = to_long(part.substr(dots + 2));
    if (b < a) throw ParseError("empty range '" + part + "'");
    for (long p = a; p <= b; ++p) out.push_back(p);
  }
  if (out.empty()) throw ParseError("no p values given");
  for (long p : out)
    if (4 * p + 3 == 0) throw ParseError("4p+3 must be nonzero");
  return out;
}

void cmd_qm(Report& r, long p, const Settings& s) {
  const auto c = qm::certify(p, s.enumeration());
  auto check = [&](const std::string& key, bool ok) {
    r.add(key, ok ? "ok" : "FAILED", ok);
    if (!ok) r.status = Status::fail;
  };
  r.add("p", num(p));
  r.add("m", num(-4 * p - 3));
  r.add("order", num(c.order));
  check("order_is_4|m|", c.order == c.expected_order);
  check("presentation_orders_agree", c.orders_agree);
  check("abelianizations_Z4", c.abelianizations_z4);
  check("presentation_chain", c.chain);
  check("y^2_equals_eta0", c.eta_is_y_squared);
  check("eta0_and_z_generate", c.eta_and_z_generate);
  r.add("kernel_index", num(c.kernel_index));
  r.add("kernel_abelianization", c.kernel.to_string(), invariants_json(c.kernel));
  check("kernel_is_Z_|m|", c.kernel_is_cyclic_m());
}

// ---- clasp -------------------------------------------------------------

void report_matrix(Report& r, const TwistedLinkingMatrix& t, const std::string& group_name) {
  r.add("group", group_name);
  r.add("order", num(t.group()->order()));
  r.add("framings", int_list_text(t.framings()), int_list(t.framings()));
  std::vector<std::int64_t> up;
  for (std::size_t i = 0; i < t.size(); ++i) up.push_back(t.upstairs_framing(i));
  r.add("upstairs_framings", int_list_text(up), int_list(up));
  r.add("lambda", ring_matrix_text(t.lambda()), json_io::matrix_to_json(t, group_name, true)["matrix"]);
  if (t.mu()) {
    std::string text;
    Json mu = Json::array();
    for (const auto& m : *t.mu()) {
      text += (text.empty() ? "" : ", ") + element_text(m);
      mu.push_back(json_io::element_to_json(m, true));
    }
    r.add("mu", "[" + text + "]", mu);
  }
}

void cmd_clasp(Report& r, const std::string& verb, const std::string& file, const std::string& out_file,
               const Settings& s) {
  const auto doc = json_io::load(file);
  if (verb == "realize") {
    const auto m = json_io::matrix_from_json(doc, parent_dir(file), s.enumeration());
    const auto prog = realize(m.matrix, m.framings, m.mu);
    const auto t = eval(prog, m.group);
    const bool exact = t.lambda() == m.matrix && (!m.mu || *t.mu() == *m.mu);
    auto prog_json = json_io::program_to_json(prog, m.group_name, *m.group);
    if (!out_file.empty()) prog_json["group"] = rebase_group_path(m.group_name, file, out_file);
    r.add("instructions", num(prog.ops.size()));
    r.add("round_trip", exact ? "exact" : "MISMATCH", exact);
    if (!exact) r.status = Status::fail;
    if (!out_file.empty()) {
      std::ofstream out(out_file);
      if (!out) throw ParseError("cannot write '" + out_file + "'");
      out << prog_json.dump(2) << '\n';
      r.add("written", out_file);
    } else {
      r.add("program", prog_json.dump(), prog_json);
    }
    return;
  }

  const auto pf = json_io::program_from_json(doc, parent_dir(file), s.enumeration());
  const auto t = eval(pf.program, pf.group);
  t.check_invariants();
  if (verb == "eval") {
    report_matrix(r, t, pf.group_name);
    return;
  }
  if (verb == "homology") {
    const auto h = cover_surgery_homology(t);
    r.add("group", pf.group_name);
    r.add("cover_degree", num(t.group()->order()));
    r.add("cover_homology", h.to_string(), invariants_json(h));
    return;
  }
  if (verb == "trivialize") {
    const auto moves = trivialize_first_row(t);
    TwistedLinkingMatrix after = t;
    after.apply(moves.ops);
    if (moves.track_mu) after.track_mu();
    bool ok = after.framings() == t.framings();
    ok = ok && after.lambda(0, 0).terms().size() <= 1 && after.lambda(0, 0).coefficient(0) == after.framings()[0];
    for (std::size_t j = 1; j < after.size(); ++j) ok = ok && after.lambda(0, j).is_zero();
    const auto moves_json = json_io::program_to_json(moves, pf.group_name, *pf.group);
    r.add("moves", num(moves.ops.size()));
    r.add("program", moves_json.dump(), moves_json);
    report_matrix(r, after, pf.group_name);
    r.add("first_row_trivial", ok ? "yes" : "no", ok);
    if (!ok) r.status = Status::fail;
    return;
  }
  throw ParseError("unknown clasp verb '" + verb + "'");
}

// ---- forms -------------------------------------------------------------

// Sums like "E8+-E8", "2*H", "H+H+E8". Terms: H, E8, -E8, optionally k*.
IntegerSymmetricForm builtin_form(const std::string& spec) {
  IntegerSymmetricForm out;
  std::stringstream ss(spec);
  std::string term;
  bool any = false;
  while (std::getline(ss, term, '+')) {
    std::size_t count = 1;
    if (const auto star = term.find('*'); star != std::string::npos) {
      const std::string k = term.substr(0, star);
      if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad multiplicity in '" + term + "'");
      count = std::stoul(k);
      term = term.substr(star + 1);
    }
    IntegerSymmetricForm f;
    if (term == "H") f = hyperbolic_form();
    else if (term == "E8") f = e8_form();
    else if (term == "-E8") f = negate(e8_form());
    else throw ParseError("unknown built-in form '" + term + "' (use H, E8, -E8)");
    out = direct_sum(out, direct_sum_power(f, count));
    any = true;
  }
  if (!any) throw ParseError("empty built-in form");
  return out;
}

// An integer matrix, or a twisted linking matrix (an object with "group"),
// which is augmented.
IntegerSymmetricForm load_form(const std::string& file, const Settings& s) {
  const auto doc = json_io::load(file);
  if (doc.is_object() && doc.contains("group")) {
    const auto m = json_io::matrix_from_json(doc, parent_dir(file), s.enumeration());
    return augment_form(m.matrix);
  }
  return IntegerSymmetricForm(json_io::integer_matrix_from_json(doc));
}

void cmd_forms(Report& r, const std::string& verb, const IntegerSymmetricForm& f, const std::string& category,
               const Settings& s) {
  r.add("rank", num(f.rank()));
  if (verb == "even") {
    const bool even = is_even(f);
    r.add("even", even ? "yes" : "no", even);
    if (!even) r.status = Status::fail;
  } else if (verb == "unimodular") {
    const auto d = determinant(f);
    r.add("determinant", num(BigInt(d)));
    const bool uni = is_unimodular(f);
    r.add("unimodular", uni ? "yes" : "no", uni);
    if (!uni) r.status = Status::fail;
  } else if (verb == "signature") {
    r.add("signature", num(signature(f)));
  } else if (verb == "hyperbolize") {
    const auto d = hyperbolic_basis(f, s.search_bound);
    r.add("blocks", num(d.blocks));
    r.add("basis_change", matrix_text(d.basis_change), json_io::integer_matrix_to_json(d.basis_change, true));
  } else if (verb == "stabilize") {
    Category c;
    if (category == "topological") c = Category::topological;
    else if (category == "smooth") c = Category::smooth;
    else throw ParseError("category must be 'topological' or 'smooth'");
    r.add("category", category);
    r.add("signature", num(signature(f)));
    const auto st = e8_stabilization(f, c);
    r.add("copies", num(st.count));
    r.add("block_signature", num(st.block_signature));
  } else {
    throw ParseError("unknown forms verb '" + verb + "'");
  }
}

// ---- driver ------------------------------------------------------------

template <class F>
Report run(const std::string& command, std::vector<std::string> args, F&& body) {
  Report r;
  r.command = command;
  r.args = std::move(args);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    if (e.error_class() == ErrorClass::input) throw;
    r.fail_with(e);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int emit(const std::vector<Report>& reports, bool json, bool as_array) {
  Status worst = Status::pass;
  for (const auto& r : reports) {
    if (r.status == Status::fail) worst = Status::fail;
    else if (r.status == Status::inconclusive && worst == Status::pass) worst = Status::inconclusive;
  }
  if (json) {
    if (as_array) {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(r.to_json());
      std::cout << arr.dump(2) << '\n';
    } else {
      std::cout << reports.front().to_json().dump(2) << '\n';
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << '\n';
      reports[i].print_text(std::cout);
    }
  }
  return exit_code(worst);
}

std::optional<std::size_t> env_max_cosets() {
  const char* v = std::getenv("COVERLINK_MAX_COSETS");
  if (!v || !*v) return std::nullopt;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos) throw ParseError("COVERLINK_MAX_COSETS must be a positive integer");
  return std::stoull(s);
}

int main_impl(int argc, char** argv) {
  CLI::App app{"coverlink: finite covers, twisted linking matrices and surgery bookkeeping"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  if (auto env = env_max_cosets()) s.max_cosets = *env;
  std::string strategy = "lookahead";
  app.add_flag("--json", s.json, "Print one JSON document; numbers are decimal strings");
  app.add_option("--max-cosets", s.max_cosets, "Coset enumeration limit (default 1000000, env COVERLINK_MAX_COSETS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--strategy", strategy, "Coset enumeration strategy: hlt, lookahead, felsch")
      ->check(CLI::IsMember({"hlt", "lookahead", "felsch"}));
  app.add_option("--search-bound", s.search_bound, "Initial isotropic search box for hyperbolize (default 4)")
      ->check(CLI::PositiveNumber);

  auto* group = app.add_subcommand("group", "Finitely presented groups (.pres or .pd files)");
  std::string group_verb, group_file;
  std::vector<std::string> group_words;
  group->add_option("verb", group_verb, "order | abelianization | word-trivial | subgroup | kernel-homology")
      ->required()
      ->check(CLI::IsMember({"order", "abelianization", "word-trivial", "subgroup", "kernel-homology"}));
  group->add_option("file", group_file, "Presentation or PD file")->required();
  group->add_option("words", group_words, "Word (word-trivial) or subgroup generators");

  auto* qm_cmd = app.add_subcommand("qm", "Certify the claims about G_m for a range of p");
  std::string p_spec;
  qm_cmd->add_option("--p", p_spec, "p values: 3, 0..5, or -1,0,2")->required();

  auto* clasp = app.add_subcommand("clasp", "Clasp programs and twisted linking matrices (JSON)");
  std::string clasp_verb, clasp_file, clasp_out;
  clasp->add_option("verb", clasp_verb, "eval | homology | trivialize | realize")
      ->required()
      ->check(CLI::IsMember({"eval", "homology", "trivialize", "realize"}));
  clasp->add_option("file", clasp_file, "Program JSON (matrix JSON for realize)")->required();
  clasp->add_option("-o,--output", clasp_out, "realize: write the program here");

  auto* forms = app.add_subcommand("forms", "Integral symmetric forms");
  std::string forms_verb, forms_file, builtin, category = "topological";
  forms->add_option("verb", forms_verb, "even | unimodular | signature | hyperbolize | stabilize")
      ->required()
      ->check(CLI::IsMember({"even", "unimodular", "signature", "hyperbolize", "stabilize"}));
  auto* file_opt = forms->add_option("file", forms_file, "Integer matrix JSON, or a twisted linking matrix");
  auto* builtin_opt = forms->add_option("--builtin", builtin, "Built-in form such as H, E8, E8+-E8, 2*H");
  file_opt->excludes(builtin_opt);
  forms->add_option("--category", category, "stabilize: topological (E8) or smooth (E8+E8)")
      ->check(CLI::IsMember({"topological", "smooth"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  s.strategy = strategy == "hlt" ? Strategy::hlt : strategy == "felsch" ? Strategy::felsch : Strategy::hlt_lookahead;

  std::vector<Report> reports;
  bool as_array = false;
  if (group->parsed()) {
    std::vector<std::string> args{group_file};
    args.insert(args.end(), group_words.begin(), group_words.end());
    reports.push_back(
        run("group " + group_verb, args, [&](Report& r) { cmd_group(r, group_verb, group_file, group_words, s); }));
  } else if (qm_cmd->parsed()) {
    as_array = true;
    for (long p : parse_p_range(p_spec))
      reports.push_back(run("qm", {std::to_string(p)}, [&](Report& r) { cmd_qm(r, p, s); }));
  } else if (clasp->parsed()) {
    reports.push_back(run("clasp " + clasp_verb, {clasp_file},
                          [&](Report& r) { cmd_clasp(r, clasp_verb, clasp_file, clasp_out, s); }));
  } else if (forms->parsed()) {
    if (forms_file.empty() && builtin.empty()) throw ParseError("give a matrix file or --builtin");
    const auto f = builtin.empty() ? load_form(forms_file, s) : builtin_form(builtin);
    reports.push_back(run("forms " + forms_verb, {builtin.empty() ? forms_file : "builtin:" + builtin},
                          [&](Report& r) { cmd_forms(r, forms_verb, f, category, s); }));
  }
  return emit(reports, s.json, as_array);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_impl(argc, argv);
  } catch (const coverlink::Error& e) {
    std::cerr << "coverlink: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "coverlink: " << e.what() << '\n';
    return 3;
  }
}
