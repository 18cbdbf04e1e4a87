#include "pathalg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathalg/catalog.hpp"
#include "pathalg/groups.hpp"

namespace pathalg::cli {

using nlohmann::json;

namespace {

constexpr int kDefaultMaxD = 5;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void check_d(int d, bool allow_large) {
  if (d < 3) throw UsageError("d must be at least 3");
  if (d > kDefaultMaxD && !allow_large)
    throw UsageError("d = " + std::to_string(d) + " exceeds the default cap of " + std::to_string(kDefaultMaxD) +
                     "; pass --allow-large");
}

std::vector<unsigned> parse_grid(const std::string& text, int degree) {
  std::vector<unsigned> out;
  for (const auto& item : split_list(text)) out.push_back(parse_param(item, degree));
  return out;
}

json params_json(const std::vector<unsigned>& grid, int degree) {
  json out = json::array();
  for (unsigned v : grid) out.push_back(param_name(v, degree));
  return out;
}

json two_group_json(const TwoGroupType& t) {
  return json{{"type", t.to_string()}, {"class", class_name(t.cls)}, {"order", t.order},
              {"involutions", t.involutions}, {"involution_count_consistent", t.consistent}};
}

struct AlgebraArgs {
  int family = 1;
  int d = 3;
  bool hat = false;
  bool j = false;
  std::string c, chat, c1 = "0", c2, c3;
  std::string field = "gf2";
  std::vector<std::string> show;
  bool allow_large = false;
  std::string out;
};

int cmd_algebra(const AlgebraArgs& a, std::ostream& out) {
  check_d(a.d, a.allow_large);
  if (a.hat && a.j) throw UsageError("--hat and --j are exclusive");
  const int degree = parse_field(a.field);
  CatalogKey key;
  if (a.j) {
    const std::string& last = a.family == 1 ? a.c2 : a.c3;
    if ((a.family == 1 && !a.c3.empty()) || (a.family == 2 && !a.c2.empty()))
      throw UsageError(a.family == 1 ? "c3 applies to family 2 only" : "c2 applies to family 1 only");
    key = CatalogKey::j(a.family, a.d, parse_param(a.c1, degree), last.empty() ? 1u : parse_param(last, degree), degree);
  } else {
    const std::string& v = !a.chat.empty() ? a.chat : (!a.c.empty() ? a.c : std::string("0"));
    const unsigned c = parse_param(v, degree);
    key = a.hat ? CatalogKey::hat(a.family, a.d, c, degree) : CatalogKey::basic(a.family, a.d, c, degree);
  }
  key.validate();
  FiniteDimAlgebra alg = build_algebra(key);

  json report;
  report["key"] = key.to_string();
  report["generators"] = generator_literals(key);
  report["dim"] = alg.dim();
  std::array<std::size_t, 2> proj{};
  for (const auto& p : alg.basis()) ++proj.at(static_cast<std::size_t>(p.source()));
  report["projectives"] = proj;
  report["loewy"] = alg.loewy_length();
  json soc = json::array();
  for (const auto& v : alg.socle_series().at(1).basis()) soc.push_back(alg.element(v).to_string());
  report["socle"] = soc;
  report["cartan"] = cartan_matrix(alg);

  std::vector<std::string> fields;
  for (const auto& s : a.show)
    for (const auto& f : split_list(s)) fields.push_back(f);
  for (const auto& f : fields)
    if (f != "all" && !report.contains(f)) throw UsageError("unknown --show field '" + f + "'");
  json result;
  if (fields.size() == 1 && fields[0] != "all") {
    result = report[fields[0]];
  } else if (fields.empty() || std::find(fields.begin(), fields.end(), "all") != fields.end()) {
    result = report;
  } else {
    for (const auto& f : fields) result[f] = report[f];
  }
  const std::string text = result.dump(result.is_object() ? 2 : -1) + "\n";
  if (a.out.empty()) out << text;
  else write_atomic(a.out, text);
  return kOk;
}

struct VerifyArgs {
  std::vector<int> families{1};
  std::vector<int> ds{3};
  std::string field = "gf2";
  std::string chat_grid, c1_grid, inject;
  std::uint64_t budget = std::uint64_t{1} << 22;
  unsigned threads = 0;
  bool allow_large = false;
  std::string out;
  int verbose = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const int degree = parse_field(a.field);
  std::vector<int> families = a.families, ds = a.ds;
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (int f : families)
    if (f != 1 && f != 2) throw UsageError("family must be 1 or 2");
  for (int d : ds) check_d(d, a.allow_large);

  std::optional<std::pair<std::string, unsigned>> inject;
  if (!a.inject.empty()) {
    auto eq = a.inject.find('=');
    if (eq == std::string::npos) throw UsageError("--inject expects name=value");
    std::string name = a.inject.substr(0, eq);
    if (name != "c2" && name != "c3") throw UsageError("--inject accepts c2 or c3");
    inject = {name, parse_param(a.inject.substr(eq + 1), std::max(degree, 2))};
    for (int f : families)
      if ((f == 1) != (name == "c2")) throw UsageError(name + " does not apply to family " + std::to_string(f));
  }

  json config{{"families", families}, {"d", ds}, {"field", "gf" + std::to_string(1 << degree)}, {"budget", a.budget}};
  config["chat_grid"] = a.chat_grid.empty() ? json("default") : params_json(parse_grid(a.chat_grid, degree), degree);
  config["c1_grid"] = a.c1_grid.empty() ? json("default") : params_json(parse_grid(a.c1_grid, degree), degree);
  if (inject) config["inject"] = a.inject;

  json steps = json::array();
  bool all_pass = true;
  std::ostringstream summary;
  for (int f : families)
    for (int d : ds) {
      VerifyOptions o;
      o.family = f;
      o.d = d;
      o.degree = degree;
      o.chat_grid = parse_grid(a.chat_grid, degree);
      o.c1_grid = parse_grid(a.c1_grid, degree);
      if (inject) o.inject = inject->second;
      o.budget = a.budget;
      o.threads = effective_threads(a.threads);
      o.allow_large = a.allow_large;
      const auto t0 = std::chrono::steady_clock::now();
      VerificationReport r = verify_theorem(o);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (const auto& s : r.steps)
        summary << "step " << s.step << ' ' << (s.pass ? "pass" : "FAIL") << "  " << s.key << "  " << s.claim << '\n';
      if (!r.passed()) {
        all_pass = false;
        summary << "failed at step " << r.first_failure() << " for family=" << f << " d=" << d << '\n';
      }
      if (a.verbose > 0) err << "family=" << f << " d=" << d << " finished in " << secs << " s\n";
      for (auto& s : r.steps_json()) steps.push_back(std::move(s));
    }
  json report{{"schema", 1}, {"config", config}, {"steps", steps}};
  if (a.out.empty()) {
    out << report.dump(2) << '\n';
  } else {
    write_atomic(a.out, report.dump(2) + "\n");
    out << summary.str();
  }
  return all_pass ? kOk : kFailed;
}

json groups_json(const GroupChecks& r) {
  return json{{"q", r.q},
              {"d", r.d},
              {"pgl_order", r.pgl_order},
              {"sylow", r.pgl_sylow.to_string()},
              {"pgl_sylow", two_group_json(r.pgl_sylow)},
              {"pgl_center", r.pgl_center},
              {"sl2_order", r.sl2_order},
              {"sl2_sylow", r.sl2_sylow.to_string()},
              {"h_order", r.h_order},
              {"ghat_order", r.ghat_order},
              {"ghat_sylow", r.ghat_sylow.to_string()},
              {"ghat_sylow_detail", two_group_json(r.ghat_sylow)},
              {"ghat_involution_is_minus_one", r.ghat_involution_is_minus_one},
              {"center", r.ghat_center},
              {"quotient_order", r.quotient_order},
              {"quotient_sylow", r.quotient_sylow.to_string()},
              {"quotient_matches_pgl", r.quotient_order == r.pgl_order},
              {"isomorphism_certified", r.isomorphism_certified},
              {"closure", r.closure_ok},
              {"status", r.pass() ? "pass" : "fail"},
              {"failures", r.failures}};
}

int cmd_groups(const std::vector<int>& qs, const std::string& out_path, std::ostream& out) {
  for (int q : qs)
    if (q != 3 && q != 5 && q != 7) throw UsageError("q must be one of 3, 5, 7 (got " + std::to_string(q) + ")");
  json all = json::array();
  bool pass = true;
  for (int q : qs) {
    GroupChecks r = check_groups(q);
    pass = pass && r.pass();
    all.push_back(groups_json(r));
  }
  json result = qs.size() == 1 ? all[0] : all;
  const std::string text = result.dump(2) + "\n";
  if (out_path.empty()) out << text;
  else write_atomic(out_path, text);
  return pass ? kOk : kFailed;
}

// Fills options not given on the command line from a key=value file.
void apply_config(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (!item.parents.empty() || item.name == "++" || item.name == "--") continue;
    CLI::Option* op = app.get_option_no_throw("--" + item.name);
    if (op == nullptr || item.name == "config") throw CLI::ConfigError::Extras(item.fullname());
    if (op->count() > 0) continue;
    for (const auto& v : item.inputs) op->add_result(v);
    op->run_callback();
  }
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

unsigned effective_threads(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QF_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

int parse_field(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (t.rfind("gf", 0) == 0) t = t.substr(2);
  t.erase(std::remove(t.begin(), t.end(), '('), t.end());
  t.erase(std::remove(t.begin(), t.end(), ')'), t.end());
  for (int m = 1; m <= kMaxFieldDegree; ++m)
    if (t == std::to_string(1 << m)) return m;
  throw UsageError("unsupported field '" + text + "'; expected gf2, gf4, ..., gf256");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional path algebra quotients over GF(2^m), with a built-in block catalog"};
  app.name(args.empty() ? "pathalg" : args[0]);
  app.require_subcommand(1);

  AlgebraArgs aa;
  auto* alg = app.add_subcommand("algebra", "Build a catalog algebra and report its invariants");
  alg->add_option("--family", aa.family, "Family 1 or 2")->check(CLI::IsMember({1, 2}));
  alg->add_option("--d", aa.d, "Defect parameter d >= 3");
  alg->add_flag("--hat", aa.hat, "Use the hatted algebra");
  alg->add_flag("--j", aa.j, "Use the quotient by the comparison ideal J");
  alg->add_option("--c", aa.c, "Parameter c (0, 1, w, w2 or an integer code)");
  alg->add_option("--chat", aa.chat, "Parameter of the hatted algebra");
  alg->add_option("--c1", aa.c1, "J parameter c1");
  alg->add_option("--c2", aa.c2, "J parameter c2 (family 1)");
  alg->add_option("--c3", aa.c3, "J parameter c3 (family 2)");
  alg->add_option("--field", aa.field, "gf2, gf4, ...");
  alg->add_option("--show", aa.show, "dim, projectives, loewy, socle, cartan, generators, key or all");
  alg->add_flag("--allow-large", aa.allow_large, "Allow d > 5");
  alg->add_option("--out", aa.out, "Write the result to a file");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run the verification pipeline");
  ver->add_option("--family", va.families, "Families, comma separated")->delimiter(',')->check(CLI::IsMember({1, 2}));
  ver->add_option("--d", va.ds, "Values of d, comma separated")->delimiter(',');
  ver->add_option("--field", va.field, "Working field");
  ver->add_option("--chat-grid", va.chat_grid, "Parameter grid for c and chat, comma separated");
  ver->add_option("--c1-grid", va.c1_grid, "Parameter grid for c1, comma separated");
  ver->add_option("--inject", va.inject, "Replace c2 or c3 in the symmetric-form check, e.g. c2=w");
  ver->add_option("--budget", va.budget, "Uniserial search budget per query")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 24));
  ver->add_option("--threads", va.threads, "Worker threads (0 = all cores; QF_THREADS caps this)");
  ver->add_flag("--allow-large", va.allow_large, "Allow d > 5");
  ver->add_option("--out", va.out, "Report path (written atomically)");
  ver->add_flag("-v,--verbose", va.verbose, "Timing on stderr");
  std::string config_path;
  ver->add_option("--config", config_path, "Flat key=value file mirroring the flags; flags win");

  std::vector<int> qs;
  std::string groups_out;
  auto* grp = app.add_subcommand("groups", "Matrix group checks");
  grp->require_subcommand(1);
  auto* gver = grp->add_subcommand("verify", "Orders, Sylow 2-subgroups and centers for q");
  gver->add_option("--q", qs, "Odd prime q in {3, 5, 7}, comma separated")->delimiter(',')->required();
  gver->add_option("--out", groups_out, "Write the result to a file");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
    if (!config_path.empty()) apply_config(*ver, config_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (alg->parsed()) return cmd_algebra(aa, out);
    if (ver->parsed()) return cmd_verify(va, out, err);
    if (gver->parsed()) return cmd_groups(qs, groups_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace pathalg::cli
