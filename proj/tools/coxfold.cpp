// coxfold command-line tool: unfolding series, verification jobs, Reiner
// distributions, Bruhat-order DOT export and the formula catalog.
//
// Exit codes: 0 success / all checks pass, 1 mismatch or library error,
// 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coxfold/coxfold.hpp"

namespace {

using namespace coxfold;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  std::string out;
  std::size_t budget = EnumerationOptions{}.budget;
  unsigned workers = 1;

  EnumerationOptions options() const { return {budget, workers}; }
};

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
  if (with_format)
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  cmd->add_option("--budget", c.budget, "Maximum number of stored group elements");
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
}

/// Polynomial part only; truncation is reported separately.
std::string polynomial_text(const QSeries& s) {
  return QSeries::exact(s.coeffs()).to_string();
}

std::string order_text(const QSeries& s) {
  return s.order() ? "truncated at q^" + std::to_string(*s.order()) : "exact";
}

// -- series -----------------------------------------------------------------

struct SeriesArgs {
  std::string family;
  int n = 2;
  int m = 0;
  std::optional<std::size_t> max_len;
  std::string source = "bruteforce";
};

int cmd_series(const SeriesArgs& a, const Common& c) {
  const FamilyId id{a.family, a.n, a.m};
  const bool affine = is_affine_family(a.family);
  if (affine && !a.max_len) throw UsageError("--max-len is required for affine families");
  const bool want_bf = a.source != "formula";
  const bool want_cf = a.source != "bruteforce";

  std::optional<QSeries> bf, cf;
  if (want_bf) bf = unfolding_series_bruteforce(standard_folding(id), a.max_len, c.options());
  if (want_cf) {
    cf = unfolding_closed_form(id, a.max_len);
    if (!affine && a.max_len) cf = cf->truncate(*a.max_len);
  }
  if (bf && !affine && a.max_len && bf->is_exact()) bf = bf->truncate(*a.max_len);
  const bool match = !(bf && cf) || *bf == *cf;

  std::ostringstream os;
  if (c.format == "json") {
    Json j;
    j["family"] = a.family;
    j["n"] = a.n;
    if (a.m) j["m"] = a.m;
    if (bf) j["bruteforce"] = to_json(*bf);
    if (cf) j["formula"] = to_json(*cf);
    if (bf && cf) j["match"] = match;
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    if (bf && cf) {
      os << "degree,bruteforce,formula\n";
      const auto n = std::max(bf->coeffs().size(), cf->coeffs().size());
      for (std::size_t d = 0; d < n; ++d)
        os << d << ',' << (d < bf->coeffs().size() ? bf->coeffs()[d] : Integer(0)) << ','
           << (d < cf->coeffs().size() ? cf->coeffs()[d] : Integer(0)) << '\n';
    } else {
      os << to_csv(bf ? *bf : *cf);
    }
  } else {
    if (bf && cf) {
      os << "bruteforce: " << polynomial_text(*bf) << "  [" << order_text(*bf) << "]\n";
      os << "formula:    " << polynomial_text(*cf) << "  [" << order_text(*cf) << "]\n";
      os << "match: " << (match ? "yes" : "no") << '\n';
    } else {
      const auto& s = bf ? *bf : *cf;
      os << polynomial_text(s) << '\n';
    }
  }
  emit(c, os.str());
  return match ? 0 : kExitMismatch;
}

// -- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string family;
  std::optional<std::string> n_list;
  int m = 0;
  std::optional<std::size_t> max_len;
  bool all = false;
  std::string cache;
};

std::vector<GridPoint> parse_grid(const std::string& list, int m) {
  std::vector<GridPoint> grid;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      grid.push_back({std::stoi(item), m});
    } catch (const std::exception&) {
      throw UsageError("bad --n entry '" + item + "'");
    }
  }
  return grid;
}

std::vector<std::string> default_kinds() {
  std::vector<std::string> kinds = family_names();
  for (const char* k : {"reiner-affB", "reiner-affC", "poincare-A", "poincare-B", "poincare-affA", "length-identity",
                        "coset-factor"})
    kinds.emplace_back(k);
  return kinds;
}

int cmd_verify(const VerifyArgs& a, const Common& c) {
  if (a.all == !a.family.empty()) throw UsageError("give exactly one of --family or --all");
  std::vector<VerificationJob> jobs;
  const auto cache = a.cache.empty() ? cache_dir_from_env() : std::optional<std::filesystem::path>(a.cache);
  for (const auto& kind : a.all ? default_kinds() : std::vector<std::string>{a.family}) {
    VerificationJob job;
    job.kind = kind;
    job.L = a.max_len;
    job.options = c.options();
    job.cache_dir = cache;
    job.grid = a.n_list ? parse_grid(*a.n_list, a.m) : default_grid(kind);
    if (job.grid.empty()) throw UsageError("empty parameter grid for '" + kind + "'");
    jobs.push_back(std::move(job));
  }

  bool ok = true;
  Json reports = Json::array();
  std::ostringstream table;
  table << std::left << std::setw(24) << "kind" << std::setw(5) << "n" << std::setw(5) << "m" << std::setw(7) << "L"
        << std::setw(22) << "status" << "ms\n";
  for (const auto& job : jobs) {
    const auto report = run_job(job);
    ok = ok && report.all_passed();
    reports.push_back(to_json(report));
    for (const auto& cs : report.cases) {
      table << std::setw(24) << job.kind << std::setw(5) << cs.params.n << std::setw(5) << cs.params.m << std::setw(7)
            << (cs.L ? std::to_string(*cs.L) : "exact") << std::setw(22) << to_string(cs.status)
            << static_cast<long>(cs.millis);
      if (!cs.first_mismatch.is_null()) table << "  first mismatch " << cs.first_mismatch.dump();
      if (!cs.message.empty()) table << "  " << cs.message;
      table << '\n';
    }
  }
  const Json out = a.all ? Json{{"reports", reports}} : reports[0];
  if (c.format == "json") {
    emit(c, out.dump(2) + "\n");
  } else {
    if (!c.out.empty()) {
      std::ofstream f(c.out);
      f << out.dump(2) << '\n';
    }
    std::cout << table.str();
  }
  return ok ? 0 : kExitMismatch;
}

// -- reiner -----------------------------------------------------------------

struct ReinerArgs {
  std::string type;
  int n = 2;
  std::optional<std::size_t> max_len;
  std::optional<int> a, b, q;  // q-exponents of a substitution preview
};

int cmd_reiner(const ReinerArgs& r, const Common& c) {
  if (!r.max_len) throw UsageError("--max-len is required");
  const auto type = r.type == "affB" ? ReinerType::affB : ReinerType::affC;
  const auto formula = reiner_distribution(type, r.n, *r.max_len);
  const auto bf = reiner_stats_bruteforce(type, r.n, *r.max_len, c.options());
  const bool match = formula == bf;
  std::optional<QSeries> preview;
  if (r.a || r.b || r.q)
    preview = substitute(formula, Monomial::q(r.a.value_or(1)), Monomial::q(r.b.value_or(1)),
                         Monomial::q(r.q.value_or(1)), *r.max_len);

  std::ostringstream os;
  if (c.format == "json") {
    Json j{{"type", r.type}, {"n", r.n}, {"formula", to_json(formula)}, {"bruteforce", to_json(bf)}, {"match", match}};
    if (preview) j["substituted"] = to_json(*preview);
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << to_csv(formula);
  } else {
    os << "formula:    " << formula.to_string() << '\n';
    os << "bruteforce: " << bf.to_string() << '\n';
    os << "match: " << (match ? "yes" : "no") << '\n';
    if (preview) os << "substituted: " << polynomial_text(*preview) << "  [" << order_text(*preview) << "]\n";
  }
  emit(c, os.str());
  return match ? 0 : kExitMismatch;
}

// -- bruhat-dot -------------------------------------------------------------

struct DotArgs {
  std::string group;
  std::string family;
  int n = 2;
  int m = 0;
};

int cmd_bruhat_dot(const DotArgs& d, const Common& c) {
  const auto sys = build_system(d.group);
  std::optional<Folding> folding;
  if (!d.family.empty()) folding = standard_folding({d.family, d.n, d.m});
  const auto h = bruhat_hasse(sys, folding ? &*folding : nullptr, c.options());
  emit(c, to_dot(sys, h));
  return 0;
}

// -- catalog ----------------------------------------------------------------

int cmd_catalog(const Common& c) {
  Json formulas = Json::array();
  for (const auto& f : formula_catalog())
    formulas.push_back(
        Json{{"tag", f.tag}, {"params", f.params}, {"min_n", f.min_n}, {"kind", f.kind}, {"expression", f.expression}});
  Json families = Json::array();
  for (const auto& name : family_names()) {
    Json fam{{"name", name}, {"min_n", family_min_n(name)}, {"affine", is_affine_family(name)}};
    if (auto sub = reiner_substitution(name))
      fam["reiner"] = Json{{"type", to_string(sub->type)}, {"a", sub->a.q_exp}, {"b", sub->b.q_exp}, {"q", sub->q.q_exp}};
    families.push_back(std::move(fam));
  }
  emit(c, Json{{"formulas", formulas}, {"families", families}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter folding subgroups: unfolding series and their closed forms"};
  app.require_subcommand(1);

  Common common;
  SeriesArgs series;
  auto* s = app.add_subcommand("series", "Unfolding series of a registered folding");
  s->add_option("--family", series.family, "Folding family")->required();
  s->add_option("--n", series.n, "Rank parameter");
  s->add_option("--m", series.m, "Multiplicity (affA-affA)");
  s->add_option("--max-len", series.max_len, "Truncation degree L");
  s->add_option("--source", series.source, "Which side to compute")
      ->check(CLI::IsMember({"bruteforce", "formula", "both"}));
  add_common(s, common);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Compare brute force with closed forms over a parameter grid");
  v->add_option("--family", verify.family, "Family name or check kind");
  v->add_option("--n", verify.n_list, "Comma-separated values of n");
  v->add_option("--m", verify.m, "Second parameter (affA-affA multiplicity, coset-factor part)");
  v->add_option("--max-len", verify.max_len, "Truncation degree (default per family)");
  v->add_flag("--all", verify.all, "Run every default job");
  v->add_option("--cache", verify.cache, "Cache directory (default: $COXFOLD_CACHE)");
  add_common(v, common);

  ReinerArgs reiner;
  auto* r = app.add_subcommand("reiner", "Reiner's distribution: formula against brute force");
  r->add_option("--type", reiner.type, "affB or affC")->required()->check(CLI::IsMember({"affB", "affC"}));
  r->add_option("--n", reiner.n, "Rank parameter");
  r->add_option("--max-len", reiner.max_len, "Truncation degree in q");
  r->add_option("--a", reiner.a, "Preview: substitute a -> q^A");
  r->add_option("--b", reiner.b, "Preview: substitute b -> q^B");
  r->add_option("--q", reiner.q, "Preview: substitute q -> q^Q");
  add_common(r, common);

  DotArgs dot;
  auto* d = app.add_subcommand("bruhat-dot", "Bruhat order Hasse diagram as Graphviz DOT");
  d->add_option("--group", dot.group, "Finite group label, e.g. A3")->required();
  d->add_option("--family", dot.family, "Mark the image of this folding");
  d->add_option("--n", dot.n, "Folding rank parameter");
  d->add_option("--m", dot.m, "Folding multiplicity");
  add_common(d, common, false);

  auto* cat = app.add_subcommand("catalog", "Formula catalog as JSON");
  add_common(cat, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*s) return cmd_series(series, common);
    if (*v) return cmd_verify(verify, common);
    if (*r) return cmd_reiner(reiner, common);
    if (*d) return cmd_bruhat_dot(dot, common);
    if (*cat) return cmd_catalog(common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}
