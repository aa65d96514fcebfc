#ifndef COXFOLD_VERIFIER_HPP
#define COXFOLD_VERIFIER_HPP

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/crc.hpp>

#include "coxfold/closed_forms.hpp"
#include "coxfold/enumeration.hpp"
#include "coxfold/errors.hpp"
#include "coxfold/folding.hpp"
#include "coxfold/serialize.hpp"

namespace coxfold {

struct GridPoint {
  int n = 2;
  int m = 0;  // affA-affA: the multiplicity; coset-factor: the part
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// What to compare and where. `kind` is a family name (brute force against the
/// product formula, plus the Reiner route for affine B/C sources), a debug
/// "-literal" variant, or one of reiner-affB, reiner-affC, poincare-A,
/// poincare-B, poincare-affA, length-identity, coset-factor.
struct VerificationJob {
  std::string kind;
  std::vector<GridPoint> grid;
  std::optional<std::size_t> L;  // default per grid point when absent
  EnumerationOptions options;
  bool record_timing = true;
  std::optional<std::filesystem::path> cache_dir;
};

enum class CaseStatus { pass, mismatch, resource_limit, error };

inline std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::mismatch: return "coefficient-mismatch";
    case CaseStatus::resource_limit: return "resource-limit";
    case CaseStatus::error: return "error";
  }
  return "error";
}

struct CaseReport {
  GridPoint params;
  CaseStatus status = CaseStatus::error;
  std::optional<std::size_t> L;
  Json lhs, rhs;              // compared values (series JSON)
  Json extra;                 // e.g. the Reiner-route series
  Json first_mismatch;        // {degree, lhs, rhs} or null
  std::string message;
  std::size_t elements = 0;
  double millis = 0;
};

struct VerificationReport {
  VerificationJob job;
  std::vector<CaseReport> cases;
  bool all_passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.status == CaseStatus::pass; });
  }
};

/// Kinds accepted by run_job.
inline std::vector<std::string> job_kinds() {
  std::vector<std::string> k = family_names();
  for (const char* extra : {"affA-affA-literal", "affB-affD2n-literal", "affB-affD2n+1-literal",
                            "affC-affA2n+1-literal", "affC-affC2n+1-literal", "reiner-affB", "reiner-affC",
                            "poincare-A", "poincare-B", "poincare-affA", "length-identity", "coset-factor"})
    k.emplace_back(extra);
  return k;
}

/// Truncation used when a job leaves L open: exact for finite families,
/// q^14 for affine ones up to n = 3 and q^10 beyond.
inline std::optional<std::size_t> default_truncation(std::string_view kind, int n) {
  const bool affine = is_affine_family(kind) || kind == "poincare-affA" || kind.rfind("reiner-", 0) == 0;
  if (!affine) return std::nullopt;
  if (kind.rfind("reiner-", 0) == 0) return 8;
  return n <= 3 ? 14 : 10;
}

/// The grid used by `verify --all` and the acceptance suite.
inline std::vector<GridPoint> default_grid(std::string_view kind) {
  const std::string k(kind);
  if (k == "Bn-A2n-1" || k == "Bn-A2n" || k == "Bn-Dn+1") return {{2}, {3}, {4}};
  if (k == "I2-An") return {{2}, {3}, {4}, {5}, {6}, {7}, {8}};
  if (k == "affA-affA" || k == "affA-affA-literal") return {{2, 2}, {2, 3}, {3, 2}};
  if (k.rfind("affB-", 0) == 0) return {{3}, {4}};
  if (k == "affC-affC2n+1-literal") return {{2}};
  if (k.rfind("affC-", 0) == 0) return {{2}, {3}};
  if (k == "reiner-affB") return {{3}};
  if (k == "reiner-affC") return {{2}};
  if (k == "poincare-A") return {{1}, {2}, {3}, {4}};
  if (k == "poincare-B") return {{2}, {3}};
  if (k == "poincare-affA") return {{1}, {2}, {3}};
  if (k == "length-identity") return {{3}, {4}, {5}};
  if (k == "coset-factor") return {{2, 1}, {3, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 3}};
  return {};
}

// ---------------------------------------------------------------------------
// On-disk cache of brute-force series

/// Directory from the COXFOLD_CACHE environment variable, if set.
inline std::optional<std::filesystem::path> cache_dir_from_env() {
  if (const char* p = std::getenv("COXFOLD_CACHE"); p && *p) return std::filesystem::path(p);
  return std::nullopt;
}

inline std::string cache_key(const FamilyId& f, std::optional<std::size_t> L) {
  std::string key = f.name + "_n" + std::to_string(f.n);
  if (f.m) key += "_m" + std::to_string(f.m);
  key += "_L" + (L ? std::to_string(*L) : std::string("exact"));
  return key;
}

namespace detail {

inline std::string crc32_hex(const std::string& data) {
  boost::crc_32_type crc;
  crc.process_bytes(data.data(), data.size());
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
  return os.str();
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, const std::string& key) {
  std::string name = key;
  for (auto& c : name)
    if (c == '+') c = 'p';
  return dir / (name + ".json");
}

}  // namespace detail

/// Stored series for `key`, or nothing. Throws CorruptCache when the file does
/// not parse or its checksum does not match its contents.
inline std::optional<QSeries> cache_get(const std::filesystem::path& dir, const std::string& key) {
  const auto file = detail::cache_file(dir, key);
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const std::exception&) {
    throw CorruptCache("cache entry " + file.string() + " is not valid JSON");
  }
  if (!j.contains("series") || !j.contains("crc32") || j.value("key", "") != key)
    throw CorruptCache("cache entry " + file.string() + " is malformed");
  const std::string payload = j["series"].dump();
  if (detail::crc32_hex(payload) != j["crc32"].get<std::string>())
    throw CorruptCache("checksum mismatch in " + file.string());
  return qseries_from_json(j["series"]);
}

inline void cache_put(const std::filesystem::path& dir, const std::string& key, const QSeries& s) {
  std::filesystem::create_directories(dir);
  Json j;
  j["key"] = key;
  j["series"] = to_json(s);
  j["crc32"] = detail::crc32_hex(j["series"].dump());
  const auto file = detail::cache_file(dir, key);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file);
}

// ---------------------------------------------------------------------------
// Running jobs

namespace detail {

inline void compare_into(CaseReport& c, const QSeries& lhs, const QSeries& rhs) {
  c.lhs = to_json(lhs);
  c.rhs = to_json(rhs);
  if (auto d = first_mismatch(lhs, rhs)) {
    c.status = CaseStatus::mismatch;
    const auto at = [&](const QSeries& s) { return *d < s.coeffs().size() ? s.coeffs()[*d] : Integer(0); };
    c.first_mismatch = Json{{"degree", *d}, {"lhs", integer_to_json(at(lhs))}, {"rhs", integer_to_json(at(rhs))}};
  } else {
    c.status = CaseStatus::pass;
  }
}

inline SeriesResult cached_bruteforce(const Folding& f, std::optional<std::size_t> L, const VerificationJob& job) {
  const auto key = cache_key(f.family, L);
  if (job.cache_dir) {
    try {
      if (auto hit = cache_get(*job.cache_dir, key)) return {*hit, 0};
    } catch (const CorruptCache&) {
      // fall through: recompute and overwrite
    }
  }
  auto r = unfolding_series_count(f, L, job.options);
  if (L && r.series.is_exact() && is_affine_family(f.family.name)) r.series = r.series.truncate(*L);
  if (job.cache_dir) cache_put(*job.cache_dir, key, r.series);
  return r;
}

inline QSeries histogram(const std::vector<std::vector<Element>>& layers) {
  std::vector<Integer> c;
  for (const auto& layer : layers) c.emplace_back(layer.size());
  return QSeries::exact(std::move(c));
}

inline void run_case(const VerificationJob& job, CaseReport& c) {
  const std::string& kind = job.kind;
  const int n = c.params.n;
  const int m = c.params.m;
  c.L = job.L ? job.L : default_truncation(kind, n);
  const auto L = c.L;
  const auto& opts = job.options;

  if (kind == "reiner-affB" || kind == "reiner-affC") {
    const auto type = kind == "reiner-affB" ? ReinerType::affB : ReinerType::affC;
    const std::size_t order = L.value_or(8);
    const auto bf = reiner_stats_bruteforce(type, n, order, opts);
    const auto formula = reiner_distribution(type, n, order);
    c.lhs = to_json(bf);
    c.rhs = to_json(formula);
    for (const auto& [e, coeff] : bf.terms()) c.elements += static_cast<std::size_t>(coeff);
    c.status = bf == formula ? CaseStatus::pass : CaseStatus::mismatch;
    if (c.status == CaseStatus::mismatch) {
      // Report the lowest differing term.
      const auto diff = bf - formula;
      const auto& [e, coeff] = *diff.terms().begin();
      c.first_mismatch = Json{{"degree", e.q}, {"a", e.a}, {"b", e.b},
                              {"lhs", integer_to_json(bf.coeff(e.a, e.b, e.q))},
                              {"rhs", integer_to_json(formula.coeff(e.a, e.b, e.q))}};
    }
    return;
  }
  if (kind == "poincare-A" || kind == "poincare-B") {
    const auto sys = build_system((kind == "poincare-A" ? "A" : "B") + std::to_string(n));
    const auto layers = enumerate_all(sys, opts);
    for (const auto& layer : layers) c.elements += layer.size();
    compare_into(c, histogram(layers), closed_form(kind, n));
    return;
  }
  if (kind == "poincare-affA") {
    const std::size_t order = L.value_or(14);
    const auto sys = build_system("affine-A" + std::to_string(n));
    const auto layers = enumerate_layers(sys, order, opts);
    for (const auto& layer : layers) c.elements += layer.size();
    compare_into(c, histogram(layers).truncate(order), closed_form(kind, n, 0, order));
    return;
  }
  if (kind == "length-identity") {
    const int bm = (n + 1) / 2;
    const auto folding = standard_folding({n % 2 ? "Bn-A2n-1" : "Bn-A2n", bm, 0});
    const auto unfolded = unfolding_series_count(folding, std::nullopt, opts);
    const auto b_layers = enumerate_all(build_system("B" + std::to_string(bm)), opts);
    const auto a_layers = enumerate_all(build_system("A" + std::to_string(n)), opts);
    std::size_t a_size = 0, b_size = 0;
    for (const auto& l : b_layers) b_size += l.size();
    for (const auto& l : a_layers) a_size += l.size();
    c.elements = unfolded.elements + a_size + b_size;
    // Double sums over B_m x B_m and A_n x B_m, evaluated from the histograms.
    const auto lhs = histogram(b_layers).scale_variable(-1, 1) * unfolded.series;
    const auto rhs = histogram(a_layers).scale_variable(-1, 1) * histogram(b_layers);
    compare_into(c, lhs, rhs);
    const auto [formula_lhs, formula_rhs] = corollary_identity(n);
    c.extra = Json{{"formula", to_json(formula_rhs)},
                   {"pairs_lhs", b_size * b_size},
                   {"pairs_rhs", a_size * b_size}};
    if (c.status == CaseStatus::pass && !(lhs == formula_lhs && rhs == formula_rhs)) {
      c.status = CaseStatus::mismatch;
      c.message = "enumerated sides differ from the product formulas";
    }
    return;
  }
  if (kind == "coset-factor") {
    static const char* families[] = {"", "Bn-A2n-1", "Bn-A2n", "Bn-Dn+1"};
    if (m < 1 || m > 3) throw InvalidParameters("coset-factor grid points need m = part in 1..3");
    const auto f = standard_folding({families[m], n, 0});
    GeneratorSet J_hat;
    for (Generator r = 1; r < f.source.rank(); ++r) J_hat.insert(r);
    std::vector<Integer> counts;
    auto stats = walk_unfolded(f, GeneratorSet::all(f.source.rank()), J_hat, std::nullopt, opts,
                               [&](const UnfoldedElement& node) {
                                 const auto k = node.target.length();
                                 if (counts.size() <= k) counts.resize(k + 1);
                                 counts[k] += 1;
                               });
    c.elements = stats.elements;
    compare_into(c, QSeries::exact(std::move(counts)), coset_factor(m, n));
    return;
  }

  // Folding families and their debug variants.
  const bool literal = kind.size() > 8 && kind.substr(kind.size() - 8) == "-literal";
  const std::string family = kind == "affC-affC2n+1-literal" || !literal ? kind : kind.substr(0, kind.size() - 8);
  const FamilyId id{family, n, m};
  const auto folding = standard_folding(id);
  const auto bf = cached_bruteforce(folding, L, job);
  c.elements = bf.elements;
  const QSeries formula = literal && kind != "affC-affC2n+1-literal" ? closed_form(kind, n, m, L)
                                                                      : unfolding_closed_form(id, L);
  compare_into(c, bf.series, formula);
  if (!literal && reiner_substitution(family)) {
    const auto route = reiner_route(id, *L);
    c.extra = Json{{"reiner", to_json(route)}};
    if (c.status == CaseStatus::pass && !(route == bf.series)) {
      c.status = CaseStatus::mismatch;
      c.message = "Reiner specialization differs from brute force";
      if (auto d = first_mismatch(bf.series, route))
        c.first_mismatch = Json{{"degree", *d}, {"lhs", integer_to_json(bf.series.coeff(*d))},
                                {"rhs", integer_to_json(route.coeff(*d))}, {"route", "reiner"}};
    }
  }
}

}  // namespace detail

/// Runs every grid point (concurrently when options.workers > 1) and returns
/// the cases sorted by grid key. Failures become case entries, never
/// exceptions.
inline VerificationReport run_job(const VerificationJob& job) {
  VerificationReport report{job, {}};
  auto grid = job.grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto run_one = [&job](GridPoint p) {
    CaseReport c;
    c.params = p;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto& kinds = job_kinds();
      if (std::find(kinds.begin(), kinds.end(), job.kind) == kinds.end())
        throw InvalidParameters("unknown job kind '" + job.kind + "'");
      detail::run_case(job, c);
    } catch (const ResourceLimit& e) {
      c.status = CaseStatus::resource_limit;
      c.message = e.what();
    } catch (const std::exception& e) {
      c.status = CaseStatus::error;
      c.message = e.what();
    }
    c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return c;
  };

  if (job.options.workers > 1 && grid.size() > 1) {
    std::vector<std::future<CaseReport>> futures;
    for (const auto& p : grid) futures.push_back(std::async(std::launch::async, run_one, p));
    for (auto& f : futures) report.cases.push_back(f.get());
  } else {
    for (const auto& p : grid) report.cases.push_back(run_one(p));
  }
  return report;
}

/// Report JSON. Worker count is an execution detail and timing is optional,
/// so the bytes are reproducible across reruns and worker counts.
inline Json to_json(const VerificationReport& r) {
  Json job;
  job["kind"] = r.job.kind;
  Json grid = Json::array();
  for (const auto& p : r.job.grid) grid.push_back(Json{{"n", p.n}, {"m", p.m}});
  job["grid"] = grid;
  job["L"] = r.job.L ? Json(*r.job.L) : Json("default");
  job["budget"] = r.job.options.budget;
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json j;
    j["params"] = Json{{"n", c.params.n}, {"m", c.params.m}};
    j["status"] = to_string(c.status);
    j["L"] = c.L ? Json(*c.L) : Json("exact");
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    if (!c.first_mismatch.is_null()) j["first_mismatch"] = c.first_mismatch;
    if (!c.extra.is_null()) j["extra"] = c.extra;
    if (!c.message.empty()) j["message"] = c.message;
    j["elements_enumerated"] = c.elements;
    if (r.job.record_timing) j["millis"] = static_cast<std::int64_t>(c.millis);
    cases.push_back(std::move(j));
  }
  return Json{{"job", job}, {"cases", cases}};
}

}  // namespace coxfold

#endif  // COXFOLD_VERIFIER_HPP
