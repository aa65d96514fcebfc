#ifndef COXFOLD_FOLDING_HPP
#define COXFOLD_FOLDING_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxfold/coxeter_system.hpp"
#include "coxfold/enumeration.hpp"
#include "coxfold/errors.hpp"
#include "coxfold/qseries.hpp"

namespace coxfold {

/// Registry tag plus parameters. `m` is used by affA-affA only.
struct FamilyId {
  std::string name;
  int n = 2;
  int m = 0;

  friend bool operator==(const FamilyId&, const FamilyId&) = default;
  friend auto operator<=>(const FamilyId&, const FamilyId&) = default;
};

/// An embedding of the Coxeter group `source` (generators r) into `target`
/// (generators s) sending r to the longest element of the parabolic subgroup
/// on its block of the generator partition.
struct Folding {
  FamilyId family;
  CoxeterSystem source;
  CoxeterSystem target;
  std::vector<Generator> partition;   // target generator -> source generator
  std::vector<Word> unfold_letters;   // source generator -> word in target generators

  /// Generators of the target lying over the source generator r.
  GeneratorSet block(Generator r) const {
    GeneratorSet b;
    for (Generator s = 0; s < partition.size(); ++s)
      if (partition[s] == r) b.insert(s);
    return b;
  }
};

/// Names accepted by standard_folding(), in registry order.
inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "Bn-A2n-1",      "Bn-A2n",        "Bn-Dn+1",       "I2-An",         "affA-affA",
      "affB-affDn+1",  "affB-affD2n",   "affB-affD2n+1", "affC-affA2n+1", "affC-affA2n",
      "affC-affA2n-1", "affC-affBn+1",  "affC-affDn+2",  "affC-affC2n+1", "affC-affC2n"};
  return names;
}

/// Family names with an affine (infinite) source group.
inline bool is_affine_family(std::string_view name) { return name.rfind("aff", 0) == 0; }

/// Smallest admissible n for the family.
inline int family_min_n(std::string_view name) {
  if (name.rfind("affB-", 0) == 0) return 3;
  return 2;
}

namespace detail {

/// Builds a folding from printed generator labels.
inline Folding make_folding(FamilyId id, const std::string& source_label, const std::string& target_label,
                            const std::vector<std::vector<int>>& printed_words) {
  CoxeterSystem src = build_system(source_label);
  CoxeterSystem tgt = build_system(target_label);
  if (printed_words.size() != src.rank()) throw InvalidParameters(id.name + ": wrong number of unfolding words");
  std::vector<Word> words;
  for (const auto& pw : printed_words) {
    Word w;
    for (int label : pw) {
      const int idx = label - static_cast<int>(tgt.first_label());
      if (idx < 0 || static_cast<std::size_t>(idx) >= tgt.rank())
        throw InvalidParameters(id.name + ": generator label " + std::to_string(label) + " not in " + target_label);
      w.push_back(static_cast<Generator>(idx));
    }
    words.push_back(std::move(w));
  }
  return Folding{std::move(id), std::move(src), std::move(tgt), {}, std::move(words)};
}

/// Checks the folding data: blocks partition S, and each word is the longest
/// element of the parabolic subgroup on its block (hence an involution).
inline void validate_folding(Folding& f) {
  const auto& tgt = f.target;
  std::vector<int> owner(tgt.rank(), -1);
  for (Generator r = 0; r < f.unfold_letters.size(); ++r) {
    for (auto s : f.unfold_letters[r]) {
      if (owner[s] != -1 && owner[s] != static_cast<int>(r))
        throw InvalidParameters(f.family.name + ": blocks overlap at generator " + std::to_string(s));
      owner[s] = static_cast<int>(r);
    }
  }
  for (std::size_t s = 0; s < owner.size(); ++s)
    if (owner[s] == -1) throw InvalidParameters(f.family.name + ": blocks do not cover generator " + std::to_string(s));
  f.partition.assign(owner.begin(), owner.end());

  for (Generator r = 0; r < f.unfold_letters.size(); ++r) {
    const Word& word = f.unfold_letters[r];
    const Element w = tgt.from_word(word);
    if (w.length() != word.size()) throw InvalidParameters(f.family.name + ": unfolding word is not reduced");
    if (w != longest_element(tgt, f.block(r)))
      throw InvalidParameters(f.family.name + ": unfolding word is not the longest element of its block");
    if (!tgt.multiply(w, w).is_identity()) throw InvalidParameters(f.family.name + ": unfolding word is not an involution");
  }
}

}  // namespace detail

/// The registered folding for a family. Generator labels follow the printed
/// graphs (see build_system); every word is validated on construction.
inline Folding standard_folding(const FamilyId& id) {
  const int n = id.n;
  const std::string& name = id.name;
  const auto N = [](int k) { return std::to_string(k); };
  const auto& names = family_names();
  const bool debug_literal = name == "affC-affC2n+1-literal";
  if (!debug_literal && std::find(names.begin(), names.end(), name) == names.end())
    throw InvalidParameters("unknown folding family '" + name + "'");
  if (n < family_min_n(name))
    throw InvalidParameters(name + " needs n >= " + std::to_string(family_min_n(name)));
  if (name == "affA-affA" && id.m < 2) throw InvalidParameters("affA-affA needs m >= 2");
  if (name != "affA-affA" && id.m != 0) throw InvalidParameters(name + " takes no m parameter");

  std::vector<std::vector<int>> w;
  std::string src, tgt;

  if (name == "Bn-A2n-1" || (name == "Bn-Dn+1" && n == 2)) {
    // B_2 -> D_3 is the same embedding as B_2 -> A_3.
    src = "B" + N(n), tgt = "A" + N(2 * n - 1);
    for (int i = 1; i < n; ++i) w.push_back({i, 2 * n - i});
    w.push_back({n});
  } else if (name == "Bn-A2n") {
    src = "B" + N(n), tgt = "A" + N(2 * n);
    for (int i = 1; i < n; ++i) w.push_back({i, 2 * n + 1 - i});
    w.push_back({n, n + 1, n});
  } else if (name == "Bn-Dn+1") {
    src = "B" + N(n), tgt = "D" + N(n + 1);
    for (int i = 1; i < n; ++i) w.push_back({i});
    w.push_back({n, n + 1});
  } else if (name == "I2-An") {
    src = "I2(" + N(n + 1) + ")", tgt = "A" + N(n);
    std::vector<int> odd, even;
    for (int i = 1; i <= n; ++i) (i % 2 ? odd : even).push_back(i);
    w = {odd, even};
  } else if (name == "affA-affA") {
    const int m = id.m;
    src = "affine-A" + N(n - 1), tgt = "affine-A" + N(m * n - 1);
    for (int i = 0; i < n; ++i) {
      std::vector<int> word;
      for (int j = 0; j < m; ++j) word.push_back(i + j * n);
      w.push_back(word);
    }
  } else if (name == "affB-affDn+1") {
    src = "affine-B" + N(n), tgt = "affine-D" + N(n + 1);
    w.push_back({0, 1});
    for (int i = 1; i <= n; ++i) w.push_back({i + 1});
  } else if (name == "affB-affD2n") {
    // Reflection of the D-graph about s_n: s_i <-> s_{2n-i}, ends s_0,s_1 <-> s_2n,s_2n-1.
    src = "affine-B" + N(n), tgt = "affine-D" + N(2 * n);
    w.push_back({n});
    for (int j = 1; j <= n; ++j) w.push_back({n - j, n + j});
  } else if (name == "affB-affD2n+1") {
    src = "affine-B" + N(n), tgt = "affine-D" + N(2 * n + 1);
    w.push_back({n, n + 1, n});
    for (int j = 1; j <= n; ++j) w.push_back({n - j, n + 1 + j});
  } else if (name == "affC-affA2n+1") {
    src = "affine-C" + N(n), tgt = "affine-A" + N(2 * n + 1);
    w.push_back({0, 2 * n + 1, 0});
    for (int i = 1; i < n; ++i) w.push_back({i, 2 * n + 1 - i});
    w.push_back({n, n + 1, n});
  } else if (name == "affC-affA2n") {
    src = "affine-C" + N(n), tgt = "affine-A" + N(2 * n);
    w.push_back({0, 2 * n, 0});
    for (int i = 1; i < n; ++i) w.push_back({i, 2 * n - i});
    w.push_back({n});
  } else if (name == "affC-affA2n-1") {
    src = "affine-C" + N(n), tgt = "affine-A" + N(2 * n - 1);
    w.push_back({0});
    for (int i = 1; i < n; ++i) w.push_back({i, 2 * n - i});
    w.push_back({n});
  } else if (name == "affC-affBn+1") {
    src = "affine-C" + N(n), tgt = "affine-B" + N(n + 1);
    for (int i = 0; i < n; ++i) w.push_back({i});
    w.push_back({n, n + 1});
  } else if (name == "affC-affDn+2") {
    src = "affine-C" + N(n), tgt = "affine-D" + N(n + 2);
    w.push_back({0, 1});
    for (int i = 1; i < n; ++i) w.push_back({i + 1});
    w.push_back({n + 1, n + 2});
  } else if (name == "affC-affC2n+1") {
    // Pairs s_i with its mirror image s_{2n+1-i} in the C-graph.
    src = "affine-C" + N(n), tgt = "affine-C" + N(2 * n + 1);
    for (int i = 0; i < n; ++i) w.push_back({i, 2 * n + 1 - i});
    w.push_back({n, n + 1, n});
  } else if (name == "affC-affC2n+1-literal") {
    // The index rule s_i s_{2n+i} read verbatim; only n = 2 stays inside C~_{2n+1}.
    src = "affine-C" + N(n), tgt = "affine-C" + N(2 * n + 1);
    for (int i = 0; i < n; ++i) w.push_back({i, 2 * n + i});
    w.push_back({n, n + 1, n});
  } else if (name == "affC-affC2n") {
    src = "affine-C" + N(n), tgt = "affine-C" + N(2 * n);
    for (int i = 0; i < n; ++i) w.push_back({i, 2 * n - i});
    w.push_back({n});
  }

  Folding f = detail::make_folding(id, src, tgt, w);
  detail::validate_folding(f);
  return f;
}

/// Concatenation of the unfolding words of the letters of w.
inline Word unfold_word(const Folding& f, const Word& w) {
  Word out;
  for (auto r : w) {
    if (r >= f.unfold_letters.size()) throw IndexOutOfRange("source generator " + std::to_string(r));
    out.insert(out.end(), f.unfold_letters[r].begin(), f.unfold_letters[r].end());
  }
  return out;
}

/// phi(w) as an element of the target group.
inline Element unfold(const Folding& f, const Element& w) {
  return f.target.from_word(unfold_word(f, f.source.reduced_word(w)));
}

// ---------------------------------------------------------------------------
// Walking the folding subgroup

struct UnfoldedElement {
  Element source;
  Element target;
};

struct WalkStats {
  std::size_t elements = 0;  // source elements visited
  bool pruned = false;       // some element was cut by the ambient length bound
};

/// Breadth-first walk over the source group (restricted to generators in
/// `allowed`, and to minimal coset representatives with no right descent in
/// `quotient` if non-empty), carrying phi(w) along. Elements whose unfolded
/// length exceeds L are dropped together with their descendants, which is
/// sound because unfolded length only grows along reduced words. Coset
/// representatives are closed under suffixes, so that walk multiplies on the
/// left.
template <class Visit>
WalkStats walk_unfolded(const Folding& f, GeneratorSet allowed, GeneratorSet quotient, std::optional<std::size_t> L,
                        const EnumerationOptions& opts, Visit visit) {
  const auto& src = f.source;
  const auto& tgt = f.target;
  WalkStats stats;
  std::vector<UnfoldedElement> layer{{src.identity(), tgt.identity()}};
  const auto gens = allowed.members();
  const auto quotient_gens = quotient.members();
  std::atomic<bool> pruned{false};
  const bool left = !quotient.empty();
  const Side side = left ? Side::Left : Side::Right;
  while (!layer.empty()) {
    for (const auto& node : layer) visit(node);
    stats.elements += layer.size();
    if (stats.elements > opts.budget)
      throw ResourceLimit("walk of " + src.label() + " exceeds budget of " + std::to_string(opts.budget));
    layer = detail::expand_layer(
        layer, opts.workers,
        [&](const UnfoldedElement& node, std::vector<UnfoldedElement>& out) {
          for (auto r : gens) {
            if (left ? src.has_left_descent(node.source, r) : src.has_right_descent(node.source, r)) continue;
            Element child = src.apply(node.source, r, side);
            bool keep = true;
            for (auto j : quotient_gens)
              if (src.has_right_descent(child, j)) keep = false;
            if (!keep) continue;
            if (L && node.target.length() + f.unfold_letters[r].size() > *L) {
              pruned = true;
              continue;
            }
            Element image = node.target;
            const Word& letters = f.unfold_letters[r];
            if (left) {
              for (auto it = letters.rbegin(); it != letters.rend(); ++it) image = tgt.apply(image, *it, Side::Left);
            } else {
              for (auto s : letters) image = tgt.apply(image, s, Side::Right);
            }
            out.push_back({std::move(child), std::move(image)});
          }
        },
        [](const UnfoldedElement& x, const UnfoldedElement& y) { return x.source < y.source; },
        [](const UnfoldedElement& x, const UnfoldedElement& y) { return x.source == y.source; });
  }
  stats.pruned = pruned;
  return stats;
}

struct SeriesResult {
  QSeries series;
  std::size_t elements = 0;
};

namespace detail {

inline SeriesResult histogram_walk(const Folding& f, GeneratorSet allowed, GeneratorSet quotient,
                                   std::optional<std::size_t> L, const EnumerationOptions& opts) {
  std::vector<Integer> counts;
  auto stats = walk_unfolded(f, allowed, quotient, L, opts, [&](const UnfoldedElement& node) {
    const auto k = node.target.length();
    if (counts.size() <= k) counts.resize(k + 1);
    counts[k] += 1;
  });
  // Without pruning the walk exhausted a finite group and the polynomial is exact.
  if (!stats.pruned) return {QSeries::exact(std::move(counts)), stats.elements};
  return {QSeries::truncated(std::move(counts), *L), stats.elements};
}

}  // namespace detail

/// Sum of q^{l(phi(w))} over the source group, counting all w whose unfolding
/// has length <= L (or every w when L is absent, which needs a finite source).
inline SeriesResult unfolding_series_count(const Folding& f, std::optional<std::size_t> L,
                                           const EnumerationOptions& opts = {}) {
  return detail::histogram_walk(f, GeneratorSet::all(f.source.rank()), {}, L, opts);
}

inline QSeries unfolding_series_bruteforce(const Folding& f, std::optional<std::size_t> L,
                                           const EnumerationOptions& opts = {}) {
  auto r = unfolding_series_count(f, L, opts).series;
  if (L && r.is_exact() && is_affine_family(f.family.name)) return r.truncate(*L);
  return r;
}

// ---------------------------------------------------------------------------
// Admissibility

struct AdmissibilityViolation {
  Word element;          // a word in the target generators for the witness
  GeneratorSet block;
  std::vector<Generator> ascents, descents;  // within the block
};

struct AdmissibilityReport {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<AdmissibilityViolation> violation;
};

namespace detail {

inline std::optional<AdmissibilityViolation> block_violation(const CoxeterSystem& tgt, const Element& w,
                                                             const std::vector<GeneratorSet>& blocks) {
  for (const auto& b : blocks) {
    std::vector<Generator> up, down;
    for (auto s : b.members()) (tgt.has_right_descent(w, s) ? down : up).push_back(s);
    if (!up.empty() && !down.empty()) return AdmissibilityViolation{tgt.reduced_word(w), b, up, down};
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks, for every w in the source group with source length <= L, that phi(w)
/// has only ascents or only descents on each block. A finite certificate for
/// infinite sources.
inline AdmissibilityReport check_admissible(const Folding& f, std::size_t L, const EnumerationOptions& opts = {}) {
  std::vector<GeneratorSet> blocks;
  for (Generator r = 0; r < f.source.rank(); ++r) blocks.push_back(f.block(r));
  AdmissibilityReport report;
  // The cutoff is on source length here, not on unfolded length.
  std::vector<UnfoldedElement> layer{{f.source.identity(), f.target.identity()}};
  for (std::size_t len = 0; len <= L && !layer.empty(); ++len) {
    for (const auto& node : layer) {
      ++report.checked;
      if (auto v = detail::block_violation(f.target, node.target, blocks)) {
        report.passed = false;
        report.violation = v;
        return report;
      }
    }
    if (len == L) break;
    layer = detail::expand_layer(
        layer, opts.workers,
        [&](const UnfoldedElement& node, std::vector<UnfoldedElement>& out) {
          for (Generator r = 0; r < f.source.rank(); ++r) {
            if (f.source.has_right_descent(node.source, r)) continue;
            Element image = node.target;
            for (auto s : f.unfold_letters[r]) image = f.target.apply(image, s, Side::Right);
            out.push_back({f.source.apply(node.source, r, Side::Right), std::move(image)});
          }
        },
        [](const UnfoldedElement& x, const UnfoldedElement& y) { return x.source < y.source; },
        [](const UnfoldedElement& x, const UnfoldedElement& y) { return x.source == y.source; });
  }
  return report;
}

/// Admissibility of an arbitrary partition of the target generators: forms
/// the longest element r_I of each block and checks every element of the
/// subgroup they generate, up to `max_word_length` letters r_I.
inline AdmissibilityReport check_partition_admissible(const CoxeterSystem& target,
                                                      const std::vector<GeneratorSet>& blocks,
                                                      std::size_t max_word_length,
                                                      const EnumerationOptions& opts = {}) {
  std::vector<int> owner(target.rank(), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (auto s : blocks[k].members()) {
      if (s >= target.rank() || owner[s] != -1) throw InvalidParameters("blocks must partition the generators");
      owner[s] = static_cast<int>(k);
    }
  }
  if (std::count(owner.begin(), owner.end(), -1)) throw InvalidParameters("blocks must cover the generators");

  std::vector<Word> r_words;
  for (const auto& b : blocks) r_words.push_back(target.reduced_word(longest_element(target, b, opts)));

  AdmissibilityReport report;
  std::vector<Element> seen{target.identity()};
  std::vector<Element> layer = seen;
  for (std::size_t len = 0; len <= max_word_length && !layer.empty(); ++len) {
    for (const auto& w : layer) {
      ++report.checked;
      if (auto v = detail::block_violation(target, w, blocks)) {
        report.passed = false;
        report.violation = v;
        return report;
      }
    }
    std::vector<Element> next;
    for (const auto& w : layer) {
      for (const auto& rw : r_words) {
        Element x = w;
        for (auto s : rw) x = target.apply(x, s, Side::Right);
        next.push_back(std::move(x));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<Element> fresh;
    std::set_difference(next.begin(), next.end(), seen.begin(), seen.end(), std::back_inserter(fresh));
    std::vector<Element> merged;
    std::merge(seen.begin(), seen.end(), fresh.begin(), fresh.end(), std::back_inserter(merged));
    seen = std::move(merged);
    if (seen.size() > opts.budget) throw ResourceLimit("subgroup exceeds budget");
    layer = std::move(fresh);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Parabolic factorization through the folding

struct FactorizationReport {
  bool maps_parabolic = true;  // phi(W^_J^) lands in W_J
  bool maps_quotient = true;   // phi(W^^J^) lands in W^J
  bool factors = true;         // U = U_quotient * U_parabolic up to q^L
  QSeries total, quotient, parabolic;
  bool passed() const { return maps_parabolic && maps_quotient && factors; }
};

/// For a subset J^ of source generators with J its preimage in the target,
/// checks that phi sends the parabolic subgroup and the minimal coset
/// representatives for J^ to those for J, and that the unfolding series
/// factors accordingly, all up to ambient length L.
inline FactorizationReport folding_factorization_check(const Folding& f, GeneratorSet J_hat, std::size_t L,
                                                       const EnumerationOptions& opts = {}) {
  GeneratorSet J;
  for (auto r : J_hat.members())
    for (auto s : f.block(r).members()) J.insert(s);
  const auto& tgt = f.target;
  FactorizationReport rep;
  auto hist = [&](GeneratorSet allowed, GeneratorSet quotient, auto check) {
    std::vector<Integer> counts(L + 1);
    walk_unfolded(f, allowed, quotient, L, opts, [&](const UnfoldedElement& node) {
      check(node.target);
      counts[node.target.length()] += 1;
    });
    return QSeries::truncated(std::move(counts), L);
  };
  const auto all = GeneratorSet::all(f.source.rank());
  rep.total = hist(all, {}, [](const Element&) {});
  rep.parabolic = hist(J_hat, {}, [&](const Element& x) {
    if (!parabolic_decompose(tgt, x, J).first.is_identity()) rep.maps_parabolic = false;
  });
  rep.quotient = hist(all, J_hat, [&](const Element& x) {
    for (auto s : J.members())
      if (tgt.has_right_descent(x, s)) rep.maps_quotient = false;
  });
  rep.factors = (rep.quotient * rep.parabolic) == rep.total;
  return rep;
}

// ---------------------------------------------------------------------------
// Reiner statistics

enum class ReinerType { affB, affC };

inline std::string to_string(ReinerType t) { return t == ReinerType::affB ? "affB" : "affC"; }

/// Sum of a^{r(w)} b^{s(w)} q^{l(w)} over an affine B or C group, where r and s
/// count the end generators r_0 and r_n in a reduced word (s is always 0 for
/// type B). Counts are carried along the breadth-first walk: a child w r of w
/// has the reduced word of w followed by r.
inline StatSeries reiner_stats_bruteforce(const CoxeterSystem& sys, std::size_t L, const EnumerationOptions& opts = {}) {
  const std::string& label = sys.label();
  const bool type_b = label.rfind("affine-B", 0) == 0;
  const bool type_c = label.rfind("affine-C", 0) == 0;
  if (!type_b && !type_c) throw InvalidParameters("Reiner statistics need an affine B or C system, got " + label);
  const Generator last = static_cast<Generator>(sys.rank() - 1);

  struct Node {
    Element w;
    int r = 0, s = 0;
  };
  StatSeries out(L);
  std::vector<Node> layer{{sys.identity(), 0, 0}};
  std::size_t stored = 0;
  for (std::size_t len = 0; len <= L && !layer.empty(); ++len) {
    for (const auto& node : layer) out.add(node.r, node.s, static_cast<int>(len), 1);
    stored += layer.size();
    if (stored > opts.budget) throw ResourceLimit("Reiner enumeration exceeds budget");
    if (len == L) break;
    layer = detail::expand_layer(
        layer, opts.workers,
        [&](const Node& node, std::vector<Node>& next) {
          for (Generator i = 0; i <= last; ++i) {
            if (sys.has_right_descent(node.w, i)) continue;
            next.push_back({sys.apply(node.w, i, Side::Right), node.r + (i == 0),
                            node.s + (type_c && i == last)});
          }
        },
        [](const Node& x, const Node& y) { return x.w < y.w; },
        [](const Node& x, const Node& y) { return x.w == y.w; });
  }
  return out;
}

inline StatSeries reiner_stats_bruteforce(ReinerType type, int n, std::size_t L, const EnumerationOptions& opts = {}) {
  const int floor = type == ReinerType::affB ? 3 : 2;
  if (n < floor) throw InvalidParameters(to_string(type) + " needs n >= " + std::to_string(floor));
  return reiner_stats_bruteforce(build_system((type == ReinerType::affB ? "affine-B" : "affine-C") + std::to_string(n)),
                                 L, opts);
}

}  // namespace coxfold

#endif  // COXFOLD_FOLDING_HPP
