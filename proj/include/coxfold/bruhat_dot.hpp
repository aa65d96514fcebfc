#ifndef COXFOLD_BRUHAT_DOT_HPP
#define COXFOLD_BRUHAT_DOT_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coxfold/coxeter_system.hpp"
#include "coxfold/enumeration.hpp"
#include "coxfold/errors.hpp"
#include "coxfold/folding.hpp"

namespace coxfold {

struct HasseDiagram {
  std::vector<Element> nodes;                           // sorted by (length, normal form)
  std::vector<Word> normal_forms;
  std::vector<bool> red;                                // node lies in the folding subgroup
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper) covering pairs
};

/// Hasse diagram of the Bruhat order on a finite group. Covers are the pairs
/// v <= w with l(w) = l(v) + 1. When a folding into this group is given, the
/// images of the source group are marked.
inline HasseDiagram bruhat_hasse(const CoxeterSystem& sys, const Folding* folding = nullptr,
                                 const EnumerationOptions& opts = {}) {
  HasseDiagram h;
  const auto layers = enumerate_all(sys, opts);
  std::vector<std::size_t> layer_start;
  for (const auto& layer : layers) {
    layer_start.push_back(h.nodes.size());
    std::vector<std::pair<Word, Element>> sorted;
    for (const auto& w : layer) sorted.emplace_back(sys.shortlex_normal_form(w), w);
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [nf, w] : sorted) {
      h.normal_forms.push_back(std::move(nf));
      h.nodes.push_back(std::move(w));
    }
  }
  layer_start.push_back(h.nodes.size());

  h.red.assign(h.nodes.size(), false);
  if (folding) {
    if (folding->target.matrix() != sys.matrix())
      throw InvalidParameters("folding target " + folding->target.label() + " is not " + sys.label());
    std::set<Element> image;
    walk_unfolded(*folding, GeneratorSet::all(folding->source.rank()), {}, std::nullopt, opts,
                  [&](const UnfoldedElement& u) { image.insert(u.target); });
    for (std::size_t k = 0; k < h.nodes.size(); ++k) h.red[k] = image.count(h.nodes[k]) > 0;
  }

  for (std::size_t len = 0; len + 2 < layer_start.size(); ++len) {
    for (std::size_t v = layer_start[len]; v < layer_start[len + 1]; ++v)
      for (std::size_t w = layer_start[len + 1]; w < layer_start[len + 2]; ++w)
        if (bruhat_leq(sys, h.nodes[v], h.nodes[w])) h.edges.emplace_back(v, w);
  }
  return h;
}

/// Graphviz text. Nodes are labelled by normal forms; marked nodes get
/// color=red; edges point from the larger element down to the smaller.
inline std::string to_dot(const CoxeterSystem& sys, const HasseDiagram& h) {
  std::ostringstream os;
  os << "digraph bruhat {\n";
  for (std::size_t k = 0; k < h.nodes.size(); ++k) {
    os << "  n" << k << " [label=\"" << sys.format_word(h.normal_forms[k]) << "\"";
    if (h.red[k]) os << ", color=red";
    os << "];\n";
  }
  for (auto [lo, hi] : h.edges) os << "  n" << hi << " -> n" << lo << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace coxfold

#endif  // COXFOLD_BRUHAT_DOT_HPP
