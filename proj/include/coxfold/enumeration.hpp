#ifndef COXFOLD_ENUMERATION_HPP
#define COXFOLD_ENUMERATION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <utility>
#include <vector>

#include "coxfold/coxeter_system.hpp"
#include "coxfold/errors.hpp"
#include "coxfold/qseries.hpp"

namespace coxfold {

struct EnumerationOptions {
  std::size_t budget = 10'000'000;  // maximum number of stored elements
  unsigned workers = 1;
};

namespace detail {

/// Expands every node of `layer` with `expand(node, out)` on up to `workers`
/// threads, then sorts and dedupes the children with `less`/`equal`. The
/// result does not depend on the worker count.
template <class Node, class Expand, class Less, class Equal>
std::vector<Node> expand_layer(const std::vector<Node>& layer, unsigned workers, Expand expand, Less less,
                               Equal equal) {
  std::vector<Node> next;
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, layer.size() / 64 + 1));
  if (chunks == 1) {
    for (const auto& node : layer) expand(node, next);
  } else {
    std::vector<std::future<std::vector<Node>>> parts;
    const std::size_t per = (layer.size() + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * per, hi = std::min(layer.size(), lo + per);
      parts.push_back(std::async(std::launch::async, [&, lo, hi] {
        std::vector<Node> out;
        for (std::size_t k = lo; k < hi; ++k) expand(layer[k], out);
        return out;
      }));
    }
    for (auto& p : parts) {
      auto chunk = p.get();
      next.insert(next.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    }
  }
  std::sort(next.begin(), next.end(), less);
  next.erase(std::unique(next.begin(), next.end(), equal), next.end());
  return next;
}

}  // namespace detail

/// Elements of length 0..L grouped by length, each layer sorted by canonical
/// key. Stops early (with fewer than L+1 layers) once a finite group is
/// exhausted. Children are generated only along ascents, so every element of
/// length k+1 arises from some element of length k and no earlier layer needs
/// to be consulted.
inline std::vector<std::vector<Element>> enumerate_layers(const CoxeterSystem& sys, std::size_t L,
                                                          const EnumerationOptions& opts = {}) {
  std::vector<std::vector<Element>> layers{{sys.identity()}};
  std::size_t stored = 1;
  const auto n = static_cast<Generator>(sys.rank());
  while (layers.size() <= L) {
    auto next = detail::expand_layer(
        layers.back(), opts.workers,
        [&](const Element& w, std::vector<Element>& out) {
          for (Generator i = 0; i < n; ++i)
            if (!sys.has_right_descent(w, i)) out.push_back(sys.apply(w, i, Side::Right));
        },
        std::less<Element>{}, std::equal_to<Element>{});
    if (next.empty()) break;
    stored += next.size();
    if (stored > opts.budget)
      throw ResourceLimit("enumeration of " + sys.label() + " exceeds budget of " + std::to_string(opts.budget) +
                          " elements");
    layers.push_back(std::move(next));
  }
  return layers;
}

/// Every element of length <= L, in layer order.
inline std::vector<Element> enumerate_up_to(const CoxeterSystem& sys, std::size_t L,
                                            const EnumerationOptions& opts = {}) {
  std::vector<Element> out;
  for (auto& layer : enumerate_layers(sys, L, opts))
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  return out;
}

/// Every element of a finite group (ResourceLimit if it exceeds the budget).
inline std::vector<std::vector<Element>> enumerate_all(const CoxeterSystem& sys, const EnumerationOptions& opts = {}) {
  return enumerate_layers(sys, opts.budget, opts);
}

/// Length histogram of the enumeration; exact when the group was exhausted
/// before length L, otherwise truncated at L.
inline QSeries poincare_series(const CoxeterSystem& sys, std::size_t L, const EnumerationOptions& opts = {}) {
  const auto layers = enumerate_layers(sys, L + 1, opts);
  std::vector<Integer> c;
  for (std::size_t k = 0; k < layers.size() && k <= L; ++k) c.emplace_back(layers[k].size());
  if (layers.size() <= L + 1) return QSeries::exact(std::move(c));
  return QSeries::truncated(std::move(c), L);
}

/// Poincare polynomial of a finite group.
inline QSeries poincare_polynomial(const CoxeterSystem& sys, const EnumerationOptions& opts = {}) {
  std::vector<Integer> c;
  for (const auto& layer : enumerate_all(sys, opts)) c.emplace_back(layer.size());
  return QSeries::exact(std::move(c));
}

/// Elements of W^J (no right descent in J) of length <= L. If w = u v is
/// reduced and w is in W^J then so is v, so members are grown on the left.
inline std::vector<std::vector<Element>> minimal_coset_reps(const CoxeterSystem& sys, GeneratorSet J,
                                                            std::size_t L, const EnumerationOptions& opts = {}) {
  std::vector<std::vector<Element>> layers{{sys.identity()}};
  std::size_t stored = 1;
  const auto n = static_cast<Generator>(sys.rank());
  while (layers.size() <= L) {
    auto next = detail::expand_layer(
        layers.back(), opts.workers,
        [&](const Element& w, std::vector<Element>& out) {
          for (Generator i = 0; i < n; ++i) {
            if (sys.has_left_descent(w, i)) continue;
            Element c = sys.apply(w, i, Side::Left);
            bool in_quotient = true;
            for (auto j : J.members())
              if (sys.has_right_descent(c, j)) in_quotient = false;
            if (in_quotient) out.push_back(std::move(c));
          }
        },
        std::less<Element>{}, std::equal_to<Element>{});
    if (next.empty()) break;
    stored += next.size();
    if (stored > opts.budget) throw ResourceLimit("coset enumeration exceeds budget");
    layers.push_back(std::move(next));
  }
  return layers;
}

/// Elements of the standard parabolic subgroup W_J of length <= L.
inline std::vector<std::vector<Element>> parabolic_subgroup(const CoxeterSystem& sys, GeneratorSet J,
                                                            std::size_t L, const EnumerationOptions& opts = {}) {
  std::vector<std::vector<Element>> layers{{sys.identity()}};
  std::size_t stored = 1;
  while (layers.size() <= L) {
    auto next = detail::expand_layer(
        layers.back(), opts.workers,
        [&](const Element& w, std::vector<Element>& out) {
          for (auto i : J.members())
            if (!sys.has_right_descent(w, i)) out.push_back(sys.apply(w, i, Side::Right));
        },
        std::less<Element>{}, std::equal_to<Element>{});
    if (next.empty()) break;
    stored += next.size();
    if (stored > opts.budget) throw ResourceLimit("parabolic enumeration exceeds budget");
    layers.push_back(std::move(next));
  }
  return layers;
}

/// Longest element of a finite parabolic subgroup W_J.
inline Element longest_element(const CoxeterSystem& sys, GeneratorSet J, const EnumerationOptions& opts = {}) {
  Element w = sys.identity();
  // Keep climbing along any ascent in J; in a finite W_J this ends at w_J.
  for (std::size_t steps = 0;; ++steps) {
    if (steps > opts.budget) throw ResourceLimit("parabolic subgroup is not finite within budget");
    bool moved = false;
    for (auto i : J.members()) {
      if (!sys.has_right_descent(w, i)) {
        w = sys.apply(w, i, Side::Right);
        moved = true;
        break;
      }
    }
    if (!moved) return w;
  }
}

/// (w^J, w_J) with w = w^J w_J, w^J in W^J and w_J in W_J; lengths add.
inline std::pair<Element, Element> parabolic_decompose(const CoxeterSystem& sys, const Element& w, GeneratorSet J) {
  Element head = w;
  Word tail;  // letters stripped from the right, last stripped first
  for (;;) {
    bool stripped = false;
    for (auto j : J.members()) {
      if (sys.has_right_descent(head, j)) {
        head = sys.apply(head, j, Side::Right);
        tail.push_back(j);
        stripped = true;
        break;
      }
    }
    if (!stripped) break;
  }
  std::reverse(tail.begin(), tail.end());
  return {head, sys.from_word(tail)};
}

/// Bruhat order test. Walks one reduced word s_1...s_k of w from the right and
/// replaces v by min(v, v s_j) at each step; v <= w exactly when this ends at
/// the identity. This is the standard recursion "v <= w iff min(v, vs) <= ws
/// for any right descent s of w", equivalent to the subword criterion.
inline bool bruhat_leq(const CoxeterSystem& sys, const Element& v, const Element& w) {
  if (v.length() > w.length()) return false;
  Element x = v;
  const Word word = sys.reduced_word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    if (sys.has_right_descent(x, *it)) x = sys.apply(x, *it, Side::Right);
  return x.is_identity();
}

}  // namespace coxfold

#endif  // COXFOLD_ENUMERATION_HPP
