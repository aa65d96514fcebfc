// Independent models of the groups under test, used as oracles.
//
// Every classical (affine) Weyl group is realised as affine maps x -> A x + t
// on Z^N generated by reflections: coordinate swaps, sign changes and one
// affine reflection in the hyperplane <x, theta> = 1 for the highest root.
// Lengths are Cayley-graph distances found by breadth-first search, so nothing
// here shares code with the library's reflection representation.

#ifndef COXFOLD_TESTS_ORACLE_HPP
#define COXFOLD_TESTS_ORACLE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace oracle {

using Key = std::vector<int>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : k) h = (h ^ static_cast<std::size_t>(x + 1000)) * 1099511628211ull;
    return h;
  }
};

// x -> A x + t, A stored row-major.
struct Affine {
  int dim = 0;
  std::vector<int> a, t;

  static Affine identity(int d) {
    Affine m{d, std::vector<int>(d * d, 0), std::vector<int>(d, 0)};
    for (int i = 0; i < d; ++i) m.a[i * d + i] = 1;
    return m;
  }

  Affine operator*(const Affine& o) const {  // (this o o)(x) = this(o(x))
    Affine r{dim, std::vector<int>(dim * dim, 0), t};
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        const int x = a[i * dim + k];
        if (!x) continue;
        for (int j = 0; j < dim; ++j) r.a[i * dim + j] += x * o.a[k * dim + j];
        r.t[i] += x * o.t[k];
      }
    return r;
  }

  bool operator==(const Affine& o) const { return a == o.a && t == o.t; }

  Key key() const {
    Key k = a;
    k.insert(k.end(), t.begin(), t.end());
    return k;
  }
};

inline Affine swap_coords(int d, int i, int j) {
  auto m = Affine::identity(d);
  m.a[i * d + i] = m.a[j * d + j] = 0;
  m.a[i * d + j] = m.a[j * d + i] = 1;
  return m;
}

inline Affine negate_coord(int d, int i) {
  auto m = Affine::identity(d);
  m.a[i * d + i] = -1;
  return m;
}

// (x_i, x_j) -> (c - x_j, c - x_i): reflection in x_i + x_j = c.
inline Affine antiswap(int d, int i, int j, int c) {
  auto m = Affine::identity(d);
  m.a[i * d + i] = m.a[j * d + j] = 0;
  m.a[i * d + j] = m.a[j * d + i] = -1;
  m.t[i] = m.t[j] = c;
  return m;
}

// x_i -> c - x_i.
inline Affine flip(int d, int i, int c) {
  auto m = negate_coord(d, i);
  m.t[i] = c;
  return m;
}

// (x_i, x_j) -> (x_j - c, x_i + c): reflection in x_j - x_i = c.
inline Affine shifted_swap(int d, int i, int j, int c) {
  auto m = swap_coords(d, i, j);
  m.t[i] = -c;
  m.t[j] = c;
  return m;
}

/// The group generated by `gens` (index = library generator index).
struct Group {
  int dim = 0;
  std::vector<Affine> gens;

  Affine word(const std::vector<unsigned>& w) const {
    Affine x = Affine::identity(dim);
    for (auto i : w) x = x * gens.at(i);
    return x;
  }

  /// Order of gens[i] gens[j], or 0 if it exceeds `cap`.
  int order(std::size_t i, std::size_t j, int cap = 40) const {
    const Affine p = gens[i] * gens[j];
    Affine x = p;
    for (int k = 1; k <= cap; ++k) {
      if (x == Affine::identity(dim)) return k;
      x = x * p;
    }
    return 0;
  }

  /// Length of every element of length <= L.
  std::unordered_map<Key, int, KeyHash> lengths(int L) const {
    std::unordered_map<Key, int, KeyHash> seen;
    std::vector<Affine> layer{Affine::identity(dim)};
    seen.emplace(layer[0].key(), 0);
    for (int len = 1; len <= L && !layer.empty(); ++len) {
      std::vector<Affine> next;
      for (const auto& w : layer)
        for (const auto& s : gens) {
          Affine x = w * s;
          if (seen.emplace(x.key(), len).second) next.push_back(std::move(x));
        }
      layer = std::move(next);
    }
    return seen;
  }

  std::vector<long long> histogram(int L) const {
    std::vector<long long> h;
    for (const auto& [k, len] : lengths(L)) {
      if (static_cast<int>(h.size()) <= len) h.resize(len + 1);
      ++h[len];
    }
    return h;
  }

  /// Length histogram (up to L) of the subgroup generated by the given words.
  /// The subgroup is explored through its own generators; an element is
  /// expanded only while its length stays within L.
  std::vector<long long> subgroup_histogram(const std::vector<std::vector<unsigned>>& words, int L) const {
    const auto len = lengths(L);
    std::vector<Affine> sub;
    for (const auto& w : words) sub.push_back(word(w));
    std::unordered_set<Key, KeyHash> seen{Affine::identity(dim).key()};
    std::vector<Affine> frontier{Affine::identity(dim)};
    std::vector<long long> h(1, 1);
    while (!frontier.empty()) {
      std::vector<Affine> next;
      for (const auto& w : frontier)
        for (const auto& r : sub) {
          Affine x = w * r;
          auto it = len.find(x.key());
          if (it == len.end()) continue;  // longer than L
          if (!seen.insert(x.key()).second) continue;
          if (static_cast<int>(h.size()) <= it->second) h.resize(it->second + 1);
          ++h[it->second];
          next.push_back(std::move(x));
        }
      frontier = std::move(next);
    }
    return h;
  }
};

/// Same labels and generator numbering as the library: finite types use
/// generators 1..n (indices 0..n-1), affine types 0..n.
inline Group make_group(const std::string& label) {
  const bool affine = label.rfind("affine-", 0) == 0;
  const std::string body = affine ? label.substr(7) : label;
  const char type = body[0];
  const int n = std::stoi(body.substr(1));
  Group g;
  if (!affine) {
    switch (type) {
      case 'A':
        g.dim = n + 1;
        for (int i = 0; i < n; ++i) g.gens.push_back(swap_coords(g.dim, i, i + 1));
        return g;
      case 'B':
        g.dim = n;
        for (int i = 0; i + 1 < n; ++i) g.gens.push_back(swap_coords(n, i, i + 1));
        g.gens.push_back(negate_coord(n, n - 1));
        return g;
      case 'D':
        g.dim = n;
        for (int i = 0; i + 1 < n; ++i) g.gens.push_back(swap_coords(n, i, i + 1));
        g.gens.push_back(antiswap(n, n - 2, n - 1, 0));
        return g;
    }
  } else {
    switch (type) {
      case 'A':  // s_0 reflects in x_{n+1} - x_1 = 1
        g.dim = n + 1;
        g.gens.push_back(shifted_swap(g.dim, 0, n, 1));
        for (int i = 0; i < n; ++i) g.gens.push_back(swap_coords(g.dim, i, i + 1));
        return g;
      case 'B':  // s_0..s_{n-1} form B_n, s_n is affine for theta = e_{n-1} + e_n
        g.dim = n;
        g.gens.push_back(negate_coord(n, 0));
        for (int i = 0; i + 1 < n; ++i) g.gens.push_back(swap_coords(n, i, i + 1));
        g.gens.push_back(antiswap(n, n - 2, n - 1, 1));
        return g;
      case 'C':  // s_0..s_{n-1} form C_n, s_n is affine for theta = 2 e_n
        g.dim = n;
        g.gens.push_back(negate_coord(n, 0));
        for (int i = 0; i + 1 < n; ++i) g.gens.push_back(swap_coords(n, i, i + 1));
        g.gens.push_back(flip(n, n - 1, 1));
        return g;
      case 'D':  // s_0..s_{n-1} form D_n forked at s_2, s_n is affine for e_{n-1} + e_n
        g.dim = n;
        g.gens.push_back(antiswap(n, 0, 1, 0));
        for (int i = 0; i + 1 < n; ++i) g.gens.push_back(swap_coords(n, i, i + 1));
        g.gens.push_back(antiswap(n, n - 2, n - 1, 1));
        return g;
    }
  }
  throw std::invalid_argument("oracle: unsupported label " + label);
}

/// Plain integer polynomials for product formulas.
using Poly = std::vector<long long>;

inline Poly mul(const Poly& x, const Poly& y) {
  Poly r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

/// [k]_{sign q^e}.
inline Poly qint(int k, int sign = 1, int e = 1) {
  Poly p(static_cast<std::size_t>((k - 1) * e + 1), 0);
  long long c = 1;
  for (int i = 0; i < k; ++i, c *= sign) p[static_cast<std::size_t>(i * e)] = c;
  return p;
}

inline Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

}  // namespace oracle

#endif  // COXFOLD_TESTS_ORACLE_HPP
