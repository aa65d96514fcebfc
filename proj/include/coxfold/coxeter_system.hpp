#ifndef COXFOLD_COXETER_SYSTEM_HPP
#define COXFOLD_COXETER_SYSTEM_HPP

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "coxfold/errors.hpp"
#include "coxfold/zsqrt2.hpp"

namespace coxfold {

/// Zero-based generator index inside a system. Printed labels may start at 1
/// (finite types) or 0 (affine types), see CoxeterSystem::first_label().
using Generator = std::uint32_t;
using Word = std::vector<Generator>;

/// Coxeter matrix entry standing for m = infinity.
inline constexpr int kInfinity = 0;

enum class Side { Left, Right };

/// Exact ring carrying the reflection representation. Rank-2 systems use no
/// matrices at all.
enum class Ring { Integers, IntegersSqrt2, Dihedral };

// ---------------------------------------------------------------------------
// Coxeter matrices

class CoxeterMatrix {
 public:
  /// Entries are row-major; kInfinity encodes m = infinity.
  CoxeterMatrix(std::size_t rank, std::vector<int> entries)
      : rank_(rank), entries_(std::move(entries)) {
    validate();
  }

  /// Matrix with every off-diagonal entry 2 except the listed edges.
  static CoxeterMatrix from_edges(std::size_t rank,
                                  const std::vector<std::tuple<std::size_t, std::size_t, int>>& edges) {
    std::vector<int> e(rank * rank, 2);
    for (std::size_t i = 0; i < rank; ++i) e[i * rank + i] = 1;
    for (auto [i, j, m] : edges) {
      if (i >= rank || j >= rank) throw InvalidMatrix("edge index out of range");
      e[i * rank + j] = m;
      e[j * rank + i] = m;
    }
    return CoxeterMatrix(rank, std::move(e));
  }

  std::size_t rank() const { return rank_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }
  const std::vector<int>& entries() const { return entries_; }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  void validate() const {
    if (rank_ == 0) throw InvalidMatrix("rank must be positive");
    if (entries_.size() != rank_ * rank_) throw InvalidMatrix("entry count does not match rank");
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = 0; j < rank_; ++j) {
        const int m = (*this)(i, j);
        if (m != (*this)(j, i)) throw InvalidMatrix("matrix is not symmetric");
        if (i == j) {
          if (m != 1) throw InvalidMatrix("diagonal entries must be 1");
          continue;
        }
        if (m == kInfinity) continue;
        if (m < 2) throw InvalidMatrix("off-diagonal entries must be >= 2");
        if (rank_ != 2 && m != 2 && m != 3 && m != 4 && m != 6)
          throw InvalidMatrix("off-diagonal entry " + std::to_string(m) +
                              " outside {2,3,4,6,inf} at rank " + std::to_string(rank_));
      }
    }
  }

  std::size_t rank_;
  std::vector<int> entries_;
};

// ---------------------------------------------------------------------------
// Elements

/// Matrix of the element acting on the simple-root basis, row-major. Column j
/// holds the coordinates of w(alpha_j).
struct MatrixElement {
  std::vector<ZSqrt2> entries;
  friend bool operator==(const MatrixElement&, const MatrixElement&) = default;
  friend auto operator<=>(const MatrixElement&, const MatrixElement&) = default;
};

/// Dihedral element stored as its alternating normal form: `length` letters
/// starting with generator `start`. The identity and the longest element (when
/// m is finite) always carry start == 0.
struct DihedralElement {
  std::uint32_t length = 0;
  std::uint8_t start = 0;
  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
  friend auto operator<=>(const DihedralElement&, const DihedralElement&) = default;
};

class Element {
 public:
  Element(MatrixElement m, std::uint32_t length) : backend_(std::move(m)), length_(length) {}
  Element(DihedralElement d) : backend_(d), length_(d.length) {}

  std::uint32_t length() const { return length_; }
  bool is_identity() const { return length_ == 0; }

  bool is_matrix() const { return std::holds_alternative<MatrixElement>(backend_); }
  const MatrixElement& matrix() const { return std::get<MatrixElement>(backend_); }
  const DihedralElement& dihedral() const { return std::get<DihedralElement>(backend_); }

  /// Canonical key: flattened matrix entries (a, b pairs) or (length, start).
  std::vector<std::int64_t> key() const {
    std::vector<std::int64_t> k;
    if (is_matrix()) {
      k.reserve(2 * matrix().entries.size());
      for (auto x : matrix().entries) {
        k.push_back(x.a);
        k.push_back(x.b);
      }
    } else {
      k = {dihedral().length, dihedral().start};
    }
    return k;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::int64_t v) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    if (is_matrix()) {
      for (auto x : matrix().entries) {
        mix(x.a);
        mix(x.b);
      }
    } else {
      mix(dihedral().length);
      mix(dihedral().start);
    }
    return h;
  }

  // Length is a function of the element, so ordering by backend alone is total.
  friend bool operator==(const Element& x, const Element& y) { return x.backend_ == y.backend_; }
  friend auto operator<=>(const Element& x, const Element& y) { return x.backend_ <=> y.backend_; }

 private:
  friend class CoxeterSystem;
  std::variant<MatrixElement, DihedralElement> backend_;
  std::uint32_t length_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

/// Bitmask over generator indices; ranks above 64 are not supported.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::initializer_list<Generator> gens) {
    for (auto g : gens) insert(g);
  }
  template <class Range>
  static GeneratorSet of(const Range& r) {
    GeneratorSet s;
    for (auto g : r) s.insert(static_cast<Generator>(g));
    return s;
  }
  static GeneratorSet all(std::size_t rank) {
    GeneratorSet s;
    for (std::size_t i = 0; i < rank; ++i) s.insert(static_cast<Generator>(i));
    return s;
  }

  void insert(Generator g) {
    if (g >= 64) throw IndexOutOfRange("generator sets support rank <= 64");
    bits_ |= std::uint64_t{1} << g;
  }
  bool contains(Generator g) const { return g < 64 && ((bits_ >> g) & 1u); }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }
  std::vector<Generator> members() const {
    std::vector<Generator> out;
    for (Generator g = 0; g < 64; ++g)
      if (contains(g)) out.push_back(g);
    return out;
  }
  GeneratorSet complement(std::size_t rank) const {
    GeneratorSet s;
    for (std::size_t i = 0; i < rank; ++i)
      if (!contains(static_cast<Generator>(i))) s.insert(static_cast<Generator>(i));
    return s;
  }
  friend bool operator==(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Coxeter systems

/// A Coxeter system realised through its reflection (geometric)
/// representation on the span of the simple roots. Generator i acts by
/// alpha_j -> alpha_j + 2cos(pi/m_ij) alpha_i, which is exact over Z when the
/// labels are 2, 3 or infinity and over Z[sqrt 2] when a label 4 occurs.
/// Rank-2 systems use the dihedral normal-form backend instead.
///
/// Immutable after construction; safe to share between threads.
class CoxeterSystem {
 public:
  static CoxeterSystem from_matrix(CoxeterMatrix matrix, std::string label = "custom",
                                   unsigned first_label = 1) {
    return CoxeterSystem(std::move(matrix), std::move(label), first_label);
  }

  const CoxeterMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.rank(); }
  Ring ring() const { return ring_; }
  const std::string& label() const { return label_; }
  /// Printed label of generator index 0 (1 for finite types, 0 for affine).
  unsigned first_label() const { return first_label_; }
  bool is_dihedral() const { return ring_ == Ring::Dihedral; }
  /// m(s_0, s_1) for dihedral systems.
  int dihedral_order() const { return matrix_(0, 1); }
  /// Exact matrix of each generator (empty for dihedral systems).
  const std::vector<std::vector<ZSqrt2>>& generator_matrices() const { return gens_; }

  Element identity() const {
    if (is_dihedral()) return Element(DihedralElement{});
    const auto n = rank();
    MatrixElement m{std::vector<ZSqrt2>(n * n)};
    for (std::size_t i = 0; i < n; ++i) m.entries[i * n + i] = ZSqrt2(1);
    return Element(std::move(m), 0);
  }

  Element generator(Generator i) const { return apply(identity(), i, Side::Right); }

  bool has_right_descent(const Element& w, Generator i) const {
    check_index(i);
    if (is_dihedral()) {
      const auto& d = w.dihedral();
      if (d.length == 0) return false;
      if (is_longest(d)) return true;
      return last_letter(d) == i;
    }
    // w s_i < w  iff  w(alpha_i) is a negative root.
    const auto n = rank();
    const auto& e = w.matrix().entries;
    for (std::size_t r = 0; r < n; ++r) {
      const int s = e[r * n + i].sign();
      if (s != 0) return s < 0;
    }
    return false;
  }

  bool has_left_descent(const Element& w, Generator i) const {
    check_index(i);
    if (is_dihedral()) {
      const auto& d = w.dihedral();
      if (d.length == 0) return false;
      if (is_longest(d)) return true;
      return d.start == i;
    }
    return has_right_descent(inverse(w), i);
  }

  std::vector<Generator> right_descents(const Element& w) const {
    std::vector<Generator> out;
    for (Generator i = 0; i < rank(); ++i)
      if (has_right_descent(w, i)) out.push_back(i);
    return out;
  }

  std::vector<Generator> left_descents(const Element& w) const {
    std::vector<Generator> out;
    const Element inv = is_dihedral() ? w : inverse(w);
    for (Generator i = 0; i < rank(); ++i)
      if (is_dihedral() ? has_left_descent(w, i) : has_right_descent(inv, i)) out.push_back(i);
    return out;
  }

  /// s_i * w (Side::Left) or w * s_i (Side::Right).
  Element apply(const Element& w, Generator i, Side side) const {
    check_index(i);
    if (is_dihedral()) return Element(side == Side::Right ? dihedral_right(w.dihedral(), i)
                                                         : dihedral_left(w.dihedral(), i));
    if (side == Side::Right) {
      const bool down = has_right_descent(w, i);
      MatrixElement m = w.matrix();
      multiply_right(m, i);
      return Element(std::move(m), down ? w.length() - 1 : w.length() + 1);
    }
    const bool down = has_left_descent(w, i);
    MatrixElement m = w.matrix();
    multiply_left(m, i);
    return Element(std::move(m), down ? w.length() - 1 : w.length() + 1);
  }

  Element from_word(const Word& word) const {
    Element w = identity();
    for (auto g : word) w = apply(w, g, Side::Right);
    return w;
  }

  /// x * y.
  Element multiply(const Element& x, const Element& y) const {
    Element w = x;
    for (auto g : reduced_word(y)) w = apply(w, g, Side::Right);
    return w;
  }

  Element inverse(const Element& w) const {
    Word word = reduced_word(w);
    std::reverse(word.begin(), word.end());
    return from_word(word);
  }

  /// Some reduced word for w, found by stripping the smallest right descent.
  Word reduced_word(const Element& w) const {
    if (is_dihedral()) return dihedral_word(w.dihedral());
    Word out;
    out.reserve(w.length());
    Element cur = w;
    while (!cur.is_identity()) {
      Generator i = 0;
      while (!has_right_descent(cur, i)) ++i;
      out.push_back(i);
      cur = apply(cur, i, Side::Right);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// Lexicographically least reduced word (generator order 0 < 1 < ...).
  Word shortlex_normal_form(const Element& w) const {
    if (is_dihedral()) return dihedral_word(w.dihedral());
    // The first letter of the least word is the least left descent of w, i.e.
    // the least right descent of w^{-1}.
    Word out;
    out.reserve(w.length());
    Element cur = inverse(w);
    while (!cur.is_identity()) {
      Generator i = 0;
      while (!has_right_descent(cur, i)) ++i;
      out.push_back(i);
      cur = apply(cur, i, Side::Right);
    }
    return out;
  }

  /// Every reduced word of w, in lexicographic order. Exponential in general;
  /// `limit` bounds the output size.
  std::vector<Word> all_reduced_words(const Element& w, std::size_t limit = 1'000'000) const {
    std::vector<Word> out;
    Word suffix;
    collect_reduced_words(w, suffix, out, limit);
    for (auto& word : out) std::reverse(word.begin(), word.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // -- Printing and parsing with the system's generator labels -------------

  std::string format_word(const Word& word, char letter = 's') const {
    if (word.empty()) return "e";
    std::string out;
    for (auto g : word) {
      out += letter;
      out += std::to_string(g + first_label_);
    }
    return out;
  }

  std::string format(const Element& w, char letter = 's') const {
    return format_word(shortlex_normal_form(w), letter);
  }

  /// Parses printed labels: "1 3 2", "1,3,2", "s1s3s2" or "e" for the identity.
  Word parse_word(std::string_view text) const {
    Word out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const char c = text[pos];
      if (c >= '0' && c <= '9') {
        unsigned label = 0;
        auto [next, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), label);
        if (ec != std::errc{}) throw IndexOutOfRange("bad generator label in '" + std::string(text) + "'");
        if (label < first_label_ || label - first_label_ >= rank())
          throw IndexOutOfRange("generator label " + std::to_string(label) + " not in " + label_);
        out.push_back(static_cast<Generator>(label - first_label_));
        pos = static_cast<std::size_t>(next - text.data());
      } else {
        ++pos;  // separators, letter prefixes and the identity symbol 'e'
      }
    }
    return out;
  }

  Element parse(std::string_view text) const { return from_word(parse_word(text)); }

  /// Number of positive roots sent to negative roots. Finite matrix systems
  /// only; used as an independent check on lengths.
  std::size_t count_inversions(const Element& w, std::size_t max_roots = 100000) const {
    if (is_dihedral()) throw InvalidParameters("count_inversions needs the matrix backend");
    std::size_t count = 0;
    for (const auto& root : positive_roots(max_roots)) {
      const auto image = act(w, root);
      for (auto x : image) {
        if (x.sign() != 0) {
          count += x.sign() < 0;
          break;
        }
      }
    }
    return count;
  }

  /// Positive roots of a finite system, as coordinate vectors.
  std::vector<std::vector<ZSqrt2>> positive_roots(std::size_t max_roots = 100000) const {
    if (is_dihedral()) throw InvalidParameters("positive_roots needs the matrix backend");
    const auto n = rank();
    std::vector<std::vector<ZSqrt2>> roots;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<ZSqrt2> r(n);
      r[i] = ZSqrt2(1);
      roots.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < roots.size(); ++k) {
      for (Generator i = 0; i < n; ++i) {
        auto image = reflect(roots[k], i);
        bool positive = true;
        for (auto x : image)
          if (x.sign() < 0) positive = false;
        if (!positive) continue;
        if (std::find(roots.begin(), roots.end(), image) == roots.end()) {
          roots.push_back(std::move(image));
          if (roots.size() > max_roots) throw ResourceLimit("root system exceeds " + std::to_string(max_roots));
        }
      }
    }
    return roots;
  }

 private:
  friend CoxeterSystem build_system(std::string_view label);

  CoxeterSystem(CoxeterMatrix matrix, std::string label, unsigned first_label)
      : matrix_(std::move(matrix)), label_(std::move(label)), first_label_(first_label) {
    const auto n = rank();
    if (n == 2) {
      ring_ = Ring::Dihedral;
      return;
    }
    ring_ = Ring::Integers;
    coeff_.assign(n * n, ZSqrt2(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        switch (matrix_(i, j)) {
          case 2: break;
          case 3: coeff_[i * n + j] = ZSqrt2(1); break;
          case 4:
            coeff_[i * n + j] = ZSqrt2::sqrt2();
            ring_ = Ring::IntegersSqrt2;
            break;
          case kInfinity: coeff_[i * n + j] = ZSqrt2(2); break;
          case 6:
            throw UnsupportedLabel("edge label 6 needs sqrt(3) and is only supported at rank 2");
          default:
            throw UnsupportedLabel("edge label " + std::to_string(matrix_(i, j)));
        }
      }
    }
    gens_.reserve(n);
    for (Generator i = 0; i < n; ++i) {
      MatrixElement m = identity().matrix();
      multiply_right(m, i);
      gens_.push_back(m.entries);
    }
    check_relations();
  }

  void check_index(Generator i) const {
    if (i >= rank())
      throw IndexOutOfRange("generator index " + std::to_string(i) + " >= rank " + std::to_string(rank()));
  }

  // -- matrix backend --------------------------------------------------------

  void multiply_right(MatrixElement& m, Generator i) const {
    const auto n = rank();
    auto& e = m.entries;
    for (std::size_t j = 0; j < n; ++j) {
      const ZSqrt2 c = coeff_[i * n + j];
      if (j == i || c.is_zero()) continue;
      for (std::size_t r = 0; r < n; ++r) e[r * n + j] += c * e[r * n + i];
    }
    for (std::size_t r = 0; r < n; ++r) e[r * n + i] = -e[r * n + i];
  }

  void multiply_left(MatrixElement& m, Generator i) const {
    const auto n = rank();
    auto& e = m.entries;
    for (std::size_t col = 0; col < n; ++col) {
      ZSqrt2 v = -e[i * n + col];
      for (std::size_t j = 0; j < n; ++j) {
        const ZSqrt2 c = coeff_[i * n + j];
        if (j != i && !c.is_zero()) v += c * e[j * n + col];
      }
      e[i * n + col] = v;
    }
  }

  std::vector<ZSqrt2> reflect(const std::vector<ZSqrt2>& v, Generator i) const {
    const auto n = rank();
    std::vector<ZSqrt2> out = v;
    ZSqrt2 x = -v[i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) x += coeff_[i * n + j] * v[j];
    out[i] = x;
    return out;
  }

  std::vector<ZSqrt2> act(const Element& w, const std::vector<ZSqrt2>& v) const {
    const auto n = rank();
    const auto& e = w.matrix().entries;
    std::vector<ZSqrt2> out(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out[r] += e[r * n + c] * v[c];
    return out;
  }

  void check_relations() const {
    const auto n = rank();
    const Element e = identity();
    for (Generator i = 0; i < n; ++i) {
      MatrixElement m = e.matrix();
      multiply_right(m, i);
      multiply_right(m, i);
      if (m != e.matrix()) throw InvalidMatrix("generator " + std::to_string(i) + " is not an involution");
      for (Generator j = i + 1; j < n; ++j) {
        const int order = matrix_(i, j);
        if (order == kInfinity) continue;
        MatrixElement p = e.matrix();
        for (int k = 1; k <= order; ++k) {
          multiply_right(p, i);
          multiply_right(p, j);
          if ((p == e.matrix()) != (k == order))
            throw InvalidMatrix("product of generators " + std::to_string(i) + "," + std::to_string(j) +
                                " does not have order " + std::to_string(order));
        }
      }
    }
  }

  void collect_reduced_words(const Element& w, Word& suffix, std::vector<Word>& out,
                             std::size_t limit) const {
    if (w.is_identity()) {
      if (out.size() >= limit) throw ResourceLimit("too many reduced words");
      out.push_back(suffix);
      return;
    }
    for (Generator i = 0; i < rank(); ++i) {
      if (!has_right_descent(w, i)) continue;
      suffix.push_back(i);
      collect_reduced_words(apply(w, i, Side::Right), suffix, out, limit);
      suffix.pop_back();
    }
  }

  // -- dihedral backend ------------------------------------------------------

  bool is_longest(const DihedralElement& d) const {
    const int m = dihedral_order();
    return m != kInfinity && d.length == static_cast<std::uint32_t>(m);
  }

  static Generator last_letter(const DihedralElement& d) {
    return (d.length % 2 == 1) ? d.start : static_cast<Generator>(1 - d.start);
  }

  DihedralElement normalize(DihedralElement d) const {
    if (d.length == 0 || is_longest(d)) d.start = 0;
    return d;
  }

  DihedralElement dihedral_right(DihedralElement d, Generator i) const {
    if (d.length == 0) return normalize({1, static_cast<std::uint8_t>(i)});
    if (is_longest(d)) {
      // Rewrite the longest element as the alternating word ending in i.
      const auto m = d.length;
      const auto start = static_cast<std::uint8_t>(m % 2 == 1 ? i : 1 - i);
      return normalize({m - 1, start});
    }
    if (last_letter(d) == i) return normalize({d.length - 1, d.start});
    return normalize({d.length + 1, d.start});
  }

  DihedralElement dihedral_left(DihedralElement d, Generator i) const {
    if (d.length == 0) return normalize({1, static_cast<std::uint8_t>(i)});
    if (is_longest(d)) return normalize({d.length - 1, static_cast<std::uint8_t>(1 - i)});
    if (d.start == i) return normalize({d.length - 1, static_cast<std::uint8_t>(1 - i)});
    return normalize({d.length + 1, static_cast<std::uint8_t>(i)});
  }

  static Word dihedral_word(const DihedralElement& d) {
    Word w(d.length);
    for (std::uint32_t k = 0; k < d.length; ++k) w[k] = (k % 2 == 0) ? d.start : 1 - d.start;
    return w;
  }

  CoxeterMatrix matrix_;
  std::string label_;
  unsigned first_label_ = 1;
  Ring ring_ = Ring::Integers;
  std::vector<ZSqrt2> coeff_;  // coeff_[i*n+j] = 2cos(pi/m_ij), i != j
  std::vector<std::vector<ZSqrt2>> gens_;
};

// ---------------------------------------------------------------------------
// Named families
//
// Generator numbering follows the usual graphs: finite types use labels
// 1..n, affine types add the node 0.
//   A_n        1 - 2 - ... - n
//   B_n, C_n   1 - 2 - ... - (n-1) =4= n
//   D_n        1 - 2 - ... - (n-2), with (n-2) joined to both n-1 and n
//   I2(m)      1 =m= 2
//   affine-A_n cycle 0 - 1 - ... - n - 0          (n = 1: 0 =inf= 1)
//   affine-B_n 0 =4= 1 - 2 - ... - (n-2), with (n-2) joined to n-1 and n
//   affine-C_n 0 =4= 1 - ... - (n-1) =4= n
//   affine-D_n 0 and 1 joined to 2, chain 2 - ... - (n-2), (n-2) joined to n-1, n

namespace detail {

inline std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

using Edges = std::vector<std::tuple<std::size_t, std::size_t, int>>;

inline Edges chain(std::size_t from, std::size_t to) {
  Edges e;
  for (std::size_t i = from; i + 1 <= to; ++i) e.emplace_back(i, i + 1, 3);
  return e;
}

}  // namespace detail

/// Builds one of A<n>, B<n>, C<n>, D<n>, I2(<m>) (m may be "inf"),
/// affine-A<n>, affine-B<n>, affine-C<n>, affine-D<n>.
inline CoxeterSystem build_system(std::string_view label) {
  using detail::Edges;
  const std::string name(label);
  auto bad = [&](const std::string& why) { return UnsupportedLabel("'" + name + "': " + why); };

  if (label.rfind("I2(", 0) == 0 && label.size() > 4 && label.back() == ')') {
    const auto inner = label.substr(3, label.size() - 4);
    int m = 0;
    if (inner == "inf") {
      m = kInfinity;
    } else {
      auto v = detail::parse_int(inner);
      if (!v || *v < 2) throw bad("dihedral order must be an integer >= 2 or inf");
      m = *v;
    }
    return CoxeterSystem(CoxeterMatrix::from_edges(2, {{0, 1, m}}), name, 1);
  }

  const bool affine = label.rfind("affine-", 0) == 0;
  const auto body = affine ? label.substr(7) : label;
  if (body.size() < 2) throw bad("unknown label");
  const char type = body[0];
  const auto n_opt = detail::parse_int(body.substr(1));
  if (!n_opt) throw bad("missing rank");
  const int n = *n_opt;

  auto need = [&](int lo) {
    if (n < lo) throw bad("rank parameter must be >= " + std::to_string(lo));
  };

  if (!affine) {
    Edges e;
    std::size_t rank = 0;
    switch (type) {
      case 'A':
        need(1);
        rank = static_cast<std::size_t>(n);
        e = detail::chain(0, rank - 1);
        break;
      case 'B':
      case 'C':
        need(2);
        rank = static_cast<std::size_t>(n);
        e = detail::chain(0, rank - 2);
        e.emplace_back(rank - 2, rank - 1, 4);
        break;
      case 'D':
        need(3);
        rank = static_cast<std::size_t>(n);
        e = detail::chain(0, rank - 3);
        e.emplace_back(rank - 3, rank - 2, 3);
        e.emplace_back(rank - 3, rank - 1, 3);
        break;
      default:
        throw bad("unknown type");
    }
    return CoxeterSystem(CoxeterMatrix::from_edges(rank, e), name, 1);
  }

  Edges e;
  std::size_t rank = 0;
  switch (type) {
    case 'A':
      need(1);
      rank = static_cast<std::size_t>(n) + 1;
      if (n == 1) {
        e.emplace_back(0, 1, kInfinity);
      } else {
        e = detail::chain(0, rank - 1);
        e.emplace_back(rank - 1, 0, 3);
      }
      break;
    case 'B':
      need(3);
      rank = static_cast<std::size_t>(n) + 1;
      e.emplace_back(0, 1, 4);
      for (auto ed : detail::chain(1, static_cast<std::size_t>(n) - 2)) e.push_back(ed);
      e.emplace_back(n - 2, n - 1, 3);
      e.emplace_back(n - 2, n, 3);
      break;
    case 'C':
      need(2);
      rank = static_cast<std::size_t>(n) + 1;
      e.emplace_back(0, 1, 4);
      for (auto ed : detail::chain(1, static_cast<std::size_t>(n) - 1)) e.push_back(ed);
      e.emplace_back(n - 1, n, 4);
      break;
    case 'D':
      need(4);
      rank = static_cast<std::size_t>(n) + 1;
      e.emplace_back(0, 2, 3);
      e.emplace_back(1, 2, 3);
      for (auto ed : detail::chain(2, static_cast<std::size_t>(n) - 2)) e.push_back(ed);
      e.emplace_back(n - 2, n - 1, 3);
      e.emplace_back(n - 2, n, 3);
      break;
    default:
      throw bad("unknown type");
  }
  return CoxeterSystem(CoxeterMatrix::from_edges(rank, e), name, 0);
}

/// Builds a system from an explicit matrix (generator labels start at 1).
inline CoxeterSystem build_system(const CoxeterMatrix& matrix, std::string label = "custom") {
  return CoxeterSystem::from_matrix(matrix, std::move(label), 1);
}

/// True for the labels of the affine families.
inline bool is_affine_label(std::string_view label) { return label.rfind("affine-", 0) == 0; }

}  // namespace coxfold

#endif  // COXFOLD_COXETER_SYSTEM_HPP
