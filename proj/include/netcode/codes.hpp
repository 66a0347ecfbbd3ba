#pragma once

// Alphabets, words and the small code families used as protocol inputs.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "netcode/bits.hpp"
#include "netcode/budget.hpp"
#include "netcode/error.hpp"

namespace netcode {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  return r.str();
}

/// Distributed input: one m-bit symbol per vertex. Positions are 0-based here;
/// vertex v_i holds symbol i-1.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) throw ParameterError("a word needs at least 2 symbols");
    for (const auto& s : symbols_) {
      if (s.width() != symbols_.front().width()) throw ParameterError("mixed symbol widths in word");
    }
  }

  /// Word whose concatenated bits (symbol 0 first, MSB first) equal `index`.
  static Word from_index(std::uint64_t index, std::size_t n, std::size_t m) {
    if (n * m > 63) throw CapacityError("word of " + std::to_string(n * m) + " bits is not indexable");
    std::vector<Symbol> syms;
    syms.reserve(n);
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    for (std::size_t i = 0; i < n; ++i) {
      syms.emplace_back((index >> ((n - 1 - i) * m)) & mask, m);
    }
    return Word(std::move(syms));
  }

  static Word constant(const Symbol& s, std::size_t n) { return Word(std::vector<Symbol>(n, s)); }

  std::uint64_t index() const {
    if (size() * width() > 63) throw CapacityError("word is not indexable");
    std::uint64_t v = 0;
    for (const auto& s : symbols_) v = (v << width()) | s.value();
    return v;
  }

  std::size_t size() const { return symbols_.size(); }
  std::size_t width() const { return symbols_.empty() ? 0 : symbols_.front().width(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  /// 1-based vertex access.
  const Symbol& at_vertex(std::size_t v) const { return symbols_.at(v - 1); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  Word with(std::size_t i, Symbol s) const {
    auto syms = symbols_;
    syms.at(i) = s;
    return Word(std::move(syms));
  }

  std::string to_hex() const {
    const std::size_t digits = (size() * width() + 3) / 4;
    std::string out(digits, '0');
    // Concatenated bits as a big-endian integer, left-padded to whole digits.
    std::vector<bool> bits;
    bits.reserve(digits * 4);
    for (std::size_t pad = 0; pad < digits * 4 - size() * width(); ++pad) bits.push_back(false);
    for (const auto& s : symbols_) {
      for (std::size_t b = 0; b < s.width(); ++b) bits.push_back(s.bit(b));
    }
    static constexpr char kHex[] = "0123456789abcdef";
    for (std::size_t d = 0; d < digits; ++d) {
      int v = 0;
      for (std::size_t b = 0; b < 4; ++b) v = (v << 1) | static_cast<int>(bits[d * 4 + b]);
      out[d] = kHex[v];
    }
    return out;
  }

  static Word from_hex(const std::string& hex, std::size_t n, std::size_t m) {
    const std::size_t digits = (n * m + 3) / 4;
    if (hex.size() != digits) {
      throw ParameterError("codeword '" + hex + "' must have " + std::to_string(digits) + " hex digits");
    }
    std::vector<bool> bits;
    for (char c : hex) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw ParameterError("bad hex digit in '" + hex + "'");
      for (int b = 3; b >= 0; --b) bits.push_back(((v >> b) & 1) != 0);
    }
    const std::size_t pad = digits * 4 - n * m;
    for (std::size_t i = 0; i < pad; ++i) {
      if (bits[i]) throw ParameterError("codeword '" + hex + "' has nonzero padding bits");
    }
    std::vector<Symbol> syms;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t v = 0;
      for (std::size_t b = 0; b < m; ++b) v = (v << 1) | static_cast<std::uint64_t>(bits[pad + i * m + b]);
      syms.emplace_back(v, m);
    }
    return Word(std::move(syms));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

inline std::size_t hamming_distance(const Word& x, const Word& y) {
  if (x.size() != y.size() || x.width() != y.width()) {
    throw ParameterError("hamming_distance: shape mismatch");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]) ? 1 : 0;
  return d;
}

/// Arithmetic in GF(2^m), m <= 8, by shift-and-add over a fixed primitive polynomial.
class BinaryExtensionField {
 public:
  explicit BinaryExtensionField(std::size_t m) : m_(m) {
    static constexpr std::uint32_t kPoly[] = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D};
    if (m < 1 || m > 8) throw ParameterError("GF(2^m) supported for 1 <= m <= 8");
    poly_ = kPoly[m];
  }
  std::size_t degree() const { return m_; }
  std::uint32_t size() const { return 1U << m_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0;
    while (b != 0) {
      if (b & 1U) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & (1U << m_)) a ^= poly_;
    }
    return r;
  }

 private:
  std::size_t m_;
  std::uint32_t poly_;
};

/// Code family descriptor with cached (n, k, d).
///
/// k is log_{2^m}|C| held as an exact rational. For explicit codes whose size
/// is not a power of two, k is rounded down to floor(log2|C|)/m and
/// `dimension_exact()` reports false; the rounded value is still a valid
/// input to every lower bound.
class CodeSpec {
 public:
  enum class Family { Repetition, ParityCheck, Explicit, Mds };

  static CodeSpec repetition(std::size_t n, std::size_t m) {
    CodeSpec c(Family::Repetition, n, m);
    c.dimension_ = 1;
    c.distance_ = n;
    c.validate();
    return c;
  }

  static CodeSpec parity_check(std::size_t n, std::size_t m) {
    CodeSpec c(Family::ParityCheck, n, m);
    c.dimension_ = static_cast<long>(n - 1);
    c.distance_ = 2;
    c.validate();
    return c;
  }

  static CodeSpec explicit_code(std::size_t n, std::size_t m, std::vector<Word> codewords,
                                const Budgets& budgets = {}) {
    CodeSpec c(Family::Explicit, n, m);
    for (const auto& w : codewords) {
      if (w.size() != n || w.width() != m) throw ParameterError("explicit codeword has wrong shape");
    }
    std::sort(codewords.begin(), codewords.end());
    codewords.erase(std::unique(codewords.begin(), codewords.end()), codewords.end());
    require_budget(codewords.size(), budgets.codewords, "explicit code size");
    c.words_ = std::move(codewords);
    c.finish_enumerated(budgets);
    c.validate();
    return c;
  }

  /// Reed-Solomon code: evaluations of all polynomials of degree < k at the
  /// given distinct points of GF(2^m).
  static CodeSpec mds(std::size_t n, std::size_t k, std::size_t m, std::vector<std::uint32_t> points,
                      const Budgets& budgets = {}) {
    CodeSpec c(Family::Mds, n, m);
    BinaryExtensionField field(m);
    if (points.size() != n) throw ParameterError("MDS code needs exactly n evaluation points");
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParameterError("MDS evaluation points must be distinct");
    }
    for (auto p : points) {
      if (p >= field.size()) throw ParameterError("evaluation point outside GF(2^m)");
    }
    if (k < 1 || k >= n) throw ParameterError("MDS code needs 1 <= k < n");
    const std::uint64_t count = saturating_pow2(k * m);
    require_budget(count, budgets.codewords, "MDS code size");
    std::vector<Word> words;
    words.reserve(count);
    for (std::uint64_t msg = 0; msg < count; ++msg) {
      std::vector<std::uint32_t> coeff(k);
      for (std::size_t j = 0; j < k; ++j) {
        coeff[j] = static_cast<std::uint32_t>((msg >> (j * m)) & ((1U << m) - 1));
      }
      std::vector<Symbol> syms;
      for (auto p : points) {
        std::uint32_t acc = 0;
        for (std::size_t j = k; j-- > 0;) acc = field.add(field.mul(acc, p), coeff[j]);
        syms.emplace_back(acc, m);
      }
      words.emplace_back(std::move(syms));
    }
    std::sort(words.begin(), words.end());
    c.words_ = std::move(words);
    c.points_ = std::move(points);
    c.mds_k_ = k;
    c.finish_enumerated(budgets);
    if (c.distance_ != n - k + 1) {
      throw ConstructionFault("MDS code has d=" + std::to_string(c.distance_) + ", expected " +
                              std::to_string(n - k + 1));
    }
    c.validate();
    return c;
  }

  /// Consecutive field elements 0, 1, ..., n-1 as evaluation points.
  static CodeSpec reed_solomon(std::size_t n, std::size_t k, std::size_t m, const Budgets& budgets = {}) {
    if (m > 8 || n > (std::size_t{1} << m)) throw ParameterError("Reed-Solomon code needs n <= 2^m, m <= 8");
    std::vector<std::uint32_t> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<std::uint32_t>(i);
    return mds(n, k, m, std::move(pts), budgets);
  }

  Family family() const { return family_; }
  std::size_t length() const { return n_; }
  std::size_t width() const { return m_; }
  const Rational& dimension() const { return dimension_; }
  bool dimension_exact() const { return dimension_exact_; }
  std::size_t min_distance_cached() const { return distance_; }
  bool is_mds() const {
    return dimension_exact_ && Rational(static_cast<long>(n_ - distance_ + 1)) == dimension_;
  }
  const std::vector<std::uint32_t>& evaluation_points() const { return points_; }

  /// Exact |C| when it fits in 64 bits.
  std::uint64_t size() const {
    switch (family_) {
      case Family::Repetition: return saturating_pow2(m_);
      case Family::ParityCheck: return saturating_pow2(m_ * (n_ - 1));
      default: return words_.size();
    }
  }

  std::string name() const {
    switch (family_) {
      case Family::Repetition: return "rep";
      case Family::ParityCheck: return "parity";
      case Family::Explicit: return "explicit";
      case Family::Mds: return "mds";
    }
    return "?";
  }

  void check_shape(const Word& w) const {
    if (w.size() != n_ || w.width() != m_) {
      throw ParameterError("word of shape (" + std::to_string(w.size()) + "," + std::to_string(w.width()) +
                           ") does not match code (" + std::to_string(n_) + "," + std::to_string(m_) + ")");
    }
  }

  bool contains(const Word& w) const {
    check_shape(w);
    switch (family_) {
      case Family::Repetition:
        return std::all_of(w.symbols().begin(), w.symbols().end(), [&](const Symbol& s) { return s == w[0]; });
      case Family::ParityCheck: {
        std::uint64_t acc = 0;
        for (const auto& s : w.symbols()) acc ^= s.value();
        return acc == 0;
      }
      default:
        return std::binary_search(words_.begin(), words_.end(), w);
    }
  }

  /// Visits every codeword once, in lexicographic order of concatenated bits.
  void for_each_codeword(const std::function<void(const Word&)>& visit, const Budgets& budgets = {}) const {
    require_budget(size(), budgets.codewords, "codeword enumeration");
    switch (family_) {
      case Family::Repetition:
        for (std::uint64_t a = 0; a < size(); ++a) visit(Word::constant(Symbol(a, m_), n_));
        return;
      case Family::ParityCheck:
        for (std::uint64_t prefix = 0; prefix < size(); ++prefix) {
          std::vector<Symbol> syms;
          std::uint64_t acc = 0;
          const std::uint64_t mask = (std::uint64_t{1} << m_) - 1;
          for (std::size_t i = 0; i + 1 < n_; ++i) {
            auto v = (prefix >> ((n_ - 2 - i) * m_)) & mask;
            acc ^= v;
            syms.emplace_back(v, m_);
          }
          syms.emplace_back(acc, m_);
          visit(Word(std::move(syms)));
        }
        return;
      default:
        for (const auto& w : words_) visit(w);
        return;
    }
  }

 private:
  CodeSpec(Family f, std::size_t n, std::size_t m) : family_(f), n_(n), m_(m) {
    if (n < 2) throw ParameterError("code length must be at least 2");
    if (m < 1 || m > Symbol::kMaxWidth) throw ParameterError("symbol width must be in [1, 32]");
  }

  void finish_enumerated(const Budgets& budgets) {
    if (words_.size() < 2) throw ParameterError("a code needs at least two codewords");
    const std::uint64_t pairs = saturating_mul(words_.size(), words_.size() - 1) / 2;
    require_budget(pairs, budgets.executions, "minimum distance pair scan");
    std::size_t best = n_;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::size_t j = i + 1; j < words_.size(); ++j) {
        best = std::min(best, hamming_distance(words_[i], words_[j]));
      }
    }
    distance_ = best;
    std::uint64_t size = words_.size();
    std::size_t log2 = 0;
    while ((std::uint64_t{1} << (log2 + 1)) <= size) ++log2;
    dimension_exact_ = (std::uint64_t{1} << log2) == size;
    dimension_ = Rational(static_cast<long>(log2), static_cast<long>(m_));
  }

  void validate() const {
    if (distance_ < 2) {
      throw ParameterError("code has minimum distance " + std::to_string(distance_) + "; d >= 2 is required");
    }
  }

  Family family_;
  std::size_t n_;
  std::size_t m_;
  Rational dimension_{0};
  bool dimension_exact_ = true;
  std::size_t distance_ = 0;
  std::vector<Word> words_;
  std::vector<std::uint32_t> points_;
  std::size_t mds_k_ = 0;
};

inline bool contains(const CodeSpec& code, const Word& w) {
  return code.contains(w);
}

inline std::size_t min_distance(const CodeSpec& code) {
  return code.min_distance_cached();
}

inline std::vector<Word> enumerate(const CodeSpec& code, const Budgets& budgets = {}) {
  std::vector<Word> out;
  code.for_each_codeword([&](const Word& w) { out.push_back(w); }, budgets);
  return out;
}

/// Closest codeword and its distance; ties go to the earliest in enumeration order.
inline std::pair<Word, std::size_t> nearest_codeword(const CodeSpec& code, const Word& w,
                                                     const Budgets& budgets = {}) {
  code.check_shape(w);
  std::pair<Word, std::size_t> best{Word{}, SIZE_MAX};
  code.for_each_codeword(
      [&](const Word& c) {
        auto d = hamming_distance(c, w);
        if (d < best.second) best = {c, d};
      },
      budgets);
  return best;
}

/// Explicit code text format: "n m" then one hex codeword per line.
inline CodeSpec read_explicit_code(std::istream& in, const Budgets& budgets = {}) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw ParameterError("code file: expected header 'n m'");
  std::vector<Word> words;
  std::string token;
  while (in >> token) words.push_back(Word::from_hex(token, n, m));
  return CodeSpec::explicit_code(n, m, std::move(words), budgets);
}

inline CodeSpec load_explicit_code(const std::string& path, const Budgets& budgets = {}) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open code file '" + path + "'");
  return read_explicit_code(in, budgets);
}

inline std::string write_explicit_code(const CodeSpec& code, const Budgets& budgets = {}) {
  std::ostringstream out;
  out << code.length() << ' ' << code.width() << '\n';
  code.for_each_codeword([&](const Word& w) { out << w.to_hex() << '\n'; }, budgets);
  return out.str();
}

}  // namespace netcode
