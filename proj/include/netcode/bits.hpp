#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netcode/error.hpp"

namespace netcode {

/// Ordered bit string as carried on a simulated wire. Bit 0 is sent first.
class BitString {
 public:
  BitString() = default;

  static BitString from_uint(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
      throw ParameterError("value " + std::to_string(value) + " does not fit in " +
                           std::to_string(width) + " bits");
    }
    BitString out;
    out.bits_.resize(width);
    for (std::size_t i = 0; i < width; ++i) {
      out.bits_[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1U);
    }
    return out;
  }

  static BitString parse(const std::string& text) {
    BitString out;
    for (char c : text) {
      if (c != '0' && c != '1') throw ParameterError("bad bit character in '" + text + "'");
      out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  void push_back(bool b) { bits_.push_back(static_cast<std::uint8_t>(b)); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  /// Interprets the bits as an unsigned big-endian integer (at most 64 bits).
  std::uint64_t to_uint() const {
    if (bits_.size() > 64) throw ParameterError("bit string longer than 64 bits");
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  BitString operator^(const BitString& other) const {
    if (other.size() != size()) throw ParameterError("xor of bit strings with different lengths");
    BitString out = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= other.bits_[i];
    return out;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

  const std::vector<std::uint8_t>& raw() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

/// One alphabet element of {0,1}^m. Bit index 0 is the most significant bit.
class Symbol {
 public:
  static constexpr std::size_t kMaxWidth = 32;

  Symbol() = default;
  Symbol(std::uint64_t value, std::size_t width) : value_(value), width_(width) {
    if (width == 0 || width > kMaxWidth) {
      throw ParameterError("symbol width must be in [1, 32], got " + std::to_string(width));
    }
    if ((value >> width) != 0) {
      throw ParameterError("symbol value " + std::to_string(value) + " exceeds width " +
                           std::to_string(width));
    }
  }

  static Symbol from_bits(const BitString& bits) { return Symbol(bits.to_uint(), bits.size()); }

  std::uint64_t value() const { return value_; }
  std::size_t width() const { return width_; }
  bool bit(std::size_t i) const { return ((value_ >> (width_ - 1 - i)) & 1U) != 0; }
  BitString to_bits() const { return BitString::from_uint(value_, width_); }
  bool is_zero() const { return value_ == 0; }

  Symbol operator^(const Symbol& other) const {
    if (other.width_ != width_) throw ParameterError("xor of symbols with different widths");
    return Symbol(value_ ^ other.value_, width_);
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;

 private:
  std::uint64_t value_ = 0;
  std::size_t width_ = 1;
};

/// Number of bits needed to name one of `count` items; 0 for a single item.
inline std::size_t ceil_log2(std::uint64_t count) {
  std::size_t w = 0;
  while (w < 64 && (std::uint64_t{1} << w) < count) ++w;
  return w;
}

}  // namespace netcode

template <>
struct std::hash<netcode::BitString> {
  std::size_t operator()(const netcode::BitString& b) const noexcept {
    std::size_t h = 1469598103934665603ULL ^ b.size();
    for (auto bit : b.raw()) h = (h ^ bit) * 1099511628211ULL;
    return h;
  }
};
