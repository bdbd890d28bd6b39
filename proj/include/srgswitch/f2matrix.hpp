#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace srgswitch {

// Dense GF(2) vector. Bits are packed little-endian into 64-bit words;
// padding bits beyond `len` are kept zero by every operation.
struct F2Vector {
  std::size_t len = 0;
  std::vector<std::uint64_t> words;

  F2Vector() = default;
  explicit F2Vector(std::size_t n);

  bool get(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool value);
  std::size_t popcount() const;
  bool is_zero() const;

  friend bool operator==(const F2Vector&, const F2Vector&) = default;
};

F2Vector ones_vector(std::size_t n);

// Dense GF(2) matrix, row-major, each row packed into 64-bit words.
// Empty matrices (0 rows or 0 columns) are legal.
struct F2Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> data;

  F2Matrix() = default;
  F2Matrix(std::size_t r, std::size_t c);

  bool get(std::size_t i, std::size_t j) const {
    return (data[i * words_per_row + (j >> 6)] >> (j & 63)) & 1;
  }
  void set(std::size_t i, std::size_t j, bool value);
  void flip(std::size_t i, std::size_t j) { data[i * words_per_row + (j >> 6)] ^= 1ull << (j & 63); }

  std::uint64_t* row(std::size_t i) { return data.data() + i * words_per_row; }
  const std::uint64_t* row(std::size_t i) const { return data.data() + i * words_per_row; }

  std::size_t row_popcount(std::size_t i) const;
  F2Vector row_vector(std::size_t i) const;

  bool is_symmetric() const;
  bool has_zero_diagonal() const;

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
};

F2Matrix all_ones(std::size_t rows, std::size_t cols);
F2Matrix identity(std::size_t n);

// GF(2) rank by Gaussian elimination: rows are folded into an XOR basis top to
// bottom, each contributing a pivot at its first nonzero bit (left to right).
std::size_t rank2(const F2Matrix& m);

// Whether v lies in the GF(2) column space of m (v.len must equal m.rows).
bool in_colspace(const F2Matrix& m, const F2Vector& v);

// A witness x with m*x = b over GF(2), or nullopt when the system is inconsistent.
std::optional<F2Vector> solve2(const F2Matrix& m, const F2Vector& b);

F2Matrix kron2(const F2Matrix& a, const F2Matrix& b);
F2Matrix add2(const F2Matrix& a, const F2Matrix& b);
F2Vector mul2(const F2Matrix& m, const F2Vector& v);
F2Matrix transpose2(const F2Matrix& m);

// popcount of (row_a AND row_b) for two packed rows of equal word count
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);

}  // namespace srgswitch
