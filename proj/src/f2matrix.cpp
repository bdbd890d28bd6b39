#include "srgswitch/f2matrix.hpp"

#include <bit>
#include <stdexcept>

namespace srgswitch {

namespace {

constexpr std::size_t kWordBits = 64;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Mask selecting the valid bits of the final word of a length-`bits` row.
std::uint64_t tail_mask(std::size_t bits) {
  const std::size_t r = bits % kWordBits;
  return r == 0 ? ~0ull : (1ull << r) - 1;
}

std::size_t leading_bit(const std::uint64_t* row, std::size_t words) {
  for (std::size_t k = 0; k < words; ++k)
    if (row[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(row[k]));
  return kNone;
}

// dst ^= src interpreted as a bit string shifted left by `offset`.
// Bits of src beyond its logical width must be zero (the padding invariant),
// which makes the boundary guards lossless.
void xor_shifted(std::uint64_t* dst, std::size_t dst_words, const std::uint64_t* src,
                 std::size_t src_words, std::size_t offset) {
  const std::size_t wo = offset / kWordBits;
  const std::size_t s = offset % kWordBits;
  if (s == 0) {
    for (std::size_t k = 0; k < src_words && wo + k < dst_words; ++k) dst[wo + k] ^= src[k];
    return;
  }
  for (std::size_t k = 0; k < src_words; ++k) {
    if (wo + k < dst_words) dst[wo + k] ^= src[k] << s;
    if (wo + k + 1 < dst_words) dst[wo + k + 1] ^= src[k] >> (kWordBits - s);
  }
}

// Gaussian elimination on a packed row array; returns the pivot row of each
// column (kNone where the column has no pivot). `work` is destroyed.
std::size_t xor_basis(std::vector<std::uint64_t>& work, std::size_t rows, std::size_t cols,
                      std::size_t w, std::vector<std::size_t>& pivot_of_col) {
  pivot_of_col.assign(cols, kNone);
  std::size_t rank = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t* row = work.data() + r * w;
    for (;;) {
      const std::size_t c = leading_bit(row, w);
      if (c == kNone) break;
      if (pivot_of_col[c] == kNone) {
        pivot_of_col[c] = r;
        ++rank;
        break;
      }
      const std::uint64_t* p = work.data() + pivot_of_col[c] * w;
      for (std::size_t k = 0; k < w; ++k) row[k] ^= p[k];
    }
  }
  return rank;
}

// [m | v] as a matrix one column wider.
F2Matrix augment_col(const F2Matrix& m, const F2Vector& v) {
  F2Matrix aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const std::uint64_t* src = m.row(i);
    std::uint64_t* dst = aug.row(i);
    for (std::size_t k = 0; k < m.words_per_row; ++k) dst[k] = src[k];
    if (v.get(i)) dst[m.cols >> 6] |= 1ull << (m.cols & 63);
  }
  return aug;
}

}  // namespace

F2Vector::F2Vector(std::size_t n) : len(n), words(words_for(n), 0) {}

void F2Vector::set(std::size_t i, bool value) {
  if (value)
    words[i >> 6] |= 1ull << (i & 63);
  else
    words[i >> 6] &= ~(1ull << (i & 63));
}

std::size_t F2Vector::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool F2Vector::is_zero() const {
  for (std::uint64_t w : words)
    if (w) return false;
  return true;
}

F2Vector ones_vector(std::size_t n) {
  F2Vector v(n);
  for (std::size_t k = 0; k < v.words.size(); ++k) v.words[k] = ~0ull;
  if (!v.words.empty()) v.words.back() &= tail_mask(n);
  return v;
}

F2Matrix::F2Matrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), words_per_row(words_for(c)), data(r * words_for(c), 0) {}

void F2Matrix::set(std::size_t i, std::size_t j, bool value) {
  if (value)
    data[i * words_per_row + (j >> 6)] |= 1ull << (j & 63);
  else
    data[i * words_per_row + (j >> 6)] &= ~(1ull << (j & 63));
}

std::size_t F2Matrix::row_popcount(std::size_t i) const {
  const std::uint64_t* r = row(i);
  std::size_t total = 0;
  for (std::size_t k = 0; k < words_per_row; ++k) total += static_cast<std::size_t>(std::popcount(r[k]));
  return total;
}

F2Vector F2Matrix::row_vector(std::size_t i) const {
  F2Vector v(cols);
  const std::uint64_t* r = row(i);
  for (std::size_t k = 0; k < words_per_row; ++k) v.words[k] = r[k];
  return v;
}

bool F2Matrix::is_symmetric() const {
  if (rows != cols) return false;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i + 1; j < cols; ++j)
      if (get(i, j) != get(j, i)) return false;
  return true;
}

bool F2Matrix::has_zero_diagonal() const {
  const std::size_t n = rows < cols ? rows : cols;
  for (std::size_t i = 0; i < n; ++i)
    if (get(i, i)) return false;
  return true;
}

F2Matrix all_ones(std::size_t rows, std::size_t cols) {
  F2Matrix m(rows, cols);
  if (cols == 0) return m;
  for (std::size_t i = 0; i < rows; ++i) {
    std::uint64_t* r = m.row(i);
    for (std::size_t k = 0; k < m.words_per_row; ++k) r[k] = ~0ull;
    r[m.words_per_row - 1] &= tail_mask(cols);
  }
  return m;
}

F2Matrix identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::size_t rank2(const F2Matrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  std::vector<std::uint64_t> work(m.data);
  std::vector<std::size_t> pivot_of_col;
  return xor_basis(work, m.rows, m.cols, m.words_per_row, pivot_of_col);
}

bool in_colspace(const F2Matrix& m, const F2Vector& v) {
  if (v.len != m.rows)
    throw std::invalid_argument("in_colspace: vector length must equal the matrix row count");
  if (m.rows == 0) return true;  // the empty vector is the zero vector
  // v lies in the column space iff no pivot of [m | v] lands in the appended column.
  F2Matrix aug = augment_col(m, v);
  std::vector<std::uint64_t> work(aug.data);
  std::vector<std::size_t> pivot_of_col;
  xor_basis(work, aug.rows, aug.cols, aug.words_per_row, pivot_of_col);
  return pivot_of_col[m.cols] == kNone;
}

std::optional<F2Vector> solve2(const F2Matrix& m, const F2Vector& b) {
  if (b.len != m.rows)
    throw std::invalid_argument("solve2: vector length must equal the matrix row count");
  F2Matrix aug = augment_col(m, b);
  const std::size_t w = aug.words_per_row;
  std::size_t pivot_rows = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t c = 0; c < m.cols && pivot_rows < m.rows; ++c) {
    std::size_t r = pivot_rows;
    while (r < m.rows && !aug.get(r, c)) ++r;
    if (r == m.rows) continue;
    if (r != pivot_rows)
      for (std::size_t k = 0; k < w; ++k) std::swap(aug.row(r)[k], aug.row(pivot_rows)[k]);
    for (std::size_t rr = 0; rr < m.rows; ++rr) {
      if (rr == pivot_rows || !aug.get(rr, c)) continue;
      const std::uint64_t* src = aug.row(pivot_rows);
      std::uint64_t* dst = aug.row(rr);
      for (std::size_t k = 0; k < w; ++k) dst[k] ^= src[k];
    }
    pivots.emplace_back(pivot_rows, c);
    ++pivot_rows;
  }
  // After full reduction every non-pivot row is zero in the m-part, so a set
  // bit in the appended column there means the system is inconsistent.
  for (std::size_t r = pivot_rows; r < m.rows; ++r)
    if (aug.get(r, m.cols)) return std::nullopt;
  F2Vector x(m.cols);
  for (const auto& [r, c] : pivots)
    if (aug.get(r, m.cols)) x.set(c, true);
  return x;
}

F2Matrix kron2(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix out(a.rows * b.rows, a.cols * b.cols);
  if (out.rows == 0 || out.cols == 0) return out;
  for (std::size_t i1 = 0; i1 < a.rows; ++i1)
    for (std::size_t j1 = 0; j1 < a.cols; ++j1) {
      if (!a.get(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < b.rows; ++i2)
        xor_shifted(out.row(i1 * b.rows + i2), out.words_per_row, b.row(i2), b.words_per_row,
                    j1 * b.cols);
    }
  return out;
}

F2Matrix add2(const F2Matrix& a, const F2Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("add2: dimension mismatch");
  F2Matrix out = a;
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] ^= b.data[k];
  return out;
}

F2Vector mul2(const F2Matrix& m, const F2Vector& v) {
  if (v.len != m.cols)
    throw std::invalid_argument("mul2: vector length must equal the matrix column count");
  F2Vector out(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const std::uint64_t* r = m.row(i);
    std::uint64_t fold = 0;  // XOR preserves popcount parity
    for (std::size_t k = 0; k < m.words_per_row; ++k) fold ^= r[k] & v.words[k];
    if (std::popcount(fold) & 1) out.set(i, true);
  }
  return out;
}

F2Matrix transpose2(const F2Matrix& m) {
  F2Matrix out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.get(i, j)) out.set(j, i, true);
  return out;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < words; ++k) total += static_cast<std::size_t>(std::popcount(a[k] & b[k]));
  return total;
}

}  // namespace srgswitch
