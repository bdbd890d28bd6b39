#include "srgswitch/hadamard.hpp"

#include <bit>
#include <stdexcept>

namespace srgswitch {

namespace {

std::size_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < words; ++k) total += static_cast<std::size_t>(std::popcount(a[k] ^ b[k]));
  return total;
}

void flip_row(SignMatrix& h, std::size_t i) {
  const std::size_t n = h.order();
  for (std::size_t j = 0; j < n; ++j) h.bits.flip(i, j);
}

void flip_col(SignMatrix& h, std::size_t j) {
  const std::size_t n = h.order();
  for (std::size_t i = 0; i < n; ++i) h.bits.flip(i, j);
}

}  // namespace

void SignMatrix::set(std::size_t i, std::size_t j, int value) {
  if (value != 1 && value != -1) throw std::invalid_argument("SignMatrix entries must be +1 or -1");
  bits.set(i, j, value == -1);
}

bool is_hadamard(const SignMatrix& h) {
  const std::size_t n = h.order();
  const std::size_t w = h.bits.words_per_row;
  // row_i . row_j = n - 2 * (number of disagreeing positions)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (2 * xor_popcount(h.bits.row(i), h.bits.row(j), w) != n) return false;
  return true;
}

SignMatrix h1() {
  SignMatrix h(4);
  const int rows[4][4] = {{1, -1, 1, 1}, {-1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -1, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h.set(i, j, rows[i][j]);
  return h;
}

SignMatrix h2() {
  SignMatrix h(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h.set(i, j, i == j ? 1 : -1);
  return h;
}

bool is_graphical(const SignMatrix& h) {
  if (!h.bits.is_symmetric()) return false;
  const std::size_t n = h.order();
  for (std::size_t i = 1; i < n; ++i)
    if (h.bits.get(i, i) != h.bits.get(0, 0)) return false;
  return true;
}

bool is_regular(const SignMatrix& h) {
  const std::size_t n = h.order();
  if (n == 0) return true;
  const std::size_t rp = h.bits.row_popcount(0);
  for (std::size_t i = 1; i < n; ++i)
    if (h.bits.row_popcount(i) != rp) return false;
  F2Matrix t = transpose2(h.bits);
  const std::size_t cp = t.row_popcount(0);
  if (cp != rp) return false;
  for (std::size_t j = 1; j < n; ++j)
    if (t.row_popcount(j) != cp) return false;
  return true;
}

bool is_normalized(const SignMatrix& h) {
  const std::size_t n = h.order();
  for (std::size_t j = 0; j < n; ++j)
    if (h.bits.get(0, j)) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (h.bits.get(i, 0)) return false;
  return true;
}

int row_sum(const SignMatrix& h, std::size_t i) {
  const std::size_t n = h.order();
  return static_cast<int>(n) - 2 * static_cast<int>(h.bits.row_popcount(i));
}

int row_sum_sign(const SignMatrix& h) {
  if (!is_hadamard(h)) throw std::invalid_argument("row_sum_sign: matrix is not Hadamard");
  if (!is_regular(h)) throw std::invalid_argument("row_sum_sign: matrix is not regular");
  const std::size_t n = h.order();
  if (n == 0) throw std::invalid_argument("row_sum_sign: empty matrix");
  std::size_t root = 0;
  while ((root + 1) * (root + 1) <= n) ++root;
  if (root * root != n)
    throw std::invalid_argument("row_sum_sign: order is not a perfect square");
  const int s = row_sum(h, 0);
  if (s != static_cast<int>(root) && s != -static_cast<int>(root))
    throw std::invalid_argument("row_sum_sign: row sum is not +-sqrt(n)");
  return s < 0 ? -1 : 1;
}

SignMatrix normalize(const SignMatrix& h) {
  if (!is_hadamard(h)) throw std::invalid_argument("normalize: matrix is not Hadamard");
  SignMatrix out = h;
  const std::size_t n = out.order();
  for (std::size_t i = 0; i < n; ++i)
    if (out.bits.get(i, 0)) flip_row(out, i);
  for (std::size_t j = 0; j < n; ++j)
    if (out.bits.get(0, j)) flip_col(out, j);
  return out;
}

SignMatrix kron(const SignMatrix& a, const SignMatrix& b) {
  // the sign of a Kronecker entry is the product of the factor signs, i.e.
  // the XOR of the stored bits
  const std::size_t na = a.order(), nb = b.order();
  SignMatrix out;
  out.bits = add2(kron2(a.bits, all_ones(nb, nb)), kron2(all_ones(na, na), b.bits));
  return out;
}

Graph graph_of(const SignMatrix& h) {
  if (!is_graphical(h)) throw std::invalid_argument("graph_of: matrix is not graphical");
  F2Matrix adj = h.bits;
  const std::size_t n = h.order();
  if (n > 0 && h.bits.get(0, 0)) {
    // -1 diagonal: negate the whole matrix first
    F2Matrix j = all_ones(n, n);
    adj = add2(adj, j);
  }
  return from_adjacency(std::move(adj));
}

HadamardOfResult hadamard_of(const Graph& g) {
  // J - 2A stores exactly the adjacency bits: -1 on edges, +1 elsewhere
  SignMatrix h;
  h.bits = g.adj;
  return HadamardOfResult{h, is_hadamard(h)};
}

std::string sign_text_encode(const SignMatrix& h) {
  const std::size_t n = h.order();
  std::string out;
  out.reserve(n * (n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.push_back(h.bits.get(i, j) ? '-' : '+');
    out.push_back('\n');
  }
  return out;
}

SignMatrix sign_text_decode(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  const std::size_t n = lines.size();
  SignMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lines[i].size() != n)
      throw std::runtime_error("sign matrix text: line length does not match line count");
    for (std::size_t j = 0; j < n; ++j) {
      const char c = lines[i][j];
      if (c != '+' && c != '-')
        throw std::runtime_error("sign matrix text: entries must be '+' or '-'");
      if (c == '-') h.bits.set(i, j, true);
    }
  }
  return h;
}

}  // namespace srgswitch
