#pragma once

#include <string>
#include <string_view>

#include "srgswitch/f2matrix.hpp"
#include "srgswitch/graph.hpp"

namespace srgswitch {

// Square {+1,-1} matrix stored one bit per entry: a set bit means -1.
struct SignMatrix {
  F2Matrix bits;

  SignMatrix() = default;
  explicit SignMatrix(std::size_t n) : bits(n, n) {}

  std::size_t order() const { return bits.rows; }
  int get(std::size_t i, std::size_t j) const { return bits.get(i, j) ? -1 : 1; }
  void set(std::size_t i, std::size_t j, int value);

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;
};

// H * H^T = nI, checked exactly: every distinct row pair must disagree in
// exactly n/2 positions.
bool is_hadamard(const SignMatrix& h);

// The two order-4 generators used throughout: h1 is regular with row sum +2
// and graph 2K2; h2 = 2I - J is regular with row sum -2 and graph K4.
SignMatrix h1();
SignMatrix h2();

bool is_graphical(const SignMatrix& h);   // symmetric with a constant diagonal
bool is_regular(const SignMatrix& h);     // all row sums and column sums equal
bool is_normalized(const SignMatrix& h);  // first row and first column all +1

int row_sum(const SignMatrix& h, std::size_t i);

// Sign eps of the common row sum eps*sqrt(n) of a regular Hadamard matrix.
int row_sum_sign(const SignMatrix& h);

// Negates every row whose first entry is -1, then every column whose
// first-row entry is -1.
SignMatrix normalize(const SignMatrix& h);

SignMatrix kron(const SignMatrix& a, const SignMatrix& b);

// Graph with adjacency (J - H)/2 of a graphical sign matrix, after negating
// to a +1 diagonal if needed.
Graph graph_of(const SignMatrix& h);

struct HadamardOfResult {
  SignMatrix matrix;  // J - 2A
  bool hadamard;
};
HadamardOfResult hadamard_of(const Graph& g);

// Text interchange: one row per line, '+'/'-' with no separators.
std::string sign_text_encode(const SignMatrix& h);
SignMatrix sign_text_decode(std::string_view text);

}  // namespace srgswitch
