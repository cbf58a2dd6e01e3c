#pragma once

#include <cstdint>

#include "blockcoh/block_structure.hpp"
#include "blockcoh/random.hpp"

namespace blockcoh {

// A d x d matrix carrying a block structure; block(mu, nu) is the A_{mu nu}
// view used throughout (conversion, gates, powers).
struct BlockOperator {
    Matrix matrix;
    BlockStructure structure;

    BlockOperator(Matrix m, BlockStructure s);

    int dim() const { return static_cast<int>(matrix.rows()); }
    int blocks() const { return structure.blocks(); }
    Matrix block(int mu, int nu) const { return block_view(matrix, structure, mu, nu); }
    BlockOperator with_structure(const BlockStructure& s) const { return {matrix, s}; }
};

// ||U'U - I||_max; 0 for exact unitaries.
double unitarity_residual(const Matrix& u);

// Seeded Haar-random unitary, returned over the trivial one-block structure.
BlockOperator haar_random_unitary(int n, std::uint64_t seed);

// Kronecker product A (x) B, viewed over rows(A) blocks of size rows(B):
// block (mu, nu) of the result is a_{mu nu} * B.
BlockOperator tensor(const Matrix& a, const Matrix& b);

// Partial traces of a (da*db) x (da*db) matrix over the second/first factor,
// with joint index i*db + j.
Matrix partial_trace_second(const Matrix& rho, int da, int db);
Matrix partial_trace_first(const Matrix& rho, int da, int db);

} // namespace blockcoh
