#include "blockcoh/operators.hpp"

#include <string>
#include <vector>

namespace blockcoh {

BlockOperator::BlockOperator(Matrix m, BlockStructure s)
    : matrix(std::move(m)), structure(std::move(s)) {
    if (matrix.rows() != matrix.cols())
        throw DimensionMismatch("block operator must be square");
    if (matrix.rows() != structure.dim())
        throw DimensionMismatch("operator is " + std::to_string(matrix.rows()) + "-dim, structure d=" +
                                std::to_string(structure.dim()));
}

double unitarity_residual(const Matrix& u) {
    const Matrix g = u.adjoint() * u;
    return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

BlockOperator haar_random_unitary(int n, std::uint64_t seed) {
    if (n < 1) throw DimensionMismatch("dimension must be >= 1");
    Rng rng(seed);
    return {rng.haar_unitary(n), BlockStructure::contiguous({n})};
}

BlockOperator tensor(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw DimensionMismatch("tensor factors must be square to carry a block view");
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(b.rows());
    Matrix out(m * n, m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out.block(i * n, j * n, n, n) = a(i, j) * b;
    return {out, BlockStructure::contiguous(std::vector<int>(m, n))};
}

Matrix partial_trace_second(const Matrix& rho, int da, int db) {
    if (rho.rows() != long(da) * db || rho.cols() != long(da) * db)
        throw DimensionMismatch("matrix does not factor over the given dimensions");
    Matrix out = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < da; ++k)
            for (int j = 0; j < db; ++j) out(i, k) += rho(i * db + j, k * db + j);
    return out;
}

Matrix partial_trace_first(const Matrix& rho, int da, int db) {
    if (rho.rows() != long(da) * db || rho.cols() != long(da) * db)
        throw DimensionMismatch("matrix does not factor over the given dimensions");
    Matrix out = Matrix::Zero(db, db);
    for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l)
            for (int i = 0; i < da; ++i) out(j, l) += rho(i * db + j, i * db + l);
    return out;
}

} // namespace blockcoh
