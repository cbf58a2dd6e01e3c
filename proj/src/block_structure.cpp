#include "blockcoh/block_structure.hpp"

#include <numeric>
#include <string>

namespace blockcoh {

BlockStructure::BlockStructure(std::vector<std::vector<int>> groups, int dim)
    : groups_(std::move(groups)), dim_(dim) {
    if (dim_ < 1 || groups_.empty())
        throw EmptyGroup("structure needs at least one nonempty group");
    block_of_.assign(dim_, -1);
    pos_of_.assign(dim_, -1);
    int covered = 0;
    for (int mu = 0; mu < static_cast<int>(groups_.size()); ++mu) {
        const auto& g = groups_[mu];
        if (g.empty())
            throw EmptyGroup("group " + std::to_string(mu) + " is empty");
        for (int j = 0; j < static_cast<int>(g.size()); ++j) {
            const int i = g[j];
            if (i < 0 || i >= dim_)
                throw IncompleteCover("index " + std::to_string(i) + " out of range for d=" +
                                      std::to_string(dim_));
            if (block_of_[i] != -1)
                throw OverlappingGroups("index " + std::to_string(i) + " appears in groups " +
                                        std::to_string(block_of_[i]) + " and " + std::to_string(mu));
            block_of_[i] = mu;
            pos_of_[i] = j;
            ++covered;
        }
    }
    if (covered != dim_)
        throw IncompleteCover("groups cover " + std::to_string(covered) + " of " +
                              std::to_string(dim_) + " indices");
}

BlockStructure BlockStructure::contiguous(const std::vector<int>& dims) {
    std::vector<std::vector<int>> groups;
    int next = 0;
    for (int d : dims) {
        std::vector<int> g(d);
        std::iota(g.begin(), g.end(), next);
        next += d;
        groups.push_back(std::move(g));
    }
    return BlockStructure(std::move(groups), next);
}

BlockStructure BlockStructure::singletons(int dim) {
    return contiguous(std::vector<int>(dim, 1));
}

std::vector<int> BlockStructure::block_dims() const {
    std::vector<int> dims;
    dims.reserve(groups_.size());
    for (const auto& g : groups_) dims.push_back(static_cast<int>(g.size()));
    return dims;
}

int BlockStructure::block_of(int index) const {
    if (index < 0 || index >= dim_)
        throw DimensionMismatch("basis index " + std::to_string(index) + " outside 0.." +
                                std::to_string(dim_ - 1));
    return block_of_[index];
}

int BlockStructure::position_in_block(int index) const {
    if (index < 0 || index >= dim_)
        throw DimensionMismatch("basis index " + std::to_string(index) + " outside 0.." +
                                std::to_string(dim_ - 1));
    return pos_of_[index];
}

Matrix BlockStructure::projector(int mu) const {
    Matrix p = Matrix::Zero(dim_, dim_);
    for (int i : group(mu)) p(i, i) = 1.0;
    return p;
}

BlockStructure BlockStructure::product(const BlockStructure& anc) const {
    std::vector<std::vector<int>> groups;
    groups.reserve(static_cast<size_t>(blocks()) * anc.blocks());
    for (int mu = 0; mu < blocks(); ++mu)
        for (int alpha = 0; alpha < anc.blocks(); ++alpha) {
            std::vector<int> g;
            g.reserve(group(mu).size() * anc.group(alpha).size());
            for (int i : group(mu))
                for (int j : anc.group(alpha)) g.push_back(i * anc.dim() + j);
            groups.push_back(std::move(g));
        }
    return BlockStructure(std::move(groups), dim_ * anc.dim());
}

Matrix block_view(const Matrix& A, const BlockStructure& s, int mu, int nu) {
    if (A.rows() != s.dim() || A.cols() != s.dim())
        throw DimensionMismatch("matrix is " + std::to_string(A.rows()) + "x" +
                                std::to_string(A.cols()) + ", structure has d=" +
                                std::to_string(s.dim()));
    const auto& rows = s.group(mu);
    const auto& cols = s.group(nu);
    Matrix B(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) B(r, c) = A(rows[r], cols[c]);
    return B;
}

void set_block(Matrix& A, const BlockStructure& s, int mu, int nu, const Matrix& B) {
    const auto& rows = s.group(mu);
    const auto& cols = s.group(nu);
    if (B.rows() != static_cast<Eigen::Index>(rows.size()) ||
        B.cols() != static_cast<Eigen::Index>(cols.size()))
        throw DimensionMismatch("block is " + std::to_string(B.rows()) + "x" +
                                std::to_string(B.cols()) + ", slot wants " +
                                std::to_string(rows.size()) + "x" + std::to_string(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) A(rows[r], cols[c]) = B(r, c);
}

Vector restrict_to_block(const Vector& v, const BlockStructure& s, int mu) {
    if (v.size() != s.dim())
        throw DimensionMismatch("vector length " + std::to_string(v.size()) + " vs d=" +
                                std::to_string(s.dim()));
    const auto& g = s.group(mu);
    Vector out(g.size());
    for (size_t j = 0; j < g.size(); ++j) out(j) = v(g[j]);
    return out;
}

Vector embed_in_block(const Vector& comp, const BlockStructure& s, int mu) {
    const auto& g = s.group(mu);
    if (comp.size() != static_cast<Eigen::Index>(g.size()))
        throw DimensionMismatch("component length " + std::to_string(comp.size()) +
                                " vs block dim " + std::to_string(g.size()));
    Vector out = Vector::Zero(s.dim());
    for (size_t j = 0; j < g.size(); ++j) out(g[j]) = comp(j);
    return out;
}

} // namespace blockcoh
