#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "slpwb/types.hpp"

namespace slpwb {

// Square boolean matrix over the (OR,AND) semiring. Rows are bit-packed into
// 64-bit words, LSB-first, so "column j" is bit j of row i. Bits at positions
// >= dim in the last word of each row stay zero.
class BoolMatrix {
public:
    BoolMatrix() = default;
    explicit BoolMatrix(std::uint32_t dim)
        : dim_(dim), wpr_(words_per_row(dim)), w_(std::size_t{dim} * wpr_, 0) {}

    static BoolMatrix identity(std::uint32_t dim);

    std::uint32_t dim() const { return dim_; }
    std::uint32_t words_per_row() const { return wpr_; }

    bool get(std::uint32_t i, std::uint32_t j) const {
        check_index(i, j);
        return (w_[std::size_t{i} * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set(std::uint32_t i, std::uint32_t j, bool bit = true) {
        check_index(i, j);
        std::uint64_t& word = w_[std::size_t{i} * wpr_ + (j >> 6)];
        const std::uint64_t mask = std::uint64_t{1} << (j & 63);
        if (bit) word |= mask; else word &= ~mask;
    }

    std::span<const std::uint64_t> row(std::uint32_t i) const {
        return {w_.data() + std::size_t{i} * wpr_, wpr_};
    }
    std::span<std::uint64_t> row(std::uint32_t i) {
        return {w_.data() + std::size_t{i} * wpr_, wpr_};
    }

    bool any() const;

    friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
        return a.dim_ == b.dim_ && a.w_ == b.w_;
    }

    // Layout inside index files: dim as u32 LE, then rows in order, each
    // ceil(dim/64) LE 64-bit words.
    void serialize(std::ostream& out) const;
    static BoolMatrix deserialize(std::istream& in);

    static std::uint32_t words_per_row(std::uint32_t dim) { return (dim + 63) / 64; }

private:
    void check_index(std::uint32_t i, std::uint32_t j) const {
        if (i >= dim_ || j >= dim_)
            throw RangeError("matrix index (" + std::to_string(i) + "," +
                             std::to_string(j) + ") out of range for dim " +
                             std::to_string(dim_));
    }

    std::uint32_t dim_ = 0;
    std::uint32_t wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

class BoolVector {
public:
    BoolVector() = default;
    explicit BoolVector(std::uint32_t dim)
        : dim_(dim), w_(BoolMatrix::words_per_row(dim), 0) {}

    std::uint32_t dim() const { return dim_; }

    bool get(std::uint32_t i) const {
        check_index(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::uint32_t i, bool bit = true) {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (bit) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }
    void clear() { for (auto& w : w_) w = 0; }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }

    // Moves every bit from position i to i+k; bits shifted past dim-1 drop.
    void shift_up(std::uint32_t k);

    void or_row(const BoolMatrix& a, std::uint32_t i);

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

    friend bool operator==(const BoolVector& a, const BoolVector& b) {
        return a.dim_ == b.dim_ && a.w_ == b.w_;
    }

private:
    void check_index(std::uint32_t i) const {
        if (i >= dim_)
            throw RangeError("vector index " + std::to_string(i) +
                             " out of range for dim " + std::to_string(dim_));
    }

    std::uint32_t dim_ = 0;
    std::vector<std::uint64_t> w_;
};

// (A x B)[i,j] = OR_k A[i,k] AND B[k,j]. Word-parallel cubic: every set bit
// A[i,k] ORs row k of B into row i of the result.
BoolMatrix mat_mul(const BoolMatrix& a, const BoolMatrix& b);

BoolVector vec_mat(const BoolVector& v, const BoolMatrix& a);
BoolVector mat_vec(const BoolMatrix& a, const BoolVector& v);

} // namespace slpwb
