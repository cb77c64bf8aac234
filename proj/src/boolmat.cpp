#include "slpwb/boolmat.hpp"

#include <bit>
#include <istream>
#include <ostream>

namespace slpwb {

namespace {

void require_same_dim(std::uint32_t a, std::uint32_t b) {
    if (a != b)
        throw RangeError("dimension mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t read_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw ParseError("truncated matrix block");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return v;
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw ParseError("truncated matrix block");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
}

} // namespace

BoolMatrix BoolMatrix::identity(std::uint32_t dim) {
    BoolMatrix m(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.set(i, i);
    return m;
}

bool BoolMatrix::any() const {
    for (auto w : w_) if (w) return true;
    return false;
}

void BoolMatrix::serialize(std::ostream& out) const {
    write_u32_le(out, dim_);
    for (auto w : w_) write_u64_le(out, w);
}

BoolMatrix BoolMatrix::deserialize(std::istream& in) {
    const std::uint32_t dim = read_u32_le(in);
    BoolMatrix m(dim);
    const std::uint64_t tail_mask =
        (dim & 63) ? (~std::uint64_t{0} >> (64 - (dim & 63))) : ~std::uint64_t{0};
    for (std::uint32_t i = 0; i < dim; ++i) {
        auto row = m.row(i);
        for (std::uint32_t k = 0; k < m.wpr_; ++k) row[k] = read_u64_le(in);
        if (m.wpr_ && (row[m.wpr_ - 1] & ~tail_mask))
            throw ParseError("matrix block has nonzero trailing bits");
    }
    return m;
}

BoolMatrix mat_mul(const BoolMatrix& a, const BoolMatrix& b) {
    require_same_dim(a.dim(), b.dim());
    const std::uint32_t n = a.dim();
    const std::uint32_t wpr = a.words_per_row();
    BoolMatrix out(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto src = a.row(i);
        auto dst = out.row(i);
        for (std::uint32_t wi = 0; wi < wpr; ++wi) {
            std::uint64_t bits = src[wi];
            while (bits) {
                const std::uint32_t k = wi * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                auto brow = b.row(k);
                for (std::uint32_t t = 0; t < wpr; ++t) dst[t] |= brow[t];
            }
        }
    }
    return out;
}

BoolVector vec_mat(const BoolVector& v, const BoolMatrix& a) {
    require_same_dim(v.dim(), a.dim());
    BoolVector out(v.dim());
    auto ow = out.words();
    auto vw = v.words();
    const std::uint32_t wpr = a.words_per_row();
    for (std::uint32_t wi = 0; wi < wpr; ++wi) {
        std::uint64_t bits = vw[wi];
        while (bits) {
            const std::uint32_t k = wi * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            auto row = a.row(k);
            for (std::uint32_t t = 0; t < wpr; ++t) ow[t] |= row[t];
        }
    }
    return out;
}

BoolVector mat_vec(const BoolMatrix& a, const BoolVector& v) {
    require_same_dim(a.dim(), v.dim());
    BoolVector out(v.dim());
    auto vw = v.words();
    const std::uint32_t wpr = a.words_per_row();
    for (std::uint32_t i = 0; i < a.dim(); ++i) {
        auto row = a.row(i);
        std::uint64_t acc = 0;
        for (std::uint32_t t = 0; t < wpr; ++t) acc |= row[t] & vw[t];
        if (acc) out.set(i);
    }
    return out;
}

void BoolVector::shift_up(std::uint32_t k) {
    if (k == 0 || dim_ == 0) return;
    if (k >= dim_) { clear(); return; }
    const std::uint32_t word_shift = k >> 6;
    const std::uint32_t bit_shift = k & 63;
    const std::size_t nw = w_.size();
    for (std::size_t i = nw; i-- > 0;) {
        std::uint64_t v = 0;
        if (i >= word_shift) {
            v = w_[i - word_shift] << bit_shift;
            if (bit_shift && i > word_shift)
                v |= w_[i - word_shift - 1] >> (64 - bit_shift);
        }
        w_[i] = v;
    }
    const std::uint32_t tail = dim_ & 63;
    if (tail) w_[nw - 1] &= ~std::uint64_t{0} >> (64 - tail);
}

void BoolVector::or_row(const BoolMatrix& a, std::uint32_t i) {
    require_same_dim(dim_, a.dim());
    auto row = a.row(i);
    for (std::size_t t = 0; t < w_.size(); ++t) w_[t] |= row[t];
}

} // namespace slpwb
