#include "mcx/binmat.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace mcx {

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (auto word : w_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool BitVector::is_zero() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (n_ != other.n_) throw DimensionMismatch("BitVector xor: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
    return *this;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
    std::vector<std::uint8_t> out((n_ + 7) / 8, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t word = i / 8, shift = (i % 8) * 8;
        if (word < w_.size()) out[i] = static_cast<std::uint8_t>(w_[word] >> shift);
    }
    return out;
}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> bytes, std::size_t n) {
    if (bytes.size() != (n + 7) / 8)
        throw ParseError("BitVector::from_bytes: wrong byte count");
    BitVector v(n);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        v.w_[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << ((i % 8) * 8);
    // Padding bits beyond n must be zero.
    if (n % 64 != 0 && !v.w_.empty()) {
        std::uint64_t mask = (std::uint64_t{1} << (n % 64)) - 1;
        if ((v.w_.back() & ~mask) != 0) throw ParseError("BitVector::from_bytes: nonzero padding");
    }
    return v;
}

BitVector BitVector::random(std::size_t n, SeededRng& rng) {
    BitVector v(n);
    for (auto& word : v.w_) word = rng.next_u64();
    if (n % 64 != 0 && !v.w_.empty())
        v.w_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    return v;
}

BitVector BitVector::random_weight(std::size_t n, unsigned t, SeededRng& rng) {
    if (t > n) throw std::invalid_argument("random_weight: t exceeds length");
    BitVector v(n);
    // Floyd's sampling of t distinct positions.
    for (std::size_t j = n - t; j < n; ++j) {
        std::size_t p = rng.below(j + 1);
        if (v.get(p))
            v.set(j, true);
        else
            v.set(p, true);
    }
    return v;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, SeededRng& rng) {
    BitMatrix m(rows, cols);
    for (auto& word : m.w_) word = rng.next_u64();
    m.mask_tail();
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

void BitMatrix::mask_tail() {
    if (cols_ % 64 == 0 || wpr_ == 0) return;
    std::uint64_t mask = (std::uint64_t{1} << (cols_ % 64)) - 1;
    for (std::size_t r = 0; r < rows_; ++r) w_[r * wpr_ + wpr_ - 1] &= mask;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy(row_ptr(r), row_ptr(r) + wpr_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw DimensionMismatch("set_row: length mismatch");
    std::copy(v.words().begin(), v.words().end(), row_ptr(r));
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    const std::uint64_t* s = row_ptr(src);
    std::uint64_t* d = row_ptr(dst);
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_ptr(a), row_ptr(a) + wpr_, row_ptr(b));
}

BitMatrix BitMatrix::operator+(const BitMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix add: shape mismatch");
    BitMatrix out = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) out.w_[i] ^= other.w_[i];
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
    if (cols_ != other.rows_) throw DimensionMismatch("matrix mul: shape mismatch");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t* dst = out.row_ptr(r);
        const std::uint64_t* src = row_ptr(r);
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t word = src[wi];
            while (word) {
                std::size_t c = wi * 64 + static_cast<std::size_t>(std::countr_zero(word));
                word &= word - 1;
                const std::uint64_t* orow = other.row_ptr(c);
                for (std::size_t k = 0; k < other.wpr_; ++k) dst[k] ^= orow[k];
            }
        }
    }
    return out;
}

BitVector operator*(const BitVector& v, const BitMatrix& M) {
    if (v.size() != M.rows()) throw DimensionMismatch("vec*mat: shape mismatch");
    BitVector out(M.cols());
    auto dst = out.words();
    const std::size_t wpr = (M.cols() + 63) / 64;
    auto vw = v.words();
    for (std::size_t wi = 0; wi < vw.size(); ++wi) {
        std::uint64_t word = vw[wi];
        while (word) {
            std::size_t r = wi * 64 + static_cast<std::size_t>(std::countr_zero(word));
            word &= word - 1;
            const std::uint64_t* src = M.row_data(r);
            for (std::size_t k = 0; k < wpr; ++k) dst[k] ^= src[k];
        }
    }
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t word = row_ptr(r)[wi];
            while (word) {
                std::size_t c = wi * 64 + static_cast<std::size_t>(std::countr_zero(word));
                word &= word - 1;
                out.set(c, r, true);
            }
        }
    return out;
}

RrefResult BitMatrix::rref() const {
    RrefResult res{*this, 0, {}};
    BitMatrix& R = res.R;
    std::size_t cur = 0;
    for (std::size_t col = 0; col < cols_ && cur < rows_; ++col) {
        std::size_t pivot = cur;
        while (pivot < rows_ && !R.get(pivot, col)) ++pivot;
        if (pivot == rows_) continue;
        R.swap_rows(cur, pivot);
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != cur && R.get(r, col)) R.xor_row_into(cur, r);
        res.pivots.push_back(col);
        ++cur;
    }
    res.rank = cur;
    return res;
}

std::size_t BitMatrix::rank() const { return rref().rank; }

BitMatrix BitMatrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse: matrix not square");
    // Gauss-Jordan on [M | I].
    BitMatrix aug(rows_, 2 * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.set(r, c, get(r, c));
        aug.set(r, cols_ + r, true);
    }
    auto rr = aug.rref();
    // Invertible iff pivots occupy exactly the first cols_ columns.
    if (rr.rank < rows_ || rr.pivots[rows_ - 1] >= cols_) throw SingularMatrix();
    BitMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, rr.R.get(r, cols_ + c));
    return out;
}

BitMatrix BitMatrix::nullspace() const {
    auto rr = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    BitMatrix out(cols_ - rr.rank, cols_);
    std::size_t row_out = 0;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        out.set(row_out, free_col, true);
        for (std::size_t i = 0; i < rr.rank; ++i)
            if (rr.R.get(i, free_col)) out.set(row_out, rr.pivots[i], true);
        ++row_out;
    }
    return out;
}

BitMatrix BitMatrix::row_space_canonical() const {
    auto rr = rref();
    BitMatrix out(rr.rank, cols_);
    for (std::size_t r = 0; r < rr.rank; ++r) out.set_row(r, rr.R.row(r));
    return out;
}

BitMatrix BitMatrix::select_cols(std::span<const std::size_t> cols) const {
    BitMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (get(r, cols[j])) out.set(r, j, true);
    return out;
}

BitMatrix BitMatrix::permute_cols(const Perm& p) const {
    if (p.size() != cols_) throw DimensionMismatch("permute_cols: size mismatch");
    BitMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(r, p(c), true);
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& below) const {
    if (cols_ != below.cols_) throw DimensionMismatch("vstack: column mismatch");
    BitMatrix out(rows_ + below.rows_, cols_);
    std::copy(w_.begin(), w_.end(), out.w_.begin());
    std::copy(below.w_.begin(), below.w_.end(), out.w_.begin() + w_.size());
    return out;
}

std::vector<std::uint8_t> BitMatrix::to_bytes() const {
    const std::size_t bpr = (cols_ + 7) / 8;
    std::vector<std::uint8_t> out(rows_ * bpr, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto bytes = row(r).to_bytes();
        std::copy(bytes.begin(), bytes.end(), out.begin() + r * bpr);
    }
    return out;
}

BitMatrix BitMatrix::from_bytes(std::span<const std::uint8_t> bytes, std::size_t rows,
                                std::size_t cols) {
    const std::size_t bpr = (cols + 7) / 8;
    if (bytes.size() != rows * bpr) throw ParseError("BitMatrix::from_bytes: wrong byte count");
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        out.set_row(r, BitVector::from_bytes(bytes.subspan(r * bpr, bpr), cols));
    return out;
}

std::optional<BitMatrix> solve_left(const BitMatrix& Y, const BitMatrix& M) {
    if (Y.cols() != M.cols()) throw DimensionMismatch("solve_left: column mismatch");
    const std::size_t r = M.rows();
    // X M = Y  <=>  M^T X^T = Y^T; reduce [M^T | Y^T] and read solutions off
    // the pivot rows. Requires M to have full row rank.
    BitMatrix MT = M.transpose();
    BitMatrix YT = Y.transpose();
    BitMatrix aug(MT.rows(), r + Y.rows());
    for (std::size_t i = 0; i < MT.rows(); ++i) {
        for (std::size_t j = 0; j < r; ++j) aug.set(i, j, MT.get(i, j));
        for (std::size_t j = 0; j < Y.rows(); ++j) aug.set(i, r + j, YT.get(i, j));
    }
    auto rr = aug.rref();
    std::size_t lead_rank = 0;
    for (auto p : rr.pivots)
        if (p < r) ++lead_rank;
    if (lead_rank < r) throw std::invalid_argument("solve_left: M lacks full row rank");
    // Any pivot inside the augmented block marks an inconsistent column.
    for (auto p : rr.pivots)
        if (p >= r) return std::nullopt;
    BitMatrix X(Y.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t c = 0; c < Y.rows(); ++c)
            if (rr.R.get(j, r + c)) X.set(c, j, true);
    return X;
}

BitMatrix random_invertible(std::size_t k, SeededRng& rng) {
    for (;;) {
        BitMatrix m = BitMatrix::random(k, k, rng);
        if (m.rank() == k) return m;
    }
}

Perm::Perm(std::size_t n) : map_(n) { std::iota(map_.begin(), map_.end(), 0); }

Perm Perm::random(std::size_t n, SeededRng& rng) {
    Perm p(n);
    for (std::size_t i = n; i > 1; --i)
        std::swap(p.map_[i - 1], p.map_[rng.below(i)]);
    return p;
}

Perm Perm::from_mapping(std::vector<std::uint32_t> mapping) {
    std::vector<bool> seen(mapping.size(), false);
    for (auto v : mapping) {
        if (v >= mapping.size() || seen[v]) throw ParseError("Perm: mapping is not a bijection");
        seen[v] = true;
    }
    Perm p;
    p.map_ = std::move(mapping);
    return p;
}

Perm Perm::inverse() const {
    Perm p(size());
    for (std::size_t i = 0; i < size(); ++i) p.map_[map_[i]] = static_cast<std::uint32_t>(i);
    return p;
}

Perm Perm::compose_after(const Perm& q) const {
    if (size() != q.size()) throw DimensionMismatch("Perm compose: size mismatch");
    Perm p(size());
    for (std::size_t i = 0; i < size(); ++i) p.map_[i] = map_[q.map_[i]];
    return p;
}

BitVector Perm::apply(const BitVector& v) const {
    if (v.size() != size()) throw DimensionMismatch("Perm apply: size mismatch");
    BitVector out(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (v.get(i)) out.set(map_[i], true);
    return out;
}

BitMatrix Perm::to_matrix() const {
    BitMatrix m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) m.set(i, map_[i], true);
    return m;
}

}  // namespace mcx
