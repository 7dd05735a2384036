#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcx/errors.hpp"
#include "mcx/rng.hpp"

namespace mcx {

// Bit-packed vector over F2. Unused bits of the last word are kept zero.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool is_zero() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    // LSB-first packing: bit i lands in byte i/8, bit position i%8.
    std::vector<std::uint8_t> to_bytes() const;
    static BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t n);

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

    static BitVector random(std::size_t n, SeededRng& rng);
    // Uniform vector of exactly weight t.
    static BitVector random_weight(std::size_t n, unsigned t, SeededRng& rng);

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class Perm;
class BitMatrix;

struct RrefResult;

// Dense bit-packed matrix over F2, row-major, 64-bit words per row.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix random(std::size_t rows, std::size_t cols, SeededRng& rng);
    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v)
            w_[r * wpr_ + (c >> 6)] |= mask;
        else
            w_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    void xor_row_into(std::size_t src, std::size_t dst);  // row dst ^= row src
    void swap_rows(std::size_t a, std::size_t b);

    BitMatrix operator+(const BitMatrix& other) const;  // entrywise XOR
    BitMatrix operator*(const BitMatrix& other) const;
    BitMatrix transpose() const;
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    RrefResult rref() const;
    std::size_t rank() const;

    BitMatrix inverse() const;  // throws SingularMatrix
    // Rows form a basis of {x : M x^T = 0}. Contract: row r has a 1 at the
    // r-th non-pivot column of M and 0 at every other non-pivot column, so
    // the basis restricted to the non-pivot columns is the identity.
    BitMatrix nullspace() const;

    // Row space in canonical form: RREF with zero rows dropped. Two matrices
    // span the same code iff their canonical forms are equal.
    BitMatrix row_space_canonical() const;

    // Columns picked in the given order (duplicates allowed).
    BitMatrix select_cols(std::span<const std::size_t> cols) const;
    BitMatrix permute_cols(const Perm& p) const;
    BitMatrix vstack(const BitMatrix& below) const;

    std::vector<std::uint8_t> to_bytes() const;  // rows byte-aligned, LSB-first
    static BitMatrix from_bytes(std::span<const std::uint8_t> bytes, std::size_t rows,
                                std::size_t cols);

    const std::uint64_t* row_data(std::size_t r) const { return w_.data() + r * wpr_; }

  private:
    std::uint64_t* row_ptr(std::size_t r) { return w_.data() + r * wpr_; }
    const std::uint64_t* row_ptr(std::size_t r) const { return w_.data() + r * wpr_; }
    void mask_tail();

    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

struct RrefResult {
    BitMatrix R;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

// v * M for a row vector v of length rows(M).
BitVector operator*(const BitVector& v, const BitMatrix& M);

// Unique X with X * M = Y when M has full row rank; nullopt when some row of
// Y falls outside the row space of M.
std::optional<BitMatrix> solve_left(const BitMatrix& Y, const BitMatrix& M);

// Uniformly random invertible matrix (rejection sampling on rank).
BitMatrix random_invertible(std::size_t k, SeededRng& rng);

// Permutation of {0..n-1}; mapping[i] is the image of coordinate i. As a
// matrix, P[i][mapping[i]] = 1, so apply(v) = v * P.
class Perm {
  public:
    Perm() = default;
    explicit Perm(std::size_t n);  // identity
    static Perm random(std::size_t n, SeededRng& rng);
    static Perm from_mapping(std::vector<std::uint32_t> mapping);

    std::size_t size() const { return map_.size(); }
    std::uint32_t operator()(std::size_t i) const { return map_[i]; }
    const std::vector<std::uint32_t>& mapping() const { return map_; }

    Perm inverse() const;
    // compose(q): first q, then this; matches matrix product Q * P.
    Perm compose_after(const Perm& q) const;
    BitVector apply(const BitVector& v) const;
    BitMatrix to_matrix() const;

    friend bool operator==(const Perm&, const Perm&) = default;

  private:
    std::vector<std::uint32_t> map_;
};

}  // namespace mcx
