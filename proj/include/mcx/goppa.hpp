#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mcx/binmat.hpp"
#include "mcx/gf2m.hpp"

namespace mcx::goppa {

struct CodeParams {
    unsigned m;         // extension degree
    std::size_t n;      // length
    std::size_t k;      // dimension (actual nullspace dimension)
    unsigned t;         // error correction capability
    unsigned d_lower;   // designed distance 2t + 1
};

// Binary irreducible Goppa code Gamma(g, L) with a Patterson decoder.
//
// Support convention: for t >= 2 the support is all of GF(2^m) in integer
// order (n = 2^m); a degree-1 g(X) = X + beta has the root beta, so for
// t = 1 the support is GF(2^m) \ {beta} and n = 2^m - 1.
class GoppaCode {
  public:
    static GoppaCode build(const Field& field, const Poly& g, std::vector<FieldElem> support);
    // Applies the support convention above.
    static GoppaCode standard(unsigned m, const Poly& g);

    const CodeParams& params() const { return params_; }
    const Field& field() const { return field_; }
    const Poly& goppa_poly() const { return g_; }
    const std::vector<FieldElem>& support() const { return support_; }
    const BitMatrix& generator() const { return G_; }     // k x n
    const BitMatrix& parity_check() const { return H_; }  // mt x n

    BitVector encode(const BitVector& u) const;  // u * G

    // Syndrome polynomial S(X) = sum_{i : y_i = 1} (X - alpha_i)^{-1} mod g.
    Poly syndrome(const BitVector& y) const;

    struct Decoded {
        BitVector codeword;
        BitVector error;
    };
    // Patterson decoding; nullopt when y is not within distance t of a
    // codeword (or the locator fails to split). The result is verified by
    // re-checking the syndrome before it is returned.
    std::optional<Decoded> decode(const BitVector& y) const;

    // Unique u with u * G = c; throws NotInCode.
    BitVector message_of_codeword(const BitVector& c) const;

  private:
    GoppaCode(Field field, Poly g, std::vector<FieldElem> support);

    Field field_;
    Poly g_;
    std::vector<FieldElem> support_;
    CodeParams params_{};
    BitMatrix H_;
    BitMatrix G_;
    // Column i of the t x n parity matrix over the field: coefficients of
    // (X - alpha_i)^{-1} mod g; the syndrome is an XOR of these columns.
    std::vector<std::vector<FieldElem>> inv_columns_;
    // Message recovery: G restricted to these columns is the identity (the
    // nullspace basis contract), so u is read off a codeword directly.
    std::vector<std::size_t> info_cols_;
};

// Exact minimum distance by enumerating all 2^k - 1 nonzero codewords;
// throws TooLarge when k > 16.
std::size_t bruteforce_min_distance(const BitMatrix& G);

}  // namespace mcx::goppa
