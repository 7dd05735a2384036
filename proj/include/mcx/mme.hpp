#pragma once

#include <utility>

#include "mcx/goppa.hpp"

namespace mcx::mme {

// Modified McEliece: two public generators of the same hidden code.
struct PublicKey {
    BitMatrix Gp;   // G'  = A G P
    BitMatrix Gpp;  // G'' = B G P
    unsigned t;
};

struct SecretKey {
    Perm P;
    BitMatrix rho;    // (A+B)^{-1} B
    BitMatrix gamma;  // [A + B (A+B)^{-1} B]^{-1}
    goppa::GoppaCode code;
    // A and B are not needed for decryption; they are retained for the
    // strict decrypt mode and for tests.
    BitMatrix A;
    BitMatrix B;
};

struct Ciphertext {
    BitVector c1;
    BitVector c2;
};

// Resamples A, B until A+B and A + B(A+B)^{-1}B are invertible; throws
// KeygenExhausted after 1000 attempts.
std::pair<PublicKey, SecretKey> keygen(unsigned m, unsigned t, SeededRng& rng);

// Split msg = m1 + m2 with m1 random; c1 = m1 G' + m2 G'' + e1,
// c2 = msg G' + m1 G'' + e2, errors of weight exactly t.
Ciphertext encrypt(const BitVector& msg, const PublicKey& pk, SeededRng& rng);

// Decode both components, recover the k-bit messages x1, x2 of the decoded
// codewords, return (x2 + x1 rho) gamma. In strict mode the m1 share is
// additionally cross-checked between the two components (requires A, B).
BitVector decrypt(const Ciphertext& ct, const SecretKey& sk, bool strict = false);

namespace detail {
// Deterministic encryption with caller-chosen coins (test hook).
Ciphertext encrypt_with(const BitVector& msg, const PublicKey& pk, const BitVector& m1,
                        const BitVector& e1, const BitVector& e2);
// Keygen gate shared with the reduction in the attacks module.
bool gates_ok(const BitMatrix& A, const BitMatrix& B);
}  // namespace detail

}  // namespace mcx::mme
