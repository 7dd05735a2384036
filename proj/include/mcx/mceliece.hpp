#pragma once

#include <utility>

#include "mcx/goppa.hpp"

namespace mcx::me {

struct PublicKey {
    BitMatrix G_pub;  // k x n, rank k
    unsigned t;
};

struct SecretKey {
    BitMatrix S;  // k x k invertible
    Perm P;
    goppa::GoppaCode code;  // provides the decoder
};

// Textbook McEliece: G_pub = S * G * P.
std::pair<PublicKey, SecretKey> keygen(unsigned m, unsigned t, SeededRng& rng);

// c = msg * G_pub + e with e uniform of weight exactly t.
BitVector encrypt(const BitVector& msg, const PublicKey& pk, SeededRng& rng);

// Decode c * P^{-1}, recover x = m S from the codeword, return x * S^{-1}.
// Throws DecryptFail when decoding fails.
BitVector decrypt(const BitVector& c, const SecretKey& sk);

}  // namespace mcx::me
