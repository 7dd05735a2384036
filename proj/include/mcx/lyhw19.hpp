#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcx/goppa.hpp"

namespace mcx::lyhw19 {

inline constexpr const char* kHashSpec = "shake256-v1";

struct PublicKey {
    BitMatrix Gp;   // G'  = A G P
    BitMatrix Gpp;  // G'' = B G P
    unsigned t;
    std::string hash_spec = kHashSpec;
};

struct SecretKey {
    BitMatrix A;
    BitMatrix B;
    Perm P;
    goppa::GoppaCode code;
    // Cached at key creation: B^{-1} and (A + B + A B^{-1} A)^{-1}.
    BitMatrix B_inv;
    BitMatrix gate_inv;
};

struct Signature {
    std::uint64_t i1 = 0;
    std::uint64_t i2 = 0;
    BitVector m1, m2;  // k bits
    BitVector e1, e2;  // n bits, weight <= t
};

// h_j(data) = first n bits of SHAKE256(byte(j) || data), LSB-first within
// each output byte. j selects the domain (1 or 2).
BitVector hash_to_word(unsigned j, std::span<const std::uint8_t> data, std::size_t n);

// Byte form of an n-bit digest: ceil(n/8) bytes, LSB-first, padding zeroed.
std::vector<std::uint8_t> digest_bytes(const BitVector& d);

// Resamples A, B until B and A + B + A B^{-1} A are invertible; throws
// KeygenExhausted after 1000 attempts.
std::pair<PublicKey, SecretKey> keygen(unsigned m, unsigned t, SeededRng& rng);

struct DecodableHit {
    std::uint64_t nonce;
    BitVector u;           // k-bit message of the decoded codeword
    BitVector e_permuted;  // (y + c) P, so that u G P + e_permuted = hash word
    std::uint64_t attempts;
};

// Scans nonces i = 0, 1, 2, ... until h_j(digest || i) P^{-1} decodes.
// Throws NonceExhausted past 2^40 attempts.
DecodableHit find_decodable(const goppa::GoppaCode& code, const Perm& P, unsigned j,
                            std::span<const std::uint8_t> digest);

struct SignStats {
    std::uint64_t attempts1 = 0;
    std::uint64_t attempts2 = 0;
    std::uint64_t total() const { return attempts1 + attempts2; }
};

Signature sign(std::span<const std::uint8_t> message, const SecretKey& sk,
               SignStats* stats = nullptr);

// Total verification: rejects malformed sizes, failed equations, and
// overweight error vectors.
bool verify(std::span<const std::uint8_t> message, const Signature& sig, const PublicKey& pk);

namespace detail {
// 8-byte big-endian nonce encoding used in digest || nonce concatenations.
std::array<std::uint8_t, 8> encode_nonce(std::uint64_t i);
// Keygen gate; also used by the key-recovery attack on derived A, B.
bool gates_ok(const BitMatrix& A, const BitMatrix& B);
}  // namespace detail

}  // namespace mcx::lyhw19
