#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mcx/equivalence.hpp"
#include "mcx/lyhw19.hpp"
#include "mcx/mceliece.hpp"
#include "mcx/mme.hpp"

namespace mcx::attacks {

// Unique Sigma with Sigma * Gp = Gpp. Both generators of an honest MME key
// span the same code, which makes Sigma = B A^{-1} and hence invertible.
// Throws NotSameCode when Gpp leaves the row space of Gp.
BitMatrix compute_sigma(const BitMatrix& Gp, const BitMatrix& Gpp);

// An ME key-recovery oracle: given (G_pub, t), produce some (S, P, D_C)
// factorisation with S * G * P = G_pub.
using MeOracle = std::function<me::SecretKey(const me::PublicKey&)>;

// MME -> ME reduction: Sigma lifts the oracle's factorisation to a full MME
// secret key (A = S, B = Sigma A). The result is validated by decrypting
// verify_rounds fresh ciphertexts; rng drives those test encryptions.
mme::SecretKey mme_forger(const mme::PublicKey& pk, const MeOracle& oracle, SeededRng& rng,
                          int verify_rounds = 100);

struct EnumOptions {
    unsigned threads = 1;
    std::uint64_t ssa_node_budget = 1'000'000;
    // Accept hook: reject a found factorisation and keep scanning (used by
    // the signature forger to enforce its keygen gates).
    std::function<bool(const me::SecretKey&)> accept;
};

struct EnumReport {
    std::uint64_t candidates = 0;       // irreducible candidates examined
    std::uint64_t ssa_inequivalent = 0; // rejected by signatures/search
    std::uint64_t ssa_degenerate = 0;   // rejected by budget exhaustion
    std::uint64_t dim_skipped = 0;      // wrong dimension, SSA not run
    std::uint64_t winner_index = 0;     // candidate index of the match
    double seconds = 0.0;
};

// Key recovery against ME by enumerating all monic irreducible degree-t
// polynomials and testing permutation equivalence against the public code.
// nullopt when the enumeration is exhausted (the key is not a permuted
// Goppa code of these parameters).
std::optional<me::SecretKey> me_keyrecovery_enum(const me::PublicKey& pk, unsigned m,
                                                 const EnumOptions& opts = {},
                                                 EnumReport* report = nullptr);

struct RecoveredSigKey {
    lyhw19::SecretKey sk;
    BitMatrix sigma;
};

// Key recovery against LYHW19: recover (A, P, code) from G' via enumeration,
// derive B = Sigma A, and assemble a functionally equivalent signing key.
// The result is validated by verifying forge_checks fresh signatures under
// the victim public key.
std::optional<RecoveredSigKey> lyhw19_forger(const lyhw19::PublicKey& pk, unsigned m,
                                             SeededRng& rng, const EnumOptions& opts = {},
                                             EnumReport* report = nullptr, int forge_checks = 20);

struct CostEstimate {
    unsigned m = 0;
    unsigned t = 0;
    std::size_t n = 0;
    // Exact irreducible count when 2^(mt) fits in 64 bits.
    std::optional<std::uint64_t> exact_candidates;
    long double paper_candidates = 0;    // 2^(mt) / t
    long double reduced_candidates = 0;  // 2^(m(t-3)) / (m t)
    bool reduced_degenerate = false;     // formula yields < 1 candidate
    long double ssa_ops_per_candidate = 0;  // n^3
    long double total_ops = 0;               // paper_candidates * n^3
};

CostEstimate cost_estimate(unsigned m, unsigned t);

}  // namespace mcx::attacks
