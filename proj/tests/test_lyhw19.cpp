#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "mcx/lyhw19.hpp"

using namespace mcx;

namespace {

std::vector<std::uint8_t> bytes(const char* s) {
    return {reinterpret_cast<const std::uint8_t*>(s),
            reinterpret_cast<const std::uint8_t*>(s) + std::char_traits<char>::length(s)};
}

}  // namespace

TEST_CASE("hash_to_word determinism, length, and domain separation") {
    auto data = bytes("attack at dawn");
    BitVector a = lyhw19::hash_to_word(1, data, 61);
    BitVector b = lyhw19::hash_to_word(1, data, 61);
    CHECK(a == b);
    CHECK(a.size() == 61);
    // Serialized form pads the last byte with zero bits.
    auto packed = a.to_bytes();
    CHECK(packed.size() == 8);
    CHECK((packed.back() >> 5) == 0);

    CHECK_THROWS_AS(lyhw19::hash_to_word(3, data, 61), std::invalid_argument);

    // h1 vs h2 differ on about half the positions.
    SeededRng rng(std::uint64_t{400});
    std::size_t diff = 0, total = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<std::uint8_t> msg(16);
        rng.fill(msg);
        BitVector h1 = lyhw19::hash_to_word(1, msg, 64);
        BitVector h2 = lyhw19::hash_to_word(2, msg, 64);
        diff += (h1 ^ h2).weight();
        total += 64;
    }
    double frac = static_cast<double>(diff) / static_cast<double>(total);
    CHECK(frac > 0.44);
    CHECK(frac < 0.56);
}

TEST_CASE("keygen gates and caches") {
    SeededRng rng(std::uint64_t{401});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    const std::size_t k = pk.Gp.rows();
    CHECK(pk.hash_spec == lyhw19::kHashSpec);

    CHECK(sk.B * sk.B_inv == BitMatrix::identity(k));
    BitMatrix gate = sk.A + sk.B + sk.A * sk.B_inv * sk.A;
    CHECK(gate * sk.gate_inv == BitMatrix::identity(k));

    // Same construction as an MME public key: both generators span one code.
    CHECK(pk.Gp.row_space_canonical() == pk.Gpp.row_space_canonical());
    CHECK(pk.Gp == sk.A * sk.code.generator().permute_cols(sk.P));
    CHECK(pk.Gpp == sk.B * sk.code.generator().permute_cols(sk.P));

    // The singularity gate is evaluated, not assumed: A = B passes iff
    // A + B + A B^{-1} A = A is invertible, which it is.
    BitMatrix A = random_invertible(6, rng);
    CHECK(lyhw19::detail::gates_ok(A, A));
    // Whereas a singular B is rejected.
    CHECK_FALSE(lyhw19::detail::gates_ok(A, BitMatrix(6, 6)));
}

TEST_CASE("find_decodable: t=1 perfect code needs exactly one attempt") {
    SeededRng rng(std::uint64_t{402});
    auto [pk, sk] = lyhw19::keygen(5, 1, rng);
    for (int i = 0; i < 40; ++i) {
        std::vector<std::uint8_t> digest(8);
        rng.fill(digest);
        auto hit = lyhw19::find_decodable(sk.code, sk.P, 1, digest);
        CHECK(hit.attempts == 1);
        CHECK(hit.nonce == 0);
    }
}

TEST_CASE("find_decodable postcondition: u G P + eP equals the hash word") {
    SeededRng rng(std::uint64_t{403});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    const std::size_t n = sk.code.params().n;
    BitMatrix GP = sk.code.generator().permute_cols(sk.P);
    for (int i = 0; i < 40; ++i) {
        std::vector<std::uint8_t> digest(8);
        rng.fill(digest);
        for (unsigned j : {1u, 2u}) {
            auto hit = lyhw19::find_decodable(sk.code, sk.P, j, digest);
            std::vector<std::uint8_t> buf = digest;
            auto nonce = lyhw19::detail::encode_nonce(hit.nonce);
            buf.insert(buf.end(), nonce.begin(), nonce.end());
            BitVector w = lyhw19::hash_to_word(j, buf, n);
            CHECK(((hit.u * GP) ^ hit.e_permuted) == w);
            CHECK(hit.e_permuted.weight() <= sk.code.params().t);
        }
    }
}

TEST_CASE("find_decodable: mean attempts near 2 per digest at t=2") {
    SeededRng rng(std::uint64_t{404});
    auto [pk, sk] = lyhw19::keygen(6, 2, rng);
    std::uint64_t attempts = 0;
    const int digests = 400;
    for (int i = 0; i < digests; ++i) {
        std::vector<std::uint8_t> digest(8);
        rng.fill(digest);
        attempts += lyhw19::find_decodable(sk.code, sk.P, 1, digest).attempts;
    }
    double mean = static_cast<double>(attempts) / digests;
    CHECK(mean > 1.5);  // geometric with p = 0.508: mean 1.97
    CHECK(mean < 2.6);
}

TEST_CASE("sign solves the two-equation system") {
    SeededRng rng(std::uint64_t{405});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    const std::size_t n = sk.code.params().n;
    for (int i = 0; i < 25; ++i) {
        std::vector<std::uint8_t> msg(20);
        rng.fill(msg);
        lyhw19::Signature sig = lyhw19::sign(msg, sk);

        // Reconstruct the hash words and check the solved system directly:
        // (m1 A + m2 B) G P + e1 = w1, ((m1+m2) A + m1 B) G P + e2 = w2.
        BitVector d = lyhw19::hash_to_word(1, msg, n);
        auto d_bytes = lyhw19::digest_bytes(d);
        auto with_nonce = [&](std::uint64_t nonce) {
            auto buf = d_bytes;
            auto enc = lyhw19::detail::encode_nonce(nonce);
            buf.insert(buf.end(), enc.begin(), enc.end());
            return buf;
        };
        BitVector w1 = lyhw19::hash_to_word(1, with_nonce(sig.i1), n);
        BitVector w2 = lyhw19::hash_to_word(2, with_nonce(sig.i2), n);

        BitMatrix GP = sk.code.generator().permute_cols(sk.P);
        BitVector u1 = (sig.m1 * sk.A) ^ (sig.m2 * sk.B);
        BitVector u2 = ((sig.m1 ^ sig.m2) * sk.A) ^ (sig.m1 * sk.B);
        CHECK(((u1 * GP) ^ sig.e1) == w1);
        CHECK(((u2 * GP) ^ sig.e2) == w2);
    }
}

TEST_CASE("completeness: sign -> verify accepts across parameter sets") {
    int trials_total = 0;
    for (unsigned m : {4u, 5u, 6u}) {
        for (unsigned t : {1u, 2u}) {
            SeededRng rng(std::uint64_t{406} + 10 * m + t);
            auto [pk, sk] = lyhw19::keygen(m, t, rng);
            const int trials = (m == 6) ? 20 : 40;
            for (int i = 0; i < trials; ++i) {
                std::vector<std::uint8_t> msg(24);
                rng.fill(msg);
                CHECK(lyhw19::verify(msg, lyhw19::sign(msg, sk), pk));
                ++trials_total;
            }
        }
    }
    CHECK(trials_total >= 200);
}

TEST_CASE("verification rejects a flipped message bit") {
    SeededRng rng(std::uint64_t{407});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::uint8_t> msg(16);
        rng.fill(msg);
        lyhw19::Signature sig = lyhw19::sign(msg, sk);
        msg[i % msg.size()] ^= 1u << (i % 8);
        CHECK_FALSE(lyhw19::verify(msg, sig, pk));
    }
}

TEST_CASE("the weight gate is load-bearing") {
    SeededRng rng(std::uint64_t{408});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    const std::size_t n = pk.Gp.cols();
    auto msg = bytes("forged without decoding");
    lyhw19::Signature sig = lyhw19::sign(msg, sk);

    // Solve both equations with unconstrained error vectors: the errors
    // absorb whatever the hashes demand, so only the weight gate can say no.
    BitVector d = lyhw19::hash_to_word(1, msg, n);
    auto d_bytes = lyhw19::digest_bytes(d);
    auto with_nonce = [&](std::uint64_t nonce) {
        auto buf = d_bytes;
        auto enc = lyhw19::detail::encode_nonce(nonce);
        buf.insert(buf.end(), enc.begin(), enc.end());
        return buf;
    };
    BitVector w1 = lyhw19::hash_to_word(1, with_nonce(sig.i1), n);
    BitVector w2 = lyhw19::hash_to_word(2, with_nonce(sig.i2), n);
    lyhw19::Signature forged = sig;
    forged.m1.flip(0);  // desync the shares, then patch both checks
    forged.e1 = w1 ^ (forged.m1 * pk.Gp) ^ (forged.m2 * pk.Gpp);
    forged.e2 = w2 ^ ((forged.m1 ^ forged.m2) * pk.Gp) ^ (forged.m1 * pk.Gpp);
    // Each patched error differs from a weight <= t vector by a nonzero
    // codeword of weight >= 2t+1, so it must exceed t.
    REQUIRE(forged.e1.weight() > pk.t);
    REQUIRE(forged.e2.weight() > pk.t);
    CHECK_FALSE(lyhw19::verify(msg, forged, pk));
}

TEST_CASE("malformed signatures are rejected, not crashed on") {
    SeededRng rng(std::uint64_t{409});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    auto msg = bytes("msg");
    lyhw19::Signature sig = lyhw19::sign(msg, sk);

    lyhw19::Signature bad = sig;
    bad.m1 = BitVector(3);  // wrong length
    CHECK_FALSE(lyhw19::verify(msg, bad, pk));
    bad = sig;
    bad.e2 = BitVector(5);
    CHECK_FALSE(lyhw19::verify(msg, bad, pk));
}

TEST_CASE("swapping signature parts breaks verification") {
    SeededRng rng(std::uint64_t{410});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    // A swap that leaves the tuple unchanged (i1 == i2, or e1 == e2) is not
    // a mauling; every effective swap must be rejected.
    int nonce_swaps = 0, rejected_nonce_swap = 0;
    int error_swaps = 0, rejected_error_swap = 0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
        std::vector<std::uint8_t> msg(12);
        rng.fill(msg);
        lyhw19::Signature sig = lyhw19::sign(msg, sk);

        if (sig.i1 != sig.i2) {
            ++nonce_swaps;
            lyhw19::Signature swapped = sig;
            std::swap(swapped.i1, swapped.i2);
            if (!lyhw19::verify(msg, swapped, pk)) ++rejected_nonce_swap;
        }
        if (!(sig.e1 == sig.e2)) {
            ++error_swaps;
            lyhw19::Signature swapped = sig;
            std::swap(swapped.e1, swapped.e2);
            if (!lyhw19::verify(msg, swapped, pk)) ++rejected_error_swap;
        }
    }
    CHECK(nonce_swaps > 20);
    CHECK(error_swaps > 80);
    CHECK(rejected_nonce_swap == nonce_swaps);
    CHECK(rejected_error_swap == error_swaps);
}

TEST_CASE("attempt statistics track 2 t! within 20% at m=6") {
    struct Expect {
        unsigned t;
        int signatures;
    };
    for (auto [t, signatures] : {Expect{1, 200}, Expect{2, 300}, Expect{3, 150}}) {
        SeededRng rng(std::uint64_t{411} + t);
        auto [pk, sk] = lyhw19::keygen(6, t, rng);
        std::uint64_t attempts = 0;
        for (int i = 0; i < signatures; ++i) {
            std::vector<std::uint8_t> msg(16);
            rng.fill(msg);
            lyhw19::SignStats stats;
            lyhw19::sign(msg, sk, &stats);
            attempts += stats.total();
        }
        double mean = static_cast<double>(attempts) / signatures;
        double ref = 2;
        for (unsigned i = 2; i <= t; ++i) ref *= i;
        if (t == 1) {
            CHECK(mean == 2.0);  // perfect code: both searches hit at once
        } else {
            CHECK(mean > 0.8 * ref);
            CHECK(mean < 1.2 * ref);
        }
    }
}
