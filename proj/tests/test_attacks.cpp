#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcx/attacks.hpp"

using namespace mcx;

TEST_CASE("compute_sigma") {
    SeededRng rng(std::uint64_t{600});
    auto [pk, sk] = mme::keygen(4, 2, rng);

    // Gpp = Gp forces Sigma = I (uniqueness under full row rank).
    CHECK(attacks::compute_sigma(pk.Gp, pk.Gp) == BitMatrix::identity(pk.Gp.rows()));

    // Honest keypair: Sigma A = B exactly, and Sigma is invertible.
    BitMatrix sigma = attacks::compute_sigma(pk.Gp, pk.Gpp);
    CHECK(sigma * sk.A == sk.B);
    CHECK(sigma.rank() == sigma.rows());

    // A generator of an unrelated code leaves the row space.
    auto [pk2, sk2] = mme::keygen(4, 2, rng);
    CHECK_THROWS_AS(attacks::compute_sigma(pk.Gp, pk2.Gpp), NotSameCode);
}

TEST_CASE("sigma identity over many honest keypairs") {
    SeededRng rng(std::uint64_t{601});
    for (int i = 0; i < 20; ++i) {
        auto [pk, sk] = mme::keygen(4, 2, rng);
        CHECK(attacks::compute_sigma(pk.Gp, pk.Gpp) * sk.A == sk.B);
    }
}

TEST_CASE("mme_forger with a planted oracle") {
    SeededRng rng(std::uint64_t{602});
    auto [pk, sk] = mme::keygen(5, 2, rng);
    attacks::MeOracle planted = [&sk](const me::PublicKey&) {
        return me::SecretKey{sk.A, sk.P, sk.code};
    };
    mme::SecretKey recovered = attacks::mme_forger(pk, planted, rng, 100);
    for (int i = 0; i < 50; ++i) {
        BitVector msg = BitVector::random(pk.Gp.rows(), rng);
        CHECK(mme::decrypt(mme::encrypt(msg, pk, rng), recovered) == msg);
    }
}

TEST_CASE("mme_forger with the enumeration oracle (different factorisation)") {
    SeededRng rng(std::uint64_t{603});
    auto [pk, sk] = mme::keygen(4, 2, rng);
    bool oracle_differs = false;
    attacks::MeOracle enum_oracle = [&](const me::PublicKey& me_pk) {
        auto found = attacks::me_keyrecovery_enum(me_pk, 4);
        REQUIRE(found.has_value());
        if (!(found->S == sk.A) || !(found->P == sk.P)) oracle_differs = true;
        return std::move(*found);
    };
    mme::SecretKey recovered = attacks::mme_forger(pk, enum_oracle, rng, 100);
    for (int i = 0; i < 50; ++i) {
        BitVector msg = BitVector::random(pk.Gp.rows(), rng);
        CHECK(mme::decrypt(mme::encrypt(msg, pk, rng), recovered) == msg);
    }
    // Functional equivalence is the acceptance bar; the factorisation the
    // enumeration finds is generally a different one.
    INFO("oracle returned the original factorisation: " << !oracle_differs);
}

TEST_CASE("me_keyrecovery_enum recovers a working key at m=4 t=2") {
    SeededRng rng(std::uint64_t{604});
    auto [pk, sk] = me::keygen(4, 2, rng);
    attacks::EnumReport report;
    auto recovered = attacks::me_keyrecovery_enum(pk, 4, {}, &report);
    REQUIRE(recovered.has_value());
    CHECK(report.candidates <= 120);

    // Key equation of the recovered factorisation.
    CHECK(recovered->S * recovered->code.generator().permute_cols(recovered->P) == pk.G_pub);
    for (int i = 0; i < 100; ++i) {
        BitVector msg = BitVector::random(pk.G_pub.rows(), rng);
        CHECK(me::decrypt(me::encrypt(msg, pk, rng), *recovered) == msg);
    }
}

TEST_CASE("me_keyrecovery_enum rejects keys of the wrong shape") {
    SeededRng rng(std::uint64_t{605});
    auto [pk, sk] = me::keygen(4, 2, rng);
    CHECK_THROWS_AS(attacks::me_keyrecovery_enum(pk, 5), std::invalid_argument);
}

TEST_CASE("enumeration is deterministic in serial mode and parallel finds a key too") {
    SeededRng rng(std::uint64_t{606});
    auto [pk, sk] = me::keygen(4, 2, rng);

    attacks::EnumReport r1, r2;
    auto a = attacks::me_keyrecovery_enum(pk, 4, {}, &r1);
    auto b = attacks::me_keyrecovery_enum(pk, 4, {}, &r2);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(r1.winner_index == r2.winner_index);
    CHECK(a->P == b->P);
    CHECK(a->S == b->S);

    attacks::EnumOptions par;
    par.threads = 4;
    auto c = attacks::me_keyrecovery_enum(pk, 4, par);
    REQUIRE(c.has_value());
    CHECK(c->S * c->code.generator().permute_cols(c->P) == pk.G_pub);
}

TEST_CASE("lyhw19_forger end to end at m=4 t=2") {
    SeededRng rng(std::uint64_t{607});
    auto [pk, sk] = lyhw19::keygen(4, 2, rng);
    attacks::EnumReport report;
    auto recovered = attacks::lyhw19_forger(pk, 4, rng, {}, &report);
    REQUIRE(recovered.has_value());

    // Forged signatures on fresh messages pass the unmodified verifier.
    for (int i = 0; i < 20; ++i) {
        std::vector<std::uint8_t> msg(40);
        rng.fill(msg);
        CHECK(lyhw19::verify(msg, lyhw19::sign(msg, recovered->sk), pk));
    }
}

TEST_CASE("lyhw19_forger at m=5 t=1: degenerate signatures, backtracking path") {
    SeededRng rng(std::uint64_t{608});
    auto [pk, sk] = lyhw19::keygen(5, 1, rng);
    auto recovered = attacks::lyhw19_forger(pk, 5, rng);
    REQUIRE(recovered.has_value());
    for (int i = 0; i < 10; ++i) {
        std::vector<std::uint8_t> msg(16);
        rng.fill(msg);
        CHECK(lyhw19::verify(msg, lyhw19::sign(msg, recovered->sk), pk));
    }
}

TEST_CASE("cost estimates") {
    auto est = attacks::cost_estimate(16, 2);
    CHECK(est.paper_candidates == 2147483648.0L);  // 2^31
    REQUIRE(est.exact_candidates.has_value());
    CHECK(*est.exact_candidates == (std::uint64_t{1} << 32) / 2 - (std::uint64_t{1} << 16) / 2);
    CHECK(est.n == 65536);
    CHECK(est.reduced_degenerate);  // 2^{-16}/32 < 1 for t=2

    auto lin = attacks::cost_estimate(4, 1);
    REQUIRE(lin.exact_candidates.has_value());
    CHECK(*lin.exact_candidates == 16);
    CHECK(lin.n == 15);

    auto big = attacks::cost_estimate(16, 4);
    CHECK_FALSE(big.reduced_degenerate);  // 2^16 / 64 = 1024 candidates
    CHECK(big.reduced_candidates == 1024.0L);
}
