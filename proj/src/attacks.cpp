#include "mcx/attacks.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

namespace mcx::attacks {

BitMatrix compute_sigma(const BitMatrix& Gp, const BitMatrix& Gpp) {
    if (Gp.rows() != Gpp.rows() || Gp.cols() != Gpp.cols())
        throw DimensionMismatch("compute_sigma: generator shapes differ");
    if (Gp.rank() != Gp.rows())
        throw std::invalid_argument("compute_sigma: G' lacks full row rank");
    auto sigma = solve_left(Gpp, Gp);
    if (!sigma) throw NotSameCode();
    return std::move(*sigma);
}

mme::SecretKey mme_forger(const mme::PublicKey& pk, const MeOracle& oracle, SeededRng& rng,
                          int verify_rounds) {
    BitMatrix sigma = compute_sigma(pk.Gp, pk.Gpp);

    // G' alone is a valid ME public key; any factorisation the oracle
    // returns lifts to an MME key because the derived gates only depend
    // on Sigma.
    me::PublicKey me_pk{pk.Gp, pk.t};
    me::SecretKey me_sk = oracle(me_pk);

    const std::size_t k = pk.Gp.rows();
    BitMatrix A = me_sk.S;
    BitMatrix B = sigma * A;
    BitMatrix AB = A + B;
    if (AB.rank() < k) throw SingularDerived("mme_forger: A + B is singular");
    BitMatrix AB_inv = AB.inverse();
    BitMatrix rho = AB_inv * B;
    BitMatrix gamma_inv = A + B * AB_inv * B;
    if (gamma_inv.rank() < k) throw SingularDerived("mme_forger: gamma^{-1} is singular");
    mme::SecretKey sk{std::move(me_sk.P), std::move(rho), gamma_inv.inverse(),
                      std::move(me_sk.code), std::move(A), std::move(B)};

    for (int i = 0; i < verify_rounds; ++i) {
        BitVector msg = BitVector::random(k, rng);
        if (!(mme::decrypt(mme::encrypt(msg, pk, rng), sk) == msg))
            throw OracleFailure("mme_forger: recovered key failed a decryption check");
    }
    return sk;
}

namespace {

// One enumeration step: build the candidate code and test equivalence.
// Returns the secret key when the candidate matches and the accept hook
// (if any) takes it.
std::optional<me::SecretKey> try_candidate(const Poly& g, unsigned m,
                                           const me::PublicKey& pk,
                                           const equiv::CodeHandle& pub_handle,
                                           const EnumOptions& opts, EnumReport& report,
                                           std::mutex* report_mutex) {
    goppa::GoppaCode code = goppa::GoppaCode::standard(m, g);
    auto bump = [&](std::uint64_t EnumReport::* field) {
        if (report_mutex) {
            std::lock_guard lock(*report_mutex);
            ++(report.*field);
        } else {
            ++(report.*field);
        }
    };
    if (code.params().k != pk.G_pub.rows() || code.params().n != pk.G_pub.cols()) {
        bump(&EnumReport::dim_skipped);
        return std::nullopt;
    }
    equiv::CodeHandle cand_handle(code.generator());
    auto res = equiv::ssa_permutation(cand_handle, pub_handle, opts.ssa_node_budget);
    if (res.status == equiv::SsaResult::Status::Degenerate) {
        bump(&EnumReport::ssa_degenerate);
        return std::nullopt;
    }
    if (res.status == equiv::SsaResult::Status::Inequivalent) {
        bump(&EnumReport::ssa_inequivalent);
        return std::nullopt;
    }
    // pi maps the candidate code onto the public code, so S solves
    // S (G P) = G_pub.
    const Perm& P = *res.perm;
    auto S = solve_left(pk.G_pub, code.generator().permute_cols(P));
    if (!S) return std::nullopt;  // unreachable: row spaces verified equal
    me::SecretKey sk{std::move(*S), P, std::move(code)};
    if (opts.accept && !opts.accept(sk)) return std::nullopt;
    return sk;
}

}  // namespace

std::optional<me::SecretKey> me_keyrecovery_enum(const me::PublicKey& pk, unsigned m,
                                                 const EnumOptions& opts, EnumReport* report) {
    const unsigned t = pk.t;
    Field field(m);
    const std::size_t expect_n = (t == 1) ? field.size() - 1 : field.size();
    if (pk.G_pub.cols() != expect_n)
        throw std::invalid_argument("me_keyrecovery_enum: public key length does not match (m, t)");
    if (static_cast<std::uint64_t>(m) * t > 62)
        throw TooLarge("me_keyrecovery_enum: candidate space exceeds 2^62");

    EnumReport local{};
    EnumReport& rep = report ? *report : local;
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](std::optional<me::SecretKey> result) {
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };

    equiv::CodeHandle pub_handle(pk.G_pub);
    const std::uint64_t space = std::uint64_t{1} << (m * t);

    if (opts.threads <= 1) {
        for (std::uint64_t idx = 0; idx < space; ++idx) {
            Poly g = IrreducibleSeq::candidate(field, t, idx);
            if (!is_irreducible(field, g)) continue;
            ++rep.candidates;
            if (auto sk = try_candidate(g, m, pk, pub_handle, opts, rep, nullptr)) {
                rep.winner_index = idx;
                return finish(std::move(sk));
            }
        }
        return finish(std::nullopt);
    }

    // Parallel scan: workers claim candidate indices in chunks; the first
    // success flips the stop flag and publishes its result once.
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex result_mutex;
    std::optional<me::SecretKey> result;
    constexpr std::uint64_t kChunk = 16;

    auto worker = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            std::uint64_t base = next.fetch_add(kChunk, std::memory_order_relaxed);
            if (base >= space) return;
            std::uint64_t end = std::min(base + kChunk, space);
            for (std::uint64_t idx = base; idx < end; ++idx) {
                if (stop.load(std::memory_order_relaxed)) return;
                Poly g = IrreducibleSeq::candidate(field, t, idx);
                if (!is_irreducible(field, g)) continue;
                {
                    std::lock_guard lock(result_mutex);
                    ++rep.candidates;
                }
                if (auto sk = try_candidate(g, m, pk, pub_handle, opts, rep, &result_mutex)) {
                    std::lock_guard lock(result_mutex);
                    if (!result) {
                        result = std::move(sk);
                        rep.winner_index = idx;
                        stop.store(true, std::memory_order_relaxed);
                    }
                    return;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < opts.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return finish(std::move(result));
}

std::optional<RecoveredSigKey> lyhw19_forger(const lyhw19::PublicKey& pk, unsigned m,
                                             SeededRng& rng, const EnumOptions& opts,
                                             EnumReport* report, int forge_checks) {
    BitMatrix sigma = compute_sigma(pk.Gp, pk.Gpp);
    const std::size_t k = pk.Gp.rows();

    // The signing gates depend only on Sigma, not on the factorisation the
    // enumeration finds; the accept hook still rechecks them and skips to
    // the next equivalent code if a derived matrix were singular.
    EnumOptions enum_opts = opts;
    enum_opts.accept = [&](const me::SecretKey& cand) {
        if (opts.accept && !opts.accept(cand)) return false;
        BitMatrix B = sigma * cand.S;
        return lyhw19::detail::gates_ok(cand.S, B);
    };

    me::PublicKey me_pk{pk.Gp, pk.t};
    auto me_sk = me_keyrecovery_enum(me_pk, m, enum_opts, report);
    if (!me_sk) return std::nullopt;

    BitMatrix A = std::move(me_sk->S);
    BitMatrix B = sigma * A;
    if (B.rank() < k) throw SingularDerived("lyhw19_forger: derived B is singular");
    BitMatrix B_inv = B.inverse();
    BitMatrix gate = A + B + A * B_inv * A;
    if (gate.rank() < k) throw SingularDerived("lyhw19_forger: signing gate matrix is singular");

    RecoveredSigKey rec{lyhw19::SecretKey{std::move(A), std::move(B), std::move(me_sk->P),
                                          std::move(me_sk->code), std::move(B_inv),
                                          gate.inverse()},
                        std::move(sigma)};

    for (int i = 0; i < forge_checks; ++i) {
        std::vector<std::uint8_t> msg(32);
        rng.fill(msg);
        lyhw19::Signature forged = lyhw19::sign(msg, rec.sk);
        if (!lyhw19::verify(msg, forged, pk))
            throw OracleFailure("lyhw19_forger: forged signature failed verification");
    }
    return rec;
}

CostEstimate cost_estimate(unsigned m, unsigned t) {
    CostEstimate est;
    est.m = m;
    est.t = t;
    est.n = (t == 1) ? (std::size_t{1} << m) - 1 : (std::size_t{1} << m);
    if (static_cast<std::uint64_t>(m) * t <= 62) est.exact_candidates = irreducible_count(m, t);
    est.paper_candidates = std::exp2l(static_cast<long double>(m) * t) / t;
    // The reduced bound 2^(m(t-3)) / (m t) only means anything for t > 3.
    est.reduced_candidates =
        std::exp2l(static_cast<long double>(m) * (static_cast<long double>(t) - 3)) / (m * t);
    est.reduced_degenerate = est.reduced_candidates < 1.0L;
    est.ssa_ops_per_candidate = static_cast<long double>(est.n) * est.n * est.n;
    est.total_ops = est.paper_candidates * est.ssa_ops_per_candidate;
    return est;
}

}  // namespace mcx::attacks
