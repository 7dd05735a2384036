#include "mcx/lyhw19.hpp"

#include <array>

#include "mcx/shake.hpp"

namespace mcx::lyhw19 {

BitVector hash_to_word(unsigned j, std::span<const std::uint8_t> data, std::size_t n) {
    if (j != 1 && j != 2) throw std::invalid_argument("hash_to_word: domain index must be 1 or 2");
    const std::uint8_t domain = static_cast<std::uint8_t>(j);
    auto bytes = shake256({std::span<const std::uint8_t>(&domain, 1), data}, (n + 7) / 8);
    // Mask padding bits so the word equals its serialized form.
    if (n % 8 != 0) bytes.back() &= static_cast<std::uint8_t>((1u << (n % 8)) - 1);
    return BitVector::from_bytes(bytes, n);
}

std::vector<std::uint8_t> digest_bytes(const BitVector& d) { return d.to_bytes(); }

namespace detail {

std::array<std::uint8_t, 8> encode_nonce(std::uint64_t i) {
    std::array<std::uint8_t, 8> out{};
    for (int b = 0; b < 8; ++b) out[b] = static_cast<std::uint8_t>(i >> (8 * (7 - b)));
    return out;
}

bool gates_ok(const BitMatrix& A, const BitMatrix& B) {
    const std::size_t k = A.rows();
    if (B.rank() < k) return false;
    BitMatrix gate = A + B + A * B.inverse() * A;
    return gate.rank() == k;
}

}  // namespace detail

std::pair<PublicKey, SecretKey> keygen(unsigned m, unsigned t, SeededRng& rng) {
    Field field(m);
    Poly g = random_irreducible(field, t, rng);
    goppa::GoppaCode code = goppa::GoppaCode::standard(m, g);
    const std::size_t k = code.params().k;
    const std::size_t n = code.params().n;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        BitMatrix A = random_invertible(k, rng);
        BitMatrix B = random_invertible(k, rng);
        if (!detail::gates_ok(A, B)) continue;
        Perm P = Perm::random(n, rng);
        BitMatrix GP = code.generator().permute_cols(P);
        BitMatrix Gp = A * GP;
        BitMatrix Gpp = B * GP;
        BitMatrix B_inv = B.inverse();
        BitMatrix gate_inv = (A + B + A * B_inv * A).inverse();
        return {PublicKey{std::move(Gp), std::move(Gpp), t, kHashSpec},
                SecretKey{std::move(A), std::move(B), std::move(P), std::move(code),
                          std::move(B_inv), std::move(gate_inv)}};
    }
    throw KeygenExhausted();
}

DecodableHit find_decodable(const goppa::GoppaCode& code, const Perm& P, unsigned j,
                            std::span<const std::uint8_t> digest) {
    const std::size_t n = code.params().n;
    const Perm Pinv = P.inverse();
    constexpr std::uint64_t kNonceCap = std::uint64_t{1} << 40;

    std::vector<std::uint8_t> buf(digest.begin(), digest.end());
    buf.resize(digest.size() + 8);
    for (std::uint64_t i = 0; i < kNonceCap; ++i) {
        auto nonce = detail::encode_nonce(i);
        std::copy(nonce.begin(), nonce.end(), buf.begin() + digest.size());
        BitVector w = hash_to_word(j, buf, n);
        BitVector y = Pinv.apply(w);
        if (auto decoded = code.decode(y)) {
            BitVector u = code.message_of_codeword(decoded->codeword);
            BitVector e_permuted = P.apply(y ^ decoded->codeword);
            return DecodableHit{i, std::move(u), std::move(e_permuted), i + 1};
        }
    }
    throw NonceExhausted();
}

Signature sign(std::span<const std::uint8_t> message, const SecretKey& sk, SignStats* stats) {
    const std::size_t n = sk.code.params().n;
    BitVector d = hash_to_word(1, message, n);
    auto d_bytes = digest_bytes(d);

    DecodableHit hit1 = find_decodable(sk.code, sk.P, 1, d_bytes);
    DecodableHit hit2 = find_decodable(sk.code, sk.P, 2, d_bytes);
    if (stats) *stats = SignStats{hit1.attempts, hit2.attempts};

    // Solve m1 A + m2 B = x0 and (m1+m2) A + m1 B = x1 for the message
    // shares, with x0, x1 the decoded k-bit messages of the two hash words.
    const BitVector& x0 = hit1.u;
    const BitVector& x1 = hit2.u;
    BitVector x0Binv = x0 * sk.B_inv;
    BitVector m1 = (x1 ^ (x0Binv * sk.A)) * sk.gate_inv;
    BitVector m2 = x0Binv ^ (m1 * (sk.A * sk.B_inv));

    return Signature{hit1.nonce, hit2.nonce, std::move(m1), std::move(m2),
                     std::move(hit1.e_permuted), std::move(hit2.e_permuted)};
}

bool verify(std::span<const std::uint8_t> message, const Signature& sig, const PublicKey& pk) {
    const std::size_t k = pk.Gp.rows();
    const std::size_t n = pk.Gp.cols();
    if (sig.m1.size() != k || sig.m2.size() != k) return false;
    if (sig.e1.size() != n || sig.e2.size() != n) return false;
    if (sig.e1.weight() > pk.t || sig.e2.weight() > pk.t) return false;

    BitVector d = hash_to_word(1, message, n);
    auto d_bytes = digest_bytes(d);
    auto buf = [&](std::uint64_t nonce) {
        std::vector<std::uint8_t> b(d_bytes.begin(), d_bytes.end());
        auto enc = detail::encode_nonce(nonce);
        b.insert(b.end(), enc.begin(), enc.end());
        return b;
    };

    BitVector w1 = hash_to_word(1, buf(sig.i1), n);
    if (!(((sig.m1 * pk.Gp) ^ (sig.m2 * pk.Gpp) ^ sig.e1) == w1)) return false;

    // "m" in the second check is the reassembled message m1 + m2.
    BitVector m = sig.m1 ^ sig.m2;
    BitVector w2 = hash_to_word(2, buf(sig.i2), n);
    return ((m * pk.Gp) ^ (sig.m1 * pk.Gpp) ^ sig.e2) == w2;
}

}  // namespace mcx::lyhw19
