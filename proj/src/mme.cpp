#include "mcx/mme.hpp"

namespace mcx::mme {

namespace detail {

bool gates_ok(const BitMatrix& A, const BitMatrix& B) {
    const std::size_t k = A.rows();
    BitMatrix AB = A + B;
    if (AB.rank() < k) return false;
    BitMatrix gamma_inv = A + B * AB.inverse() * B;
    return gamma_inv.rank() == k;
}

Ciphertext encrypt_with(const BitVector& msg, const PublicKey& pk, const BitVector& m1,
                        const BitVector& e1, const BitVector& e2) {
    BitVector m2 = msg ^ m1;
    BitVector c1 = (m1 * pk.Gp) ^ (m2 * pk.Gpp) ^ e1;
    BitVector c2 = (msg * pk.Gp) ^ (m1 * pk.Gpp) ^ e2;
    return {std::move(c1), std::move(c2)};
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
        BitMatrix AB_inv = (A + B).inverse();
        BitMatrix rho = AB_inv * B;
        BitMatrix gamma = (A + B * AB_inv * B).inverse();
        return {PublicKey{std::move(Gp), std::move(Gpp), t},
                SecretKey{std::move(P), std::move(rho), std::move(gamma), std::move(code),
                          std::move(A), std::move(B)}};
    }
    throw KeygenExhausted();
}

Ciphertext encrypt(const BitVector& msg, const PublicKey& pk, SeededRng& rng) {
    if (msg.size() != pk.Gp.rows()) throw DimensionMismatch("encrypt: message must be k bits");
    const std::size_t n = pk.Gp.cols();
    BitVector m1 = BitVector::random(msg.size(), rng);
    BitVector e1 = BitVector::random_weight(n, pk.t, rng);
    BitVector e2 = BitVector::random_weight(n, pk.t, rng);
    return detail::encrypt_with(msg, pk, m1, e1, e2);
}

BitVector decrypt(const Ciphertext& ct, const SecretKey& sk, bool strict) {
    Perm Pinv = sk.P.inverse();
    auto d1 = sk.code.decode(Pinv.apply(ct.c1));
    if (!d1) throw DecryptFail("first ciphertext component failed to decode");
    auto d2 = sk.code.decode(Pinv.apply(ct.c2));
    if (!d2) throw DecryptFail("second ciphertext component failed to decode");
    BitVector x1 = sk.code.message_of_codeword(d1->codeword);
    BitVector x2 = sk.code.message_of_codeword(d2->codeword);
    BitVector msg = (x2 ^ (x1 * sk.rho)) * sk.gamma;
    if (strict) {
        // x1 = m1 A + m2 B and x2 = m A + m1 B must agree on one m1.
        BitVector m1 = (x2 ^ (msg * sk.A)) * sk.B.inverse();
        BitVector m2 = msg ^ m1;
        if (!(((m1 * sk.A) ^ (m2 * sk.B)) == x1))
            throw DecryptFail("ciphertext components disagree on the message split");
    }
    return msg;
}

}  // namespace mcx::mme
