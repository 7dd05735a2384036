#include "mcx/mceliece.hpp"

namespace mcx::me {

std::pair<PublicKey, SecretKey> keygen(unsigned m, unsigned t, SeededRng& rng) {
    Field field(m);
    Poly g = random_irreducible(field, t, rng);
    goppa::GoppaCode code = goppa::GoppaCode::standard(m, g);
    const std::size_t k = code.params().k;
    const std::size_t n = code.params().n;

    BitMatrix S = random_invertible(k, rng);
    Perm P = Perm::random(n, rng);
    BitMatrix G_pub = (S * code.generator()).permute_cols(P);
    return {PublicKey{std::move(G_pub), t}, SecretKey{std::move(S), std::move(P), std::move(code)}};
}

BitVector encrypt(const BitVector& msg, const PublicKey& pk, SeededRng& rng) {
    if (msg.size() != pk.G_pub.rows()) throw DimensionMismatch("encrypt: message must be k bits");
    BitVector c = msg * pk.G_pub;
    c ^= BitVector::random_weight(pk.G_pub.cols(), pk.t, rng);
    return c;
}

BitVector decrypt(const BitVector& c, const SecretKey& sk) {
    BitVector y = sk.P.inverse().apply(c);
    auto decoded = sk.code.decode(y);
    if (!decoded) throw DecryptFail();
    BitVector x = sk.code.message_of_codeword(decoded->codeword);
    return x * sk.S.inverse();
}

}  // namespace mcx::me
