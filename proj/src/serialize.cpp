#include "mcx/serialize.hpp"

#include <fstream>
#include <sstream>

namespace mcx::io {

namespace {

unsigned checked_t(const json& j) {
    unsigned t = j.at("t").get<unsigned>();
    if (t < 1 || t > 10) throw ParseError("key file: t out of range");
    return t;
}

unsigned checked_m(const json& j) {
    unsigned m = j.at("m").get<unsigned>();
    if (m < 2 || m > 16) throw ParseError("key file: m out of range");
    return m;
}

void check_header(const json& j, const char* scheme) {
    if (j.at("version").get<std::string>() != kVersion)
        throw ParseError("unsupported file version");
    if (j.at("scheme").get<std::string>() != scheme)
        throw ParseError(std::string("expected scheme ") + scheme);
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw ParseError("hex string has odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError("invalid hex digit");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

json to_json(const BitVector& v) {
    return json{{"bits", v.size()}, {"hex", to_hex(v.to_bytes())}};
}

BitVector bitvector_from_json(const json& j) {
    return BitVector::from_bytes(from_hex(j.at("hex").get<std::string>()),
                                 j.at("bits").get<std::size_t>());
}

json to_json(const BitMatrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"hex", to_hex(m.to_bytes())}};
}

BitMatrix bitmatrix_from_json(const json& j) {
    return BitMatrix::from_bytes(from_hex(j.at("hex").get<std::string>()),
                                 j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
}

json to_json(const Perm& p) { return json(p.mapping()); }

Perm perm_from_json(const json& j) {
    return Perm::from_mapping(j.get<std::vector<std::uint32_t>>());
}

json to_json(const goppa::GoppaCode& code) {
    std::vector<unsigned> g_coeffs(code.goppa_poly().coeffs().begin(),
                                   code.goppa_poly().coeffs().end());
    std::vector<unsigned> support(code.support().begin(), code.support().end());
    return json{{"m", code.params().m},
                {"t", code.params().t},
                {"g", g_coeffs},
                {"L", support}};
}

goppa::GoppaCode goppa_from_json(const json& j) {
    unsigned m = checked_m(j);
    Field field(m);
    auto g_coeffs = j.at("g").get<std::vector<unsigned>>();
    std::vector<FieldElem> coeffs(g_coeffs.begin(), g_coeffs.end());
    auto support_u = j.at("L").get<std::vector<unsigned>>();
    std::vector<FieldElem> support(support_u.begin(), support_u.end());
    return goppa::GoppaCode::build(field, Poly(std::move(coeffs)), std::move(support));
}

json public_key_json(const me::PublicKey& pk, unsigned m) {
    return json{{"version", kVersion}, {"scheme", "ME"},       {"m", m},
                {"t", pk.t},           {"G_pub", to_json(pk.G_pub)}};
}

json secret_key_json(const me::SecretKey& sk) {
    return json{{"version", kVersion},
                {"scheme", "ME"},
                {"m", sk.code.params().m},
                {"t", sk.code.params().t},
                {"S", to_json(sk.S)},
                {"P", to_json(sk.P)},
                {"code", to_json(sk.code)}};
}

json public_key_json(const mme::PublicKey& pk, unsigned m) {
    return json{{"version", kVersion}, {"scheme", "MME"},     {"m", m},
                {"t", pk.t},           {"Gp", to_json(pk.Gp)}, {"Gpp", to_json(pk.Gpp)}};
}

json secret_key_json(const mme::SecretKey& sk) {
    return json{{"version", kVersion},
                {"scheme", "MME"},
                {"m", sk.code.params().m},
                {"t", sk.code.params().t},
                {"P", to_json(sk.P)},
                {"rho", to_json(sk.rho)},
                {"gamma", to_json(sk.gamma)},
                {"code", to_json(sk.code)},
                {"A", to_json(sk.A)},
                {"B", to_json(sk.B)}};
}

json public_key_json(const lyhw19::PublicKey& pk, unsigned m) {
    return json{{"version", kVersion}, {"scheme", "LYHW19"},   {"m", m},
                {"t", pk.t},           {"Gp", to_json(pk.Gp)}, {"Gpp", to_json(pk.Gpp)},
                {"hash_spec", pk.hash_spec}};
}

json secret_key_json(const lyhw19::SecretKey& sk) {
    return json{{"version", kVersion},
                {"scheme", "LYHW19"},
                {"m", sk.code.params().m},
                {"t", sk.code.params().t},
                {"A", to_json(sk.A)},
                {"B", to_json(sk.B)},
                {"P", to_json(sk.P)},
                {"code", to_json(sk.code)},
                {"hash_spec", lyhw19::kHashSpec}};
}

LoadedPublicKey public_key_from_json(const json& j) {
    LoadedPublicKey out;
    out.scheme = j.at("scheme").get<std::string>();
    out.m = checked_m(j);
    unsigned t = checked_t(j);
    if (j.at("version").get<std::string>() != kVersion)
        throw ParseError("unsupported file version");
    if (out.scheme == "ME") {
        out.me = me::PublicKey{bitmatrix_from_json(j.at("G_pub")), t};
    } else if (out.scheme == "MME") {
        out.mme = mme::PublicKey{bitmatrix_from_json(j.at("Gp")),
                                 bitmatrix_from_json(j.at("Gpp")), t};
    } else if (out.scheme == "LYHW19") {
        auto spec = j.at("hash_spec").get<std::string>();
        if (spec != lyhw19::kHashSpec) throw ParseError("unknown hash_spec");
        out.lyhw19 = lyhw19::PublicKey{bitmatrix_from_json(j.at("Gp")),
                                       bitmatrix_from_json(j.at("Gpp")), t, spec};
    } else {
        throw ParseError("unknown scheme: " + out.scheme);
    }
    return out;
}

LoadedSecretKey secret_key_from_json(const json& j) {
    LoadedSecretKey out;
    out.scheme = j.at("scheme").get<std::string>();
    out.m = checked_m(j);
    if (j.at("version").get<std::string>() != kVersion)
        throw ParseError("unsupported file version");
    if (out.scheme == "ME") {
        out.me = me::SecretKey{bitmatrix_from_json(j.at("S")), perm_from_json(j.at("P")),
                               goppa_from_json(j.at("code"))};
    } else if (out.scheme == "MME") {
        out.mme = mme::SecretKey{perm_from_json(j.at("P")),
                                 bitmatrix_from_json(j.at("rho")),
                                 bitmatrix_from_json(j.at("gamma")),
                                 goppa_from_json(j.at("code")),
                                 bitmatrix_from_json(j.at("A")),
                                 bitmatrix_from_json(j.at("B"))};
    } else if (out.scheme == "LYHW19") {
        BitMatrix A = bitmatrix_from_json(j.at("A"));
        BitMatrix B = bitmatrix_from_json(j.at("B"));
        // The signing caches are derived, not stored.
        BitMatrix B_inv = B.inverse();
        BitMatrix gate_inv = (A + B + A * B_inv * A).inverse();
        out.lyhw19 = lyhw19::SecretKey{std::move(A),
                                       std::move(B),
                                       perm_from_json(j.at("P")),
                                       goppa_from_json(j.at("code")),
                                       std::move(B_inv),
                                       std::move(gate_inv)};
    } else {
        throw ParseError("unknown scheme: " + out.scheme);
    }
    return out;
}

json signature_json(const lyhw19::Signature& sig) {
    return json{{"version", kVersion}, {"scheme", "LYHW19"},
                {"i1", sig.i1},        {"i2", sig.i2},
                {"m1", to_json(sig.m1)}, {"m2", to_json(sig.m2)},
                {"e1", to_json(sig.e1)}, {"e2", to_json(sig.e2)}};
}

lyhw19::Signature signature_from_json(const json& j) {
    check_header(j, "LYHW19");
    return lyhw19::Signature{j.at("i1").get<std::uint64_t>(),
                             j.at("i2").get<std::uint64_t>(),
                             bitvector_from_json(j.at("m1")),
                             bitvector_from_json(j.at("m2")),
                             bitvector_from_json(j.at("e1")),
                             bitvector_from_json(j.at("e2"))};
}

json ciphertext_json(const BitVector& c) {
    return json{{"version", kVersion}, {"scheme", "ME"}, {"c", to_json(c)}};
}

json ciphertext_json(const mme::Ciphertext& ct) {
    return json{{"version", kVersion}, {"scheme", "MME"}, {"c1", to_json(ct.c1)},
                {"c2", to_json(ct.c2)}};
}

BitVector me_ciphertext_from_json(const json& j) {
    check_header(j, "ME");
    return bitvector_from_json(j.at("c"));
}

mme::Ciphertext mme_ciphertext_from_json(const json& j) {
    check_header(j, "MME");
    return {bitvector_from_json(j.at("c1")), bitvector_from_json(j.at("c2"))};
}

std::string dump(const json& j) { return j.dump(); }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace mcx::io
