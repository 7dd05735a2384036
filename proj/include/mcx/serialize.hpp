#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mcx/lyhw19.hpp"
#include "mcx/mceliece.hpp"
#include "mcx/mme.hpp"

namespace mcx::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "v1";

// Hex payload helpers (lowercase, LSB-of-first-byte = lowest index).
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

json to_json(const BitVector& v);  // {bits, hex}
BitVector bitvector_from_json(const json& j);
json to_json(const BitMatrix& m);  // {rows, cols, hex}
BitMatrix bitmatrix_from_json(const json& j);
json to_json(const Perm& p);  // mapping array
Perm perm_from_json(const json& j);

// Code serialized as {m, t, g (coefficient list, low degree first),
// L (support as integers)}; matrices are rebuilt on load.
json to_json(const goppa::GoppaCode& code);
goppa::GoppaCode goppa_from_json(const json& j);

json public_key_json(const me::PublicKey& pk, unsigned m);
json secret_key_json(const me::SecretKey& sk);
json public_key_json(const mme::PublicKey& pk, unsigned m);
json secret_key_json(const mme::SecretKey& sk);
json public_key_json(const lyhw19::PublicKey& pk, unsigned m);
json secret_key_json(const lyhw19::SecretKey& sk);

struct LoadedPublicKey {
    std::string scheme;  // "ME" | "MME" | "LYHW19"
    unsigned m = 0;
    std::optional<me::PublicKey> me;
    std::optional<mme::PublicKey> mme;
    std::optional<lyhw19::PublicKey> lyhw19;
};
struct LoadedSecretKey {
    std::string scheme;
    unsigned m = 0;
    std::optional<me::SecretKey> me;
    std::optional<mme::SecretKey> mme;
    std::optional<lyhw19::SecretKey> lyhw19;
};
LoadedPublicKey public_key_from_json(const json& j);
LoadedSecretKey secret_key_from_json(const json& j);

json signature_json(const lyhw19::Signature& sig);
lyhw19::Signature signature_from_json(const json& j);

json ciphertext_json(const BitVector& c);            // ME
json ciphertext_json(const mme::Ciphertext& ct);     // MME
BitVector me_ciphertext_from_json(const json& j);
mme::Ciphertext mme_ciphertext_from_json(const json& j);

// Compact single-line JSON with sorted keys; round-trips byte-identically.
std::string dump(const json& j);
void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);  // throws ParseError

}  // namespace mcx::io
