#include "mcx/shake.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace mcx {

namespace {

struct CtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::vector<std::uint8_t> shake256(std::initializer_list<std::span<const std::uint8_t>> parts,
                                   std::size_t outlen) {
    std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1)
        throw std::runtime_error("shake256: init failed");
    for (const auto& part : parts) {
        if (EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1)
            throw std::runtime_error("shake256: update failed");
    }
    std::vector<std::uint8_t> out(outlen);
    if (outlen > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1)
        throw std::runtime_error("shake256: squeeze failed");
    return out;
}

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> data, std::size_t outlen) {
    return shake256({data}, outlen);
}

}  // namespace mcx
