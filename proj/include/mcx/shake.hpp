#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mcx {

// SHAKE256 extendable-output function (OpenSSL EVP backend).
std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> data, std::size_t outlen);

// Multi-part input variant; equivalent to hashing the concatenation.
std::vector<std::uint8_t> shake256(std::initializer_list<std::span<const std::uint8_t>> parts,
                                   std::size_t outlen);

}  // namespace mcx
