#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace mcx {

// Deterministic CSPRNG: SHAKE256 in counter mode over a 32-byte key.
// A fixed seed yields a bit-reproducible stream; the default constructor
// keys the stream from OS entropy.
class SeededRng {
  public:
    SeededRng();
    explicit SeededRng(std::span<const std::uint8_t> seed);
    explicit SeededRng(std::uint64_t seed);  // convenience: 8-byte LE seed

    std::uint64_t next_u64();
    // Uniform value in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);
    void fill(std::span<std::uint8_t> out);

    const std::array<std::uint8_t, 32>& key() const { return key_; }

  private:
    void refill();

    std::array<std::uint8_t, 32> key_{};
    std::uint64_t counter_ = 0;
    std::vector<std::uint8_t> buf_;
    std::size_t pos_ = 0;
};

}  // namespace mcx
