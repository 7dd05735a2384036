#include "mcx/rng.hpp"

#include <algorithm>
#include <cstring>
#include <random>
#include <stdexcept>

#include "mcx/shake.hpp"

namespace mcx {

namespace {
constexpr std::size_t kBlockBytes = 136;  // one SHAKE256 rate block per squeeze
}

SeededRng::SeededRng() {
    std::random_device rd;
    for (std::size_t i = 0; i < key_.size(); i += 4) {
        std::uint32_t r = rd();
        std::memcpy(key_.data() + i, &r, std::min<std::size_t>(4, key_.size() - i));
    }
}

SeededRng::SeededRng(std::span<const std::uint8_t> seed) {
    // Arbitrary-length seeds are compressed to the 32-byte key.
    auto k = shake256(seed, key_.size());
    std::copy(k.begin(), k.end(), key_.begin());
}

SeededRng::SeededRng(std::uint64_t seed) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    auto k = shake256(std::span<const std::uint8_t>(b, 8), key_.size());
    std::copy(k.begin(), k.end(), key_.begin());
}

void SeededRng::refill() {
    std::uint8_t ctr[8];
    for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
    buf_ = shake256({std::span<const std::uint8_t>(key_), std::span<const std::uint8_t>(ctr, 8)},
                    kBlockBytes);
    ++counter_;
    pos_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
    std::size_t done = 0;
    while (done < out.size()) {
        if (pos_ == buf_.size()) refill();
        std::size_t take = std::min(out.size() - done, buf_.size() - pos_);
        std::memcpy(out.data() + done, buf_.data() + pos_, take);
        pos_ += take;
        done += take;
    }
}

std::uint64_t SeededRng::next_u64() {
    std::uint8_t b[8];
    fill(b);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SeededRng::below: zero bound");
    // Rejection sampling on the top of the range keeps the draw unbiased.
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
        std::uint64_t v = next_u64();
        if (v <= limit) return v % bound;
    }
}

}  // namespace mcx
