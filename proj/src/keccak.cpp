#include "zkmerkle/keccak.hpp"

#include <cstring>

namespace zkmerkle {

namespace {

constexpr std::size_t kRate = 136;  // 1600 - 2*256 bits

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRotations[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

constexpr int kPiLane[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                             15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl64(std::uint64_t x, int n) { return (x << n) | (x >> (64 - n)); }

void keccak_f1600(std::uint64_t s[25]) {
    for (int round = 0; round < 24; ++round) {
        std::uint64_t bc[5];
        // theta
        for (int i = 0; i < 5; ++i) bc[i] = s[i] ^ s[i + 5] ^ s[i + 10] ^ s[i + 15] ^ s[i + 20];
        for (int i = 0; i < 5; ++i) {
            std::uint64_t t = bc[(i + 4) % 5] ^ rotl64(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5) s[j + i] ^= t;
        }
        // rho + pi
        std::uint64_t t = s[1];
        for (int i = 0; i < 24; ++i) {
            int j = kPiLane[i];
            std::uint64_t tmp = s[j];
            s[j] = rotl64(t, kRotations[i]);
            t = tmp;
        }
        // chi
        for (int j = 0; j < 25; j += 5) {
            for (int i = 0; i < 5; ++i) bc[i] = s[j + i];
            for (int i = 0; i < 5; ++i) s[j + i] = bc[i] ^ (~bc[(i + 1) % 5] & bc[(i + 2) % 5]);
        }
        // iota
        s[0] ^= kRoundConstants[round];
    }
}

inline void absorb_block(std::uint64_t s[25], const std::uint8_t* block) {
    for (std::size_t i = 0; i < kRate / 8; ++i) {
        std::uint64_t lane;
        std::memcpy(&lane, block + 8 * i, 8);  // little-endian hosts only
        s[i] ^= lane;
    }
    keccak_f1600(s);
}

}  // namespace

void Keccak256::reset() {
    std::memset(state_, 0, sizeof(state_));
    buf_len_ = 0;
}

void Keccak256::update(BytesView data) {
    const std::uint8_t* p = data.data();
    std::size_t n = data.size();
    if (buf_len_ > 0) {
        std::size_t take = std::min(n, kRate - buf_len_);
        std::memcpy(buf_ + buf_len_, p, take);
        buf_len_ += take;
        p += take;
        n -= take;
        if (buf_len_ == kRate) {
            absorb_block(state_, buf_);
            buf_len_ = 0;
        }
    }
    while (n >= kRate) {
        absorb_block(state_, p);
        p += kRate;
        n -= kRate;
    }
    if (n > 0) {
        std::memcpy(buf_, p, n);
        buf_len_ = n;
    }
}

Digest Keccak256::finalize() {
    // Keccak padding: 0x01 ... 0x80 within the rate block.
    std::memset(buf_ + buf_len_, 0, kRate - buf_len_);
    buf_[buf_len_] ^= 0x01;
    buf_[kRate - 1] ^= 0x80;
    absorb_block(state_, buf_);

    Digest out;
    std::memcpy(out.bytes.data(), state_, 32);
    return out;
}

Digest keccak256(BytesView data) {
    Keccak256 h;
    h.update(data);
    return h.finalize();
}

Digest keccak256_pair(const Digest& left, const Digest& right) {
    Keccak256 h;
    h.update(BytesView{left.bytes});
    h.update(BytesView{right.bytes});
    return h.finalize();
}

}  // namespace zkmerkle
