#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zkmerkle {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

/// Fixed-length hash output. All tree arithmetic is done on these.
struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    static constexpr std::size_t size() { return 32; }
    const std::uint8_t* data() const { return bytes.data(); }
    std::uint8_t* data() { return bytes.data(); }

    bool operator==(const Digest&) const = default;
    auto operator<=>(const Digest&) const = default;

    Bytes to_bytes() const { return Bytes(bytes.begin(), bytes.end()); }

    static Digest from_bytes(BytesView b) {
        if (b.size() != 32) {
            throw std::invalid_argument("digest must be exactly 32 bytes, got " +
                                        std::to_string(b.size()));
        }
        Digest d;
        std::copy(b.begin(), b.end(), d.bytes.begin());
        return d;
    }
};

std::string to_hex(BytesView data);
std::string to_hex(const Digest& d);

/// Parses lowercase or uppercase hex, with or without the 0x prefix.
Bytes from_hex(std::string_view hex);
Digest digest_from_hex(std::string_view hex);

inline Bytes concat(BytesView a, BytesView b) {
    Bytes out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline void append(Bytes& out, BytesView more) { out.insert(out.end(), more.begin(), more.end()); }

inline Bytes str_bytes(std::string_view s) {
    return Bytes(reinterpret_cast<const std::uint8_t*>(s.data()),
                 reinterpret_cast<const std::uint8_t*>(s.data()) + s.size());
}

/// Big-endian fixed-width encode, used by the canonical statement encoding.
inline void append_be32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline void append_be64(Bytes& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace zkmerkle
