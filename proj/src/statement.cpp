#include "zkmerkle/statement.hpp"

namespace zkmerkle {

Bytes canonical_encode(const std::vector<Bytes>& tuple) {
    Bytes out;
    for (const Bytes& element : tuple) {
        if (element.size() > 0xffffffffull)
            throw EncodingError("tuple element exceeds 2^32-1 octets");
        append_be32(out, static_cast<std::uint32_t>(element.size()));
        append(out, element);
    }
    return out;
}

std::vector<Bytes> canonical_decode(BytesView encoded) {
    std::vector<Bytes> tuple;
    std::size_t pos = 0;
    while (pos < encoded.size()) {
        if (encoded.size() - pos < 4) throw EncodingError("truncated tuple length prefix");
        std::uint32_t len = (std::uint32_t(encoded[pos]) << 24) |
                            (std::uint32_t(encoded[pos + 1]) << 16) |
                            (std::uint32_t(encoded[pos + 2]) << 8) | std::uint32_t(encoded[pos + 3]);
        pos += 4;
        if (encoded.size() - pos < len) throw EncodingError("truncated tuple element");
        tuple.emplace_back(encoded.begin() + pos, encoded.begin() + pos + len);
        pos += len;
    }
    return tuple;
}

}  // namespace zkmerkle
