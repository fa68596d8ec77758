#pragma once

#include <cstdint>
#include <string>

#include "zkmerkle/bytes.hpp"

namespace zkmerkle {

/// Identifies the hash family and output width in bits.
/// Only keccak256 ships; the indirection keeps call sites honest about m.
struct HashSpec {
    std::string algorithm = "keccak256";
    unsigned hash_bits = 256;

    unsigned digest_bytes() const { return hash_bits / 8; }
};

/// Keccak-256 as used by Ethereum: the original Keccak submission padding
/// (0x01 domain byte), not the NIST SHA3-256 variant (0x06).
Digest keccak256(BytesView data);

inline Digest keccak256(const Bytes& data) { return keccak256(BytesView{data}); }
inline Digest keccak256(std::string_view s) {
    return keccak256(BytesView{reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

/// Hash of the concatenation left || right. The inner node rule of every
/// binary tree in this library.
Digest keccak256_pair(const Digest& left, const Digest& right);

/// Incremental sponge, for callers that hash many fragments without
/// materializing the concatenation.
class Keccak256 {
  public:
    Keccak256() { reset(); }
    void reset();
    void update(BytesView data);
    Digest finalize();

  private:
    std::uint64_t state_[25];
    std::uint8_t buf_[136];
    std::size_t buf_len_ = 0;
};

}  // namespace zkmerkle
