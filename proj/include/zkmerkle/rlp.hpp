#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkmerkle/bytes.hpp"

namespace zkmerkle {

struct RlpError : std::runtime_error {
    enum class Kind {
        malformed,      // truncated or otherwise unparseable input
        non_canonical,  // a shorter encoding exists for the same item
        trailing_data,  // complete item followed by extra octets
        overflow,       // payload length does not fit the encoding
    };
    Kind kind;
    RlpError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// One RLP item: either a byte string or an ordered list of items.
class RlpItem {
  public:
    RlpItem() : is_list_(false) {}
    static RlpItem string(Bytes payload) {
        RlpItem it;
        it.payload_ = std::move(payload);
        return it;
    }
    static RlpItem string(BytesView payload) { return string(Bytes(payload.begin(), payload.end())); }
    static RlpItem string(std::string_view s) { return string(str_bytes(s)); }
    static RlpItem list(std::vector<RlpItem> children = {}) {
        RlpItem it;
        it.is_list_ = true;
        it.children_ = std::move(children);
        return it;
    }
    /// Minimal big-endian integer, the Yellow Paper scalar convention
    /// (zero encodes as the empty string).
    static RlpItem integer(std::uint64_t v);

    bool is_list() const { return is_list_; }
    bool is_string() const { return !is_list_; }
    const Bytes& payload() const { return payload_; }
    const std::vector<RlpItem>& children() const { return children_; }
    std::vector<RlpItem>& children() { return children_; }
    void push_back(RlpItem child) { children_.push_back(std::move(child)); }

    bool operator==(const RlpItem& other) const;

  private:
    bool is_list_;
    Bytes payload_;                  // valid when !is_list_
    std::vector<RlpItem> children_;  // valid when is_list_
};

Bytes rlp_encode(const RlpItem& item);

/// Strict decoder: rejects non-canonical encodings (e.g. 0x8100) and
/// trailing octets, matching Ethereum consensus behavior.
RlpItem rlp_decode(BytesView encoded);

}  // namespace zkmerkle
