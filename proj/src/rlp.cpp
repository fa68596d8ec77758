#include "zkmerkle/rlp.hpp"

namespace zkmerkle {

namespace {

void append_length(Bytes& out, std::size_t len, std::uint8_t short_base, std::uint8_t long_base) {
    if (len <= 55) {
        out.push_back(static_cast<std::uint8_t>(short_base + len));
        return;
    }
    Bytes be;
    for (std::size_t v = len; v > 0; v >>= 8) be.insert(be.begin(), static_cast<std::uint8_t>(v & 0xff));
    if (be.size() > 8) throw RlpError(RlpError::Kind::overflow, "rlp payload exceeds 2^64-1 octets");
    out.push_back(static_cast<std::uint8_t>(long_base + be.size()));
    append(out, be);
}

void encode_into(const RlpItem& item, Bytes& out) {
    if (item.is_string()) {
        const Bytes& p = item.payload();
        if (p.size() == 1 && p[0] < 0x80) {
            out.push_back(p[0]);
            return;
        }
        append_length(out, p.size(), 0x80, 0xb7);
        append(out, p);
        return;
    }
    Bytes payload;
    for (const RlpItem& child : item.children()) encode_into(child, payload);
    append_length(out, payload.size(), 0xc0, 0xf7);
    append(out, payload);
}

struct Cursor {
    BytesView data;
    std::size_t pos = 0;

    std::uint8_t take() {
        if (pos >= data.size()) throw RlpError(RlpError::Kind::malformed, "truncated rlp input");
        return data[pos++];
    }
    BytesView take(std::size_t n) {
        if (data.size() - pos < n) throw RlpError(RlpError::Kind::malformed, "truncated rlp input");
        BytesView v = data.subspan(pos, n);
        pos += n;
        return v;
    }
};

std::size_t read_long_length(Cursor& cur, std::size_t len_of_len) {
    BytesView be = cur.take(len_of_len);
    if (be[0] == 0) throw RlpError(RlpError::Kind::non_canonical, "length prefix has leading zero");
    std::size_t len = 0;
    for (std::uint8_t b : be) {
        if (len > (SIZE_MAX >> 8)) throw RlpError(RlpError::Kind::overflow, "rlp length overflows size_t");
        len = (len << 8) | b;
    }
    if (len <= 55) throw RlpError(RlpError::Kind::non_canonical, "long form used for short payload");
    return len;
}

RlpItem decode_item(Cursor& cur) {
    std::uint8_t prefix = cur.take();
    if (prefix < 0x80) {
        return RlpItem::string(Bytes{prefix});
    }
    if (prefix <= 0xb7) {
        std::size_t len = prefix - 0x80;
        BytesView payload = cur.take(len);
        if (len == 1 && payload[0] < 0x80)
            throw RlpError(RlpError::Kind::non_canonical, "single byte below 0x80 must encode as itself");
        return RlpItem::string(payload);
    }
    if (prefix <= 0xbf) {
        std::size_t len = read_long_length(cur, prefix - 0xb7);
        return RlpItem::string(cur.take(len));
    }
    std::size_t payload_len =
        (prefix <= 0xf7) ? prefix - 0xc0 : read_long_length(cur, prefix - 0xf7);
    std::size_t end = cur.pos + payload_len;
    if (end > cur.data.size()) throw RlpError(RlpError::Kind::malformed, "truncated rlp list payload");
    RlpItem list = RlpItem::list();
    while (cur.pos < end) {
        list.push_back(decode_item(cur));
        if (cur.pos > end)
            throw RlpError(RlpError::Kind::malformed, "list element overruns list payload");
    }
    return list;
}

}  // namespace

RlpItem RlpItem::integer(std::uint64_t v) {
    Bytes be;
    for (; v > 0; v >>= 8) be.insert(be.begin(), static_cast<std::uint8_t>(v & 0xff));
    return RlpItem::string(std::move(be));
}

bool RlpItem::operator==(const RlpItem& other) const {
    if (is_list_ != other.is_list_) return false;
    if (!is_list_) return payload_ == other.payload_;
    return children_ == other.children_;
}

Bytes rlp_encode(const RlpItem& item) {
    Bytes out;
    encode_into(item, out);
    return out;
}

RlpItem rlp_decode(BytesView encoded) {
    Cursor cur{encoded};
    RlpItem item = decode_item(cur);
    if (cur.pos != encoded.size())
        throw RlpError(RlpError::Kind::trailing_data, "trailing octets after rlp item");
    return item;
}

}  // namespace zkmerkle
