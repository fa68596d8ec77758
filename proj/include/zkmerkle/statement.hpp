#pragma once

#include <stdexcept>
#include <vector>

#include "zkmerkle/bytes.hpp"

namespace zkmerkle {

struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One circuit instance: public input x and secret witness w, both tuples of
/// octet strings.
struct Statement {
    std::vector<Bytes> x;
    std::vector<Bytes> w;
};

/// Canonical injective tuple encoding: each element prefixed by its length as
/// a fixed 4-octet big-endian integer, concatenated in order.
Bytes canonical_encode(const std::vector<Bytes>& tuple);

/// Inverse of canonical_encode; throws EncodingError on truncated or
/// overlong input.
std::vector<Bytes> canonical_decode(BytesView encoded);

}  // namespace zkmerkle
