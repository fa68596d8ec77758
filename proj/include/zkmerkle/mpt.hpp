#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zkmerkle/bytes.hpp"
#include "zkmerkle/keccak.hpp"
#include "zkmerkle/merkle.hpp"
#include "zkmerkle/rlp.hpp"

namespace zkmerkle {

struct MptError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inclusion proof for one key: the serialized nodes visited from the root
/// down to the value, in order. Nodes shorter than 32 encoded bytes are
/// inlined in their parent by the trie encoding but still listed here as
/// explicit entries, so consumers see a uniform node sequence.
struct MptProof {
    Bytes key;
    Bytes value;
    Digest root;
    std::vector<Bytes> nodes;  // root first

    /// Sum of serialized node lengths; the native proof size.
    std::uint64_t native_size() const {
        std::uint64_t total = 0;
        for (const Bytes& n : nodes) total += n.size();
        return total;
    }
};

struct MptVerifyResult {
    bool accepted = false;
    std::string reason;  // empty on accept

    explicit operator bool() const { return accepted; }
};

/// Ethereum Merkle Patricia Trie over arbitrary distinct keys. Immutable
/// after build.
class MerklePatriciaTrie {
  public:
    struct Node;

    MerklePatriciaTrie() = default;

    /// Builds the canonical trie; the root matches Ethereum's for the same
    /// pair set regardless of insertion order.
    static MerklePatriciaTrie build(std::vector<std::pair<Bytes, Bytes>> pairs);

    const Digest& root() const { return root_; }
    bool empty() const { return root_node_ == nullptr; }
    std::size_t size() const { return pair_count_; }

    /// Proof path for a present key; throws MptError when the key is absent
    /// (exclusion proofs are unsupported).
    MptProof get_proof(BytesView key) const;

  private:
    std::shared_ptr<Node> root_node_;
    Digest root_{};
    std::size_t pair_count_ = 0;
};

/// Stateless replay of a proof: accepts iff the first node hashes to the
/// claimed root and walking the key's nibbles through successive nodes
/// terminates at the claimed value with every node consumed.
MptVerifyResult mpt_verify_proof(const MptProof& proof);

/// Reshapes a trie proof into the leaf-to-root fold abstraction: the value
/// becomes the leaf data and each serialized node becomes one whole-node
/// rehash step.
std::pair<Leaf, MerklePath> mpt_proof_to_path(const MptProof& proof);

std::string mpt_proof_to_json(const MptProof& proof);
MptProof mpt_proof_from_json(const std::string& json_text);

/// Nibble helpers shared with tests.
std::vector<std::uint8_t> to_nibbles(BytesView key);
Bytes hex_prefix_encode(const std::vector<std::uint8_t>& nibbles, bool is_leaf);

/// keccak256(rlp("")), the root of a trie with no entries.
Digest mpt_empty_root();

}  // namespace zkmerkle
