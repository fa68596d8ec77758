#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkmerkle/bytes.hpp"
#include "zkmerkle/keccak.hpp"

namespace zkmerkle {

struct MerkleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw data block d_i. Empty blocks are allowed by default.
struct Leaf {
    Bytes data;
};

enum class PaddingPolicy {
    duplicate_last,           // odd rows repeat their last digest
    reject_non_power_of_two,  // refuse any row that cannot pair up
};

/// One authentication step. Binary trees carry a 32-byte sibling digest and
/// the side it concatenates on; Patricia proofs carry whole serialized nodes
/// instead, where the previous accumulator is embedded in the node bytes.
struct AuthStep {
    enum class Side : std::uint8_t { left = 0, right = 1, node = 2 };

    Side side = Side::left;
    Bytes sibling;  // 32 bytes for left/right, full node encoding for node

    static AuthStep left_of(const Digest& d) { return {Side::left, d.to_bytes()}; }
    static AuthStep right_of(const Digest& d) { return {Side::right, d.to_bytes()}; }
    static AuthStep mpt_node(Bytes node) { return {Side::node, std::move(node)}; }

    bool operator==(const AuthStep&) const = default;
};

const char* side_name(AuthStep::Side side);
AuthStep::Side side_from_name(const std::string& name);

/// Ordered authentication path from one leaf hash up to the root.
struct MerklePath {
    Digest leaf_hash;             // H(d_i)
    Digest expected_root;         // r
    std::vector<AuthStep> steps;  // h_1 .. h_k, fold order

    std::size_t k() const { return steps.size(); }
};

/// Binary hash tree. Level 0 holds the leaf hashes H(d_i); each level above
/// pairs digests left-to-right; the top level is the single root.
class MerkleTree {
  public:
    static MerkleTree build(const std::vector<Leaf>& leaves,
                            PaddingPolicy policy = PaddingPolicy::duplicate_last);

    std::size_t leaf_count() const { return leaf_count_; }
    std::size_t height() const { return levels_.size() - 1; }
    const Digest& root() const { return levels_.back().front(); }
    const std::vector<std::vector<Digest>>& levels() const { return levels_; }

    /// Authentication path for the leaf at `index`; k == height().
    MerklePath gen_path(std::size_t index) const;

    std::string to_json() const;
    static MerkleTree from_json(const std::string& json_text);

  private:
    std::size_t leaf_count_ = 0;
    std::vector<std::vector<Digest>> levels_;
};

/// The root fold: acc_0 = leaf_hash, acc_j = H(acc ∘ h_j) with the sibling on
/// its recorded side; Patricia steps replace concatenation with a whole-node
/// rehash (acc <- H(node)). Returns acc_k.
Digest fold(const Digest& leaf_hash, const std::vector<AuthStep>& steps);

enum class ProofLayout { binary, mpt_bound };

/// Serialized size of a native (non-aggregated) proof of path length k:
/// 32k for a binary tree, k*(16*32 + 4) as the Patricia upper bound.
std::uint64_t native_proof_size(std::uint64_t k, ProofLayout layout);

std::string path_to_json(const MerklePath& path);
MerklePath path_from_json(const std::string& json_text);

}  // namespace zkmerkle
