#include "zkmerkle/merkle.hpp"

#include <json.hpp>

namespace zkmerkle {

using nlohmann::json;

const char* side_name(AuthStep::Side side) {
    switch (side) {
        case AuthStep::Side::left: return "left";
        case AuthStep::Side::right: return "right";
        case AuthStep::Side::node: return "node";
    }
    throw std::logic_error("unreachable");
}

AuthStep::Side side_from_name(const std::string& name) {
    if (name == "left") return AuthStep::Side::left;
    if (name == "right") return AuthStep::Side::right;
    if (name == "node") return AuthStep::Side::node;
    throw MerkleError("unknown auth step side: " + name);
}

MerkleTree MerkleTree::build(const std::vector<Leaf>& leaves, PaddingPolicy policy) {
    if (leaves.empty()) throw MerkleError("cannot build a merkle tree from an empty leaf list");

    MerkleTree tree;
    tree.leaf_count_ = leaves.size();

    std::vector<Digest> row;
    row.reserve(leaves.size());
    for (const Leaf& leaf : leaves) row.push_back(keccak256(leaf.data));
    tree.levels_.push_back(row);

    while (tree.levels_.back().size() > 1) {
        const std::vector<Digest>& prev = tree.levels_.back();
        if (prev.size() % 2 != 0 && policy == PaddingPolicy::reject_non_power_of_two) {
            throw MerkleError("row of " + std::to_string(prev.size()) +
                              " digests cannot pair up under the reject policy");
        }
        std::vector<Digest> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < prev.size(); i += 2) {
            const Digest& left = prev[i];
            const Digest& right = (i + 1 < prev.size()) ? prev[i + 1] : prev[i];
            next.push_back(keccak256_pair(left, right));
        }
        tree.levels_.push_back(std::move(next));
    }
    return tree;
}

MerklePath MerkleTree::gen_path(std::size_t index) const {
    if (index >= leaf_count_) {
        throw MerkleError("leaf index " + std::to_string(index) + " out of range (leaf_count " +
                          std::to_string(leaf_count_) + ")");
    }
    MerklePath path;
    path.leaf_hash = levels_[0][index];
    path.expected_root = root();

    std::size_t pos = index;
    for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
        const std::vector<Digest>& row = levels_[level];
        std::size_t sibling_pos = pos ^ 1;
        // odd row end: the duplicate-last padding pairs the node with itself
        const Digest& sibling = (sibling_pos < row.size()) ? row[sibling_pos] : row[pos];
        path.steps.push_back((pos % 2 == 0) ? AuthStep::right_of(sibling)
                                            : AuthStep::left_of(sibling));
        pos /= 2;
    }
    return path;
}

Digest fold(const Digest& leaf_hash, const std::vector<AuthStep>& steps) {
    Digest acc = leaf_hash;
    for (const AuthStep& step : steps) {
        switch (step.side) {
            case AuthStep::Side::left:
                acc = keccak256_pair(Digest::from_bytes(step.sibling), acc);
                break;
            case AuthStep::Side::right:
                acc = keccak256_pair(acc, Digest::from_bytes(step.sibling));
                break;
            case AuthStep::Side::node:
                acc = keccak256(step.sibling);
                break;
        }
    }
    return acc;
}

std::uint64_t native_proof_size(std::uint64_t k, ProofLayout layout) {
    switch (layout) {
        case ProofLayout::binary: return 32 * k;
        case ProofLayout::mpt_bound: return k * (16 * 32 + 4);
    }
    throw std::logic_error("unreachable");
}

std::string MerkleTree::to_json() const {
    json j;
    j["leaf_count"] = leaf_count_;
    json rows = json::array();
    for (const std::vector<Digest>& level : levels_) {
        json row = json::array();
        for (const Digest& d : level) row.push_back(to_hex(d));
        rows.push_back(std::move(row));
    }
    j["levels"] = std::move(rows);
    return j.dump(2);
}

MerkleTree MerkleTree::from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    MerkleTree tree;
    tree.leaf_count_ = j.at("leaf_count").get<std::size_t>();
    for (const json& row : j.at("levels")) {
        std::vector<Digest> level;
        for (const json& hex : row) level.push_back(digest_from_hex(hex.get<std::string>()));
        tree.levels_.push_back(std::move(level));
    }
    if (tree.levels_.empty() || tree.levels_.back().size() != 1)
        throw MerkleError("tree file has no root row");
    if (tree.levels_.front().size() < tree.leaf_count_)
        throw MerkleError("tree file leaf row shorter than leaf_count");
    return tree;
}

std::string path_to_json(const MerklePath& path) {
    json j;
    j["leaf_hash"] = to_hex(path.leaf_hash);
    j["root"] = to_hex(path.expected_root);
    json steps = json::array();
    for (const AuthStep& step : path.steps) {
        steps.push_back({{"sibling", to_hex(step.sibling)}, {"side", side_name(step.side)}});
    }
    j["steps"] = std::move(steps);
    return j.dump(2);
}

MerklePath path_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    MerklePath path;
    path.leaf_hash = digest_from_hex(j.at("leaf_hash").get<std::string>());
    path.expected_root = digest_from_hex(j.at("root").get<std::string>());
    for (const json& step : j.at("steps")) {
        AuthStep s;
        s.side = side_from_name(step.at("side").get<std::string>());
        s.sibling = from_hex(step.at("sibling").get<std::string>());
        if (s.side != AuthStep::Side::node && s.sibling.size() != 32)
            throw MerkleError("binary auth step sibling must be 32 bytes");
        path.steps.push_back(std::move(s));
    }
    return path;
}

}  // namespace zkmerkle
