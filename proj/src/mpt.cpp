#include "zkmerkle/mpt.hpp"

#include <algorithm>

#include <json.hpp>

namespace zkmerkle {

using nlohmann::json;

std::vector<std::uint8_t> to_nibbles(BytesView key) {
    std::vector<std::uint8_t> nibbles;
    nibbles.reserve(key.size() * 2);
    for (std::uint8_t b : key) {
        nibbles.push_back(b >> 4);
        nibbles.push_back(b & 0x0f);
    }
    return nibbles;
}

Bytes hex_prefix_encode(const std::vector<std::uint8_t>& nibbles, bool is_leaf) {
    Bytes out;
    out.reserve(nibbles.size() / 2 + 1);
    std::uint8_t flag = (is_leaf ? 2 : 0) | (nibbles.size() % 2);
    std::size_t i = 0;
    if (nibbles.size() % 2 == 1) {
        out.push_back(static_cast<std::uint8_t>((flag << 4) | nibbles[0]));
        i = 1;
    } else {
        out.push_back(static_cast<std::uint8_t>(flag << 4));
    }
    for (; i + 1 < nibbles.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>((nibbles[i] << 4) | nibbles[i + 1]));
    return out;
}

namespace {

struct HexPrefix {
    std::vector<std::uint8_t> nibbles;
    bool is_leaf;
};

HexPrefix hex_prefix_decode(BytesView encoded) {
    if (encoded.empty()) throw MptError("empty hex-prefix path");
    std::uint8_t flag = encoded[0] >> 4;
    if (flag > 3) throw MptError("invalid hex-prefix flag nibble");
    HexPrefix hp;
    hp.is_leaf = (flag & 2) != 0;
    if (flag & 1) hp.nibbles.push_back(encoded[0] & 0x0f);
    for (std::size_t i = 1; i < encoded.size(); ++i) {
        hp.nibbles.push_back(encoded[i] >> 4);
        hp.nibbles.push_back(encoded[i] & 0x0f);
    }
    return hp;
}

using Nibbles = std::vector<std::uint8_t>;

struct Entry {
    Nibbles nibbles;
    Bytes value;
};

}  // namespace

struct MerklePatriciaTrie::Node {
    enum class Kind { leaf, extension, branch };

    Kind kind;
    Nibbles path;  // leaf remainder or extension shared prefix
    Bytes value;   // leaf value, or branch value slot when has_value
    bool has_value = false;
    std::array<std::shared_ptr<Node>, 16> children{};  // branch only
    std::shared_ptr<Node> next;                        // extension target

    Bytes encoding;  // cached canonical RLP
};

namespace {

using Node = MerklePatriciaTrie::Node;
using NodePtr = std::shared_ptr<Node>;

/// Encodes the node and returns the item a parent embeds: the node's own
/// structure when its encoding is shorter than 32 bytes, its hash otherwise.
RlpItem encode_node(Node& node, RlpItem* structural_out = nullptr);

RlpItem node_item(Node& node) {
    switch (node.kind) {
        case Node::Kind::leaf:
            return RlpItem::list({RlpItem::string(hex_prefix_encode(node.path, true)),
                                  RlpItem::string(node.value)});
        case Node::Kind::extension: {
            RlpItem child_ref = encode_node(*node.next);
            return RlpItem::list(
                {RlpItem::string(hex_prefix_encode(node.path, false)), std::move(child_ref)});
        }
        case Node::Kind::branch: {
            std::vector<RlpItem> items;
            items.reserve(17);
            for (const NodePtr& child : node.children) {
                if (child) {
                    items.push_back(encode_node(*child));
                } else {
                    items.push_back(RlpItem::string(Bytes{}));
                }
            }
            items.push_back(RlpItem::string(node.has_value ? node.value : Bytes{}));
            return RlpItem::list(std::move(items));
        }
    }
    throw std::logic_error("unreachable");
}

RlpItem encode_node(Node& node, RlpItem* structural_out) {
    RlpItem item = node_item(node);
    node.encoding = rlp_encode(item);
    if (structural_out) *structural_out = item;
    if (node.encoding.size() < 32) return item;  // inlined in the parent
    return RlpItem::string(keccak256(node.encoding).to_bytes());
}

NodePtr build_subtree(std::vector<Entry>& entries, std::size_t depth) {
    if (entries.empty()) return nullptr;
    if (entries.size() == 1) {
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::leaf;
        node->path.assign(entries[0].nibbles.begin() + depth, entries[0].nibbles.end());
        node->value = std::move(entries[0].value);
        return node;
    }

    // longest common prefix of all suffixes at this depth
    std::size_t lcp = 0;
    for (;;) {
        if (entries[0].nibbles.size() <= depth + lcp) break;
        std::uint8_t nib = entries[0].nibbles[depth + lcp];
        bool all = std::all_of(entries.begin() + 1, entries.end(), [&](const Entry& e) {
            return e.nibbles.size() > depth + lcp && e.nibbles[depth + lcp] == nib;
        });
        if (!all) break;
        ++lcp;
    }

    if (lcp > 0) {
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::extension;
        node->path.assign(entries[0].nibbles.begin() + depth,
                          entries[0].nibbles.begin() + depth + lcp);
        node->next = build_subtree(entries, depth + lcp);
        return node;
    }

    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::branch;
    std::array<std::vector<Entry>, 16> groups;
    for (Entry& e : entries) {
        if (e.nibbles.size() == depth) {
            node->has_value = true;
            node->value = std::move(e.value);
        } else {
            groups[e.nibbles[depth]].push_back(std::move(e));
        }
    }
    for (int nib = 0; nib < 16; ++nib) {
        if (!groups[nib].empty()) node->children[nib] = build_subtree(groups[nib], depth + 1);
    }
    return node;
}

}  // namespace

MerklePatriciaTrie MerklePatriciaTrie::build(std::vector<std::pair<Bytes, Bytes>> pairs) {
    MerklePatriciaTrie trie;
    trie.pair_count_ = pairs.size();
    if (pairs.empty()) {
        trie.root_ = mpt_empty_root();
        return trie;
    }

    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].first == pairs[i - 1].first)
            throw MptError("duplicate key " + to_hex(pairs[i].first));
    }

    std::vector<Entry> entries;
    entries.reserve(pairs.size());
    for (auto& [key, value] : pairs) entries.push_back({to_nibbles(key), std::move(value)});

    trie.root_node_ = build_subtree(entries, 0);
    encode_node(*trie.root_node_);
    trie.root_ = keccak256(trie.root_node_->encoding);
    return trie;
}

MptProof MerklePatriciaTrie::get_proof(BytesView key) const {
    if (!root_node_) throw MptError("key not found: trie is empty");

    MptProof proof;
    proof.key.assign(key.begin(), key.end());
    proof.root = root_;

    Nibbles nibbles = to_nibbles(key);
    std::size_t pos = 0;
    const Node* node = root_node_.get();
    while (node) {
        proof.nodes.push_back(node->encoding);
        switch (node->kind) {
            case Node::Kind::leaf: {
                Nibbles rest(nibbles.begin() + pos, nibbles.end());
                if (rest != node->path) throw MptError("key not found: " + to_hex(key));
                proof.value = node->value;
                return proof;
            }
            case Node::Kind::extension: {
                if (nibbles.size() - pos < node->path.size() ||
                    !std::equal(node->path.begin(), node->path.end(), nibbles.begin() + pos))
                    throw MptError("key not found: " + to_hex(key));
                pos += node->path.size();
                node = node->next.get();
                break;
            }
            case Node::Kind::branch: {
                if (pos == nibbles.size()) {
                    if (!node->has_value) throw MptError("key not found: " + to_hex(key));
                    proof.value = node->value;
                    return proof;
                }
                node = node->children[nibbles[pos]].get();
                ++pos;
                break;
            }
        }
    }
    throw MptError("key not found: " + to_hex(key));
}

namespace {

MptVerifyResult reject(std::string reason) { return {false, std::move(reason)}; }

/// True when `ref` (a decoded child slot) designates the node encoded by
/// `encoding`: a 32-byte hash string, or the node structure inlined.
bool ref_matches(const RlpItem& ref, const Bytes& encoding) {
    if (ref.is_string()) {
        if (ref.payload().size() != 32) return false;
        return keccak256(encoding) == Digest::from_bytes(ref.payload());
    }
    return rlp_encode(ref) == encoding;
}

}  // namespace

MptVerifyResult mpt_verify_proof(const MptProof& proof) {
    if (proof.nodes.empty()) return reject("proof has no nodes");
    if (keccak256(proof.nodes[0]) != proof.root) return reject("first node does not hash to root");

    Nibbles nibbles = to_nibbles(proof.key);
    std::size_t pos = 0;

    for (std::size_t i = 0; i < proof.nodes.size(); ++i) {
        RlpItem item;
        try {
            item = rlp_decode(proof.nodes[i]);
        } catch (const RlpError& e) {
            return reject("node " + std::to_string(i) + " is not valid rlp: " + e.what());
        }
        if (!item.is_list()) return reject("node " + std::to_string(i) + " is not a list");

        const std::vector<RlpItem>& fields = item.children();
        const RlpItem* next_ref = nullptr;

        if (fields.size() == 2) {
            if (!fields[0].is_string()) return reject("two-item node path is not a string");
            HexPrefix hp;
            try {
                hp = hex_prefix_decode(fields[0].payload());
            } catch (const MptError& e) {
                return reject(e.what());
            }
            if (hp.is_leaf) {
                Nibbles rest(nibbles.begin() + pos, nibbles.end());
                if (rest != hp.nibbles) return reject("leaf path does not match key remainder");
                if (!fields[1].is_string() || fields[1].payload() != proof.value)
                    return reject("leaf value does not match claimed value");
                if (i + 1 != proof.nodes.size()) return reject("extra nodes after leaf");
                return {true, {}};
            }
            if (nibbles.size() - pos < hp.nibbles.size() ||
                !std::equal(hp.nibbles.begin(), hp.nibbles.end(), nibbles.begin() + pos))
                return reject("extension path does not match key");
            pos += hp.nibbles.size();
            next_ref = &fields[1];
        } else if (fields.size() == 17) {
            if (pos == nibbles.size()) {
                if (!fields[16].is_string() || fields[16].payload() != proof.value)
                    return reject("branch value does not match claimed value");
                if (fields[16].payload().empty()) return reject("branch has no value for key");
                if (i + 1 != proof.nodes.size()) return reject("extra nodes after branch value");
                return {true, {}};
            }
            next_ref = &fields[nibbles[pos]];
            ++pos;
            if (next_ref->is_string() && next_ref->payload().empty())
                return reject("missing branch child for key nibble");
        } else {
            return reject("node " + std::to_string(i) + " has " +
                          std::to_string(fields.size()) + " items");
        }

        if (i + 1 == proof.nodes.size()) return reject("proof ends before reaching the value");
        if (!ref_matches(*next_ref, proof.nodes[i + 1]))
            return reject("node " + std::to_string(i + 1) + " is not referenced by its parent");
    }
    return reject("walk did not terminate at a value");
}

std::pair<Leaf, MerklePath> mpt_proof_to_path(const MptProof& proof) {
    MerklePath path;
    path.leaf_hash = keccak256(proof.value);
    path.expected_root = proof.root;
    for (auto it = proof.nodes.rbegin(); it != proof.nodes.rend(); ++it)
        path.steps.push_back(AuthStep::mpt_node(*it));
    return {Leaf{proof.value}, std::move(path)};
}

std::string mpt_proof_to_json(const MptProof& proof) {
    json j;
    j["key"] = to_hex(proof.key);
    j["value"] = to_hex(proof.value);
    j["root"] = to_hex(proof.root);
    json nodes = json::array();
    for (const Bytes& n : proof.nodes) nodes.push_back(to_hex(n));
    j["nodes"] = std::move(nodes);
    return j.dump(2);
}

MptProof mpt_proof_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    MptProof proof;
    proof.key = from_hex(j.at("key").get<std::string>());
    proof.value = from_hex(j.at("value").get<std::string>());
    proof.root = digest_from_hex(j.at("root").get<std::string>());
    for (const json& n : j.at("nodes")) proof.nodes.push_back(from_hex(n.get<std::string>()));
    return proof;
}

Digest mpt_empty_root() {
    static const Digest root = keccak256(rlp_encode(RlpItem::string(Bytes{})));
    return root;
}

}  // namespace zkmerkle
