#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <random>

#include <json.hpp>

#include "zkmerkle/keccak.hpp"
#include "zkmerkle/mpt.hpp"
#include "zkmerkle/rlp.hpp"

using namespace zkmerkle;

namespace {

using Pairs = std::vector<std::pair<Bytes, Bytes>>;

Pairs random_pairs(std::mt19937_64& rng, std::size_t n) {
    Pairs pairs;
    std::set<Bytes> keys;
    while (pairs.size() < n) {
        Bytes key(1 + rng() % 8);
        for (auto& b : key) b = static_cast<std::uint8_t>(rng());
        if (!keys.insert(key).second) continue;
        Bytes value(1 + rng() % 80);
        for (auto& b : value) b = static_cast<std::uint8_t>(rng());
        pairs.emplace_back(std::move(key), std::move(value));
    }
    return pairs;
}

}  // namespace

TEST_CASE("empty trie root is keccak256(0x80)") {
    MerklePatriciaTrie trie = MerklePatriciaTrie::build({});
    CHECK(trie.root() == keccak256(Bytes{0x80}));
    CHECK(to_hex(trie.root()) ==
          "0x56e81f171bcc55a6ff8345e692c0f86e5b48e01b996cadc001622fb5e363b421");
    CHECK_THROWS_AS(trie.get_proof(str_bytes("missing")), MptError);
}

TEST_CASE("single pair root matches a hand-built leaf node") {
    Bytes key = str_bytes("k");
    Bytes value = str_bytes("value");
    MerklePatriciaTrie trie = MerklePatriciaTrie::build({{key, value}});

    RlpItem leaf_node = RlpItem::list(
        {RlpItem::string(hex_prefix_encode(to_nibbles(key), true)), RlpItem::string(value)});
    CHECK(trie.root() == keccak256(rlp_encode(leaf_node)));

    MptProof proof = trie.get_proof(key);
    CHECK(proof.nodes.size() == 1);
    CHECK(proof.native_size() == rlp_encode(leaf_node).size());
    CHECK(mpt_verify_proof(proof).accepted);
}

TEST_CASE("insertion order does not change the root") {
    std::mt19937_64 rng(41);
    Pairs pairs = random_pairs(rng, 25);
    Pairs shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(MerklePatriciaTrie::build(pairs).root() == MerklePatriciaTrie::build(shuffled).root());
}

TEST_CASE("duplicate keys are rejected") {
    Pairs pairs = {{str_bytes("dup"), str_bytes("a")}, {str_bytes("dup"), str_bytes("b")}};
    CHECK_THROWS_AS(MerklePatriciaTrie::build(pairs), MptError);
}

TEST_CASE("roots agree with the reference implementation on golden fixtures") {
    std::ifstream in(std::string(ZKM_TEST_DATA_DIR) + "/mpt_golden.json");
    REQUIRE(in.good());
    nlohmann::json cases = nlohmann::json::parse(in);
    REQUIRE(cases.size() >= 20);
    for (const auto& c : cases) {
        Pairs pairs;
        for (const auto& kv : c.at("pairs")) {
            pairs.emplace_back(from_hex(kv[0].get<std::string>()),
                               from_hex(kv[1].get<std::string>()));
        }
        MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);
        INFO("case: ", c.at("desc").get<std::string>());
        CHECK(to_hex(trie.root()) == "0x" + c.at("root").get<std::string>());
    }
}

TEST_CASE("every present key yields a proof that verifies and replays") {
    std::mt19937_64 rng(42);
    Pairs pairs = random_pairs(rng, 64);
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);
    for (const auto& [key, value] : pairs) {
        MptProof proof = trie.get_proof(key);
        CHECK(proof.value == value);
        CHECK(keccak256(proof.nodes[0]) == trie.root());
        MptVerifyResult result = mpt_verify_proof(proof);
        INFO("reject reason: ", result.reason);
        CHECK(result.accepted);
    }
}

TEST_CASE("random single-byte tampering is always rejected") {
    std::mt19937_64 rng(43);
    Pairs pairs = random_pairs(rng, 32);
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);

    for (int trial = 0; trial < 200; ++trial) {
        const auto& [key, value] = pairs[rng() % pairs.size()];
        MptProof proof = trie.get_proof(key);
        switch (rng() % 4) {
            case 0: {
                Bytes& node = proof.nodes[rng() % proof.nodes.size()];
                node[rng() % node.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                break;
            }
            case 1:
                if (proof.key.empty()) continue;
                proof.key[rng() % proof.key.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                break;
            case 2:
                proof.value[rng() % proof.value.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                break;
            case 3:
                proof.root.bytes[rng() % 32] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                break;
        }
        // a tampered key may accidentally name another present key, but the
        // value/path can no longer both match; every such proof must reject
        CHECK_FALSE(mpt_verify_proof(proof).accepted);
    }
}

TEST_CASE("swapping middle nodes breaks the replay") {
    std::mt19937_64 rng(44);
    Pairs pairs = random_pairs(rng, 128);
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);
    int checked = 0;
    for (const auto& [key, value] : pairs) {
        MptProof proof = trie.get_proof(key);
        if (proof.nodes.size() < 3) continue;
        std::swap(proof.nodes[0], proof.nodes[1]);
        CHECK_FALSE(mpt_verify_proof(proof).accepted);
        ++checked;
        if (checked > 10) break;
    }
    CHECK(checked > 0);
}

TEST_CASE("proof json round trips") {
    std::mt19937_64 rng(45);
    Pairs pairs = random_pairs(rng, 8);
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);
    MptProof proof = trie.get_proof(pairs[3].first);
    MptProof reloaded = mpt_proof_from_json(mpt_proof_to_json(proof));
    CHECK(reloaded.key == proof.key);
    CHECK(reloaded.value == proof.value);
    CHECK(reloaded.root == proof.root);
    CHECK(reloaded.nodes == proof.nodes);
    CHECK(mpt_verify_proof(reloaded).accepted);
}

TEST_CASE("trie proofs reshape into the fold abstraction") {
    std::mt19937_64 rng(46);
    Pairs pairs = random_pairs(rng, 40);
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);
    for (int i = 0; i < 10; ++i) {
        const auto& [key, value] = pairs[rng() % pairs.size()];
        MptProof proof = trie.get_proof(key);
        auto [leaf, path] = mpt_proof_to_path(proof);
        CHECK(leaf.data == value);
        CHECK(path.k() == proof.nodes.size());
        CHECK(path.leaf_hash == keccak256(value));
        CHECK(fold(path.leaf_hash, path.steps) == trie.root());
    }
}

TEST_CASE("inline nodes under 32 encoded bytes are still listed and replayed") {
    // two-byte keys under a shared first byte force a short branch subtree
    Pairs pairs;
    for (int i = 0; i < 4; ++i) {
        pairs.push_back({Bytes{0xaa, static_cast<std::uint8_t>(i)}, Bytes{static_cast<std::uint8_t>(i)}});
    }
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);
    bool saw_inline = false;
    for (const auto& [key, value] : pairs) {
        MptProof proof = trie.get_proof(key);
        CHECK(mpt_verify_proof(proof).accepted);
        for (const Bytes& node : proof.nodes) saw_inline |= node.size() < 32;
    }
    CHECK(saw_inline);
}
