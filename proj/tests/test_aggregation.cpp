#include <doctest.h>

#include <algorithm>
#include <random>

#include "zkmerkle/aggregation.hpp"
#include "zkmerkle/keccak.hpp"
#include "zkmerkle/mpt.hpp"

using namespace zkmerkle;

namespace {

Bytes random_bytes(std::mt19937_64& rng, std::size_t len) {
    Bytes out(len);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
    return out;
}

/// A leaf plus k random siblings is a path in exactly one 2^k-leaf tree;
/// its root is whatever the fold produces.
std::pair<Leaf, MerklePath> synthetic_path(std::mt19937_64& rng, std::size_t k,
                                           std::size_t leaf_len = 48) {
    Leaf leaf{random_bytes(rng, leaf_len)};
    MerklePath path;
    path.leaf_hash = keccak256(leaf.data);
    for (std::size_t i = 0; i < k; ++i) {
        Digest sibling = Digest::from_bytes(random_bytes(rng, 32));
        path.steps.push_back(rng() % 2 ? AuthStep::left_of(sibling) : AuthStep::right_of(sibling));
    }
    path.expected_root = fold(path.leaf_hash, path.steps);
    return {std::move(leaf), std::move(path)};
}

}  // namespace

TEST_CASE("a k = 0 chain is the leaf statement alone") {
    Leaf d{str_bytes("lonely")};
    MerklePath path;
    path.leaf_hash = keccak256(d.data);
    path.expected_root = path.leaf_hash;

    StatementChain chain = build_statement_chain(d, path);
    CHECK(chain.k() == 0);
    CHECK(chain.entries.size() == 1);
    CHECK(chain.root == chain.leaf_hash);

    ProofSystem sys(BackendId::reexec);
    std::vector<PrimaryProof> primaries = prove_chain(sys, chain);
    CHECK(primaries.size() == 1);
    RecursiveProof rp = aggregate(sys, chain, primaries, AggregationMode::simplified);
    CHECK(verify_inclusion(sys, chain.leaf_hash, chain.root, rp).accepted);
}

TEST_CASE("k = 2 statements match the nested keccak oracle") {
    std::mt19937_64 rng(1);
    Leaf d{str_bytes("payload")};
    Digest h1 = Digest::from_bytes(random_bytes(rng, 32));
    Digest h2 = Digest::from_bytes(random_bytes(rng, 32));
    MerklePath path;
    path.leaf_hash = keccak256(d.data);
    path.steps = {AuthStep::right_of(h1), AuthStep::right_of(h2)};
    path.expected_root = fold(path.leaf_hash, path.steps);

    StatementChain chain = build_statement_chain(d, path);
    REQUIRE(chain.entries.size() == 3);

    Digest x1 = keccak256(concat(keccak256(d.data).to_bytes(), h1.to_bytes()));
    Digest x2 = keccak256(concat(x1.to_bytes(), h2.to_bytes()));
    CHECK(chain.entries[1].x0() == x1.to_bytes());
    CHECK(chain.entries[2].x0() == x2.to_bytes());
    CHECK(chain.root == path.expected_root);
    CHECK(chain.root == x2);
}

TEST_CASE("chain length is always k + 1") {
    std::mt19937_64 rng(2);
    for (std::size_t k : {0u, 1u, 5u, 16u}) {
        auto [leaf, path] = synthetic_path(rng, k);
        StatementChain chain = build_statement_chain(leaf, path);
        CHECK(chain.entries.size() == k + 1);
        ProofSystem sys(BackendId::reexec);
        CHECK(prove_chain(sys, chain).size() == k + 1);
    }
}

TEST_CASE("corrupting a chain witness breaks proving at that index") {
    std::mt19937_64 rng(3);
    auto [leaf, path] = synthetic_path(rng, 5);
    StatementChain chain = build_statement_chain(leaf, path);
    chain.entries[2].stmt.w[0][7] ^= 0x40;

    ProofSystem sys(BackendId::sim_groth16);
    try {
        prove_chain(sys, chain);
        FAIL("expected ChainBreakError");
    } catch (const ChainBreakError& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("aggregation refuses unverifiable primaries") {
    std::mt19937_64 rng(4);
    auto [leaf, path] = synthetic_path(rng, 3);
    StatementChain chain = build_statement_chain(leaf, path);
    ProofSystem sys(BackendId::sim_plonk);
    std::vector<PrimaryProof> primaries = prove_chain(sys, chain);
    primaries[1].body[50] ^= 0x01;
    CHECK_THROWS_AS(aggregate(sys, chain, primaries, AggregationMode::simplified),
                    AggregationRefusedError);
    primaries.pop_back();
    CHECK_THROWS_AS(aggregate(sys, chain, primaries, AggregationMode::simplified),
                    AggregationRefusedError);
}

TEST_CASE("prove then verify accepts on every backend and mode") {
    std::mt19937_64 rng(5);
    for (BackendId backend : all_backends()) {
        ProofSystem sys(backend, 11);
        for (AggregationMode mode : {AggregationMode::simplified, AggregationMode::full}) {
            std::size_t k = 1 + rng() % 8;
            auto [leaf, path] = synthetic_path(rng, k);
            RecursiveProof rp = prove_inclusion(sys, leaf, path, mode);
            CHECK(rp.k == k);
            VerifyOutcome outcome =
                verify_inclusion(sys, path.leaf_hash, path.expected_root, rp);
            INFO("backend ", backend_name(backend), " mode ", mode_name(mode), ": ",
                 outcome.reason);
            CHECK(outcome.accepted);
        }
    }
}

TEST_CASE("a k = 16 path needs exactly 17 primary proofs") {
    std::mt19937_64 rng(6);
    auto [leaf, path] = synthetic_path(rng, 16);
    StatementChain chain = build_statement_chain(leaf, path);
    ProofSystem sys(BackendId::sim_groth16);
    CHECK(prove_chain(sys, chain).size() == 17);
}

TEST_CASE("final proof size is the backend constant regardless of k") {
    std::mt19937_64 rng(7);
    ProofSystem groth(BackendId::sim_groth16), stark(BackendId::sim_stark);
    for (std::size_t k : {1u, 4u, 16u, 64u}) {
        auto [leaf, path] = synthetic_path(rng, k);
        CHECK(prove_inclusion(groth, leaf, path, AggregationMode::simplified).final.body.size() ==
              256);
        if (k <= 16) {
            CHECK(prove_inclusion(stark, leaf, path, AggregationMode::simplified)
                      .final.body.size() == 152996);
        }
    }
}

TEST_CASE("substituted roots and leaves are rejected") {
    std::mt19937_64 rng(8);
    for (BackendId backend : {BackendId::reexec, BackendId::sim_groth16}) {
        ProofSystem sys(backend);
        for (AggregationMode mode : {AggregationMode::simplified, AggregationMode::full}) {
            auto [leaf, path] = synthetic_path(rng, 6);
            RecursiveProof rp = prove_inclusion(sys, leaf, path, mode);

            Digest other_root = Digest::from_bytes(random_bytes(rng, 32));
            CHECK_FALSE(verify_inclusion(sys, path.leaf_hash, other_root, rp).accepted);

            Digest other_leaf = keccak256("some other data");
            CHECK_FALSE(verify_inclusion(sys, other_leaf, path.expected_root, rp).accepted);

            // claim consistency: header fields may not be quietly rewritten
            RecursiveProof forged = rp;
            forged.public_root = other_root;
            CHECK_FALSE(verify_inclusion(sys, path.leaf_hash, other_root, forged).accepted);
        }
    }
}

TEST_CASE("full and simplified modes accept and reject identically") {
    std::mt19937_64 rng(9);
    ProofSystem sys(BackendId::reexec);
    auto [leaf, path] = synthetic_path(rng, 4);

    for (int tamper = 0; tamper < 6; ++tamper) {
        Leaf d = leaf;
        MerklePath p = path;
        switch (tamper) {
            case 0: break;                                     // honest
            case 1: d.data[0] ^= 0x01; break;                  // wrong leaf
            case 2: p.steps[2].sibling[31] ^= 0x80; break;     // wrong sibling
            case 3:
                p.steps[1].side = (p.steps[1].side == AuthStep::Side::left)
                                      ? AuthStep::Side::right
                                      : AuthStep::Side::left;
                break;
            case 4: p.expected_root.bytes[0] ^= 0xff; break;   // wrong root
            case 5: p.steps.pop_back(); break;                 // shortened path
        }
        bool results[2];
        int i = 0;
        for (AggregationMode mode : {AggregationMode::simplified, AggregationMode::full}) {
            bool accepted;
            try {
                RecursiveProof rp = prove_inclusion(sys, d, p, mode);
                accepted = verify_inclusion(sys, path.leaf_hash, path.expected_root, rp).accepted;
            } catch (const std::exception&) {
                accepted = false;  // prover refused
            }
            results[i++] = accepted;
        }
        CHECK(results[0] == results[1]);
        if (tamper == 0) CHECK(results[0]);
        else CHECK_FALSE(results[0]);
    }
}

TEST_CASE("reexec recursion re-checks the embedded chain transitively") {
    std::mt19937_64 rng(10);
    ProofSystem sys(BackendId::reexec);
    auto [leaf, path] = synthetic_path(rng, 5);
    RecursiveProof rp = prove_inclusion(sys, leaf, path, AggregationMode::simplified);
    REQUIRE(verify_inclusion(sys, path.leaf_hash, path.expected_root, rp).accepted);

    for (int trial = 0; trial < 30; ++trial) {
        RecursiveProof tampered = rp;
        tampered.final.body[rng() % tampered.final.body.size()] ^=
            static_cast<std::uint8_t>(1 + rng() % 255);
        CHECK_FALSE(
            verify_inclusion(sys, path.leaf_hash, path.expected_root, tampered).accepted);
    }
}

TEST_CASE("trie proofs aggregate end to end") {
    std::mt19937_64 rng(11);
    std::vector<std::pair<Bytes, Bytes>> pairs;
    for (int i = 0; i < 50; ++i)
        pairs.emplace_back(random_bytes(rng, 4), random_bytes(rng, 60));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                pairs.end());
    MerklePatriciaTrie trie = MerklePatriciaTrie::build(pairs);

    for (BackendId backend : {BackendId::reexec, BackendId::sim_groth16}) {
        ProofSystem sys(backend);
        for (int i = 0; i < 5; ++i) {
            const auto& [key, value] = pairs[rng() % pairs.size()];
            MptProof proof = trie.get_proof(key);
            auto [leaf, path] = mpt_proof_to_path(proof);
            RecursiveProof rp = prove_inclusion(sys, leaf, path, AggregationMode::simplified);
            CHECK(rp.k == proof.nodes.size());
            CHECK(verify_inclusion(sys, keccak256(value), trie.root(), rp).accepted);
            if (backend == BackendId::sim_groth16) CHECK(rp.final.body.size() == 256);

            // tampering the trie value must break the aggregated claim
            Leaf wrong{value};
            wrong.data[0] ^= 0x01;
            CHECK_THROWS(prove_inclusion(sys, wrong, path, AggregationMode::simplified));
        }
    }
}

TEST_CASE("recursive proof files round trip") {
    std::mt19937_64 rng(12);
    ProofSystem sys(BackendId::sim_plonk, 21);
    auto [leaf, path] = synthetic_path(rng, 3);
    RecursiveProof rp = prove_inclusion(sys, leaf, path, AggregationMode::full);

    RecursiveProof reloaded = recursive_proof_from_json(recursive_proof_to_json(rp));
    CHECK(reloaded.k == rp.k);
    CHECK(reloaded.mode == rp.mode);
    CHECK(reloaded.backend == rp.backend);
    CHECK(reloaded.final_x == rp.final_x);
    CHECK(reloaded.final.body == rp.final.body);
    CHECK(verify_inclusion(sys, path.leaf_hash, path.expected_root, reloaded).accepted);

    // a verifier seeded differently must reject sim proofs
    ProofSystem other(BackendId::sim_plonk, 22);
    CHECK_FALSE(verify_inclusion(other, path.leaf_hash, path.expected_root, reloaded).accepted);
}
