#include "zkmerkle/aggregation.hpp"

#include <json.hpp>

#include "zkmerkle/keccak.hpp"

namespace zkmerkle {

using nlohmann::json;

StatementChain build_statement_chain(const Leaf& d, const MerklePath& path) {
    StatementChain chain;
    Digest acc = keccak256(d.data);
    chain.leaf_hash = acc;

    ChainEntry first;
    first.stmt = Statement{{acc.to_bytes()}, {d.data}};
    first.circuit = CircuitId::leaf_hash;
    first.side = 0xff;
    chain.entries.push_back(std::move(first));

    // child_ref for trie steps: how the previous level is embedded in this
    // node (value bytes under the leaf node, then hash or inline reference)
    Bytes prev_ref = d.data;

    for (const AuthStep& step : path.steps) {
        ChainEntry entry;
        switch (step.side) {
            case AuthStep::Side::left: {
                Bytes preimage = concat(step.sibling, acc.to_bytes());
                acc = keccak256(preimage);
                entry.stmt = Statement{{acc.to_bytes()}, {std::move(preimage)}};
                entry.circuit = CircuitId::hash_step;
                entry.side = 0;
                break;
            }
            case AuthStep::Side::right: {
                Bytes preimage = concat(acc.to_bytes(), step.sibling);
                acc = keccak256(preimage);
                entry.stmt = Statement{{acc.to_bytes()}, {std::move(preimage)}};
                entry.circuit = CircuitId::hash_step;
                entry.side = 1;
                break;
            }
            case AuthStep::Side::node: {
                acc = keccak256(step.sibling);
                entry.stmt = Statement{{acc.to_bytes()}, {step.sibling, prev_ref}};
                entry.circuit = CircuitId::mpt_step;
                entry.side = 2;
                prev_ref = (step.sibling.size() < 32) ? step.sibling : acc.to_bytes();
                break;
            }
        }
        chain.entries.push_back(std::move(entry));
    }
    chain.root = acc;
    return chain;
}

ProofSystem::ProofSystem(BackendId backend, std::uint64_t seed) : backend_(backend), seed_(seed) {
    for (CircuitId circuit : {CircuitId::leaf_hash, CircuitId::hash_step, CircuitId::mpt_step,
                              CircuitId::recursive_link}) {
        params_[static_cast<int>(circuit)] = setup(backend, CircuitSpec{circuit}, seed);
    }
}

const ProverParams& ProofSystem::prover(CircuitId circuit) const {
    return params_[static_cast<int>(circuit)].prover;
}

const VerifierParams& ProofSystem::verifier(CircuitId circuit) const {
    return params_[static_cast<int>(circuit)].verifier;
}

std::vector<PrimaryProof> prove_chain(const ProofSystem& sys, const StatementChain& chain) {
    std::vector<PrimaryProof> proofs;
    proofs.reserve(chain.entries.size());
    for (std::size_t j = 0; j < chain.entries.size(); ++j) {
        const ChainEntry& entry = chain.entries[j];
        try {
            proofs.push_back(prove(sys.prover(entry.circuit), entry.stmt));
        } catch (const InvalidWitnessError& e) {
            throw ChainBreakError(j, "chain breaks at statement " + std::to_string(j) + ": " +
                                         e.what());
        }
    }
    return proofs;
}

namespace {

std::vector<Bytes> link_statement(const StatementChain& chain, AggregationMode mode,
                                  std::uint32_t j) {
    std::vector<Bytes> x;
    x.push_back(link_meta(mode, j));
    x.push_back(chain.leaf_hash.to_bytes());
    if (mode == AggregationMode::simplified) {
        x.push_back(chain.entries[j].x0());
    } else {
        for (std::uint32_t i = 1; i <= j; ++i) x.push_back(chain.entries[i].x0());
    }
    return x;
}

}  // namespace

RecursiveProof aggregate(const ProofSystem& sys, const StatementChain& chain,
                         const std::vector<PrimaryProof>& primaries, AggregationMode mode) {
    if (chain.entries.empty()) throw AggregationRefusedError("empty statement chain");
    if (primaries.size() != chain.entries.size())
        throw AggregationRefusedError("expected " + std::to_string(chain.entries.size()) +
                                      " primary proofs, got " + std::to_string(primaries.size()));

    for (std::size_t j = 0; j < primaries.size(); ++j) {
        VerifyOutcome ok =
            verify(sys.verifier(chain.entries[j].circuit), chain.entries[j].stmt.x, primaries[j]);
        if (!ok)
            throw AggregationRefusedError("primary proof " + std::to_string(j) +
                                          " failed verification: " + ok.reason);
    }

    RecursiveProof rp;
    rp.public_leaf_hash = chain.leaf_hash;
    rp.public_root = chain.root;
    rp.k = static_cast<std::uint32_t>(chain.k());
    rp.mode = mode;
    rp.backend = sys.backend();

    if (chain.k() == 0) {
        rp.final = primaries[0];
        rp.final_x = chain.entries[0].stmt.x;
        return rp;
    }

    PrimaryProof rec = primaries[0];  // πr_0 ≡ π_0
    std::vector<Bytes> x;
    for (std::uint32_t j = 1; j <= rp.k; ++j) {
        x = link_statement(chain, mode, j);
        Statement stmt;
        stmt.x = x;
        stmt.w = {proof_to_bytes(primaries[j]), proof_to_bytes(rec),
                  chain.entries[j - 1].x0(), canonical_encode(chain.entries[j].stmt.w),
                  Bytes{chain.entries[j].side}};
        rec = prove(sys.prover(CircuitId::recursive_link), stmt);
    }

    rp.final = std::move(rec);
    rp.final_x = std::move(x);
    return rp;
}

VerifyOutcome verify_inclusion(const ProofSystem& sys, const Digest& leaf_hash, const Digest& root,
                               const RecursiveProof& rp) {
    if (rp.backend != sys.backend()) return {false, "proof backend does not match verifier"};
    if (rp.final.backend != rp.backend) return {false, "inconsistent backend fields"};
    if (rp.public_leaf_hash != leaf_hash) return {false, "leaf hash does not match claim"};
    if (rp.public_root != root) return {false, "root does not match claim"};

    if (rp.k == 0) {
        if (root != leaf_hash) return {false, "k = 0 requires root == leaf hash"};
        if (rp.final.circuit != CircuitId::leaf_hash) return {false, "k = 0 proof must be leaf-hash"};
        if (rp.final_x != std::vector<Bytes>{leaf_hash.to_bytes()})
            return {false, "statement does not match claim"};
        return verify(sys.verifier(CircuitId::leaf_hash), rp.final_x, rp.final);
    }

    if (rp.final.circuit != CircuitId::recursive_link)
        return {false, "final proof must be recursive-link"};

    const std::vector<Bytes>& x = rp.final_x;
    std::size_t expected_len = (rp.mode == AggregationMode::simplified) ? 3 : rp.k + 2;
    if (x.size() != expected_len) return {false, "final statement has wrong arity"};
    AggregationMode mode;
    std::uint32_t j;
    if (!parse_link_meta(x[0], mode, j) || mode != rp.mode || j != rp.k)
        return {false, "final statement meta does not match proof header"};
    if (x[1] != leaf_hash.to_bytes()) return {false, "statement leaf hash does not match claim"};
    if (x.back() != root.to_bytes()) return {false, "statement root does not match claim"};

    return verify(sys.verifier(CircuitId::recursive_link), x, rp.final);
}

RecursiveProof prove_inclusion(const ProofSystem& sys, const Leaf& d, const MerklePath& path,
                               AggregationMode mode) {
    StatementChain chain = build_statement_chain(d, path);
    if (chain.root != path.expected_root)
        throw InvalidWitnessError("chain folds to " + to_hex(chain.root) +
                                  " but the path claims root " + to_hex(path.expected_root));
    std::vector<PrimaryProof> primaries = prove_chain(sys, chain);
    return aggregate(sys, chain, primaries, mode);
}

std::string recursive_proof_to_json(const RecursiveProof& rp) {
    json j;
    j["mode"] = mode_name(rp.mode);
    j["backend"] = backend_name(rp.backend);
    j["k"] = rp.k;
    j["leaf_hash"] = to_hex(rp.public_leaf_hash);
    j["root"] = to_hex(rp.public_root);
    json proof;
    proof["backend"] = backend_name(rp.final.backend);
    proof["circuit"] = circuit_name(rp.final.circuit);
    json xs = json::array();
    for (const Bytes& e : rp.final_x) xs.push_back(to_hex(e));
    proof["x"] = std::move(xs);
    proof["body"] = to_hex(rp.final.body);
    j["proof"] = std::move(proof);
    return j.dump(2);
}

RecursiveProof recursive_proof_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    RecursiveProof rp;
    rp.mode = mode_from_name(j.at("mode").get<std::string>());
    rp.backend = backend_from_name(j.at("backend").get<std::string>());
    rp.k = j.at("k").get<std::uint32_t>();
    rp.public_leaf_hash = digest_from_hex(j.at("leaf_hash").get<std::string>());
    rp.public_root = digest_from_hex(j.at("root").get<std::string>());
    const json& proof = j.at("proof");
    rp.final.backend = backend_from_name(proof.at("backend").get<std::string>());
    rp.final.circuit = circuit_from_name(proof.at("circuit").get<std::string>());
    rp.final.body = from_hex(proof.at("body").get<std::string>());
    for (const json& e : proof.at("x")) rp.final_x.push_back(from_hex(e.get<std::string>()));
    return rp;
}

}  // namespace zkmerkle
