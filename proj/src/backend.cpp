#include "zkmerkle/backend.hpp"

#include <json.hpp>

#include "zkmerkle/keccak.hpp"

namespace zkmerkle {

using nlohmann::json;

std::string backend_name(BackendId id) {
    switch (id) {
        case BackendId::reexec: return "reexec";
        case BackendId::sim_stark: return "sim-stark";
        case BackendId::sim_plonk: return "sim-plonk";
        case BackendId::sim_groth16: return "sim-groth16";
    }
    throw std::logic_error("unreachable");
}

BackendId backend_from_name(const std::string& name) {
    if (name == "reexec") return BackendId::reexec;
    if (name == "sim-stark") return BackendId::sim_stark;
    if (name == "sim-plonk") return BackendId::sim_plonk;
    if (name == "sim-groth16") return BackendId::sim_groth16;
    throw BackendError("unknown backend: " + name);
}

std::vector<BackendId> all_backends() {
    return {BackendId::reexec, BackendId::sim_stark, BackendId::sim_plonk, BackendId::sim_groth16};
}

const BackendProfile& backend_profile(BackendId id) {
    static const BackendProfile kProfiles[] = {
        {"reexec", 0},
        {"sim-stark", 152996},
        {"sim-plonk", 928},
        {"sim-groth16", 256},
    };
    return kProfiles[static_cast<int>(id)];
}

namespace {

bool is_sim(BackendId id) { return id != BackendId::reexec; }

Bytes derive_tag(BackendId backend, std::uint64_t seed) {
    Bytes material = str_bytes("zkmerkle.setup.v1");
    append(material, str_bytes(backend_name(backend)));
    append_be64(material, seed);
    return keccak256(material).to_bytes();
}

Bytes authenticator(const Bytes& tag, CircuitId circuit, const std::vector<Bytes>& x) {
    Bytes material = tag;
    append(material, str_bytes(circuit_name(circuit)));
    append(material, canonical_encode(x));
    return keccak256(material).to_bytes();
}

/// Deterministic stream keyed by (tag, circuit, x): counter-mode keccak over
/// the authenticator. Fills the sim proof body beyond its first 32 octets.
Bytes sim_body(const Bytes& tag, CircuitId circuit, const std::vector<Bytes>& x,
               std::size_t proof_size) {
    Bytes auth = authenticator(tag, circuit, x);
    Bytes body = auth;
    body.reserve(proof_size);
    std::uint64_t counter = 0;
    while (body.size() < proof_size) {
        Bytes block_input = tag;
        append(block_input, str_bytes("stream"));
        append(block_input, auth);
        append_be64(block_input, counter++);
        Digest block = keccak256(block_input);
        std::size_t take = std::min<std::size_t>(32, proof_size - body.size());
        body.insert(body.end(), block.bytes.begin(), block.bytes.begin() + take);
    }
    return body;
}

}  // namespace

SetupResult setup(BackendId backend, const CircuitSpec& circuit, std::uint64_t seed) {
    Bytes tag = is_sim(backend) ? derive_tag(backend, seed) : Bytes{};
    return {ProverParams{backend, circuit.id, tag}, VerifierParams{backend, circuit.id, tag}};
}

RelationContext make_relation_context(BackendId backend, const Bytes& shared_tag) {
    RelationContext ctx;
    ctx.verify_embedded = [backend, shared_tag](CircuitId circuit, const std::vector<Bytes>& x,
                                                const Bytes& proof_bytes) {
        PrimaryProof proof;
        try {
            proof = proof_from_bytes(proof_bytes);
        } catch (const std::exception&) {
            return false;
        }
        if (proof.backend != backend || proof.circuit != circuit) return false;
        VerifierParams params{backend, circuit, shared_tag};
        return static_cast<bool>(verify(params, x, proof));
    };
    return ctx;
}

PrimaryProof prove(const ProverParams& params, const Statement& stmt) {
    RelationContext ctx = make_relation_context(params.backend, params.shared_tag);
    if (!eval_relation(params.circuit, stmt.x, stmt.w, &ctx))
        throw InvalidWitnessError("relation " + circuit_name(params.circuit) +
                                  " does not hold; prover refuses");

    PrimaryProof proof;
    proof.backend = params.backend;
    proof.circuit = params.circuit;
    if (is_sim(params.backend)) {
        proof.body = sim_body(params.shared_tag, params.circuit, stmt.x,
                              backend_profile(params.backend).proof_size);
    } else {
        proof.body = canonical_encode(stmt.w);
    }
    return proof;
}

VerifyOutcome verify(const VerifierParams& params, const std::vector<Bytes>& x,
                     const PrimaryProof& proof) {
    if (proof.backend != params.backend) return {false, "proof backend does not match params"};
    if (proof.circuit != params.circuit) return {false, "proof circuit does not match params"};

    if (is_sim(params.backend)) {
        std::size_t expected_size = backend_profile(params.backend).proof_size;
        if (proof.body.size() != expected_size)
            return {false, "proof body is " + std::to_string(proof.body.size()) +
                               " bytes, expected " + std::to_string(expected_size)};
        if (proof.body != sim_body(params.shared_tag, params.circuit, x, expected_size))
            return {false, "authenticator mismatch"};
        return {true, {}};
    }

    std::vector<Bytes> witness;
    try {
        witness = canonical_decode(proof.body);
    } catch (const EncodingError& e) {
        return {false, std::string("malformed embedded witness: ") + e.what()};
    }
    RelationContext ctx = make_relation_context(params.backend, params.shared_tag);
    try {
        if (!eval_relation(params.circuit, x, witness, &ctx))
            return {false, "relation does not hold on embedded witness"};
    } catch (const std::exception& e) {
        return {false, std::string("relation evaluation failed: ") + e.what()};
    }
    return {true, {}};
}

Bytes proof_to_bytes(const PrimaryProof& proof) {
    return canonical_encode(
        {str_bytes(backend_name(proof.backend)), str_bytes(circuit_name(proof.circuit)), proof.body});
}

PrimaryProof proof_from_bytes(BytesView blob) {
    std::vector<Bytes> parts = canonical_decode(blob);
    if (parts.size() != 3) throw EncodingError("serialized proof must have 3 fields");
    PrimaryProof proof;
    proof.backend = backend_from_name(std::string(parts[0].begin(), parts[0].end()));
    proof.circuit = circuit_from_name(std::string(parts[1].begin(), parts[1].end()));
    proof.body = std::move(parts[2]);
    return proof;
}

std::string proof_to_json(const PrimaryProof& proof, const std::vector<Bytes>& x) {
    json j;
    j["backend"] = backend_name(proof.backend);
    j["circuit"] = circuit_name(proof.circuit);
    json xs = json::array();
    for (const Bytes& e : x) xs.push_back(to_hex(e));
    j["x"] = std::move(xs);
    j["body"] = to_hex(proof.body);
    return j.dump(2);
}

std::pair<PrimaryProof, std::vector<Bytes>> proof_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    PrimaryProof proof;
    proof.backend = backend_from_name(j.at("backend").get<std::string>());
    proof.circuit = circuit_from_name(j.at("circuit").get<std::string>());
    proof.body = from_hex(j.at("body").get<std::string>());
    std::vector<Bytes> x;
    for (const json& e : j.at("x")) x.push_back(from_hex(e.get<std::string>()));
    return {std::move(proof), std::move(x)};
}

}  // namespace zkmerkle
