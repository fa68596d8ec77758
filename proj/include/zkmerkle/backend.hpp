#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkmerkle/bytes.hpp"
#include "zkmerkle/circuits.hpp"
#include "zkmerkle/statement.hpp"

namespace zkmerkle {

/// Interchangeable proof backends behind one P/V contract.
///
/// reexec is the correctness oracle: its "proof" embeds the witness and its
/// verifier re-runs the relation, transitively for recursive links. The sim
/// backends are size-faithful testing doubles: fixed-size bodies derived
/// from a secret tag, honest because the prover refuses invalid witnesses.
/// None of them provide zero knowledge.
enum class BackendId { reexec, sim_stark, sim_plonk, sim_groth16 };

std::string backend_name(BackendId id);
BackendId backend_from_name(const std::string& name);
std::vector<BackendId> all_backends();

struct BackendProfile {
    std::string name;
    std::size_t proof_size;  // bytes; 0 means witness-dependent (reexec)
};

const BackendProfile& backend_profile(BackendId id);

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Prover refused: the statement's relation does not hold on (x, w).
struct InvalidWitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProverParams {
    BackendId backend;
    CircuitId circuit;
    Bytes shared_tag;  // 32 octets for sim backends, empty for reexec
};

struct VerifierParams {
    BackendId backend;
    CircuitId circuit;
    Bytes shared_tag;
};

struct SetupResult {
    ProverParams prover;
    VerifierParams verifier;
};

/// Deterministic parameter generation for test reproducibility: the same
/// (backend, seed) always yields the same tag, shared across circuits so a
/// prover for one circuit can check proofs embedded under another.
SetupResult setup(BackendId backend, const CircuitSpec& circuit, std::uint64_t seed = 0);

struct PrimaryProof {
    BackendId backend;
    CircuitId circuit;
    Bytes body;

    std::size_t declared_size() const { return body.size(); }
};

PrimaryProof prove(const ProverParams& params, const Statement& stmt);

struct VerifyOutcome {
    bool accepted = false;
    std::string reason;  // empty on accept

    explicit operator bool() const { return accepted; }
};

VerifyOutcome verify(const VerifierParams& params, const std::vector<Bytes>& x,
                     const PrimaryProof& proof);

/// Canonical serialization used when a proof is embedded in a witness.
Bytes proof_to_bytes(const PrimaryProof& proof);
PrimaryProof proof_from_bytes(BytesView blob);

/// Proof file format carries the public input alongside the proof.
std::string proof_to_json(const PrimaryProof& proof, const std::vector<Bytes>& x);
std::pair<PrimaryProof, std::vector<Bytes>> proof_from_json(const std::string& json_text);

/// Relation context wired to this backend family, for evaluating
/// recursive-link relations at prove and verify time.
RelationContext make_relation_context(BackendId backend, const Bytes& shared_tag);

}  // namespace zkmerkle
