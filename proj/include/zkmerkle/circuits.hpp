#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zkmerkle/bytes.hpp"
#include "zkmerkle/statement.hpp"

namespace zkmerkle {

/// The fixed relation registry. Each id names a deterministic, total
/// predicate over (x, w) octet-string tuples.
enum class CircuitId {
    leaf_hash,       // x = (H(d)),      w = (d)
    hash_step,       // x = (digest),    w = (64-byte preimage: left||right)
    mpt_step,        // x = (H(node)),   w = (node, child_ref ⊆ node)
    recursive_link,  // x = link statement, w = (step π, inner π, prev acc, step w, side)
};

std::string circuit_name(CircuitId id);
CircuitId circuit_from_name(const std::string& name);

struct CircuitSpec {
    CircuitId id;
};

/// Services a relation may need beyond (x, w). The recursive-link relation
/// verifies the proofs embedded in its witness through this hook; the proof
/// backends install an implementation bound to their own verifier state.
struct RelationContext {
    /// Returns true iff `proof_bytes` (a serialized PrimaryProof) verifies
    /// for circuit `id` against public input `x`.
    std::function<bool(CircuitId id, const std::vector<Bytes>& x, const Bytes& proof_bytes)>
        verify_embedded;
};

/// Evaluates relation `id` on (x, w). Malformed tuples evaluate to false
/// rather than throwing. `ctx` is required for recursive_link only.
bool eval_relation(CircuitId id, const std::vector<Bytes>& x, const std::vector<Bytes>& w,
                   const RelationContext* ctx);

/// Aggregation link statements. mode/full layout:
///   x = (meta, leaf_hash, acc_1 .. acc_j)     meta = mode byte || j as be32
/// simplified layout:
///   x = (meta, leaf_hash, acc_j)
/// The link witness is
///   w = (step_proof, inner_proof, prev_acc, canonical(step witness), side)
enum class AggregationMode : std::uint8_t { simplified = 0, full = 1 };

std::string mode_name(AggregationMode mode);
AggregationMode mode_from_name(const std::string& name);

Bytes link_meta(AggregationMode mode, std::uint32_t step_index);
bool parse_link_meta(BytesView meta, AggregationMode& mode, std::uint32_t& step_index);

}  // namespace zkmerkle
