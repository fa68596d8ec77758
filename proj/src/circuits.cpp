#include "zkmerkle/circuits.hpp"

#include <algorithm>
#include <stdexcept>

#include "zkmerkle/keccak.hpp"

namespace zkmerkle {

std::string circuit_name(CircuitId id) {
    switch (id) {
        case CircuitId::leaf_hash: return "leaf-hash";
        case CircuitId::hash_step: return "hash-step";
        case CircuitId::mpt_step: return "mpt-step";
        case CircuitId::recursive_link: return "recursive-link";
    }
    throw std::logic_error("unreachable");
}

CircuitId circuit_from_name(const std::string& name) {
    if (name == "leaf-hash") return CircuitId::leaf_hash;
    if (name == "hash-step") return CircuitId::hash_step;
    if (name == "mpt-step") return CircuitId::mpt_step;
    if (name == "recursive-link") return CircuitId::recursive_link;
    throw std::invalid_argument("unknown circuit: " + name);
}

std::string mode_name(AggregationMode mode) {
    return mode == AggregationMode::full ? "full" : "simplified";
}

AggregationMode mode_from_name(const std::string& name) {
    if (name == "full") return AggregationMode::full;
    if (name == "simplified") return AggregationMode::simplified;
    throw std::invalid_argument("unknown aggregation mode: " + name);
}

Bytes link_meta(AggregationMode mode, std::uint32_t step_index) {
    Bytes out;
    out.push_back(static_cast<std::uint8_t>(mode));
    append_be32(out, step_index);
    return out;
}

bool parse_link_meta(BytesView meta, AggregationMode& mode, std::uint32_t& step_index) {
    if (meta.size() != 5) return false;
    if (meta[0] > 1) return false;
    mode = static_cast<AggregationMode>(meta[0]);
    step_index = (std::uint32_t(meta[1]) << 24) | (std::uint32_t(meta[2]) << 16) |
                 (std::uint32_t(meta[3]) << 8) | std::uint32_t(meta[4]);
    return true;
}

namespace {

bool is_digest(const Bytes& b) { return b.size() == 32; }

bool digest_equals(const Bytes& b, BytesView view) {
    return b.size() == view.size() && std::equal(b.begin(), b.end(), view.begin());
}

bool eval_leaf_hash(const std::vector<Bytes>& x, const std::vector<Bytes>& w) {
    if (x.size() != 1 || w.size() != 1 || !is_digest(x[0])) return false;
    return keccak256(w[0]).to_bytes() == x[0];
}

bool eval_hash_step(const std::vector<Bytes>& x, const std::vector<Bytes>& w) {
    if (x.size() != 1 || w.size() != 1 || !is_digest(x[0])) return false;
    if (w[0].size() != 64) return false;
    return keccak256(w[0]).to_bytes() == x[0];
}

bool contains_subsequence(const Bytes& haystack, const Bytes& needle) {
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
           haystack.end();
}

bool eval_mpt_step(const std::vector<Bytes>& x, const std::vector<Bytes>& w) {
    if (x.size() != 1 || w.size() != 2 || !is_digest(x[0])) return false;
    const Bytes& node = w[0];
    const Bytes& child_ref = w[1];
    if (child_ref.empty() || child_ref.size() > node.size()) return false;
    if (!contains_subsequence(node, child_ref)) return false;
    return keccak256(node).to_bytes() == x[0];
}

/// Chain binding: the previous accumulator designates the child reference
/// embedded in this node, either directly (32-byte hash reference) or as the
/// hash of the embedded bytes (inline node; leaf value under its leaf node).
bool ref_binds_to(const Bytes& child_ref, const Bytes& prev_acc) {
    if (child_ref == prev_acc) return true;
    return keccak256(child_ref).to_bytes() == prev_acc;
}

bool parse_embedded_proof(const Bytes& blob, CircuitId& circuit_out) {
    try {
        std::vector<Bytes> parts = canonical_decode(blob);
        if (parts.size() != 3) return false;
        std::string circuit(parts[1].begin(), parts[1].end());
        circuit_out = circuit_from_name(circuit);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool eval_recursive_link(const std::vector<Bytes>& x, const std::vector<Bytes>& w,
                         const RelationContext& ctx) {
    // statement shape
    if (x.size() < 3) return false;
    AggregationMode mode;
    std::uint32_t j;
    if (!parse_link_meta(x[0], mode, j)) return false;
    if (j < 1) return false;
    const Bytes& leaf_hash = x[1];
    if (!is_digest(leaf_hash)) return false;
    if (mode == AggregationMode::simplified) {
        if (x.size() != 3) return false;
    } else {
        if (x.size() != static_cast<std::size_t>(j) + 2) return false;
    }
    for (std::size_t i = 2; i < x.size(); ++i)
        if (!is_digest(x[i])) return false;
    const Bytes& acc = x.back();

    // witness shape
    if (w.size() != 5) return false;
    const Bytes& step_proof = w[0];
    const Bytes& inner_proof = w[1];
    const Bytes& prev_acc = w[2];
    const Bytes& step_witness_enc = w[3];
    if (!is_digest(prev_acc)) return false;
    if (w[4].size() != 1) return false;
    std::uint8_t side = w[4][0];

    // the witness accumulator must agree with whatever the statement exposes
    if (mode == AggregationMode::full) {
        const Bytes& expected_prev = (j >= 2) ? x[j] : leaf_hash;
        if (prev_acc != expected_prev) return false;
    } else if (j == 1) {
        if (prev_acc != leaf_hash) return false;
    }

    // re-check the hash step and its chaining to the previous accumulator
    std::vector<Bytes> step_w;
    try {
        step_w = canonical_decode(step_witness_enc);
    } catch (const EncodingError&) {
        return false;
    }
    CircuitId step_circuit;
    if (side == 0 || side == 1) {
        step_circuit = CircuitId::hash_step;
        if (step_w.size() != 1 || step_w[0].size() != 64) return false;
        if (keccak256(step_w[0]).to_bytes() != acc) return false;
        BytesView acc_part = (side == 0) ? BytesView{step_w[0]}.subspan(32, 32)
                                         : BytesView{step_w[0]}.subspan(0, 32);
        if (!digest_equals(prev_acc, acc_part)) return false;
    } else if (side == 2) {
        step_circuit = CircuitId::mpt_step;
        if (step_w.size() != 2) return false;
        if (!eval_mpt_step({acc}, step_w)) return false;
        if (!ref_binds_to(step_w[1], prev_acc)) return false;
    } else {
        return false;
    }

    // the step proof must be for the right circuit and must verify
    CircuitId parsed;
    if (!parse_embedded_proof(step_proof, parsed) || parsed != step_circuit) return false;
    if (!ctx.verify_embedded(step_circuit, {acc}, step_proof)) return false;

    // the inner proof attests everything below this step
    if (!parse_embedded_proof(inner_proof, parsed)) return false;
    if (j == 1) {
        if (parsed != CircuitId::leaf_hash) return false;
        return ctx.verify_embedded(CircuitId::leaf_hash, {leaf_hash}, inner_proof);
    }
    if (parsed != CircuitId::recursive_link) return false;
    std::vector<Bytes> inner_x;
    inner_x.push_back(link_meta(mode, j - 1));
    inner_x.push_back(leaf_hash);
    if (mode == AggregationMode::simplified) {
        inner_x.push_back(prev_acc);
    } else {
        inner_x.insert(inner_x.end(), x.begin() + 2, x.begin() + 2 + (j - 1));
    }
    return ctx.verify_embedded(CircuitId::recursive_link, inner_x, inner_proof);
}

}  // namespace

bool eval_relation(CircuitId id, const std::vector<Bytes>& x, const std::vector<Bytes>& w,
                   const RelationContext* ctx) {
    switch (id) {
        case CircuitId::leaf_hash: return eval_leaf_hash(x, w);
        case CircuitId::hash_step: return eval_hash_step(x, w);
        case CircuitId::mpt_step: return eval_mpt_step(x, w);
        case CircuitId::recursive_link:
            if (!ctx || !ctx->verify_embedded)
                throw std::invalid_argument(
                    "recursive-link relation requires a RelationContext");
            return eval_recursive_link(x, w, *ctx);
    }
    throw std::logic_error("unreachable");
}

}  // namespace zkmerkle
