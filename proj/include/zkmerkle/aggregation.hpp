#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkmerkle/backend.hpp"
#include "zkmerkle/circuits.hpp"
#include "zkmerkle/merkle.hpp"
#include "zkmerkle/statement.hpp"

namespace zkmerkle {

/// A chain entry could not be proven: its relation does not hold.
struct ChainBreakError : std::runtime_error {
    std::size_t index;
    ChainBreakError(std::size_t idx, const std::string& msg)
        : std::runtime_error(msg), index(idx) {}
};

/// A primary proof failed re-verification before aggregation.
struct AggregationRefusedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One statement of the chain plus what the aggregator needs to link it:
/// which circuit proves it and how the previous accumulator sits inside the
/// witness (concatenation side, or embedded in a trie node).
struct ChainEntry {
    Statement stmt;
    CircuitId circuit;
    std::uint8_t side;  // 0 sibling-left, 1 sibling-right, 2 trie node; 0xff entry 0

    const Bytes& x0() const { return stmt.x[0]; }
};

/// Statements (x_0, w_0) .. (x_k, w_k) along one authentication path.
/// x_0 = H(d), each x_j re-hashes the previous accumulator with step j,
/// and x_k is the root this chain reproduces.
struct StatementChain {
    std::vector<ChainEntry> entries;
    Digest leaf_hash;  // x_0
    Digest root;       // x_k as computed by the chain

    std::size_t k() const { return entries.size() - 1; }
};

StatementChain build_statement_chain(const Leaf& d, const MerklePath& path);

/// Prover/verifier parameter bundle for all four circuits under one backend
/// and seed. Verification needs the same (backend, seed) pair that proved.
class ProofSystem {
  public:
    explicit ProofSystem(BackendId backend, std::uint64_t seed = 0);

    BackendId backend() const { return backend_; }
    std::uint64_t seed() const { return seed_; }
    const ProverParams& prover(CircuitId circuit) const;
    const VerifierParams& verifier(CircuitId circuit) const;

  private:
    BackendId backend_;
    std::uint64_t seed_;
    std::array<SetupResult, 4> params_;
};

/// Proves every chain entry independently; throws ChainBreakError carrying
/// the first index whose relation fails.
std::vector<PrimaryProof> prove_chain(const ProofSystem& sys, const StatementChain& chain);

/// The final recursive proof πr_k plus its public claim. In simplified mode
/// the statement exposes exactly the leaf hash and the root; in full mode it
/// also exposes every intermediate accumulator.
struct RecursiveProof {
    PrimaryProof final;
    std::vector<Bytes> final_x;  // the final link statement
    Digest public_leaf_hash;
    Digest public_root;
    std::uint32_t k = 0;
    AggregationMode mode = AggregationMode::simplified;
    BackendId backend = BackendId::reexec;
};

/// Folds the primary proofs into the recursive chain πr_1 .. πr_k, where
/// each link witness carries (π_j, πr_{j-1}) so πr_k attests the entire
/// chain transitively. π_0 doubles as the recursion base.
RecursiveProof aggregate(const ProofSystem& sys, const StatementChain& chain,
                         const std::vector<PrimaryProof>& primaries, AggregationMode mode);

/// Accepts iff the proof claims exactly (leaf_hash, root) and its final
/// backend proof verifies; under reexec this transitively re-checks the
/// whole chain down to the leaf data.
VerifyOutcome verify_inclusion(const ProofSystem& sys, const Digest& leaf_hash, const Digest& root,
                               const RecursiveProof& rp);

/// build_statement_chain → prove_chain → aggregate, with a root consistency
/// check up front so a mismatched path fails fast.
RecursiveProof prove_inclusion(const ProofSystem& sys, const Leaf& d, const MerklePath& path,
                               AggregationMode mode);

std::string recursive_proof_to_json(const RecursiveProof& rp);
RecursiveProof recursive_proof_from_json(const std::string& json_text);

}  // namespace zkmerkle
