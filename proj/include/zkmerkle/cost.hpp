#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zkmerkle/backend.hpp"

namespace zkmerkle {

/// Ethereum fee constants plus conversion rates. Defaults are the Yellow
/// Paper storage/calldata figures this library calibrates against: storing
/// 1 KB costs exactly 677,384 gas = $67.74 at 5e-8 ETH/gas and $2000/ETH.
struct GasModel {
    std::uint64_t gas_per_slot = 20000;
    std::uint64_t calldata_gas_per_byte = 16;
    std::uint64_t base_tx_gas = 21000;
    std::uint64_t metadata_gas_per_byte = 68;
    std::uint64_t slot_bytes = 32;
    double gas_price_eth = 5e-8;
    double eth_usd = 2000.0;

    /// Gas to store exactly one kilobyte under the slot-exact rule; the
    /// anchor the per-kb linear model scales from.
    double per_kb_gas() const {
        return static_cast<double>((1024 / slot_bytes) * gas_per_slot +
                                   1024 * calldata_gas_per_byte + base_tx_gas);
    }
};

enum class CostKind { per_kb, slot_exact, metadata };

std::string cost_kind_name(CostKind kind);

struct CostQuote {
    std::uint64_t payload_bytes = 0;
    double gas_used = 0.0;
    double cost_eth = 0.0;
    double cost_usd = 0.0;
    CostKind model = CostKind::per_kb;
};

/// slot_exact: ceil(bytes/32)*20000 + bytes*16 + 21000.
/// per_kb: bytes/1024 * 677,384 — the linear scaling that reproduces the
/// published cost tables (slot rounding ignored by design).
CostQuote storage_cost(std::uint64_t bytes, CostKind model, const GasModel& gm = {});

/// Pre-Istanbul transaction-data pricing: bytes * 68 gas.
CostQuote metadata_cost(std::uint64_t bytes, const GasModel& gm = {});

struct CostComparisonRow {
    std::string backend;  // "native" for the first row
    std::uint64_t proof_bytes = 0;
    CostQuote storage;
    CostQuote metadata;
};

/// Native proof cost against each backend's constant aggregated size,
/// storage and metadata quotes side by side. Uses the per-kb model.
std::vector<CostComparisonRow> compare_costs(std::uint64_t native_bytes,
                                             const std::vector<BackendProfile>& backends,
                                             const GasModel& gm = {});

/// CLI-facing CSV: k,native_bytes,backend,proof_bytes,storage_usd,metadata_usd
std::string cost_comparison_csv(std::uint64_t k, std::uint64_t native_bytes,
                                const std::vector<CostComparisonRow>& rows);

}  // namespace zkmerkle
