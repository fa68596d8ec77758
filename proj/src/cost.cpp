#include "zkmerkle/cost.hpp"

#include <cstdio>
#include <stdexcept>

namespace zkmerkle {

namespace {

CostQuote quote(std::uint64_t bytes, double gas, CostKind kind, const GasModel& gm) {
    CostQuote q;
    q.payload_bytes = bytes;
    q.gas_used = gas;
    q.cost_eth = gas * gm.gas_price_eth;
    q.cost_usd = q.cost_eth * gm.eth_usd;
    q.model = kind;
    return q;
}

}  // namespace

std::string cost_kind_name(CostKind kind) {
    switch (kind) {
        case CostKind::per_kb: return "per-kb";
        case CostKind::slot_exact: return "slot-exact";
        case CostKind::metadata: return "metadata";
    }
    throw std::logic_error("unreachable");
}

CostQuote storage_cost(std::uint64_t bytes, CostKind model, const GasModel& gm) {
    switch (model) {
        case CostKind::slot_exact: {
            std::uint64_t slots = (bytes + gm.slot_bytes - 1) / gm.slot_bytes;
            double gas = static_cast<double>(slots * gm.gas_per_slot +
                                             bytes * gm.calldata_gas_per_byte + gm.base_tx_gas);
            return quote(bytes, gas, model, gm);
        }
        case CostKind::per_kb: {
            double gas = static_cast<double>(bytes) / 1024.0 * gm.per_kb_gas();
            return quote(bytes, gas, model, gm);
        }
        case CostKind::metadata:
            throw std::invalid_argument("metadata is not a storage model; use metadata_cost");
    }
    throw std::logic_error("unreachable");
}

CostQuote metadata_cost(std::uint64_t bytes, const GasModel& gm) {
    return quote(bytes, static_cast<double>(bytes * gm.metadata_gas_per_byte), CostKind::metadata,
                 gm);
}

std::vector<CostComparisonRow> compare_costs(std::uint64_t native_bytes,
                                             const std::vector<BackendProfile>& backends,
                                             const GasModel& gm) {
    std::vector<CostComparisonRow> rows;
    rows.push_back({"native", native_bytes, storage_cost(native_bytes, CostKind::per_kb, gm),
                    metadata_cost(native_bytes, gm)});
    for (const BackendProfile& profile : backends) {
        std::uint64_t size = (profile.proof_size > 0) ? profile.proof_size : native_bytes;
        rows.push_back({profile.name, size, storage_cost(size, CostKind::per_kb, gm),
                        metadata_cost(size, gm)});
    }
    return rows;
}

std::string cost_comparison_csv(std::uint64_t k, std::uint64_t native_bytes,
                                const std::vector<CostComparisonRow>& rows) {
    std::string out = "k,native_bytes,backend,proof_bytes,storage_usd,metadata_usd\n";
    char line[192];
    for (const CostComparisonRow& row : rows) {
        std::snprintf(line, sizeof(line), "%llu,%llu,%s,%llu,%.2f,%.2f\n",
                      static_cast<unsigned long long>(k),
                      static_cast<unsigned long long>(native_bytes), row.backend.c_str(),
                      static_cast<unsigned long long>(row.proof_bytes), row.storage.cost_usd,
                      row.metadata.cost_usd);
        out += line;
    }
    return out;
}

}  // namespace zkmerkle
