#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zkmerkle {

/// Probability with its base-10 magnitude carried separately, so quantities
/// far below double underflow still report a meaningful exponent.
struct ProbabilityValue {
    double value = 0.0;        // 0 when the true value underflows
    double log10_value = 0.0;  // -inf for an exact zero
};

/// Birthday collision probability after s samples of an ideal m-bit hash:
/// 1 - exp(-s(s-1) / 2^(m+1)).
ProbabilityValue p_collision(unsigned hash_bits, double samples);

/// Chance of inverting one digest in a single trial: 2^(-m).
ProbabilityValue p_preimage(unsigned hash_bits);

/// Equals p_preimage exactly.
ProbabilityValue p_second_preimage(unsigned hash_bits);

enum class RootCollisionMethod { exact, approx };

/// Probability that two different leaves reproduce the same root over a
/// k-step path. exact: q + (1-q)(1 - (1-q)^k) with q = 2^(-m), evaluated via
/// log1p/expm1; approx: 1 - exp(-k q). The adversarial variant substitutes
/// q = 2^(-m/2) (attacker free to grind roots and paths, birthday regime).
ProbabilityValue p_root_collision(unsigned hash_bits, std::uint64_t path_length,
                                  bool adversarial = false,
                                  RootCollisionMethod method = RootCollisionMethod::exact);

/// Number of samples at which collision probability reaches p:
/// sqrt(-2^(m+1) ln(1-p)); approximately 1.1774 * 2^(m/2) at p = 1/2.
/// Throws std::domain_error unless 0 < p < 1.
double birthday_bound(unsigned hash_bits, double target_probability);

struct CurveRow {
    unsigned m;
    std::uint64_t k;
    bool adversarial;
    std::string method;  // "exact" or the "preimage" reference floor
    double probability;
    double log10_probability;
};

/// Grid of root-collision probabilities for re-plotting, one exact row per
/// (m, k) plus a 2^(-m) reference row per m (the dotted floors).
std::vector<CurveRow> curve_dump(unsigned m_lo, unsigned m_hi, std::uint64_t k_lo,
                                 std::uint64_t k_hi, bool adversarial = false);

std::string curve_csv(const std::vector<CurveRow>& rows);

}  // namespace zkmerkle
