#include "zkmerkle/security.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace zkmerkle {

namespace {

constexpr long double kLog10Of2 = 0.30102999566398119521L;

ProbabilityValue make_value(long double value, long double log10_fallback) {
    ProbabilityValue out;
    out.value = static_cast<double>(value);
    if (value > 0.0L && static_cast<double>(value) > 0.0) {
        out.log10_value = static_cast<double>(std::log10(value));
    } else {
        out.log10_value = static_cast<double>(log10_fallback);
    }
    return out;
}

}  // namespace

ProbabilityValue p_collision(unsigned hash_bits, double samples) {
    if (hash_bits < 1) throw std::domain_error("hash_bits must be >= 1");
    if (samples < 2.0) return {0.0, -std::numeric_limits<double>::infinity()};

    long double s = samples;
    long double pairs = s * (s - 1.0L);
    long double exponent = std::ldexp(pairs, -static_cast<int>(hash_bits + 1));
    long double value = -std::expm1(-exponent);
    // below underflow the probability is the exponent itself to first order
    long double log10_fallback =
        std::log10(s) + std::log10(s - 1.0L) - (hash_bits + 1) * kLog10Of2;
    return make_value(value, log10_fallback);
}

ProbabilityValue p_preimage(unsigned hash_bits) {
    if (hash_bits < 1) throw std::domain_error("hash_bits must be >= 1");
    long double value = std::ldexp(1.0L, -static_cast<int>(hash_bits));
    return make_value(value, -static_cast<long double>(hash_bits) * kLog10Of2);
}

ProbabilityValue p_second_preimage(unsigned hash_bits) { return p_preimage(hash_bits); }

ProbabilityValue p_root_collision(unsigned hash_bits, std::uint64_t path_length, bool adversarial,
                                  RootCollisionMethod method) {
    if (hash_bits < 1) throw std::domain_error("hash_bits must be >= 1");
    if (adversarial && hash_bits % 2 != 0)
        throw std::domain_error("adversarial variant halves m and needs it even");

    unsigned effective_bits = adversarial ? hash_bits / 2 : hash_bits;
    long double q = std::ldexp(1.0L, -static_cast<int>(effective_bits));
    long double k = static_cast<long double>(path_length);

    long double value;
    long double log10_fallback;
    if (method == RootCollisionMethod::approx) {
        value = -std::expm1(-k * q);
        log10_fallback = (path_length == 0)
                             ? -std::numeric_limits<long double>::infinity()
                             : std::log10(k) - effective_bits * kLog10Of2;
    } else {
        // 1 - (1-q)^k without cancellation
        long double tail = -std::expm1(k * std::log1p(-q));
        value = q + (1.0L - q) * tail;
        log10_fallback = std::log10(k + 1.0L) - effective_bits * kLog10Of2;
    }
    return make_value(value, log10_fallback);
}

double birthday_bound(unsigned hash_bits, double target_probability) {
    if (hash_bits < 1) throw std::domain_error("hash_bits must be >= 1");
    if (!(target_probability > 0.0) || !(target_probability < 1.0))
        throw std::domain_error("target probability must lie strictly between 0 and 1");
    long double neg_log = -std::log1p(-static_cast<long double>(target_probability));
    return static_cast<double>(std::sqrt(std::ldexp(neg_log, static_cast<int>(hash_bits) + 1)));
}

std::vector<CurveRow> curve_dump(unsigned m_lo, unsigned m_hi, std::uint64_t k_lo,
                                 std::uint64_t k_hi, bool adversarial) {
    if (m_lo < 1 || m_hi < m_lo || k_hi < k_lo) throw std::domain_error("empty curve range");

    std::vector<CurveRow> rows;
    rows.reserve((m_hi - m_lo + 1) * (k_hi - k_lo + 2));
    for (unsigned m = m_lo; m <= m_hi; ++m) {
        for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
            ProbabilityValue p = p_root_collision(m, k, adversarial, RootCollisionMethod::exact);
            rows.push_back({m, k, adversarial, "exact", p.value, p.log10_value});
        }
        ProbabilityValue floor = p_preimage(adversarial ? m / 2 : m);
        rows.push_back({m, 0, adversarial, "preimage", floor.value, floor.log10_value});
    }
    return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::string out = "m,k,adversarial,method,probability,log10_probability\n";
    char line[160];
    for (const CurveRow& row : rows) {
        std::snprintf(line, sizeof(line), "%u,%llu,%d,%s,%.10e,%.6f\n", row.m,
                      static_cast<unsigned long long>(row.k), row.adversarial ? 1 : 0,
                      row.method.c_str(), row.probability, row.log10_probability);
        out += line;
    }
    return out;
}

}  // namespace zkmerkle
