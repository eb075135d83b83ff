#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "gdnc/channel.hpp"
#include "gdnc/protocol.hpp"

namespace gdnc {

/// The paper's leading-term outage approximations, as a function of the
/// per-link outage probability Pe. Throws UsageError for scheme/parameter
/// combinations without a closed form (use the exact oracle instead).
inline double analytic_outage(Scheme scheme, int M, int k1, int k2, bool reciprocal, double Pe) {
    if (Pe < 0.0 || Pe > 1.0) throw UsageError("Pe must lie in [0, 1]");
    switch (scheme) {
        case Scheme::DF:
            if (M == 2 && k1 == 1 && k2 == 1) return 0.5 * Pe * Pe;
            break;
        case Scheme::BNC:
            if (M == 2 && k1 == 1 && k2 == 1) return Pe * Pe;
            break;
        case Scheme::DNC:
            if (M == 2 && k1 == 1 && k2 == 1)
                return (reciprocal ? 3.5 : 4.0) * Pe * Pe * Pe;
            break;
        case Scheme::GDNC:
            return std::pow(Pe, M + k2);
    }
    throw UsageError("no closed-form approximation for this scheme/parameter combination; "
                     "use the exact enumeration oracle");
}

constexpr std::uint64_t kDefaultOutageBudget = std::uint64_t(1) << 26;

namespace detail {

struct InterUserLink {
    int src, rcv, slot;
};

inline std::vector<InterUserLink> inter_user_links(const SchemeConfig& cfg) {
    std::vector<InterUserLink> links;
    for (int t = 0; t < cfg.k1; ++t)
        for (int j = 0; j < cfg.M; ++j)
            for (int i = 0; i < cfg.M; ++i) {
                if (i == j) continue;
                if (cfg.reciprocal && i < j) continue;  // shared with the mirror link
                links.push_back({j, i, t});
            }
    return links;
}

inline DecodingSets sets_from_mask(const SchemeConfig& cfg,
                                   const std::vector<InterUserLink>& links, std::uint64_t mask) {
    DecodingSets sets;
    sets.M = cfg.M;
    sets.k1 = cfg.k1;
    sets.failed.assign(std::size_t(cfg.M) * cfg.k1, 0);
    for (std::size_t idx = 0; idx < links.size(); ++idx) {
        if (!((mask >> idx) & 1)) continue;
        const auto& ln = links[idx];
        sets.failed[ln.src * cfg.k1 + ln.slot] |= (1u << ln.rcv);
        if (cfg.reciprocal)
            sets.failed[ln.rcv * cfg.k1 + ln.slot] |= (1u << ln.src);
    }
    return sets;
}

}  // namespace detail

/// Exact outage probability of the target message I_1(1), by full
/// enumeration of inter-user and BS outage events. Every physical link
/// fails independently with probability interUserPe / bsPe; an MRC
/// virtual column fails with the Erlang-2 probability at the threshold g
/// matching bsPe. Exact up to floating-point rounding.
inline double exact_outage_enumeration(const SchemeConfig& cfg, double bsPe, double interUserPe,
                                       std::uint64_t budget = kDefaultOutageBudget) {
    cfg.validate();
    const auto links = detail::inter_user_links(cfg);
    const double mrcPe = mrc_outage_prob(g_from_pe(bsPe), 2);

    if (links.size() >= 63) throw BudgetError("too many inter-user links to enumerate");
    const std::uint64_t iuCount = std::uint64_t(1) << links.size();
    const int maxCols = cfg.scheme == Scheme::DF ? 2 : cfg.n();
    if (maxCols >= 63 || iuCount > budget ||
        (std::uint64_t(1) << maxCols) > budget / std::max<std::uint64_t>(iuCount, 1))
        throw BudgetError("outage-pattern count exceeds enumeration budget");

    double total = 0.0;
    for (std::uint64_t iu = 0; iu < iuCount; ++iu) {
        double pIu = 1.0;
        for (std::size_t idx = 0; idx < links.size(); ++idx)
            pIu *= ((iu >> idx) & 1) ? interUserPe : 1.0 - interUserPe;
        if (pIu == 0.0) continue;

        const DecodingSets sets = detail::sets_from_mask(cfg, links, iu);
        const auto cols = virtual_columns(cfg, sets);
        const int nc = int(cols.size());

        std::vector<bool> outage(nc);
        for (std::uint64_t bs = 0; bs < (std::uint64_t(1) << nc); ++bs) {
            double pr = pIu;
            for (int c = 0; c < nc; ++c) {
                const double po = cols[c].fades == 2 ? mrcPe : bsPe;
                if ((bs >> c) & 1) {
                    pr *= po;
                    outage[c] = true;
                } else {
                    pr *= 1.0 - po;
                    outage[c] = false;
                }
            }
            if (pr == 0.0) continue;
            if (!decode_round(cfg, cols, outage)[0]) total += pr;
        }
    }
    return total;
}

/// Same, with a single Pe on every link (the paper's equal-average-SNR
/// assumption).
inline double exact_outage_enumeration(const SchemeConfig& cfg,
                                       std::uint64_t budget = kDefaultOutageBudget) {
    const double p = pe(cfg.channel.g);
    return exact_outage_enumeration(cfg, p, p, budget);
}

/// Multiplicity gamma(k1, k2, Dbar): with the decoding-failure set Dbar
/// fixed for the target message (and every other packet fully decoded),
/// counts the BS erasure patterns of minimal weight (M - |Dbar|)*k2 + 1
/// that prevent recovery of the target. Defined for the zero-replacement
/// schemes (no MRC fallback).
inline std::uint64_t multiplicity_gamma(const SchemeConfig& cfg, std::uint32_t dbarMask,
                                        std::uint64_t budget = kDefaultOutageBudget) {
    cfg.validate();
    if (cfg.scheme == Scheme::DF) throw UsageError("gamma is undefined for the DF scheme");
    if (dbarMask & 1u) throw UsageError("user 1 always holds its own packet");

    DecodingSets sets;
    sets.M = cfg.M;
    sets.k1 = cfg.k1;
    sets.failed.assign(std::size_t(cfg.M) * cfg.k1, 0);
    sets.failed[0] = dbarMask;

    const Matrix eff = build_effective_generator(cfg.code, sets);
    const int n = cfg.n();
    const int dbar = __builtin_popcount(dbarMask);
    const int weight = (cfg.M - dbar) * cfg.k2 + 1;
    if (detail::binomial(n, weight) > budget)
        throw BudgetError("erasure-pattern count exceeds enumeration budget");

    std::uint64_t count = 0;
    detail::for_each_subset(n, weight, [&](const std::vector<int>& erased) {
        ErasurePattern pattern;
        std::size_t next = 0;
        for (int j = 0; j < n; ++j) {
            if (next < erased.size() && erased[next] == j) {
                ++next;
                continue;
            }
            pattern.received.push_back(j);
        }
        if (!recoverable_symbols(eff, pattern)[0]) ++count;
        return true;
    });
    return count;
}

/// Least-squares diversity estimate: slope of -log(probability) against
/// log(snr).
inline double diversity_slope(const std::vector<std::pair<double, double>>& curve) {
    if (curve.size() < 2) throw UsageError("diversity_slope needs at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double prev = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& [snr, prob] = curve[i];
        if (snr <= 0 || (i > 0 && snr <= prev)) throw UsageError("snr must be positive, increasing");
        if (prob <= 0)
            throw UsageError("zero probability point; use the exact oracle or more trials");
        prev = snr;
        const double x = std::log(snr), y = -std::log(prob);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(curve.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace gdnc
