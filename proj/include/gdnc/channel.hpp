#pragma once

#include <cmath>
#include <stdexcept>

#include "gdnc/errors.hpp"
#include "gdnc/rng.hpp"

namespace gdnc {

/// Rayleigh block-fading outage abstraction. A transmission at rate R
/// over a link with average SNR `snr` (linear) fails iff the fade power
/// |h|^2 falls below g = (2^R - 1) / snr. Fade powers are unit-mean
/// exponential.
struct ChannelParams {
    double snr = 1.0;  // linear
    double rate = 0.5;  // bits per channel use, per transmission
    double g = 0.0;     // derived outage threshold

    static ChannelParams from_linear(double snr, double rate) {
        if (snr <= 0) throw UsageError("snr must be > 0");
        if (rate <= 0) throw UsageError("rate must be > 0");
        ChannelParams c;
        c.snr = snr;
        c.rate = rate;
        c.g = (std::exp2(rate) - 1.0) / snr;
        return c;
    }

    static ChannelParams from_db(double snr_db, double rate) {
        return from_linear(std::pow(10.0, snr_db / 10.0), rate);
    }
};

/// Outage threshold g = (2^R - 1) / snr.
inline double threshold(double rate, double snr) {
    return ChannelParams::from_linear(snr, rate).g;
}

/// Single-link outage probability, exact: Pr{|h|^2 < g} = 1 - e^{-g}.
inline double pe(double g) { return -std::expm1(-g); }

/// Threshold matching a desired single-link outage probability.
inline double g_from_pe(double pe_target) { return -std::log1p(-pe_target); }

struct FadeDraw {
    double value;  // |h|^2 realization
};

inline FadeDraw draw_fade(RngStream& rng) { return FadeDraw{rng.next_exp()}; }

inline bool is_outage(const FadeDraw& fade, double g) { return fade.value < g; }

/// Outage probability of L-branch MRC: Pr{sum of L unit-mean
/// exponentials < g}, the Erlang-L CDF. For L = 2 this is
/// 1 - e^{-g}(1 + g), approximated by the familiar P_e^2/2 as g -> 0.
inline double mrc_outage_prob(double g, int branches = 2) {
    if (branches < 1) throw UsageError("MRC needs at least one branch");
    double term = 1.0, sum = 1.0;
    for (int i = 1; i < branches; ++i) {
        term *= g / i;
        sum += term;
    }
    return 1.0 - std::exp(-g) * sum;
}

/// Outage of an MRC-combined reception: the sum of the branch fades
/// falls below threshold.
template <typename Fades>
inline bool mrc_outage(const Fades& fades, double g) {
    double sum = 0.0;
    for (const auto& f : fades) sum += f.value;
    return sum < g;
}

}  // namespace gdnc
