#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdnc/channel.hpp"
#include "gdnc/code.hpp"
#include "gdnc/decoder.hpp"
#include "gdnc/errors.hpp"
#include "gdnc/matrix.hpp"
#include "gdnc/rng.hpp"

namespace gdnc {

enum class Scheme { DF, BNC, DNC, GDNC };

inline std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::DF: return "df";
        case Scheme::BNC: return "bnc";
        case Scheme::DNC: return "dnc";
        case Scheme::GDNC: return "gdnc";
    }
    return "?";
}

inline Scheme scheme_from_name(const std::string& s) {
    if (s == "df") return Scheme::DF;
    if (s == "bnc") return Scheme::BNC;
    if (s == "dnc") return Scheme::DNC;
    if (s == "gdnc") return Scheme::GDNC;
    throw UsageError("unknown scheme '" + s + "' (expected df|bnc|dnc|gdnc)");
}

/// One round of a cooperative scheme with M users. Column convention:
/// block 1 holds the k1*M broadcast packets, user-major then slot
/// (info packet (user m, slot t) -> column m*k1 + t); block 2 holds the
/// k2*M parity packets in the same order. The target message for outage
/// statistics is info index 0, i.e. I_1(1).
struct SchemeConfig {
    Scheme scheme = Scheme::GDNC;
    int M = 2;
    int k1 = 1;
    int k2 = 1;
    bool reciprocal = false;
    CodeSpec code;  // k = k1*M, n = (k1+k2)*M; DF needs no designed code
    ChannelParams channel;

    int k() const { return k1 * M; }
    int n() const { return (k1 + k2) * M; }
    double overall_rate() const { return double(k1) / (k1 + k2); }

    void validate() const {
        if (M < 2) throw UsageError("M must be >= 2");
        if (k1 < 1 || k2 < 1) throw UsageError("k1 and k2 must be >= 1");
        if (scheme == Scheme::DF || scheme == Scheme::BNC) {
            if (M != 2 || k1 != 1 || k2 != 1)
                throw UsageError(scheme_name(scheme) + " supports M=2, k1=k2=1 only");
        }
        if (scheme == Scheme::DNC && k1 != 1)
            throw UsageError("dnc requires k1 = 1");
        if (scheme == Scheme::DNC && k2 != M - 1)
            throw UsageError("dnc requires k2 = M-1");
        if (scheme != Scheme::DF) {
            if (code.k != k() || code.n != n())
                throw UsageError("code dimensions must be k1*M x (k1+k2)*M");
            if (!code.is_systematic())
                throw UsageError("code must be systematic (identity in first k columns)");
        }
    }
};

/// DF and BNC baseline configurations (M = 2, overall rate 1/2).
inline SchemeConfig make_df_config(ChannelParams ch, bool reciprocal = false) {
    SchemeConfig c;
    c.scheme = Scheme::DF;
    c.reciprocal = reciprocal;
    c.channel = ch;
    return c;
}

inline SchemeConfig make_bnc_config(ChannelParams ch, bool reciprocal = false) {
    SchemeConfig c;
    c.scheme = Scheme::BNC;
    c.reciprocal = reciprocal;
    c.channel = ch;
    c.code = make_code(Field::make(2, 1), 2, 4, {{1, 0, 1, 1}, {0, 1, 1, 1}});
    return c;
}

inline SchemeConfig make_dnc_config(ChannelParams ch, bool reciprocal = false) {
    SchemeConfig c;
    c.scheme = Scheme::DNC;
    c.reciprocal = reciprocal;
    c.channel = ch;
    c.code = golden_dnc();
    return c;
}

/// Which users failed to decode each broadcast packet. failed[j*k1 + t]
/// has bit i set iff user i could not decode I_{j+1}(t+1); bit j is never
/// set (a user holds its own packets).
struct DecodingSets {
    int M = 0, k1 = 0;
    std::vector<std::uint32_t> failed;

    bool user_failed(int packet, int user) const { return (failed[packet] >> user) & 1u; }
    int failure_count(int packet) const { return __builtin_popcount(failed[packet]); }
};

struct BroadcastResult {
    DecodingSets sets;
    std::vector<double> systematicFade;  // BS fade per broadcast packet
    std::vector<bool> systematicOutage;  // fade < g
};

/// Broadcast phase: every inter-user link and every user-to-BS link gets
/// an independent fade (reciprocal inter-user channels share one draw per
/// unordered pair per slot).
inline BroadcastResult run_broadcast_phase(const SchemeConfig& cfg, RngStream& rng) {
    const double g = cfg.channel.g;
    BroadcastResult out;
    out.sets.M = cfg.M;
    out.sets.k1 = cfg.k1;
    out.sets.failed.assign(std::size_t(cfg.M) * cfg.k1, 0);
    out.systematicFade.assign(std::size_t(cfg.M) * cfg.k1, 0.0);
    out.systematicOutage.assign(std::size_t(cfg.M) * cfg.k1, false);

    for (int j = 0; j < cfg.M; ++j) {
        for (int t = 0; t < cfg.k1; ++t) {
            const int packet = j * cfg.k1 + t;
            out.systematicFade[packet] = draw_fade(rng).value;
            out.systematicOutage[packet] = out.systematicFade[packet] < g;
            for (int i = 0; i < cfg.M; ++i) {
                if (i == j) continue;
                if (cfg.reciprocal && i < j) {
                    // shared draw: mirror the verdict of the (i -> j) link
                    const bool failed = out.sets.user_failed(i * cfg.k1 + t, j);
                    if (failed) out.sets.failed[packet] |= (1u << i);
                    continue;
                }
                if (is_outage(draw_fade(rng), g)) out.sets.failed[packet] |= (1u << i);
            }
        }
    }
    return out;
}

/// The generator matrix the BS actually faces: in parity column owned by
/// user m, every coefficient multiplying an info packet user m failed to
/// decode is replaced by zero. Systematic columns are never altered.
inline Matrix build_effective_generator(const CodeSpec& code, const DecodingSets& sets) {
    if (!code.is_systematic()) throw UsageError("effective generator requires a systematic code");
    const int M = sets.M, k1 = sets.k1;
    const int k = code.k;
    const int k2 = (code.n - code.k) / M;
    Matrix eff = code.G;
    for (int owner = 0; owner < M; ++owner) {
        for (int tp = 0; tp < k2; ++tp) {
            const int col = k + owner * k2 + tp;
            for (int packet = 0; packet < k; ++packet) {
                if (sets.user_failed(packet, owner)) eff.at(packet, col) = 0;
            }
        }
    }
    return eff;
}

/// A transmission as seen by the BS: a coefficient column over the code's
/// field plus the number of independent fades combined at reception
/// (1 for ordinary packets, 2 for the MRC retransmission fallback).
struct VirtualColumn {
    std::vector<Field::Elem> coeff;
    int fades = 1;
};

/// Expands a decoding-set realization into the BS-facing column list.
/// GDNC, BNC, and DNC with M > 2 use zero-replacement only. DNC with
/// M = 2 applies the retransmission fallback: a user that missed its
/// partner's packet resends its own, and the BS combines the two copies
/// by MRC (the direct column and the coop column merge into one
/// two-fade column). DF always yields one two-fade column per message:
/// the second copy comes from the partner when it decoded, otherwise
/// from the source itself.
inline std::vector<VirtualColumn> virtual_columns(const SchemeConfig& cfg,
                                                  const DecodingSets& sets) {
    std::vector<VirtualColumn> cols;

    if (cfg.scheme == Scheme::DF) {
        for (int j = 0; j < 2; ++j) {
            VirtualColumn vc;
            vc.coeff.assign(2, 0);
            vc.coeff[j] = 1;
            vc.fades = 2;
            cols.push_back(std::move(vc));
        }
        return cols;
    }

    const int k = cfg.k();
    const Matrix eff = build_effective_generator(cfg.code, sets);

    if (cfg.scheme == Scheme::DNC && cfg.M == 2) {
        const bool u2_missed_I1 = sets.user_failed(0, 1);
        const bool u1_missed_I2 = sets.user_failed(1, 0);
        const bool merged[2] = {u1_missed_I2, u2_missed_I1};  // message j merged into MRC
        for (int j = 0; j < 2; ++j) {
            VirtualColumn vc;
            vc.coeff.assign(2, 0);
            vc.coeff[j] = 1;
            vc.fades = merged[j] ? 2 : 1;
            cols.push_back(std::move(vc));
        }
        // coop columns of users that decoded their partner
        if (!u1_missed_I2) {
            VirtualColumn vc;
            vc.coeff = {eff.at(0, 2), eff.at(1, 2)};
            cols.push_back(std::move(vc));
        }
        if (!u2_missed_I1) {
            VirtualColumn vc;
            vc.coeff = {eff.at(0, 3), eff.at(1, 3)};
            cols.push_back(std::move(vc));
        }
        return cols;
    }

    for (int c = 0; c < cfg.n(); ++c) {
        VirtualColumn vc;
        vc.coeff.resize(k);
        for (int i = 0; i < k; ++i) vc.coeff[i] = eff.at(i, c);
        cols.push_back(std::move(vc));
    }
    return cols;
}

struct RoundRealization {
    DecodingSets sets;
    std::vector<VirtualColumn> columns;
    std::vector<bool> columnOutage;  // one verdict per virtual column
    std::vector<bool> recovered;     // one verdict per info packet
};

inline std::shared_ptr<const Field> round_field(const SchemeConfig& cfg) {
    if (cfg.scheme == Scheme::DF) {
        static const auto f2 = Field::make(2, 1);
        return f2;
    }
    return cfg.code.field;
}

/// Decodes all info packets from the received virtual columns.
inline std::vector<bool> decode_round(const SchemeConfig& cfg,
                                      const std::vector<VirtualColumn>& cols,
                                      const std::vector<bool>& columnOutage) {
    const int k = cfg.scheme == Scheme::DF ? 2 : cfg.k();
    Matrix rows(round_field(cfg), 0, 0);
    int received = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) received += !columnOutage[c];
    rows = Matrix(round_field(cfg), received, k);
    int r = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (columnOutage[c]) continue;
        for (int i = 0; i < k; ++i) rows.at(r, i) = cols[c].coeff[i];
        ++r;
    }
    return detail::recoverable_from_rows(std::move(rows));
}

inline RoundRealization run_round(const SchemeConfig& cfg, RngStream& rng) {
    const double g = cfg.channel.g;
    RoundRealization rr;

    BroadcastResult bc = run_broadcast_phase(cfg, rng);
    rr.sets = bc.sets;
    rr.columns = virtual_columns(cfg, bc.sets);
    rr.columnOutage.resize(rr.columns.size());

    // The first min(k, #columns) virtual columns correspond to the
    // broadcast packets, whose BS fades were already drawn; a two-fade
    // column MRC-combines that fade with a fresh retransmission fade.
    // Remaining (cooperative-phase) columns get fresh independent fades.
    const std::size_t broadcastCols =
        std::min(rr.columns.size(), bc.systematicFade.size());
    for (std::size_t c = 0; c < rr.columns.size(); ++c) {
        const VirtualColumn& vc = rr.columns[c];
        double sum = c < broadcastCols ? bc.systematicFade[c] : rng.next_exp();
        for (int f = 1; f < vc.fades; ++f) sum += rng.next_exp();
        rr.columnOutage[c] = sum < g;
    }
    rr.recovered = decode_round(cfg, rr.columns, rr.columnOutage);
    return rr;
}

}  // namespace gdnc
