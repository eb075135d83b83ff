#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gdnc/matrix.hpp"

namespace gdnc {

/// Set of column indices that arrived at the BS.
struct ErasurePattern {
    std::vector<int> received;  // unique, sorted, in [0, n)
};

namespace detail {

/// RREF of the |S|-by-k matrix whose rows are the received columns of the
/// effective generator. Info symbol i is determined iff the unit vector
/// e_i appears as a row of the reduced form.
inline std::vector<bool> recoverable_from_rows(Matrix rows) {
    const int k = rows.cols();
    const int rank = rows.rref();
    std::vector<bool> out(k, false);
    for (int r = 0; r < rank; ++r) {
        int pivot = -1;
        bool unit = true;
        for (int c = 0; c < k; ++c) {
            if (rows.at(r, c) == 0) continue;
            if (pivot < 0 && rows.at(r, c) == 1) {
                pivot = c;
            } else {
                unit = false;
                break;
            }
        }
        if (unit && pivot >= 0) out[pivot] = true;
    }
    return out;
}

}  // namespace detail

/// Per-symbol recoverability: info symbol i is recoverable iff e_i lies in
/// the span of the received columns of effectiveG.
inline std::vector<bool> recoverable_symbols(const Matrix& effectiveG,
                                             const ErasurePattern& pattern) {
    const int k = effectiveG.rows();
    Matrix rows(effectiveG.field_ptr(), int(pattern.received.size()), k);
    for (std::size_t s = 0; s < pattern.received.size(); ++s) {
        for (int i = 0; i < k; ++i) rows.at(int(s), i) = effectiveG.at(i, pattern.received[s]);
    }
    return detail::recoverable_from_rows(std::move(rows));
}

/// Value-level companion: solves for the info symbols that are
/// recoverable. receivedValues[s] is the symbol carried by column
/// pattern.received[s]. Returns one optional per info index; nullopt for
/// unrecoverable symbols. Throws std::logic_error when the received
/// values are inconsistent with every information vector, which cannot
/// happen under the erasure model and signals a harness bug.
inline std::vector<std::optional<Field::Elem>> solve(const Matrix& effectiveG,
                                                     const ErasurePattern& pattern,
                                                     const std::vector<Field::Elem>& receivedValues) {
    const int k = effectiveG.rows();
    const int s = int(pattern.received.size());
    if (int(receivedValues.size()) != s) throw UsageError("one value per received column required");

    Matrix aug(effectiveG.field_ptr(), s, k + 1);
    for (int r = 0; r < s; ++r) {
        for (int i = 0; i < k; ++i) aug.at(r, i) = effectiveG.at(i, pattern.received[r]);
        aug.at(r, k) = receivedValues[r];
    }
    const int rank = aug.rref();

    std::vector<std::optional<Field::Elem>> out(k);
    for (int r = 0; r < rank; ++r) {
        int pivot = -1;
        bool unit = true;
        for (int c = 0; c < k; ++c) {
            if (aug.at(r, c) == 0) continue;
            if (pivot < 0 && aug.at(r, c) == 1) {
                pivot = c;
            } else {
                unit = false;
                break;
            }
        }
        if (pivot < 0) throw std::logic_error("inconsistent received values");
        if (unit) out[pivot] = aug.at(r, k);
    }
    return out;
}

}  // namespace gdnc
