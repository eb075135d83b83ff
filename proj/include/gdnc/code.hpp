#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gdnc/errors.hpp"
#include "gdnc/matrix.hpp"
#include "gdnc/rng.hpp"

namespace gdnc {

struct DistanceCertificate {
    enum class Method { Exhaustive, ErasureRank };
    int dmin = 0;
    std::vector<Field::Elem> witness;  // nonzero info vector achieving weight dmin
    Method method = Method::Exhaustive;
};

/// Systematic linear block code over GF(q): k-by-n generator matrix with
/// the identity in the first k columns. dmin, when present, was produced
/// by one of the certification routines below.
struct CodeSpec {
    std::shared_ptr<const Field> field;
    int k = 0;
    int n = 0;
    Matrix G;
    std::optional<DistanceCertificate> dmin;

    bool is_systematic() const {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (G.at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    std::vector<Field::Elem> encode(const std::vector<Field::Elem>& u) const {
        const Field& F = *field;
        std::vector<Field::Elem> c(n, 0);
        for (int j = 0; j < n; ++j) {
            Field::Elem s = 0;
            for (int i = 0; i < k; ++i) s = F.add(s, F.mul(u[i], G.at(i, j)));
            c[j] = s;
        }
        return c;
    }
};

inline CodeSpec make_code(std::shared_ptr<const Field> field, int k, int n,
                          const std::vector<std::vector<int>>& rows) {
    if (k < 1 || k > n) throw UsageError("need 1 <= k <= n");
    CodeSpec code;
    code.field = field;
    code.k = k;
    code.n = n;
    code.G = Matrix(field, k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) {
            const int v = rows[i][j];
            if (v < 0 || v >= field->q()) throw UsageError("matrix entry out of field range");
            code.G.at(i, j) = Field::Elem(v);
        }
    return code;
}

inline int singleton_bound(int k, int n) {
    if (k > n || k < 1) throw UsageError("need 1 <= k <= n");
    return n - k + 1;
}

/// Diversity-order upper bound of the GDNC scheme: k2*M + 1.
inline int gdnc_diversity_bound(int M, int k2) {
    if (M < 2 || k2 < 1) throw UsageError("need M >= 2 and k2 >= 1");
    return k2 * M + 1;
}

constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t(1) << 24;

/// Exact minimum distance by enumerating all q^k - 1 nonzero codewords.
inline DistanceCertificate min_distance_exhaustive(const CodeSpec& code,
                                                   std::uint64_t budget = kDefaultEnumerationBudget) {
    const Field& F = *code.field;
    const int q = F.q(), k = code.k, n = code.n;
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= std::uint64_t(q);
        if (total > budget)
            throw BudgetError("q^k exceeds enumeration budget; use the erasure-rank method");
    }

    DistanceCertificate cert;
    cert.method = DistanceCertificate::Method::Exhaustive;
    cert.dmin = n + 1;

    // scaled[(i*q + s)*n + j] = s * G(i, j); codeword maintained
    // incrementally across the odometer enumeration of info vectors.
    std::vector<Field::Elem> scaled(std::size_t(k) * q * n);
    for (int i = 0; i < k; ++i)
        for (int s = 0; s < q; ++s)
            for (int j = 0; j < n; ++j)
                scaled[(std::size_t(i) * q + s) * n + j] = F.mul(Field::Elem(s), code.G.at(i, j));

    std::vector<Field::Elem> u(k, 0);
    std::vector<Field::Elem> cw(n, 0);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        int i = 0;
        while (true) {
            const int old = u[i];
            const int nw = (old + 1 == q) ? 0 : old + 1;
            const Field::Elem* po = &scaled[(std::size_t(i) * q + old) * n];
            const Field::Elem* pn = &scaled[(std::size_t(i) * q + nw) * n];
            for (int j = 0; j < n; ++j) cw[j] = F.add(cw[j], F.sub(pn[j], po[j]));
            u[i] = Field::Elem(nw);
            if (nw != 0) break;
            ++i;
        }
        int w = 0;
        for (int j = 0; j < n; ++j) w += (cw[j] != 0);
        if (w < cert.dmin) {
            cert.dmin = w;
            cert.witness = u;
            if (w == 0) break;
        }
    }
    return cert;
}

namespace detail {

template <typename Visit>
inline bool for_each_subset(int n, int size, Visit&& visit) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        if (!visit(idx)) return false;
        int i = size - 1;
        while (i >= 0 && idx[i] == n - size + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / i;
    return r;
}

}  // namespace detail

/// Minimum distance via erasure ranks: dmin = 1 + the largest e such that
/// every deletion of e columns leaves a rank-k matrix. Returns dmin = 0
/// for rank-deficient G, matching the exhaustive method.
inline DistanceCertificate min_distance_erasure(const CodeSpec& code,
                                                std::uint64_t budget = kDefaultEnumerationBudget) {
    const int k = code.k, n = code.n;
    std::uint64_t subsets = 0;
    for (int e = 1; e <= n - k; ++e) subsets += detail::binomial(n, e);
    if (subsets > budget) throw BudgetError("column-subset count exceeds enumeration budget");

    DistanceCertificate cert;
    cert.method = DistanceCertificate::Method::ErasureRank;

    if (code.G.rank() < k) {
        cert.dmin = 0;
        return cert;
    }
    int tolerable = 0;
    for (int e = 1; e <= n - k; ++e) {
        const bool all_full_rank = detail::for_each_subset(n, e, [&](const std::vector<int>& erased) {
            Matrix sub(code.field, k, n - e);
            int out = 0;
            std::size_t next = 0;
            for (int j = 0; j < n; ++j) {
                if (next < erased.size() && erased[next] == j) {
                    ++next;
                    continue;
                }
                for (int i = 0; i < k; ++i) sub.at(i, out) = code.G.at(i, j);
                ++out;
            }
            return sub.rank() == k;
        });
        if (!all_full_rank) break;
        tolerable = e;
    }
    cert.dmin = tolerable + 1;
    return cert;
}

/// A code is MDS iff its certified minimum distance meets the Singleton
/// bound.
inline bool is_mds(const CodeSpec& code) {
    if (!code.dmin) throw UsageError("is_mds requires a certified code");
    return code.dmin->dmin == singleton_bound(code.k, code.n);
}

enum class DesignStrategy { Cauchy, RandomSearch };

/// Systematic MDS construction. For q >= n the parity block is a Cauchy
/// matrix 1/(a_i - b_j) over n distinct labels, every square submatrix of
/// which is nonsingular. For n == q + 1 the code is a systematized
/// singly-extended Reed-Solomon code. The result is certified
/// exhaustively, not assumed.
inline CodeSpec design_cauchy(std::shared_ptr<const Field> field, int k, int n,
                              std::uint64_t budget = kDefaultEnumerationBudget) {
    const Field& F = *field;
    const int q = F.q();
    if (k < 1 || k > n) throw UsageError("need 1 <= k <= n");

    CodeSpec code;
    code.field = field;
    code.k = k;
    code.n = n;
    code.G = Matrix(field, k, n);

    if (k == n) {
        code.G = Matrix::identity(field, n);
    } else if (q >= n) {
        // labels a_0..a_{k-1} = 0..k-1, b_0..b_{n-k-1} = k..n-1
        for (int i = 0; i < k; ++i) {
            code.G.at(i, i) = 1;
            for (int j = 0; j < n - k; ++j) {
                const Field::Elem diff = F.sub(Field::Elem(i), Field::Elem(k + j));
                code.G.at(i, k + j) = F.inv(diff);
            }
        }
    } else if (n == q + 1) {
        // Vandermonde over all q points plus the point at infinity,
        // then G = A^{-1} * V with A the first k columns.
        Matrix V(field, k, n);
        for (int c = 0; c < q; ++c) {
            Field::Elem pw = 1;
            for (int r = 0; r < k; ++r) {
                V.at(r, c) = pw;
                pw = F.mul(pw, Field::Elem(c));
            }
        }
        V.at(k - 1, q) = 1;

        Matrix aug(field, k, k + n);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) aug.at(r, c) = V.at(r, c);
            for (int c = 0; c < n; ++c) aug.at(r, k + c) = V.at(r, c);
        }
        if (aug.rref() != k) throw std::logic_error("Vandermonde block not invertible");
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < n; ++c) code.G.at(r, c) = aug.at(r, k + c);
    } else {
        throw UsageError("cauchy design needs q >= n (or n == q+1 for the extended code); "
                         "got q = " + std::to_string(q) + ", n = " + std::to_string(n));
    }

    code.dmin = min_distance_exhaustive(code, budget);
    return code;
}

/// Seeded random search over nonzero parity fills; returns the best code
/// found in maxTries draws, with its certificate.
inline CodeSpec design_random_search(std::shared_ptr<const Field> field, int k, int n,
                                     std::uint64_t seed, int maxTries,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
    const Field& F = *field;
    if (k < 1 || k > n) throw UsageError("need 1 <= k <= n");
    if (maxTries < 1) throw UsageError("maxTries must be >= 1");

    RngStream rng = RngStream::derive(seed, 0x636f6465 /* "code" */);
    CodeSpec best;
    for (int t = 0; t < maxTries; ++t) {
        CodeSpec cand;
        cand.field = field;
        cand.k = k;
        cand.n = n;
        cand.G = Matrix(field, k, n);
        for (int i = 0; i < k; ++i) {
            cand.G.at(i, i) = 1;
            for (int j = k; j < n; ++j)
                cand.G.at(i, j) = Field::Elem(1 + rng.next_u64() % (F.q() - 1));
        }
        cand.dmin = min_distance_exhaustive(cand, budget);
        if (!best.dmin || cand.dmin->dmin > best.dmin->dmin) best = std::move(cand);
        if (best.dmin->dmin == singleton_bound(k, n)) break;  // cannot improve
    }
    return best;
}

inline CodeSpec design_systematic_code(std::shared_ptr<const Field> field, int k, int n,
                                       DesignStrategy strategy, std::uint64_t seed = 0,
                                       int maxTries = 1000,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
    if (strategy == DesignStrategy::Cauchy) return design_cauchy(field, k, n, budget);
    return design_random_search(field, k, n, seed, maxTries, budget);
}

/// The 2-user DNC generator matrix over GF(4).
inline CodeSpec golden_dnc() {
    auto f4 = Field::make(2, 2);
    return make_code(f4, 2, 4, {{1, 0, 1, 1}, {0, 1, 1, 2}});
}

/// The 4/8 GDNC generator matrix over GF(8) (default modulus x^3+x+1).
inline CodeSpec golden_gdnc() {
    auto f8 = Field::make(2, 3);
    return make_code(f8, 4, 8,
                     {{1, 0, 0, 0, 3, 7, 3, 6},
                      {0, 1, 0, 0, 5, 7, 7, 4},
                      {0, 0, 1, 0, 2, 4, 6, 1},
                      {0, 0, 0, 1, 5, 5, 3, 2}});
}

/// Text format: header "q k n modulus" (modulus packed base-p), then k
/// rows of n space-separated elements.
inline void write_code(std::ostream& os, const CodeSpec& code) {
    os << code.field->q() << ' ' << code.k << ' ' << code.n << ' '
       << code.field->modulus_encoded() << '\n';
    for (int i = 0; i < code.k; ++i) {
        for (int j = 0; j < code.n; ++j) {
            if (j) os << ' ';
            os << int(code.G.at(i, j));
        }
        os << '\n';
    }
}

inline CodeSpec read_code(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw UsageError("code file: missing header line");
    std::istringstream hdr(line);
    int q, k, n, modEnc;
    if (!(hdr >> q >> k >> n >> modEnc)) throw UsageError("code file: bad header (line 1)");

    // factor q = p^m
    int p = 0, m = 0;
    for (int cand = 2; cand <= q; ++cand) {
        if (!detail::is_prime(cand)) continue;
        long long v = 1;
        int e = 0;
        while (v < q) {
            v *= cand;
            ++e;
        }
        if (v == q) {
            p = cand;
            m = e;
            break;
        }
    }
    if (p == 0) throw UsageError("code file: q is not a prime power (line 1)");
    std::vector<int> mod(m + 1);
    int v = modEnc;
    for (int i = 0; i <= m; ++i) {
        mod[i] = v % p;
        v /= p;
    }
    auto field = Field::make(p, m, mod);

    CodeSpec code;
    code.field = field;
    code.k = k;
    code.n = n;
    code.G = Matrix(field, k, n);
    for (int i = 0; i < k; ++i) {
        if (!std::getline(is, line))
            throw UsageError("code file: missing row (line " + std::to_string(i + 2) + ")");
        std::istringstream row(line);
        for (int j = 0; j < n; ++j) {
            int x;
            if (!(row >> x) || x < 0 || x >= q)
                throw UsageError("code file: bad element (line " + std::to_string(i + 2) + ")");
            code.G.at(i, j) = Field::Elem(x);
        }
    }
    return code;
}

}  // namespace gdnc
