#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdnc/errors.hpp"

namespace gdnc {

/// Exact arithmetic over GF(p^m), q = p^m <= 256, realized with full
/// q-by-q lookup tables. Elements are encoded canonically as
/// value = sum_i digit_i * p^i where digit_i are the coefficients of the
/// polynomial representation. Tables are immutable after construction and
/// safe for unrestricted concurrent reads.
///
/// Default moduli are the monic irreducible polynomial with the smallest
/// canonical encoding, which gives the usual textbook choices:
///   GF(4):  x^2 + x + 1      (encoding 7)
///   GF(8):  x^3 + x + 1      (encoding 11)
///   GF(9):  x^2 + 1          (encoding 10)
///   GF(16): x^4 + x + 1      (encoding 19)
class Field {
public:
    using Elem = std::uint8_t;

    /// Builds GF(p^m). `modulus` lists m+1 coefficients c0..cm (cm = 1);
    /// omitted, the default irreducible polynomial for (p, m) is used.
    /// Throws UsageError for non-prime p, out-of-range q, or a reducible
    /// modulus (the message names a nontrivial factor).
    static std::shared_ptr<const Field> make(int p, int m,
                                             std::optional<std::vector<int>> modulus = {});

    /// Convenience: builds the field of order q, factoring q = p^m.
    static std::shared_ptr<const Field> make_order(int q);

    int p() const { return p_; }
    int m() const { return m_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    /// Modulus packed with the same base-p encoding as elements.
    int modulus_encoded() const {
        int v = 0;
        for (int i = m_; i >= 0; --i) v = v * p_ + modulus_[i];
        return v;
    }

    Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
    Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
    Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
    Elem neg(Elem a) const { return neg_[a]; }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inv(0) is undefined");
        return inv_[a];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// A fixed generator of the multiplicative group.
    Elem generator() const { return gen_; }
    Elem exp(int i) const { return exp_[i % (q_ - 1)]; }
    int log(Elem a) const {
        if (a == 0) throw std::domain_error("log(0) is undefined");
        return log_[a];
    }

    bool same_field(const Field& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

private:
    Field() = default;
    std::size_t idx(Elem a, Elem b) const { return std::size_t(a) * q_ + b; }

    int p_ = 0, m_ = 0, q_ = 0;
    Elem gen_ = 0;
    std::vector<int> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_, exp_;
    std::vector<int> log_;
};

namespace detail {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors c0..cd, trailing zeros trimmed.
inline std::vector<int> poly_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    a = poly_trim(std::move(a));
    auto bt = poly_trim(b);
    const int db = int(bt.size()) - 1;
    // bt is monic in our uses
    while (int(a.size()) - 1 >= db && !a.empty()) {
        const int da = int(a.size()) - 1;
        const int c = a.back();
        for (int i = 0; i <= db; ++i) {
            int& t = a[da - db + i];
            t = ((t - c * bt[i]) % p + p) % p;
        }
        a = poly_trim(std::move(a));
    }
    return a;
}

inline std::string poly_to_string(const std::vector<int>& a) {
    std::string s;
    for (int i = int(a.size()) - 1; i >= 0; --i) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

// Searches monic polynomials of degree 1..m-1 for a divisor. Returns the
// factor found, or nullopt when irreducible. Desk scale (q <= 256) only.
inline std::optional<std::vector<int>> find_factor(const std::vector<int>& mod, int p, int m) {
    for (int d = 1; d < m; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long t = 0; t < count; ++t) {
            std::vector<int> cand(d + 1, 0);
            long long v = t;
            for (int i = 0; i < d; ++i) {
                cand[i] = int(v % p);
                v /= p;
            }
            cand[d] = 1;
            if (poly_mod(mod, cand, p).empty()) return cand;
        }
    }
    return std::nullopt;
}

inline std::vector<int> default_modulus(int p, int m) {
    if (m == 1) return {0, 1};  // x: arithmetic is plain mod p
    long long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (long long t = 0; t < count; ++t) {
        std::vector<int> cand(m + 1, 0);
        long long v = t;
        for (int i = 0; i < m; ++i) {
            cand[i] = int(v % p);
            v /= p;
        }
        cand[m] = 1;
        if (!find_factor(cand, p, m)) return cand;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace detail

inline std::shared_ptr<const Field> Field::make(int p, int m,
                                                std::optional<std::vector<int>> modulus) {
    if (!detail::is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw UsageError("extension degree m must be >= 1");
    long long q = 1;
    for (int i = 0; i < m; ++i) {
        q *= p;
        if (q > 256) throw UsageError("field order p^m exceeds 256");
    }

    std::vector<int> mod = modulus ? *modulus : detail::default_modulus(p, m);
    if (int(mod.size()) != m + 1) throw UsageError("modulus must have m+1 coefficients");
    for (int& c : mod) {
        if (c < 0 || c >= p) throw UsageError("modulus coefficients must lie in [0, p)");
    }
    if (mod[m] != 1) throw UsageError("modulus must be monic");
    if (m > 1) {
        if (auto factor = detail::find_factor(mod, p, m)) {
            throw UsageError("modulus " + detail::poly_to_string(mod) +
                             " is reducible: divisible by " + detail::poly_to_string(*factor));
        }
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = int(q);
    f->modulus_ = mod;

    const int Q = f->q_;
    auto to_digits = [&](int v) {
        std::vector<int> d(m);
        for (int i = 0; i < m; ++i) {
            d[i] = v % p;
            v /= p;
        }
        return d;
    };
    auto from_digits = [&](const std::vector<int>& d) {
        int v = 0;
        for (int i = int(d.size()) - 1; i >= 0; --i) v = v * p + (i < int(d.size()) ? d[i] : 0);
        return v;
    };

    f->add_.resize(std::size_t(Q) * Q);
    f->mul_.resize(std::size_t(Q) * Q);
    f->neg_.resize(Q);
    f->inv_.resize(Q, 0);
    for (int a = 0; a < Q; ++a) {
        const auto da = to_digits(a);
        {
            std::vector<int> nd(m);
            for (int i = 0; i < m; ++i) nd[i] = (p - da[i]) % p;
            f->neg_[a] = Elem(from_digits(nd));
        }
        for (int b = 0; b < Q; ++b) {
            const auto db = to_digits(b);
            std::vector<int> s(m);
            for (int i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % p;
            f->add_[f->idx(Elem(a), Elem(b))] = Elem(from_digits(s));

            std::vector<int> prod(2 * m - 1, 0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            auto red = detail::poly_mod(prod, mod, p);
            red.resize(m, 0);
            f->mul_[f->idx(Elem(a), Elem(b))] = Elem(from_digits(red));
        }
    }
    for (int a = 1; a < Q; ++a) {
        for (int b = 1; b < Q; ++b) {
            if (f->mul_[f->idx(Elem(a), Elem(b))] == 1) {
                f->inv_[a] = Elem(b);
                break;
            }
        }
    }

    // Generator: smallest element of multiplicative order q-1.
    f->exp_.assign(Q - 1, 0);
    f->log_.assign(Q, 0);
    for (int g = 1; g < Q; ++g) {
        Elem x = 1;
        int order = 0;
        do {
            x = f->mul(x, Elem(g));
            ++order;
        } while (x != 1);
        if (order == Q - 1) {
            f->gen_ = Elem(g);
            break;
        }
    }
    Elem x = 1;
    for (int i = 0; i < Q - 1; ++i) {
        f->exp_[i] = x;
        f->log_[x] = i;
        x = f->mul(x, f->gen_);
    }

    return f;
}

inline std::shared_ptr<const Field> Field::make_order(int q) {
    for (int p = 2; p <= q; ++p) {
        if (!detail::is_prime(p)) continue;
        int m = 0;
        long long v = 1;
        while (v < q) {
            v *= p;
            ++m;
        }
        if (v == q) return make(p, m);
    }
    throw UsageError("q = " + std::to_string(q) + " is not a prime power");
}

}  // namespace gdnc
