#pragma once

// Exact arithmetic in Q(zeta_n) = Q[x] / Phi_n(x).

#include "qdu/scalar.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace qdu {

using RatPoly = std::vector<Scalar>;  // coefficient of x^k at index k, no trailing zeros

namespace poly {

inline void trim(RatPoly& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

inline RatPoly sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Scalar(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline RatPoly add(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Scalar(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

/// a = q*b + r with deg r < deg b.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw NotInvertibleError("polynomial division by zero");
    trim(a);
    RatPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Scalar(0));
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Scalar c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

}  // namespace poly

/// Phi_n from x^n - 1 = prod_{d | n} Phi_d.
inline const RatPoly& cyclotomic_polynomial(int n) {
    static std::map<int, RatPoly> cache;
    static std::mutex lock;
    if (n < 1) throw InputError("cyclotomic_polynomial: n must be positive");
    {
        std::lock_guard<std::mutex> g(lock);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    RatPoly p(n + 1, Scalar(0));
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly::divmod(p, cyclotomic_polynomial(d)).first;
    std::lock_guard<std::mutex> g(lock);
    return cache.emplace(n, std::move(p)).first->second;
}

/// Residue class in Q[x]/Phi_n. n = 0 marks a rational constant not yet tied
/// to a field; it adopts the field of whatever it is combined with.
class CycScalar {
public:
    CycScalar() = default;
    CycScalar(const Scalar& c) : coeffs_{c} { poly::trim(coeffs_); }  // NOLINT(implicit)
    CycScalar(long c) : CycScalar(Scalar(c)) {}                        // NOLINT(implicit)
    CycScalar(int n, RatPoly coeffs) : n_(n), coeffs_(std::move(coeffs)) { reduce(); }

    /// zeta^k
    static CycScalar zeta(int n, long long k = 1) {
        if (n < 1 || n > 64) throw InputError("CycScalar: unsupported order " + std::to_string(n));
        k %= n;
        if (k < 0) k += n;
        RatPoly x(static_cast<std::size_t>(k) + 1, Scalar(0));
        x[k] = 1;
        return CycScalar(n, std::move(x));
    }

    int order() const { return n_; }
    const RatPoly& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    CycScalar& operator+=(const CycScalar& o) {
        adopt(o);
        coeffs_ = poly::add(std::move(coeffs_), o.coeffs_);
        return *this;
    }
    CycScalar& operator-=(const CycScalar& o) {
        adopt(o);
        coeffs_ = poly::sub(std::move(coeffs_), o.coeffs_);
        return *this;
    }
    CycScalar& operator*=(const CycScalar& o) {
        adopt(o);
        coeffs_ = poly::mul(coeffs_, o.coeffs_);
        reduce();
        return *this;
    }
    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
    friend CycScalar operator-(CycScalar a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend bool operator==(const CycScalar& a, const CycScalar& b) {
        return a.coeffs_ == b.coeffs_ && (a.n_ == b.n_ || a.coeffs_.size() <= 1);
    }

    /// Inverse by the extended Euclidean algorithm against Phi_n.
    CycScalar inverse() const {
        if (is_zero()) throw NotInvertibleError("CycScalar: inverse of zero");
        if (n_ == 0) return CycScalar(1 / coeffs_[0]);
        RatPoly r0 = cyclotomic_polynomial(n_), r1 = coeffs_;
        RatPoly s0, s1{Scalar(1)};
        while (!r1.empty()) {
            auto [q, r] = poly::divmod(r0, r1);
            RatPoly s = poly::sub(s0, poly::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r0 is a nonzero constant since Phi_n is irreducible
        const Scalar c = 1 / r0[0];
        for (auto& x : s0) x *= c;
        return CycScalar(n_, std::move(s0));
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (qdu::is_zero(coeffs_[k])) continue;
            if (!s.empty()) s += " + ";
            const std::string c = to_string(coeffs_[k]);
            if (k == 0) s += c;
            else s += (coeffs_[k] == 1 ? "" : c + "*") + std::string("z") + (k > 1 ? "^" + std::to_string(k) : "");
        }
        return s;
    }

private:
    void adopt(const CycScalar& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) n_ = o.n_;
        else if (n_ != o.n_) throw InputError("CycScalar: mixing different cyclotomic fields");
    }
    void reduce() {
        poly::trim(coeffs_);
        if (n_ > 0 && coeffs_.size() >= cyclotomic_polynomial(n_).size())
            coeffs_ = poly::divmod(coeffs_, cyclotomic_polynomial(n_)).second;
    }

    int n_ = 0;
    RatPoly coeffs_;
};

inline CycScalar field_inverse(const CycScalar& s) { return s.inverse(); }
inline bool field_is_zero(const CycScalar& s) { return s.is_zero(); }

}  // namespace qdu
