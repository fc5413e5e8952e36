#pragma once

#include "qdu/quiver.hpp"
#include "qdu/scalar.hpp"

#include <string>
#include <vector>

namespace qdu {

/// The triple (alpha, beta, gamma) of one quiver down-up algebra instance.
/// Accessors take any integer index and reduce it mod n.
struct Parameters {
    int n = 1;
    std::vector<Scalar> alpha, beta, gamma;

    Parameters() : Parameters(1) {}
    explicit Parameters(int size) : n(size) {
        if (size < 1) throw InputError("Parameters: n must be positive");
        alpha.assign(size, 0);
        beta.assign(size, 0);
        gamma.assign(size, 0);
    }
    Parameters(std::vector<Scalar> a, std::vector<Scalar> b, std::vector<Scalar> g)
        : n(static_cast<int>(a.size())), alpha(std::move(a)), beta(std::move(b)), gamma(std::move(g)) {
        validate();
    }

    void validate() const {
        if (n < 1) throw InputError("Parameters: n must be positive");
        const auto sz = static_cast<std::size_t>(n);
        if (alpha.size() != sz || beta.size() != sz || gamma.size() != sz)
            throw InputError("Parameters: length mismatch");
    }

    const Scalar& a(long long i) const { return alpha[mod(i, n)]; }
    const Scalar& b(long long i) const { return beta[mod(i, n)]; }
    const Scalar& g(long long i) const { return gamma[mod(i, n)]; }

    bool beta_nonzero() const {
        for (const auto& x : beta)
            if (is_zero(x)) return false;
        return true;
    }
    bool gamma_zero() const {
        for (const auto& x : gamma)
            if (!is_zero(x)) return false;
        return true;
    }
    /// First index with beta_i == 0, or -1.
    int first_zero_beta() const {
        for (int i = 0; i < n; ++i)
            if (is_zero(beta[i])) return i;
        return -1;
    }

    friend bool operator==(const Parameters&, const Parameters&) = default;

    std::string str() const {
        auto vec = [](const std::vector<Scalar>& v) {
            std::string s = "(";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
            return s + ")";
        };
        return "alpha=" + vec(alpha) + " beta=" + vec(beta) + " gamma=" + vec(gamma);
    }
};

}  // namespace qdu
