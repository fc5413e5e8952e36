#pragma once

// Matrix-valued Hilbert series: truncated inverses of matrix polynomials,
// comparison with enumerated dimension matrices, and total series.

#include "qdu/linalg.hpp"
#include "qdu/quiver.hpp"
#include "qdu/rewrite.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdu {

/// Sparse polynomial in t with n x n integer matrix coefficients.
class MatrixPoly {
public:
    explicit MatrixPoly(std::size_t n = 1) : n_(n) {}

    std::size_t n() const { return n_; }
    const std::map<std::size_t, IntMatrix>& coefficients() const { return coeffs_; }

    void add(std::size_t degree, const IntMatrix& m) {
        if (m.rows() != n_ || m.cols() != n_) throw InputError("MatrixPoly: coefficient size mismatch");
        auto [it, inserted] = coeffs_.try_emplace(degree, m);
        if (!inserted) it->second += m;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    IntMatrix at(std::size_t degree) const {
        auto it = coeffs_.find(degree);
        return it == coeffs_.end() ? IntMatrix(n_, n_) : it->second;
    }

    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    friend MatrixPoly operator+(MatrixPoly a, const MatrixPoly& b) {
        for (const auto& [k, m] : b.coeffs_) a.add(k, m);
        return a;
    }
    friend MatrixPoly operator-(MatrixPoly a, const MatrixPoly& b) {
        for (const auto& [k, m] : b.coeffs_) a.add(k, -m);
        return a;
    }
    friend MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b) {
        MatrixPoly r(a.n_);
        for (const auto& [i, x] : a.coeffs_)
            for (const auto& [j, y] : b.coeffs_) r.add(i + j, x * y);
        return r;
    }
    friend bool operator==(const MatrixPoly& a, const MatrixPoly& b) { return a.n_ == b.n_ && a.coeffs_ == b.coeffs_; }

private:
    std::size_t n_;
    std::map<std::size_t, IntMatrix> coeffs_;
};

/// c * t^k * X for a scalar polynomial term times a fixed matrix.
inline MatrixPoly monomial(const IntMatrix& x, std::size_t k, long c = 1) {
    MatrixPoly p(x.rows());
    p.add(k, mpz_class(c) * x);
    return p;
}

/// I - M t + M t^3 - I t^4.
inline MatrixPoly down_up_polynomial(int n) {
    const IntMatrix m = adjacency_matrix(n), id = IntMatrix::identity(n);
    return monomial(id, 0) - monomial(m, 1) + monomial(m, 3) - monomial(id, 4);
}

/// I - M t + I t^2.
inline MatrixPoly preprojective_polynomial(int n) {
    const IntMatrix m = adjacency_matrix(n), id = IntMatrix::identity(n);
    return monomial(id, 0) - monomial(m, 1) + monomial(id, 2);
}

struct MatrixSeries {
    std::size_t order = 0;  // H_0..H_order
    std::vector<IntMatrix> coeffs;
    bool nonnegative = true;

    MatrixSeries truncated(std::size_t n) const {
        if (n > order) throw InputError("truncated: order exceeds series");
        MatrixSeries s{n, {coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n + 1)}, true};
        for (const auto& c : s.coeffs)
            for (std::size_t i = 0; i < c.rows(); ++i)
                for (std::size_t j = 0; j < c.cols(); ++j)
                    if (c(i, j) < 0) s.nonnegative = false;
        return s;
    }
};

/// h with p*h = I mod t^{N+1}, by H_k = -sum_{j>=1} p_j H_{k-j}.
inline MatrixSeries invert_series(const MatrixPoly& p, std::size_t order) {
    const std::size_t n = p.n();
    if (p.at(0) != IntMatrix::identity(n)) throw InputError("invert_series: constant term must be the identity");
    MatrixSeries s;
    s.order = order;
    s.coeffs.reserve(order + 1);
    s.coeffs.push_back(IntMatrix::identity(n));
    for (std::size_t k = 1; k <= order; ++k) {
        IntMatrix h(n, n);
        for (const auto& [j, pj] : p.coefficients())
            if (j >= 1 && j <= k) h -= pj * s.coeffs[k - j];
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (h(a, b) < 0) s.nonnegative = false;
        s.coeffs.push_back(std::move(h));
    }
    return s;
}

inline std::vector<mpz_class> total_series(const MatrixSeries& s) {
    std::vector<mpz_class> t;
    for (const auto& c : s.coeffs) t.push_back(c.sum());
    return t;
}

/// Coefficients of a rational series 1/q(t) for an integer polynomial q with q(0) = 1.
inline std::vector<mpz_class> invert_scalar(const std::vector<long>& q, std::size_t order) {
    std::vector<mpz_class> h{1};
    for (std::size_t k = 1; k <= order; ++k) {
        mpz_class c = 0;
        for (std::size_t j = 1; j < q.size() && j <= k; ++j) c -= q[j] * h[k - j];
        h.push_back(c);
    }
    return h;
}

/// n * (1-t)^-2 (1-t^2)^-1, i.e. n * floor((k+2)^2/4).
inline std::vector<mpz_class> down_up_totals(int n, std::size_t order) {
    // (1-t)^2 (1-t^2) = 1 - 2t + 2t^3 - t^4
    auto h = invert_scalar({1, -2, 0, 2, -1}, order);
    for (auto& c : h) c *= n;
    return h;
}

/// n * (1-t)^-2, i.e. n * (k+1).
inline std::vector<mpz_class> preprojective_totals(int n, std::size_t order) {
    auto h = invert_scalar({1, -2, 1}, order);
    for (auto& c : h) c *= n;
    return h;
}

struct Mismatch {
    std::size_t degree;
    std::size_t row;
    std::size_t col;
    mpz_class enumerated;
    mpz_class predicted;
};

struct ClosedFormReport {
    Preset preset = Preset::QuiverDownUp;
    int n = 1;
    std::size_t order = 0;
    std::vector<IntMatrix> enumerated;
    MatrixSeries predicted;
    std::vector<mpz_class> totals;
    std::vector<mpz_class> expected_totals;
    std::optional<Mismatch> first_mismatch;
    std::optional<std::size_t> first_total_mismatch;
    bool ok() const { return !first_mismatch && !first_total_mismatch && predicted.nonnegative; }
};

/// Compares enumerated dimension matrices (ground truth) with the closed-form
/// series for the quiver down-up or preprojective preset.
inline ClosedFormReport closed_form_check(Preset preset, const Parameters& params, std::size_t order) {
    ClosedFormReport rep;
    rep.preset = preset;
    rep.n = params.n;
    rep.order = order;
    MatrixPoly p(params.n);
    switch (preset) {
        case Preset::QuiverDownUp:
            p = down_up_polynomial(params.n);
            rep.expected_totals = down_up_totals(params.n, order);
            break;
        case Preset::Preprojective:
            p = preprojective_polynomial(params.n);
            rep.expected_totals = preprojective_totals(params.n, order);
            break;
        default:
            throw InputError("closed_form_check: preset must be qdu or preprojective");
    }
    const auto sys = build_certified(preset, params);
    rep.predicted = invert_series(p, order);
    for (std::size_t k = 0; k <= order; ++k) {
        IntMatrix m = dimension_matrix(sys, k);
        const IntMatrix& h = rep.predicted.coeffs[k];
        for (std::size_t i = 0; i < m.rows() && !rep.first_mismatch; ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != h(i, j)) {
                    rep.first_mismatch = Mismatch{k, i, j, m(i, j), h(i, j)};
                    break;
                }
        rep.totals.push_back(m.sum());
        if (!rep.first_total_mismatch && rep.totals.back() != rep.expected_totals[k]) rep.first_total_mismatch = k;
        rep.enumerated.push_back(std::move(m));
    }
    return rep;
}

/// (1 - t^4) I - (t - t^3) M == (1 - t^2)(I - M t + I t^2), coefficientwise.
inline bool factorization_identity(int n) {
    const IntMatrix m = adjacency_matrix(n), id = IntMatrix::identity(n);
    const MatrixPoly lhs = monomial(id, 0) - monomial(id, 4) - monomial(m, 1) + monomial(m, 3);
    const MatrixPoly rhs = (monomial(id, 0) - monomial(id, 2)) * preprojective_polynomial(n);
    return lhs == rhs;
}

}  // namespace qdu
