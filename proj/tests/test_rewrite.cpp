#include "qdu/rewrite.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace qdu;
using qdu::testing::random_element;
using qdu::testing::random_params;

namespace {

Element path(int n, std::vector<Arrow> arrows, const Scalar& c = 1) { return Element::of(Path::of(n, arrows), c); }

Parameters sample_params(int n) {
    Parameters p(n);
    for (int i = 0; i < n; ++i) {
        p.alpha[i] = Scalar(i + 2, 3);
        p.beta[i] = Scalar(-(i + 1), 2);
        p.gamma[i] = Scalar(5, i + 1);
    }
    return p;
}

// Brute-force oracle: every composable word of length k from every vertex,
// kept when no leading word occurs as a factor (plain substring search).
IntMatrix brute_force_dimensions(const ReductionSystem& sys, std::size_t k) {
    const int n = sys.n();
    IntMatrix m(n, n);
    for (int v = 0; v < n; ++v) {
        for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
            std::vector<Arrow> w;
            int at = v;
            for (std::size_t t = 0; t < k; ++t) {
                const Arrow a = (mask >> t) & 1 ? d(mod(at - 1, n)) : u(at);
                w.push_back(a);
                at = a.target(n);
            }
            bool ok = true;
            for (const auto& r : sys.rules()) {
                const auto& l = r.lhs.arrows();
                if (std::search(w.begin(), w.end(), l.begin(), l.end()) != w.end()) ok = false;
            }
            if (ok) m(v, at) += 1;
        }
    }
    return m;
}

}  // namespace

TEST(BuildSystem, QuiverDownUpRuleShape) {
    const Parameters p = sample_params(3);
    const auto sys = ReductionSystem::build(Preset::QuiverDownUp, p);
    ASSERT_EQ(sys.rules().size(), 6u);
    // i = 0: d_0 d_2 u_2 -> a_0 d_0u_0d_0 + b_0 u_1d_1d_0 + g_0 d_0
    const auto& r = sys.rules()[3];
    EXPECT_EQ(r.lhs, Path::of(3, {d(0), d(2), u(2)}));
    Element expect = path(3, {d(0), u(0), d(0)}, p.alpha[0]) + path(3, {u(1), d(1), d(0)}, p.beta[0]) +
                     path(3, {d(0)}, p.gamma[0]);
    EXPECT_EQ(r.rhs, expect);
    std::set<Path> lhs;
    for (const auto& rule : sys.rules()) lhs.insert(rule.lhs);
    for (int i = 0; i < 3; ++i) {
        EXPECT_TRUE(lhs.count(Path::of(3, {d(i), d(i - 1 + 3), u(i - 1 + 3)})));
        EXPECT_TRUE(lhs.count(Path::of(3, {d(i - 1 + 3), u(i - 1 + 3), u(i)})));
    }
}

TEST(BuildSystem, PreprojectiveAndGradedDownUp) {
    const auto pre = ReductionSystem::build(Preset::Preprojective, Parameters(3));
    EXPECT_EQ(pre.rules()[0].lhs, Path::of(3, {d(0), u(0)}));
    EXPECT_EQ(pre.rules()[0].rhs, path(3, {u(1), d(1)}));
    const auto gdu = ReductionSystem::build(Preset::GradedDownUp);
    EXPECT_EQ(gdu.n(), 1);
    EXPECT_EQ(gdu.rules()[0].lhs, Path::of(1, {d(0), d(0), u(0)}));
    EXPECT_EQ(gdu.rules()[0].rhs, path(1, {u(0), d(0), d(0)}, -1));
    EXPECT_EQ(gdu.rules()[1].rhs, path(1, {u(0), u(0), d(0)}, -1));
}

TEST(NormalForm, Examples) {
    const Parameters p = sample_params(3);
    const auto sys = ReductionSystem::build(Preset::QuiverDownUp, p);
    const Element nf = normal_form(sys, path(3, {d(0), d(2), u(2)}));
    EXPECT_EQ(nf, path(3, {d(0), u(0), d(0)}, p.alpha[0]) + path(3, {u(1), d(1), d(0)}, p.beta[0]) +
                      path(3, {d(0)}, p.gamma[0]));
    const Element normal = path(3, {u(0), u(1), d(1)});
    EXPECT_EQ(normal_form(sys, normal), normal);
}

TEST(NormalForm, OverlapWordReducesSameBothWays) {
    const Parameters p = sample_params(3);
    const auto sys = ReductionSystem::build(Preset::QuiverDownUp, p);
    const Path w = Path::of(3, {d(1), d(0), u(0), u(1)});
    std::size_t prefix_rule = 99, suffix_rule = 99;
    for (std::size_t r = 0; r < sys.rules().size(); ++r) {
        if (sys.rules()[r].lhs == w.slice(0, 3)) prefix_rule = r;
        if (sys.rules()[r].lhs == w.slice(1, 3)) suffix_rule = r;
    }
    ASSERT_NE(prefix_rule, 99u);
    ASSERT_NE(suffix_rule, 99u);
    const Element a = normal_form(sys, reduce_at(sys, w, 0, prefix_rule));
    const Element b = normal_form(sys, reduce_at(sys, w, 1, suffix_rule));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, normal_form(sys, Element::of(w)));
    EXPECT_THROW(reduce_at(sys, w, 2, prefix_rule), InputError);
}

TEST(Confluence, QuiverDownUpHasNOverlaps) {
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 5; ++n) {
        const auto rep = check_confluence(ReductionSystem::build(Preset::QuiverDownUp, random_params(rng, n)));
        EXPECT_TRUE(rep.confluent);
        EXPECT_EQ(rep.overlaps.size(), static_cast<std::size_t>(n));
        for (const auto& o : rep.overlaps) {
            EXPECT_EQ(o.word.length(), 4u);
            EXPECT_EQ(o.word.arrows()[0].family, Family::D);
            EXPECT_EQ(o.word.arrows()[1].family, Family::D);
        }
    }
}

TEST(Confluence, PreprojectiveHasNoOverlaps) {
    const auto rep = check_confluence(ReductionSystem::build(Preset::Preprojective, Parameters(3)));
    EXPECT_TRUE(rep.confluent);
    EXPECT_TRUE(rep.overlaps.empty());
}

TEST(Confluence, GradedDownUpSingleOverlap) {
    const auto rep = check_confluence(ReductionSystem::build(Preset::GradedDownUp));
    EXPECT_TRUE(rep.confluent);
    ASSERT_EQ(rep.overlaps.size(), 1u);
    EXPECT_EQ(rep.overlaps[0].word, Path::of(1, {d(0), d(0), u(0), u(0)}));
    EXPECT_EQ(rep.overlaps[0].via_first, path(1, {u(0), u(0), d(0), d(0)}));
}

TEST(Confluence, FailingOverlapIsReported) {
    // d^2u -> 2ud^2, du^2 -> u^2d: (d^2u)u gives 4u^2d^2, d(du^2) gives u^2d^2.
    const auto sys = ReductionSystem::from_rules(
        1, {{Path::of(1, {d(0), d(0), u(0)}), path(1, {u(0), d(0), d(0)}, 2)},
            {Path::of(1, {d(0), u(0), u(0)}), path(1, {u(0), u(0), d(0)})}});
    const auto rep = check_confluence(sys);
    EXPECT_FALSE(rep.confluent);
    ASSERT_EQ(rep.overlaps.size(), 1u);
    EXPECT_EQ(rep.overlaps[0].difference, path(1, {u(0), u(0), d(0), d(0)}, 3));
    EXPECT_THROW(certified(sys), PreconditionError);
    EXPECT_THROW(ReductionSystem::from_rules(1, {{Path::of(1, {u(0)}), path(1, {d(0)})}}), InputError);
}

TEST(Confluence, GridCertificate) {
    const auto values = std::vector<Scalar>{0, 1, Scalar(-3, 2)};
    for (int n = 1; n <= 3; ++n) {
        const auto rep = check_confluence_grid(n, values);
        EXPECT_TRUE(rep.confluent);
        EXPECT_EQ(rep.degree_bound, 2);
        const std::size_t N = 3 * n;
        EXPECT_EQ(rep.points, 1 + 2 * N + 4 * N * (N - 1) / 2);
    }
}

TEST(Basis, DimensionMatrixExamples) {
    const auto sys = ReductionSystem::build(Preset::QuiverDownUp, sample_params(3));
    const IntMatrix h2 = dimension_matrix(sys, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(h2(i, j), i == j ? 2 : 1);
    EXPECT_EQ(h2.sum(), 12);
    EXPECT_EQ(dimension_matrix(sys, 3).sum(), 18);
    EXPECT_EQ(dimension_matrix(sys, 0), IntMatrix::identity(3));
    EXPECT_EQ(dimension_matrix(ReductionSystem::build(Preset::Preprojective, Parameters(4)), 0), IntMatrix::identity(4));
    EXPECT_EQ(dimension_matrix(ReductionSystem::build(Preset::GradedDownUp), 0), IntMatrix::identity(1));
}

TEST(Basis, AgreesWithBruteForceAndClosedShape) {
    for (int n = 1; n <= 4; ++n) {
        const auto qdu_sys = ReductionSystem::build(Preset::QuiverDownUp, sample_params(n));
        const auto pre = ReductionSystem::build(Preset::Preprojective, Parameters(n));
        for (std::size_t k = 0; k <= 7; ++k) {
            const auto rep = basis_report(qdu_sys, k);
            EXPECT_TRUE(rep.consistent);
            ASSERT_TRUE(rep.matches_closed_shape.has_value());
            EXPECT_TRUE(*rep.matches_closed_shape);
            EXPECT_EQ(rep.dimensions, brute_force_dimensions(qdu_sys, k)) << "n=" << n << " k=" << k;
            EXPECT_EQ(dimension_matrix(pre, k), brute_force_dimensions(pre, k));
        }
    }
    const auto gdu = ReductionSystem::build(Preset::GradedDownUp);
    for (std::size_t k = 0; k <= 8; ++k)
        EXPECT_EQ(dimension_matrix(gdu, k)(0, 0), (k + 2) * (k + 2) / 4);
}

TEST(Basis, CountsDoNotDependOnParameters) {
    std::mt19937_64 rng(31);
    for (int n : {1, 2, 3}) {
        const auto ref = ReductionSystem::build(Preset::QuiverDownUp, random_params(rng, n));
        for (int t = 0; t < 3; ++t) {
            const auto other = ReductionSystem::build(Preset::QuiverDownUp, random_params(rng, n, false));
            for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(dimension_matrix(ref, k), dimension_matrix(other, k));
        }
    }
}

TEST(ZeroInQuotient, Examples) {
    const Parameters p = sample_params(3);
    const auto sys = build_certified(Preset::QuiverDownUp, p);
    const Element rel = path(3, {d(0), d(2), u(2)}) - path(3, {d(0), u(0), d(0)}, p.alpha[0]) -
                        path(3, {u(1), d(1), d(0)}, p.beta[0]) - path(3, {d(0)}, p.gamma[0]);
    EXPECT_TRUE(is_zero_in_quotient(sys, rel));
    EXPECT_FALSE(is_zero_in_quotient(sys, path(3, {u(0)})));

    Parameters q = p;
    q.beta[0] = 0;
    const auto sys0 = build_certified(Preset::QuiverDownUp, q);
    const Element a = path(3, {d(2), u(2)}) - path(3, {u(0), d(0)}, q.alpha[0]) -
                      Element::of(Path::trivial(3, 0), q.gamma[0]);
    EXPECT_TRUE(is_zero_in_quotient(sys0, a * path(3, {u(0)})));
}

TEST(ZeroInQuotient, NeedsCertifiedSystem) {
    const auto sys = ReductionSystem::build(Preset::QuiverDownUp, sample_params(3));
    EXPECT_THROW(is_zero_in_quotient(sys, path(3, {u(0)})), PreconditionError);
}

TEST(NormalForm, Properties) {
    std::mt19937_64 rng(41);
    for (int n : {1, 2, 3, 4}) {
        for (bool graded : {true, false}) {
            const Parameters p = random_params(rng, n, false, !graded);
            const auto sys = ReductionSystem::build(Preset::QuiverDownUp, p);
            for (int t = 0; t < 15; ++t) {
                const Element a = random_element(rng, n, 6, 5), b = random_element(rng, n, 6, 5);
                const Scalar c = qdu::testing::random_scalar(rng);
                const Element na = normal_form(sys, a), nb = normal_form(sys, b);
                EXPECT_EQ(normal_form(sys, na), na);
                EXPECT_EQ(normal_form(sys, c * a + b), c * na + nb);
                EXPECT_EQ(normal_form(sys, a * b), normal_form(sys, na * nb));
                for (const auto& [q, coeff] : a.terms()) {
                    const Element nq = normal_form(sys, Element::of(q));
                    for (const auto& [r, e] : nq.terms()) {
                        EXPECT_EQ(r.source(), q.source());
                        EXPECT_EQ(r.target(), q.target());
                        if (graded) EXPECT_EQ(r.length(), q.length());
                        else EXPECT_LE(r.length(), q.length());
                    }
                }
            }
        }
    }
}
