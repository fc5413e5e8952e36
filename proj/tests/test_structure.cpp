#include "qdu/structure.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace qdu;

namespace {

Parameters with_beta(std::vector<Scalar> beta, std::vector<Scalar> alpha = {}) {
    Parameters p(static_cast<int>(beta.size()));
    p.beta = std::move(beta);
    if (!alpha.empty()) p.alpha = std::move(alpha);
    return p;
}

Element word(int n, std::vector<Arrow> w, const Scalar& c = 1) { return Element::of(Path::of(n, std::move(w)), c); }

}  // namespace

TEST(Words, NamedConstructors) {
    EXPECT_EQ(x_word(3, 2).str(), "d2.u2");
    EXPECT_EQ(x_word(3, 2).source(), 0);
    EXPECT_EQ(u_cycle(3, 1).str(), "u1.u2.u0");
    EXPECT_EQ(u_cycle(1, 0).str(), "u0");
}

TEST(Twist, FirstStepUsesLastArrowWeight) {
    const auto p = with_beta({-1, -1, -1});
    const auto eta = TwistWeights::printed(p);
    const Element w = word(3, {d(0), d(2), u(2), u(0)});
    EXPECT_EQ(twist(w, eta), word(3, {u(0), d(0), d(2), u(2)}, -p.b(2)));
    EXPECT_TRUE(twist(Element(3), eta).is_zero());
    EXPECT_THROW(twist(word(3, {u(0)}), eta), InputError);
    EXPECT_THROW(TwistWeights::printed(with_beta({0, 1, 1})), InputError);
}

TEST(Twist, RotationPeriods) {
    EXPECT_EQ(rotation_period(Path::of(3, {d(0), d(2), u(2), u(0)})), 4u);
    EXPECT_EQ(rotation_period(Path::of(3, {d(0), u(0), d(0), u(0)})), 2u);
    EXPECT_EQ(rotation_period(Path::of(1, {d(0), d(0), u(0), u(0)})), 4u);
}

TEST(Superpotential, ClosureScalars) {
    const auto p = with_beta({1, 2, 3}, {2, -1, 3});
    const auto printed = build_superpotential(p, TwistWeights::printed(p));
    for (const auto& t : printed.terms) {
        if (t.period != 4) continue;
        const int i = t.word.arrows().front().index;
        EXPECT_EQ(t.closure, p.b(i - 1) * p.b(i - 1) * p.b(i - 2) * p.b(i - 2));
    }
    EXPECT_FALSE(printed.closes());
    EXPECT_TRUE(build_superpotential(p, TwistWeights::derived(p)).closes());
    EXPECT_TRUE(build_superpotential(p, TwistWeights::shifted(p)).closes());
}

TEST(Superpotential, ConstantBetaIsDerivationQuotient) {
    for (long b : {-1L, 1L}) {
        const auto p = with_beta({b, b, b}, {Scalar(1, 2), -3, 0});
        const auto eta = TwistWeights::printed(p);
        const auto s = build_superpotential(p, eta);
        EXPECT_TRUE(check_twist_invariance(s.omega, eta).invariant);
        EXPECT_TRUE(check_derivation_quotient(s.omega, p).equal());
    }
}

TEST(Superpotential, GenericBeta) {
    const auto p = with_beta({1, 2, 3}, {2, -1, 3});
    const auto printed = TwistWeights::printed(p);
    const auto rep = check_twist_invariance(build_superpotential(p, printed).omega, printed);
    EXPECT_FALSE(rep.invariant);
    EXPECT_FALSE(rep.defect.is_zero());

    const auto derived = TwistWeights::derived(p);
    const auto sd = build_superpotential(p, derived);
    EXPECT_TRUE(check_twist_invariance(sd.omega, derived).invariant);
    EXPECT_FALSE(check_derivation_quotient(sd.omega, p).equal());

    const auto shifted = TwistWeights::shifted(p);
    const auto ss = build_superpotential(p, shifted);
    EXPECT_TRUE(check_twist_invariance(ss.omega, shifted).invariant);
    EXPECT_TRUE(check_derivation_quotient(ss.omega, p).equal());
}

TEST(Superpotential, ShiftedWeightsWorkForRandomBeta) {
    Rng rng(19);
    for (int n : {1, 2, 3, 4, 5})
        for (int t = 0; t < 4; ++t) {
            auto p = random_params(rng, n, true, false);
            const auto eta = TwistWeights::shifted(p);
            const auto s = build_superpotential(p, eta);
            EXPECT_TRUE(check_twist_invariance(s.omega, eta).invariant) << p.str();
            EXPECT_TRUE(check_derivation_quotient(s.omega, p).equal()) << p.str();
        }
}

TEST(CyclicDerivative, Examples) {
    const Element w = word(3, {d(0), d(2), u(2), u(0)});
    EXPECT_EQ(cyclic_derivative(w, d(0)), word(3, {d(2), u(2), u(0)}));
    EXPECT_TRUE(cyclic_derivative(w, u(0)).is_zero());
}

TEST(CyclicDerivative, LinearAndLowersDegreeByOne) {
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        const Element a = random_element(rng, 3, 5), b = random_element(rng, 3, 5);
        const Scalar c = random_scalar(rng);
        for (int id = 0; id < 6; ++id) {
            const Arrow ar = Arrow::from_id(id, 3);
            EXPECT_EQ(cyclic_derivative(c * a + b, ar), c * cyclic_derivative(a, ar) + cyclic_derivative(b, ar));
            const Element da = cyclic_derivative(a, ar);
            for (const auto& [q, e] : da.terms()) {
                std::vector<Arrow> w{ar};
                w.insert(w.end(), q.arrows().begin(), q.arrows().end());
                const Path full = Path::make(3, ar.source(3), w);
                EXPECT_EQ(full.length(), q.length() + 1);
                EXPECT_EQ(a.coefficient(full), e);
            }
        }
    }
}

TEST(DiagonalMap, PrintedNakayama) {
    const auto ones = with_beta({1, 1, 1}, {2, 0, -1});
    EXPECT_TRUE(check_diagonal_map(nakayama_printed(ones), ones, ones).ok());
    const auto p = with_beta({1, 2, 3}, {2, -1, 3});
    const auto rep = check_diagonal_map(nakayama_printed(p), p, p);
    EXPECT_FALSE(rep.ok());
    // duu_i: ratio on u_i u_{i+1} d_{i+1} is beta_{i-2}^2 / beta_i^2
    for (int i = 0; i < 3; ++i) {
        const auto& r = rep.relations[i];
        EXPECT_EQ(r.label, "duu_" + std::to_string(i));
        bool found = false;
        for (const auto& [q, ratio] : r.ratios)
            if (q == Path::of(3, {u(i), u(i + 1), d(i + 1)})) {
                found = true;
                EXPECT_EQ(ratio, p.b(i - 2) * p.b(i - 2) / (p.b(i) * p.b(i)));
            }
        EXPECT_TRUE(found);
    }
}

TEST(DiagonalMap, DerivedNakayamaScalesEachRelation) {
    Rng rng(23);
    for (int n : {1, 2, 3, 4})
        for (int t = 0; t < 5; ++t) {
            const auto p = random_params(rng, n);
            const auto rep = check_diagonal_map(nakayama_derived(p), p, p);
            ASSERT_TRUE(rep.ok()) << p.str();
            for (int i = 0; i < n; ++i) {
                ASSERT_TRUE(rep.relations[i].scalar);
                EXPECT_EQ(*rep.relations[i].scalar, -1 / p.b(i));
                ASSERT_TRUE(rep.relations[n + i].scalar);
                EXPECT_EQ(*rep.relations[n + i].scalar, -p.b(i));
            }
        }
}

TEST(DiagonalMap, PrintedNakayamaPassesIffBetaSquaresEqual) {
    Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        auto p = random_params(rng, 3, true, false);
        if (t % 2 == 0) {
            const Scalar b = p.beta[0];
            p.beta = {b, t % 4 == 0 ? -b : b, -b};
        }
        bool equal_squares = true;
        for (int i = 1; i < 3; ++i) equal_squares = equal_squares && p.beta[i] * p.beta[i] == p.beta[0] * p.beta[0];
        EXPECT_EQ(check_diagonal_map(nakayama_printed(p), p, p).ok(), equal_squares) << p.str();
    }
}

TEST(DiagonalMap, Composes) {
    Rng rng(37);
    for (int t = 0; t < 10; ++t) {
        const auto p = random_params(rng, 3, true, false);
        const GradedMap f = nakayama_derived(p), g = nakayama_derived(p);
        ASSERT_TRUE(check_diagonal_map(f, p, p).ok());
        EXPECT_TRUE(check_diagonal_map(g * f, p, p).ok());
        // rotation: H(alpha, beta) -> H(alpha_{i-1}, beta_{i-1})
        Parameters q(3);
        for (int i = 0; i < 3; ++i) {
            q.alpha[i] = p.a(i - 1);
            q.beta[i] = p.b(i - 1);
        }
        const GradedMap r = GradedMap::rotation(3, 1);
        ASSERT_TRUE(check_diagonal_map(r, p, q).ok());
        EXPECT_TRUE(check_diagonal_map(r * f, p, q).ok());
        EXPECT_TRUE(check_diagonal_map(nakayama_derived(q) * r, p, q).ok());
    }
}

TEST(PropertyReport, NonzeroBeta) {
    for (const auto& p : {with_beta({1, 1, 1}), with_beta({1}), with_beta({2, -1, Scalar(1, 3)}, {1, 2, 3})}) {
        const auto rep = property_report(p);
        EXPECT_TRUE(rep.noetherian && rep.piecewise_domain && rep.polynomial_subalgebra);
        EXPECT_EQ(rep.monomials_checked, static_cast<std::size_t>(15 * p.n));
        EXPECT_TRUE(rep.consistent());
    }
}

TEST(PropertyReport, ZeroBetaWitness) {
    auto p = with_beta({0, 1, 1}, {Scalar(3, 2), 1, 1});
    p.gamma = {2, 0, 0};
    const auto rep = property_report(p);
    EXPECT_FALSE(rep.noetherian || rep.piecewise_domain || rep.polynomial_subalgebra);
    ASSERT_TRUE(rep.index);
    EXPECT_EQ(*rep.index, 0);
    EXPECT_EQ(rep.witness_a, word(3, {d(2), u(2)}) - Scalar(3, 2) * word(3, {u(0), d(0)}) -
                                 Scalar(2) * Element::of(Path::trivial(3, 0)));
    EXPECT_EQ(rep.witness_b, word(3, {u(0)}));
    EXPECT_TRUE(rep.consistent());
}

TEST(PropertyReport, FlagsDependOnlyOnZeroBeta) {
    Rng rng(41);
    for (int t = 0; t < 12; ++t) {
        auto p = random_params(rng, 1 + t % 3, t % 2 == 0);
        const auto rep = property_report(p, 3);
        EXPECT_EQ(rep.noetherian, p.beta_nonzero());
        EXPECT_EQ(rep.piecewise_domain, p.beta_nonzero());
        EXPECT_EQ(rep.polynomial_subalgebra, p.beta_nonzero());
        EXPECT_TRUE(rep.consistent()) << p.str();
    }
}

TEST(Noetherian, DownTimesXRewrite) {
    auto p = with_beta({0, 1, 1}, {2, 1, 1});
    p.gamma = {3, 0, 0};
    const auto sys = build_certified(Preset::QuiverDownUp, p);
    const Element r = normal_form(sys, word(3, {d(0), d(2), u(2)}));
    EXPECT_EQ(r, Scalar(2) * word(3, {d(0), u(0), d(0)}) + Scalar(3) * word(3, {d(0)}));
}

TEST(Noetherian, ChainIsStrict) {
    Rng rng(43);
    auto p = random_params(rng, 3);
    p.beta[0] = 0;
    const auto rep = noetherian_chain_check(p, 0, 2, 11);
    EXPECT_TRUE(rep.annihilation);
    ASSERT_EQ(rep.steps.size(), 2u);
    for (const auto& s : rep.steps) {
        EXPECT_TRUE(s.strict);
        EXPECT_TRUE(s.support_ok) << s.bad_support;
    }
    EXPECT_TRUE(rep.ok());
}

TEST(Noetherian, Preconditions) {
    const auto p = with_beta({1, 1, 1});
    EXPECT_THROW(noetherian_chain_check(p, 0, 1, 8), InputError);
    const auto q = with_beta({0, 1, 1});
    EXPECT_THROW(noetherian_chain_check(q, 0, 2, 5), InputError);
}

TEST(PwdProbeH, NonzeroAndZeroBeta) {
    const auto good = with_beta({1, 2, -1}, {1, 0, 1});
    const auto rep = pwd_probe_H(good, 4, 40, 3);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.zero_products, 0);
    const auto sys = build_certified(Preset::QuiverDownUp, good);
    const Element e1 = Element::of(Path::trivial(3, 1));
    EXPECT_EQ(normal_form(sys, e1 * e1), e1);

    const auto bad = with_beta({0, 1, 1}, {1, 1, 1});
    const auto rb = pwd_probe_H(bad, 3, 10, 3);
    ASSERT_TRUE(rb.counterexample);
    EXPECT_TRUE(rb.counterexample_verified);
    EXPECT_TRUE(rb.ok());
}
