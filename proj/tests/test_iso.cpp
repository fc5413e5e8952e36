#include "qdu/iso.hpp"
#include "qdu/structure.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace qdu;
using qdu::testing::scalars;

namespace {

Parameters betas(std::vector<Scalar> b) {
    const std::size_t n = b.size();
    return Parameters(std::vector<Scalar>(n, Scalar(0)), std::move(b), std::vector<Scalar>(n, Scalar(0)));
}

std::vector<Scalar> random_lambda(Rng& rng, int n) {
    std::vector<Scalar> l;
    for (int i = 0; i < n; ++i) l.push_back(random_scalar(rng, 4, true));
    return l;
}

/// Random composite of constructors applied to p, gamma kept zero.
Parameters random_transform(Rng& rng, Parameters p) {
    const int steps = random_int(rng, 1, 4);
    for (int s = 0; s < steps; ++s) {
        switch (random_int(rng, 0, 2)) {
            case 0: p = scale_params(p, random_lambda(rng, p.n)); break;
            case 1: p = rotate_params(p, random_int(rng, 1, p.n - 1)); break;
            default: p = reflect_params(p);
        }
    }
    return p;
}

Parameters random_graded(Rng& rng, int n) {
    Parameters p = random_params(rng, n, true, false);
    for (auto& a : p.alpha)
        if (random_int(rng, 0, 3) == 0) a = 0;
    return p;
}

}  // namespace

TEST(IsoConstructors, Examples) {
    const Parameters one = betas(scalars({1, 1, 1}));
    EXPECT_EQ(scale_params(one, scalars({1, 2, 1})).beta, (std::vector<Scalar>{2, 1, Scalar(1, 2)}));

    Parameters a(3);
    a.alpha = scalars({5, 6, 7});
    EXPECT_EQ(rotate_params(a).alpha, scalars({7, 5, 6}));

    EXPECT_EQ(reflect_params(betas(scalars({1, 2, 4}))).beta,
              (std::vector<Scalar>{Scalar(1, 4), Scalar(1, 2), Scalar(1)}));
    EXPECT_THROW(reflect_params(betas(scalars({0, 1, 1}))), InputError);
    EXPECT_THROW(scale_params(one, scalars({1, 0, 1})), InputError);
}

TEST(IsoConstructors, MapsRespectRelations) {
    Rng rng(21);
    for (int n : {2, 3, 4, 5}) {
        for (int t = 0; t < 5; ++t) {
            const Parameters p = random_params(rng, n);
            const auto lam = random_lambda(rng, n);
            EXPECT_TRUE(check_diagonal_map(scale_map(lam), p, scale_params(p, lam)).ok()) << p.str();
            EXPECT_TRUE(check_diagonal_map(GradedMap::rotation(n, 1), p, rotate_params(p)).ok()) << p.str();
            EXPECT_TRUE(check_diagonal_map(GradedMap::reflection(n), p, reflect_params(p)).ok()) << p.str();
        }
    }
}

TEST(IsoConstructors, ComposedWitnessIsCoherent) {
    Rng rng(22);
    for (int t = 0; t < 20; ++t) {
        const int n = random_int(rng, 3, 5);
        const Parameters p = random_params(rng, n);
        const Orientation o = random_int(rng, 0, 1) ? Orientation::Reflection : Orientation::Rotation;
        const IsoWitness w = make_witness(o, random_int(rng, 0, n - 1), random_lambda(rng, n));
        const Parameters q = apply_witness(w, p);
        EXPECT_TRUE(verify_witness(w, p, q).ok()) << p.str();
        EXPECT_TRUE(check_diagonal_map(w.map, p, q).ok());
    }
}

TEST(IsoConstructors, ReflectionCompositeBetaFormula) {
    // beta'_i = beta_{n-i-s-1}^{-1} lambda_{n-i-s-2} / lambda_{n-i-s}, s = -k
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        const int n = random_int(rng, 3, 6), k = random_int(rng, 0, n - 1);
        const Parameters p = random_params(rng, n, true, false);
        const auto lam = random_lambda(rng, n);
        const Parameters q = apply_witness(make_witness(Orientation::Reflection, k, lam), p);
        const int s = n - k;
        auto L = [&](int i) { return lam[mod(i, n)]; };
        for (int i = 0; i < n; ++i) EXPECT_EQ(q.beta[i], L(n - i - s - 2) / L(n - i - s) / p.b(n - i - s - 1));
    }
    // the variant with both lambdas inverted does not match
    const Parameters p = betas(scalars({1, 1, 1}));
    const auto lam = scalars({1, 2, 3});
    const Parameters q = apply_witness(make_witness(Orientation::Reflection, 0, lam), p);
    auto L = [&](int i) { return lam[mod(i, 3)]; };
    bool all_match = true;
    for (int i = 0; i < 3; ++i)
        if (q.beta[i] != 1 / (L(3 - i - 2) * L(3 - i) * p.b(3 - i - 1))) all_match = false;
    EXPECT_FALSE(all_match);
}

TEST(IsoWitness, Verification) {
    const Parameters one = betas(scalars({1, 1, 1}));
    EXPECT_TRUE(verify_witness(make_witness(Orientation::Rotation, 0, scalars({1, 1, 1})), one, one).ok());

    Rng rng(24);
    const Parameters p = random_params(rng, 3, true, false);
    const IsoWitness w = make_witness(Orientation::Rotation, 1, scalars({1, 3, -2}));
    const Parameters q = apply_witness(w, p);
    EXPECT_EQ(q, rotate_params(scale_params(p, w.lambda), 1));
    EXPECT_TRUE(verify_witness(w, p, q).ok());

    IsoWitness bad = make_witness(Orientation::Rotation, 1, scalars({1, 3, -1}));
    const auto rep = verify_witness(bad, p, q);
    EXPECT_FALSE(rep.ok());
    ASSERT_FALSE(rep.defects.empty());
    EXPECT_FALSE(rep.defects.front().second.is_zero());
}

TEST(RatioSolver, Examples) {
    auto sol = solve_ratio_system({{1, 0, 2}, {2, 1, 3}}, 3);
    ASSERT_TRUE(std::holds_alternative<std::vector<Scalar>>(sol));
    EXPECT_EQ(std::get<std::vector<Scalar>>(sol), scalars({1, 2, 6}));

    sol = solve_ratio_system({{0, 0, 2}}, 1);
    ASSERT_TRUE(std::holds_alternative<Inconsistency>(sol));
    EXPECT_EQ(std::get<Inconsistency>(sol).ratio, 2);
    EXPECT_EQ(std::get<Inconsistency>(sol).cycle.size(), 1u);

    sol = solve_ratio_system({}, 3);
    EXPECT_EQ(std::get<std::vector<Scalar>>(sol), scalars({1, 1, 1}));
}

TEST(RatioSolver, CycleCertificateMultipliesOut) {
    Rng rng(25);
    for (int t = 0; t < 30; ++t) {
        const int n = random_int(rng, 2, 6);
        std::vector<RatioConstraint> cons;
        for (int e = 0; e < n + 2; ++e)
            cons.push_back({random_int(rng, 0, n - 1), random_int(rng, 0, n - 1), random_scalar(rng, 3, true)});
        const auto sol = solve_ratio_system(cons, n);
        if (const auto* lam = std::get_if<std::vector<Scalar>>(&sol)) {
            for (const auto& c : cons) EXPECT_EQ((*lam)[c.a], c.c * (*lam)[c.b]);
            continue;
        }
        // walk the loop: each edge relates consecutive vertices in either direction
        const auto& inc = std::get<Inconsistency>(sol);
        EXPECT_NE(inc.ratio, 1);
        const auto& last = inc.cycle.back();
        int at = last.b;
        Scalar prod = 1;  // lambda_at / lambda_{last.b}
        for (std::size_t e = 0; e + 1 < inc.cycle.size(); ++e) {
            const auto& c = inc.cycle[e];
            if (c.b == at) {
                prod *= c.c;
                at = c.a;
            } else {
                ASSERT_EQ(c.a, at);
                prod /= c.c;
                at = c.b;
            }
        }
        ASSERT_EQ(at, last.a);
        EXPECT_EQ(last.c / prod, inc.ratio);
    }
}

TEST(IsoDecision, Examples) {
    const Parameters one = betas(scalars({1, 1, 1}));
    auto v = decide_graded_iso(one, one);
    ASSERT_EQ(v.kind, IsoVerdict::Kind::Isomorphic);
    EXPECT_EQ(v.witness->lambda, scalars({1, 1, 1}));
    EXPECT_EQ(v.witness->shift, 0);
    EXPECT_EQ(v.witness->orientation, Orientation::Rotation);

    v = decide_graded_iso(one, betas(scalars({1, 1, 2})));
    EXPECT_EQ(v.kind, IsoVerdict::Kind::NotIsomorphic);
    EXPECT_EQ(v.certificates.size(), 6u);

    v = decide_graded_iso(one, betas({2, 1, Scalar(1, 2)}));
    ASSERT_EQ(v.kind, IsoVerdict::Kind::Isomorphic);
    EXPECT_EQ(v.witness->lambda, scalars({1, 2, 1}));
    EXPECT_EQ(v.witness->shift, 0);
}

TEST(IsoDecision, Unsupported) {
    const Parameters two = betas(scalars({1, 1}));
    EXPECT_EQ(decide_graded_iso(two, two).kind, IsoVerdict::Kind::Unsupported);
    Parameters g = betas(scalars({1, 1, 1}));
    g.gamma[0] = 1;
    EXPECT_EQ(decide_graded_iso(g, g).kind, IsoVerdict::Kind::Unsupported);
    const Parameters z = betas(scalars({0, 1, 1}));
    EXPECT_EQ(decide_graded_iso(z, z).kind, IsoVerdict::Kind::Unsupported);
}

TEST(IsoDecision, AlphaZeroPatternMatters) {
    Parameters p = betas(scalars({1, 1, 1})), q = p;
    p.alpha = scalars({1, 0, 0});
    q.alpha = scalars({1, 1, 0});
    EXPECT_EQ(decide_graded_iso(p, q).kind, IsoVerdict::Kind::NotIsomorphic);
}

TEST(IsoDecision, RoundTripCompleteness) {
    Rng rng(26);
    for (int t = 0; t < 50; ++t) {
        const int n = random_int(rng, 3, 5);
        const Parameters p = random_graded(rng, n);
        const Parameters q = random_transform(rng, p);
        const auto v = decide_graded_iso(p, q);
        ASSERT_EQ(v.kind, IsoVerdict::Kind::Isomorphic) << p.str() << " vs " << q.str();
        EXPECT_EQ(apply_witness(*v.witness, p), q);
        EXPECT_TRUE(verify_witness(*v.witness, p, q).ok());
    }
}

TEST(IsoDecision, Symmetry) {
    Rng rng(27);
    for (int t = 0; t < 20; ++t) {
        const int n = random_int(rng, 3, 4);
        const Parameters p = random_graded(rng, n);
        const Parameters q = random_int(rng, 0, 1) ? random_transform(rng, p) : random_graded(rng, n);
        EXPECT_EQ(decide_graded_iso(p, q).kind, decide_graded_iso(q, p).kind) << p.str() << " vs " << q.str();
    }
}
