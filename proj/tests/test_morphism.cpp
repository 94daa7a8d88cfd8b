#include "tlcat/morphism.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "tlcat/errors.hpp"

using tlcat::Diagram;
using tlcat::Laurent;
using tlcat::Morphism;
using tlcat::RationalQ;
using tlcat::Scalar;
using tlcat::ScalarBackend;
using tlcat::StarConfig;

namespace {

const ScalarBackend G = ScalarBackend::generic();

Morphism random_morphism(std::mt19937& rng, int top, int bottom, int terms) {
    std::uniform_int_distribution<long> coeff_dist(-3, 3);
    std::uniform_int_distribution<long> exp_dist(-2, 2);
    auto basis = Diagram::enumerate(top, bottom);
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    Morphism f(top, bottom, G);
    for (int t = 0; t < terms; ++t) {
        Scalar c(RationalQ(Laurent::monomial(mpz_class(coeff_dist(rng)), exp_dist(rng))));
        f = f + Morphism::from_diagram(basis[pick(rng)], G).scaled(c);
    }
    return f;
}

} // namespace

TEST_CASE("composition weights closed loops by d") {
    Morphism eps = Morphism::from_diagram(Diagram::cap(), G);
    Morphism delta = Morphism::from_diagram(Diagram::cup(), G);
    Morphism circle = Morphism::compose(eps, delta);
    CHECK(circle.top_count() == 0);
    CHECK(circle.bottom_count() == 0);
    CHECK(circle.coefficient(Diagram()) == G.d());

    Morphism h1 = Morphism::elementary_h(2, 1, G);
    CHECK(Morphism::compose(h1, h1) == h1.scaled(G.d()));
}

TEST_CASE("normalized elementary morphisms are idempotents with the hook relation") {
    Scalar dinv = G.d().inverse();
    for (int n = 2; n <= 4; ++n) {
        for (int i = 1; i < n; ++i) {
            Morphism ei = Morphism::elementary_h(n, i, G).scaled(dinv);
            CHECK(Morphism::compose(ei, ei) == ei);
            for (int j = 1; j < n; ++j) {
                Morphism ej = Morphism::elementary_h(n, j, G).scaled(dinv);
                if (std::abs(i - j) == 1) {
                    Morphism triple = Morphism::compose(ei, Morphism::compose(ej, ei));
                    CHECK(triple == ei.scaled(G.d().pow(-2)));
                }
                if (std::abs(i - j) >= 2)
                    CHECK(Morphism::compose(ei, ej) == Morphism::compose(ej, ei));
            }
        }
    }
}

TEST_CASE("hook compositions are identities") {
    Morphism eps = Morphism::from_diagram(Diagram::cap(), G);
    Morphism delta = Morphism::from_diagram(Diagram::cup(), G);
    Morphism id1 = Morphism::identity(1, G);
    Morphism left = Morphism::compose(Morphism::tensor(id1, eps), Morphism::tensor(delta, id1));
    Morphism right = Morphism::compose(Morphism::tensor(eps, id1), Morphism::tensor(id1, delta));
    CHECK(left == id1);
    CHECK(right == id1);
}

TEST_CASE("linear structure") {
    std::mt19937 rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        Morphism f = random_morphism(rng, 3, 1, 2);
        Morphism g = random_morphism(rng, 3, 1, 2);
        CHECK(f + g == g + f);
        CHECK((f - f).is_zero());
        CHECK(f.scaled(G.integer(2)) == f + f);
        CHECK(f.scaled(G.zero()).is_zero());
    }
    Morphism f = random_morphism(rng, 2, 2, 2);
    Morphism g = random_morphism(rng, 2, 2, 2);
    Morphism x = random_morphism(rng, 2, 2, 2);
    // bilinearity of composition
    CHECK(Morphism::compose(f + g, x) == Morphism::compose(f, x) + Morphism::compose(g, x));
    CHECK(Morphism::compose(x, f + g) == Morphism::compose(x, f) + Morphism::compose(x, g));
    CHECK_THROWS_AS((void)(f + random_morphism(rng, 1, 3, 1)), tlcat::SignatureMismatch);
}

TEST_CASE("interchange law over two-strand pieces") {
    std::vector<std::pair<int, int>> shapes{{0, 2}, {2, 0}, {1, 1}, {2, 2}};
    for (auto [ft, fb] : shapes)
        for (auto [gt, gb] : shapes)
            for (auto [ft2, fb2] : shapes) {
                if (fb != ft2) continue;
                for (auto [gt2, gb2] : shapes) {
                    if (gb != gt2) continue;
                    for (const auto& df : Diagram::enumerate(ft, fb))
                        for (const auto& dg : Diagram::enumerate(gt, gb))
                            for (const auto& df2 : Diagram::enumerate(ft2, fb2))
                                for (const auto& dg2 : Diagram::enumerate(gt2, gb2)) {
                                    Morphism f = Morphism::from_diagram(df, G);
                                    Morphism g = Morphism::from_diagram(dg, G);
                                    Morphism f2 = Morphism::from_diagram(df2, G);
                                    Morphism g2 = Morphism::from_diagram(dg2, G);
                                    Morphism lhs = Morphism::compose(Morphism::tensor(f, g),
                                                                     Morphism::tensor(f2, g2));
                                    Morphism rhs = Morphism::tensor(Morphism::compose(f, f2),
                                                                    Morphism::compose(g, g2));
                                    CHECK(lhs == rhs);
                                }
                }
            }
}

TEST_CASE("transpose is an antihomomorphism") {
    std::mt19937 rng(21);
    Morphism f = random_morphism(rng, 2, 4, 3);
    Morphism g = random_morphism(rng, 4, 2, 3);
    CHECK(f.transpose().transpose() == f);
    CHECK(Morphism::compose(f, g).transpose() ==
          Morphism::compose(g.transpose(), f.transpose()));
    CHECK(Morphism::tensor(f, g).transpose() ==
          Morphism::tensor(g.transpose(), f.transpose()));
    CHECK(Morphism::tensor(f, Morphism::identity(0, G)) == f);
}

TEST_CASE("markov trace closes diagrams") {
    for (int n = 0; n <= 4; ++n)
        CHECK(Morphism::identity(n, G).markov_trace() == G.d().pow(n));
    for (int n = 2; n <= 5; ++n)
        for (int i = 1; i < n; ++i)
            CHECK(Morphism::elementary_h(n, i, G).markov_trace() == G.d().pow(n - 1));
    CHECK_THROWS_AS(Morphism(1, 3, G).markov_trace(), tlcat::NotEndomorphism);

    std::mt19937 rng(22);
    Morphism f = random_morphism(rng, 3, 3, 3);
    Morphism g = random_morphism(rng, 3, 3, 3);
    CHECK((f + g).markov_trace() == f.markov_trace() + g.markov_trace());
}

TEST_CASE("left and right closures both reproduce the trace") {
    for (int n = 1; n <= 5; ++n) {
        Morphism eps = Morphism::from_diagram(Diagram::nested_cap(n), G);
        Morphism delta = Morphism::from_diagram(Diagram::nested_cup(n), G);
        Morphism idn = Morphism::identity(n, G);
        for (const auto& d : Diagram::enumerate(n, n)) {
            Morphism f = Morphism::from_diagram(d, G);
            Morphism right =
                Morphism::compose(Morphism::compose(eps, Morphism::tensor(f, idn)), delta);
            Morphism left =
                Morphism::compose(Morphism::compose(eps, Morphism::tensor(idn, f)), delta);
            Scalar tr = f.markov_trace();
            CHECK(right.coefficient(Diagram()) == tr);
            CHECK(left.coefficient(Diagram()) == tr);
        }
    }
}

TEST_CASE("trace is symmetric under cyclic exchange and transpose") {
    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 3; ++n) {
            if ((m + n) % 2 != 0) continue;
            for (const auto& df : Diagram::enumerate(n, m))
                for (const auto& dg : Diagram::enumerate(m, n)) {
                    Morphism f = Morphism::from_diagram(df, G);
                    Morphism g = Morphism::from_diagram(dg, G);
                    CHECK(Morphism::compose(f, g).markov_trace() ==
                          Morphism::compose(g, f).markov_trace());
                }
        }
    }
    std::mt19937 rng(23);
    Morphism h = random_morphism(rng, 3, 3, 4);
    CHECK(h.transpose().markov_trace() == h.markov_trace());
}

TEST_CASE("conditional expectation onto fewer strands") {
    Morphism id2 = Morphism::identity(2, G);
    Morphism id1 = Morphism::identity(1, G);
    CHECK(id2.conditional_expectation(1) == id1);
    CHECK(id2.conditional_expectation(2) == id2);

    Morphism h1 = Morphism::elementary_h(2, 1, G);
    CHECK(h1.conditional_expectation(1) == id1.scaled(G.d().inverse()));

    // Compatibility with the full trace, and the module property.
    for (const auto& dx : Diagram::enumerate(2, 2)) {
        Morphism x = Morphism::from_diagram(dx, G);
        CHECK(x.conditional_expectation(1).markov_trace() * G.d() == x.markov_trace());
        CHECK(x.conditional_expectation(0).coefficient(Diagram()) * G.d().pow(2) ==
              x.markov_trace());
    }
    for (const auto& dx : Diagram::enumerate(3, 3)) {
        Morphism x = Morphism::from_diagram(dx, G);
        CHECK(x.conditional_expectation(2).markov_trace() * G.d() == x.markov_trace());
        for (const auto& da : Diagram::enumerate(2, 2))
            for (const auto& db : Diagram::enumerate(2, 2)) {
                Morphism a = Morphism::from_diagram(da, G);
                Morphism b = Morphism::from_diagram(db, G);
                Morphism big = Morphism::compose(
                    Morphism::compose(Morphism::tensor(a, id1), x), Morphism::tensor(b, id1));
                Morphism small = Morphism::compose(
                    Morphism::compose(a, x.conditional_expectation(2)), b);
                CHECK(big.conditional_expectation(2) == small);
            }
        CHECK(Morphism::tensor(x, id1).conditional_expectation(3) == x);
    }

    CHECK_THROWS_AS(Morphism(1, 3, G).conditional_expectation(1), tlcat::NotEndomorphism);
    CHECK_THROWS_AS(id2.conditional_expectation(3), tlcat::SignatureMismatch);
    CHECK_THROWS_AS(Morphism::identity(2, G, G.zero()).conditional_expectation(1),
                    tlcat::DivisionByZero);
}

TEST_CASE("bends move single strands and invert each other") {
    Morphism delta = Morphism::from_diagram(Diagram::cup(), G);
    CHECK(delta.bend_right_down() == Morphism::identity(1, G));
    Morphism eps = Morphism::from_diagram(Diagram::cap(), G);
    CHECK(eps.bend_right_up() == Morphism::identity(1, G));

    for (auto [top, bottom] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {2, 2}}) {
        for (const auto& d : Diagram::enumerate(top, bottom)) {
            Morphism f = Morphism::from_diagram(d, G);
            CHECK(f.bend_right_down().bend_right_up() == f);
            CHECK(f.bend_left_down().bend_left_up() == f);
            if (bottom > 0) {
                CHECK(f.bend_right_up().bend_right_down() == f);
                CHECK(f.bend_left_up().bend_left_down() == f);
            }
        }
    }
    CHECK_THROWS_AS(eps.bend_right_down(), tlcat::NoStrand);
    CHECK_THROWS_AS(delta.bend_left_up(), tlcat::NoStrand);
}

TEST_CASE("complete bending equals the transpose") {
    std::mt19937 rng(24);
    for (auto [top, bottom] : std::vector<std::pair<int, int>>{{2, 2}, {1, 3}, {3, 1}}) {
        Morphism f = random_morphism(rng, top, bottom, 3);
        Morphism around_right = f;
        for (int k = 0; k < top; ++k) around_right = around_right.bend_right_down();
        for (int k = 0; k < bottom; ++k) around_right = around_right.bend_left_up();
        CHECK(around_right == f.transpose());

        Morphism around_left = f;
        for (int k = 0; k < top; ++k) around_left = around_left.bend_left_down();
        for (int k = 0; k < bottom; ++k) around_left = around_left.bend_right_up();
        CHECK(around_left == f.transpose());
    }
}

TEST_CASE("dual idempotent fixes the standard idempotents") {
    Morphism id3 = Morphism::identity(3, G);
    CHECK(id3.dual_idempotent() == id3);
    Morphism e1 = Morphism::elementary_h(2, 1, G).scaled(G.d().inverse());
    CHECK(e1.dual_idempotent() == e1);
    // For diagram sums the dual is the transpose.
    Morphism e2 = Morphism::elementary_h(3, 2, G).scaled(G.d().inverse());
    CHECK(e2.dual_idempotent() == e2.transpose());
    CHECK_THROWS_AS(Morphism::elementary_h(2, 1, G).dual_idempotent(), tlcat::NotIdempotent);
}

TEST_CASE("star is a conjugate-linear involutive antihomomorphism") {
    StarConfig cfg = StarConfig::from_loop(G, G.d());
    CHECK(cfg.sign_factor == G.one());

    Morphism eps = Morphism::from_diagram(Diagram::cap(), G);
    Morphism delta = Morphism::from_diagram(Diagram::cup(), G);
    CHECK(eps.star(cfg) == delta);
    for (int i = 1; i < 4; ++i) {
        Morphism hi = Morphism::elementary_h(4, i, G);
        CHECK(hi.star(cfg) == hi);
    }

    std::mt19937 rng(25);
    for (int trial = 0; trial < 15; ++trial) {
        Morphism f = random_morphism(rng, 3, 1, 3);
        CHECK(f.star(cfg).star(cfg) == f);
        Morphism g = random_morphism(rng, 1, 3, 3);
        CHECK(Morphism::compose(f, g).star(cfg) ==
              Morphism::compose(g.star(cfg), f.star(cfg)));
        CHECK(Morphism::tensor(f, g).star(cfg) ==
              Morphism::tensor(f.star(cfg), g.star(cfg)));
        // conjugate-linearity in the coefficient
        Scalar c(RationalQ::q_power(2));
        CHECK(f.scaled(c).star(cfg) == f.star(cfg).scaled(c.conjugate()));
    }

    // f*f = 0 forces f = 0 on these small hom sets.
    for (int trial = 0; trial < 20; ++trial) {
        Morphism f = random_morphism(rng, 3, 1, 2);
        if (f.is_zero()) continue;
        CHECK(!Morphism::compose(f.star(cfg), f).is_zero());
    }
}

TEST_CASE("star at a negative loop value flips odd arc indices") {
    ScalarBackend flt = ScalarBackend::floating_d(-2.5);
    StarConfig cfg = StarConfig::from_loop(flt, flt.d());
    CHECK(cfg.sign_factor == -flt.one());
    Morphism eps = Morphism::from_diagram(Diagram::cap(), flt);
    CHECK(eps.star(cfg) == Morphism::from_diagram(Diagram::cup(), flt).scaled(-flt.one()));
    CHECK(eps.star(cfg).star(cfg) == eps);
}

TEST_CASE("twist rescales by arc index") {
    Scalar lambda(RationalQ::q_power(3));
    Morphism eps = Morphism::from_diagram(Diagram::cap(), G);
    Morphism delta = Morphism::from_diagram(Diagram::cup(), G);
    CHECK(eps.twist(lambda) == eps.scaled(lambda));
    CHECK(delta.twist(lambda) == delta.scaled(lambda.inverse()));
    Morphism h1 = Morphism::elementary_h(2, 1, G);
    CHECK(h1.twist(lambda) == h1);
    CHECK_THROWS_AS(h1.twist(G.zero()), tlcat::NonInvertibleScalar);

    // multiplicative and monoidal, and composition of twists
    std::vector<std::pair<int, int>> shapes{{0, 2}, {2, 0}, {2, 2}};
    for (auto [ft, fb] : shapes)
        for (auto [gt, gb] : shapes) {
            if (fb != gt) continue;
            for (const auto& df : Diagram::enumerate(ft, fb))
                for (const auto& dg : Diagram::enumerate(gt, gb)) {
                    Morphism f = Morphism::from_diagram(df, G);
                    Morphism g = Morphism::from_diagram(dg, G);
                    CHECK(Morphism::compose(f, g).twist(lambda) ==
                          Morphism::compose(f.twist(lambda), g.twist(lambda)));
                }
        }
    std::mt19937 rng(26);
    Morphism f = random_morphism(rng, 3, 1, 3);
    Morphism g = random_morphism(rng, 2, 2, 2);
    CHECK(Morphism::tensor(f, g).twist(lambda) ==
          Morphism::tensor(f.twist(lambda), g.twist(lambda)));
    CHECK(f.twist(G.one()) == f);
    Scalar mu(RationalQ::q_power(-1));
    CHECK(f.twist(lambda).twist(mu) == f.twist(lambda * mu));
}

TEST_CASE("negating the loop value gives an isomorphic algebra") {
    Scalar d2 = -G.d();
    for (int n = 2; n <= 4; ++n) {
        // Images -h_i of the generators inside the loop-value -d category
        // satisfy the original relations, with the original loop value.
        auto image = [&](int i) {
            return Morphism::elementary_h(n, i, G, d2).scaled(-G.one());
        };
        for (int i = 1; i < n; ++i) {
            Morphism hi = image(i);
            CHECK(Morphism::compose(hi, hi) == hi.scaled(G.d()));
            for (int j = 1; j < n; ++j) {
                Morphism hj = image(j);
                if (std::abs(i - j) == 1)
                    CHECK(Morphism::compose(hi, Morphism::compose(hj, hi)) == hi);
                if (std::abs(i - j) >= 2)
                    CHECK(Morphism::compose(hi, hj) == Morphism::compose(hj, hi));
            }
        }
    }
}

TEST_CASE("context mismatches are rejected") {
    Morphism generic = Morphism::identity(2, G);
    Morphism cyc = Morphism::identity(2, ScalarBackend::cyclotomic(10));
    CHECK_THROWS_AS(Morphism::compose(generic, cyc), tlcat::BackendMismatch);
    CHECK_THROWS_AS(Morphism::tensor(generic, cyc), tlcat::BackendMismatch);
    Morphism other_d = Morphism::identity(2, G, -G.d());
    CHECK_THROWS_AS(Morphism::compose(generic, other_d), tlcat::BackendMismatch);
    CHECK(generic != other_d);
    CHECK_THROWS_AS((void)generic.equals(cyc), tlcat::BackendMismatch);
    CHECK_THROWS_AS(Morphism::compose(generic, Morphism::identity(3, G)),
                    tlcat::SignatureMismatch);
}
