#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <latpoly/closed_forms.hpp>
#include <latpoly/paving.hpp>

#include "support.hpp"

using namespace latpoly;
using latpoly::testing::random_weights;
using latpoly::testing::uniform;

namespace {

// Count pavings by checking every labelling of the k vertices with
// {uncovered, monomer, dimer-left, dimer-right}.
std::uint64_t count_by_labelling(int k, bool monomers) {
    std::uint64_t count = 0;
    const auto total = static_cast<std::uint64_t>(std::pow(4, k));
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<int> label(static_cast<std::size_t>(k));
        std::uint64_t c = code;
        for (auto& l : label) {
            l = static_cast<int>(c % 4);
            c /= 4;
        }
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            const int l = label[static_cast<std::size_t>(i)];
            if (l == 1 && !monomers) ok = false;
            if (l == 2) ok = i + 1 < k && label[static_cast<std::size_t>(i + 1)] == 3;
            if (l == 3) ok = i > 0 && label[static_cast<std::size_t>(i - 1)] == 2;
        }
        count += ok ? 1 : 0;
    }
    return count;
}

} // namespace

TEST(Pavings, CountsMatchIndependentLabelling) {
    for (int k = 0; k <= 7; ++k) {
        EXPECT_EQ(enumerate_pavings(k, paving_family::ballot).size(), count_by_labelling(k, false)) << k;
        EXPECT_EQ(enumerate_pavings(k, paving_family::motzkin).size(), count_by_labelling(k, true)) << k;
    }
    EXPECT_EQ(enumerate_pavings(0, paving_family::motzkin).size(), 1u);
    EXPECT_EQ(enumerate_pavings(4, paving_family::ballot).size(), 5u);
    EXPECT_EQ(enumerate_pavings(3, paving_family::motzkin).size(), 12u);
}

TEST(Pavings, CountRecurrences) {
    for (int k = 2; k <= 20; ++k) {
        EXPECT_EQ(paving_count(k, paving_family::ballot),
                  paving_count(k - 1, paving_family::ballot) + paving_count(k - 2, paving_family::ballot));
        EXPECT_EQ(paving_count(k, paving_family::motzkin),
                  2 * paving_count(k - 1, paving_family::motzkin) + paving_count(k - 2, paving_family::motzkin));
    }
}

TEST(Pavings, CoverEveryVertexOnce) {
    for (const auto& p : enumerate_pavings(6, paving_family::motzkin)) {
        std::vector<int> covered(6, 0);
        for (const auto& pv : p.pavers) {
            if (pv.kind == paver_kind::dimer) {
                ++covered[static_cast<std::size_t>(pv.position - 1)];
                ++covered[static_cast<std::size_t>(pv.position)];
            } else {
                ++covered[static_cast<std::size_t>(pv.position)];
            }
        }
        ASSERT_TRUE(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; })) << to_string(p);
    }
}

TEST(Pavings, SizeLimit) {
    EXPECT_THROW(enumerate_pavings(30, paving_family::motzkin), size_limit);
    EXPECT_THROW(enumerate_pavings(10, paving_family::ballot, 10), size_limit);
}

TEST(Pavings, DiagramRendering) {
    const paving p{4, {{paver_kind::uncovered, 0}, {paver_kind::monomer, 1}, {paver_kind::dimer, 3}}};
    EXPECT_EQ(to_string(p), ". M D-");
}

TEST(PavingPolynomial, Examples) {
    const auto w = weight_spec::symbolic(4);
    for (int j = 0; j <= 2; ++j) {
        EXPECT_EQ(paving_polynomial(1, j, w), x_var() - var("b_" + std::to_string(j)));
        EXPECT_EQ(paving_polynomial(0, j, w), polynomial(1));
    }
    weight_spec ballot{polynomial(0), polynomial(1), {}, {}, 4};
    for (int i = 1; i <= 4; ++i) ballot.down.emplace(i, var("lambda_" + std::to_string(i)) - polynomial(1));
    EXPECT_EQ(paving_polynomial(2, 1, ballot), pow(x_var(), 2) - var("lambda_2"));
}

TEST(PavingPolynomial, EqualsOrthoPoly) {
    for (int trial = 0; trial < 20; ++trial) {
        const auto w = random_weights(6);
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 8; ++k) ASSERT_EQ(paving_polynomial(k, j, w), ortho_poly(k, j, w).value);
    }
}

TEST(Cuts, EdgeCutExample) {
    const auto w = weight_spec::symbolic(4);
    const auto d = edge_cut(2, 0, 1, w);
    ASSERT_EQ(d.terms.size(), 2u);
    EXPECT_EQ(d.expand(w), (x_var() - var("b_0")) * (x_var() - var("b_1")) - var("lambda_1"));
    EXPECT_THROW(edge_cut(2, 0, 0, w), cut_out_of_range);
    EXPECT_THROW(edge_cut(2, 0, 2, w), cut_out_of_range);
}

TEST(Cuts, VertexCutExamples) {
    const auto w = weight_spec::symbolic(4);
    EXPECT_EQ(vertex_cut(2, 0, 1, w).expand(w), ortho_poly(2, 0, w).value);
    const auto single = vertex_cut(1, 2, 0, w);
    EXPECT_EQ(single.terms.size(), 1u);
    EXPECT_EQ(single.expand(w), x_var() - var("b_2"));
    EXPECT_THROW(vertex_cut(3, 0, 3, w), cut_out_of_range);
    EXPECT_THROW(vertex_cut(3, 0, -1, w), cut_out_of_range);
}

TEST(Cuts, ExpansionReproducesOrthoPoly) {
    for (int trial = 0; trial < 5; ++trial) {
        const auto w = random_weights(5);
        for (int j = 0; j <= 2; ++j)
            for (int k = 1; k <= 8; ++k) {
                const polynomial p = ortho_poly(k, j, w).value;
                for (int c = 1; c <= k - 1; ++c) ASSERT_EQ(edge_cut(k, j, c, w).expand(w), p);
                for (int c = 0; c <= k - 1; ++c) ASSERT_EQ(vertex_cut(k, j, c, w).expand(w), p);
            }
    }
}

TEST(Decompose, NoDecorationsGivesOneTerm) {
    const auto w = weight_spec::background(var("b"), var("lambda"), 6);
    const auto d = decompose(6, 0, w);
    ASSERT_EQ(d.terms.size(), 1u);
    EXPECT_EQ(d.terms[0].coefficient, polynomial(1));
    ASSERT_EQ(d.terms[0].factors.size(), 1u);
    EXPECT_EQ(d.terms[0].factors[0].order, 6);
    EXPECT_EQ(to_string(d), "S_6");
}

TEST(Decompose, InteriorDownDecorationGivesTwoTerms) {
    weight_spec w = weight_spec::background(polynomial(0), polynomial(1), 8);
    w.down.emplace(4, var("kappa_hat"));
    const auto d = decompose(8, 0, w);
    EXPECT_EQ(d.terms.size(), 2u);
    EXPECT_EQ(d.expand(w), ortho_poly(8, 0, w).value);
}

TEST(Decompose, ExpansionAndBoundOnRandomPlacements) {
    for (int trial = 0; trial < 50; ++trial) {
        weight_spec w = weight_spec::background(var("b"), var("lambda"), 10);
        const int k = uniform(1, 10), j = uniform(0, 2);
        const int n_across = uniform(0, 3), n_down = uniform(0, 3);
        for (int i = 0; i < n_across; ++i) w.across[uniform(0, 12)] = var("c_" + std::to_string(i));
        for (int i = 0; i < n_down; ++i) w.down[uniform(1, 12)] = var("d_" + std::to_string(i));
        const auto d = decompose(k, j, w);
        const auto [db, dl] = decoration_counts(k, j, w);
        ASSERT_LE(d.terms.size(), static_cast<std::size_t>(std::pow(2, dl) * std::pow(3, db)));
        for (const auto& t : d.terms) ASSERT_LE(t.factors.size(), static_cast<std::size_t>(db + dl + 1));
        ASSERT_EQ(d.expand(w), ortho_poly(k, j, w).value);
    }
}

TEST(Decompose, BoundIsAttainedForSeparatedDecorations) {
    weight_spec w = weight_spec::background(var("b"), var("lambda"), 14);
    w.down.emplace(3, var("d_1"));
    w.across.emplace(7, var("c_1"));
    w.down.emplace(11, var("d_2"));
    const auto d = decompose(14, 0, w);
    EXPECT_EQ(d.terms.size(), 2u * 3u * 2u);
    EXPECT_EQ(d.expand(w), ortho_poly(14, 0, w).value);
}

TEST(Decompose, TwoWallModelHasFourTerms) {
    for (int L = 4; L <= 8; ++L) {
        const auto w = dmr_weights({0, L});
        const auto d = decompose(L + 1, 0, w);
        // x stands for S_1 when b = 0
        std::vector<std::pair<std::string, std::vector<int>>> got;
        for (const auto& t : d.terms) {
            std::vector<int> orders;
            for (const auto& f : t.factors) orders.push_back(f.order);
            std::sort(orders.begin(), orders.end());
            got.emplace_back(to_string(t.coefficient), orders);
        }
        std::vector<std::pair<std::string, std::vector<int>>> expected{
            {"1", {1, 1, L - 1}}, {"-kappa", {1, L - 2}}, {"-omega", {1, L - 2}}, {"kappa*omega", {L - 3}}};
        for (auto& e : expected) std::sort(e.second.begin(), e.second.end());
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(got, expected) << "L=" << L << ": " << to_string(d);
        EXPECT_EQ(d.expand(w), ortho_poly(L + 1, 0, w).value);
    }
}
