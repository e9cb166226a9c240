#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kinet/lp.hpp"
#include "kinet/qmatrix.hpp"
#include "kinet/rational.hpp"
#include "kinet/subspace.hpp"

using namespace kinet;

TEST_CASE("rational parsing covers integer, fraction, decimal, exponent forms") {
    CHECK(rat_from_string("3") == Rat(3));
    CHECK(rat_from_string("-2") == Rat(-2));
    CHECK(rat_from_string("3/2") == Rat(3, 2));
    CHECK(rat_from_string("-3/2") == Rat(-3, 2));
    CHECK(rat_from_string("0.25") == Rat(1, 4));
    CHECK(rat_from_string("1e-3") == Rat(1, 1000));
    CHECK(rat_from_string("2.5e2") == Rat(250));
    CHECK(rat_from_string(".5") == Rat(1, 2));
    CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
    CHECK(rat_to_string(Rat(3, 2)) == "3/2");
    CHECK(rat_to_string(Rat(-4)) == "-4");
}

TEST_CASE("rref and rank on hand-worked matrices") {
    QMat m{{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(1), Rat(0), Rat(1)}};
    auto r = rref(m);
    CHECK(r.rank == 2);
    CHECK(rank_bareiss(m) == 2);

    QMat id = QMat::identity(4);
    CHECK(rref(id).rank == 4);
    CHECK(rank_bareiss(id) == 4);

    QMat z(3, 3);
    CHECK(rref(z).rank == 0);
    CHECK(rank_bareiss(z) == 0);

    // Rational entries exercise denominator clearing.
    QMat f{{Rat(1, 2), Rat(1, 3)}, {Rat(1, 5), Rat(1)}};
    CHECK(rank_bareiss(f) == 2);
    QMat g{{Rat(1, 2), Rat(1, 3)}, {Rat(3, 2), Rat(1)}};  // row2 = 3 * row1
    CHECK(rank_bareiss(g) == 1);
}

TEST_CASE("kernel basis solves M v = 0") {
    QMat m{{Rat(1), Rat(2), Rat(3)}, {Rat(0), Rat(1), Rat(1)}};
    QMat k = kernel_basis(m);
    CHECK(k.rows() == 1);
    for (size_t r = 0; r < k.rows(); ++r) {
        QVec v = k.row(r);
        CHECK(is_zero(m * v));
    }
}

TEST_CASE("bareiss rank agrees with rref rank on random rational matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), dim(1, 6);
    for (int iter = 0; iter < 200; ++iter) {
        size_t rows = dim(rng), cols = dim(rng);
        QMat m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m(i, j) = Rat(num(rng), den(rng));
        CHECK(rank_bareiss(m) == rref(m).rank);
    }
}

TEST_CASE("orthogonal complement of a plane in Q^3") {
    auto v = Subspace::span({{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}}, 3);
    auto perp = orthogonal_complement(v);
    CHECK(perp.dim() == 1);
    CHECK(member(QVec{Rat(1), Rat(1), Rat(-1)}, perp));
}

namespace {

Subspace random_subspace(std::mt19937_64& rng, size_t ambient) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::uniform_int_distribution<size_t> rows(0, ambient);
    size_t r = rows(rng);
    QMat m(r, ambient);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < ambient; ++j) m(i, j) = Rat(num(rng), den(rng));
    return Subspace::row_space(m);
}

}  // namespace

TEST_CASE("subspace identities on random instances") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<size_t> amb(1, 5);
    for (int iter = 0; iter < 100; ++iter) {
        size_t n = amb(rng);
        Subspace v = random_subspace(rng, n);
        Subspace w = random_subspace(rng, n);

        CHECK(orthogonal_complement(orthogonal_complement(v)) == v);
        CHECK(v.dim() + orthogonal_complement(v).dim() == n);

        Subspace s = sum(v, w);
        Subspace x = intersect(v, w);
        CHECK(s.dim() + x.dim() == v.dim() + w.dim());
        CHECK(orthogonal_complement(x) == sum(orthogonal_complement(v), orthogonal_complement(w)));

        // every basis vector of the intersection lies in both operands
        for (size_t i = 0; i < x.dim(); ++i) {
            CHECK(member(x.basis().row(i), v));
            CHECK(member(x.basis().row(i), w));
        }
    }
}

TEST_CASE("exact and float membership") {
    auto v = Subspace::span({{Rat(1), Rat(1)}}, 2);
    CHECK(member(QVec{Rat(2), Rat(2)}, v));
    CHECK(!member(QVec{Rat(1), Rat(2)}, v));
    CHECK(member(QVec{Rat(0), Rat(0)}, v));

    Eigen::VectorXd close(2);
    close << 1.0 + 1e-12, 1.0;
    CHECK(member(close, v));
    Eigen::VectorXd far(2);
    far << 1.0, 1.1;
    CHECK(!member(far, v));

    // zero subspace: only (near-)zero vectors are members
    auto z = Subspace::zero(2);
    Eigen::VectorXd tiny = Eigen::VectorXd::Constant(2, 1e-12);
    CHECK(member(tiny, z));
    CHECK(!member(far, z));
}

TEST_CASE("direct sum detection") {
    auto a = Subspace::span({{Rat(1), Rat(0), Rat(0)}}, 3);
    auto b = Subspace::span({{Rat(0), Rat(1), Rat(0)}}, 3);
    auto c = Subspace::span({{Rat(1), Rat(1), Rat(0)}}, 3);
    CHECK(is_direct_sum(std::vector<Subspace>{a, b}));
    CHECK(!is_direct_sum(std::vector<Subspace>{a, b, c}));
    CHECK(is_direct_sum(std::vector<Subspace>{}));
}

TEST_CASE("simplex on small known programs") {
    // min -x subject to x + s = 5 -> x = 5
    {
        QMat a{{Rat(1), Rat(1)}};
        LpResult r = simplex_solve(a, {Rat(5)}, {Rat(-1), Rat(0)});
        REQUIRE(r.status == LpStatus::optimal);
        CHECK(r.x[0] == Rat(5));
        CHECK(r.objective == Rat(-5));
    }
    // -x = 1 with x >= 0 is infeasible
    {
        QMat a{{Rat(-1)}};
        LpResult r = simplex_solve(a, {Rat(1)}, {Rat(0)});
        CHECK(r.status == LpStatus::infeasible);
    }
    // min -x with no constraints is unbounded
    {
        QMat a(0, 1);
        LpResult r = simplex_solve(a, {}, {Rat(-1)});
        CHECK(r.status == LpStatus::unbounded);
    }
    // degenerate program exercising Bland's rule
    {
        QMat a{{Rat(1), Rat(-1), Rat(1), Rat(0)}, {Rat(1), Rat(1), Rat(0), Rat(1)}};
        LpResult r = simplex_solve(a, {Rat(0), Rat(2)}, {Rat(-1), Rat(0), Rat(0), Rat(0)});
        REQUIRE(r.status == LpStatus::optimal);
        CHECK(r.x[0] == Rat(1));
    }
}

TEST_CASE("positive vector search: line cases") {
    auto diag = Subspace::span({{Rat(1), Rat(1)}}, 2);
    auto w = contains_positive_vector(diag);
    REQUIRE(w.has_value());
    CHECK(*w == QVec{Rat(1), Rat(1)});

    auto anti = Subspace::span({{Rat(1), Rat(-1)}}, 2);
    CHECK(!contains_positive_vector(anti).has_value());

    CHECK(!contains_positive_vector(Subspace::zero(3)).has_value());

    auto full = Subspace::full(3);
    auto wf = contains_positive_vector(full);
    REQUIRE(wf.has_value());
    for (const auto& x : *wf) CHECK(x > 0);

    // positive vector exists but no basis vector is positive
    auto mixed = Subspace::span({{Rat(2), Rat(-1), Rat(0)}, {Rat(-1), Rat(2), Rat(3)}}, 3);
    auto wm = contains_positive_vector(mixed);
    REQUIRE(wm.has_value());
    for (const auto& x : *wm) CHECK(x > 0);
}

TEST_CASE("positive vector search agrees with grid enumeration in low ambient") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<size_t> amb(1, 3);
    for (int iter = 0; iter < 120; ++iter) {
        size_t n = amb(rng);
        Subspace v = random_subspace(rng, n);
        auto witness = contains_positive_vector(v);
        if (witness.has_value()) {
            REQUIRE(witness->size() == n);
            for (const auto& x : *witness) CHECK(x > 0);
            CHECK(member(*witness, v));
        } else if (v.dim() > 0) {
            // grid over basis coefficients in [-2,2] step 1/4 must find nothing
            size_t d = v.dim();
            std::vector<int> idx(d, 0);
            const int steps = 17;
            bool found = false;
            for (;;) {
                QVec vec(n, Rat(0));
                for (size_t i = 0; i < d; ++i) {
                    Rat coef = Rat(idx[i], 4) - Rat(2);
                    for (size_t j = 0; j < n; ++j) vec[j] += coef * v.basis()(i, j);
                }
                bool pos = true;
                for (const auto& x : vec) pos &= (x > 0);
                if (pos) {
                    found = true;
                    break;
                }
                size_t k = 0;
                while (k < d && ++idx[k] == steps) idx[k++] = 0;
                if (k == d) break;
            }
            CHECK(!found);
        }
    }
}

TEST_CASE("primitive scaling") {
    CHECK(primitive(QVec{Rat(1, 2), Rat(1, 2)}) == QVec{Rat(1), Rat(1)});
    CHECK(primitive(QVec{Rat(2), Rat(4), Rat(6)}) == QVec{Rat(1), Rat(2), Rat(3)});
    CHECK(primitive(QVec{Rat(0), Rat(0)}) == QVec{Rat(0), Rat(0)});
    CHECK(primitive(QVec{Rat(-2, 3), Rat(4, 3)}) == QVec{Rat(-1), Rat(2)});
}
