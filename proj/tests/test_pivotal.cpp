#include <catch2/catch_amalgamated.hpp>

#include <fusion6j/builtins.hpp>
#include <fusion6j/pivotal.hpp>

using namespace fusion6j;

namespace {

struct Setup {
    CategoryData C;
    RootChoice rc;
    MuChoice mu;
    EpsilonTable table;

    explicit Setup(CategoryData data, MuPolicy policy = MuPolicy::Balanced)
        : C(std::move(data)),
          mu(choose_mu(C, policy, rc)),
          table(epsilon_table(C, mu, rc)) {}
};

} // namespace

TEST_CASE("obstruction report") {
    Setup fib(make_fibonacci());
    CHECK(pivotal_obstruction(fib.C, fib.table).ok());
    Setup vec(make_vec());
    CHECK(pivotal_obstruction(vec.C, vec.table).ok());

    // synthetic mixed sign spectrum on a 2-dimensional space
    EpsilonTable synthetic = fib.table;
    EpsilonEntry ent;
    ent.M = Matrix::identity(2, FieldKind::QSqrt5);
    ent.K = Matrix::identity(2, FieldKind::QSqrt5);
    ent.K.at(1, 1) = -Scalar::one(FieldKind::QSqrt5);
    ent.eps = {1, -1};
    ent.basis = Matrix::identity(2, FieldKind::QSqrt5);
    ent.alpha_dependent = true;
    synthetic.entries[{1, 1, 0}] = ent;
    auto rep = pivotal_obstruction(fib.C, synthetic);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.entries.front().code == "alpha-dependent");
}

TEST_CASE("pivotal solutions") {
    SECTION("all signs +1 admit the trivial scalars") {
        Setup vec(make_vec());
        auto res = solve_pivotal(vec.C, vec.table);
        REQUIRE(res.solutions.size() == 1);
        CHECK(res.solutions[0].varpi[0] == Scalar::one(FieldKind::Q));
    }

    SECTION("golden-ratio data forces the trivial scalar") {
        Setup fib(make_fibonacci());
        auto res = solve_pivotal(fib.C, fib.table);
        REQUIRE(res.solutions.size() == 1);  // x@x contains x, so w_x^2 = w_x
        CHECK(res.solutions[0].varpi[1] == fib.C.one());
        CHECK(res.solutions[0].spherical);
    }

    SECTION("the two-object pointed category has the two sign branches") {
        Setup sem(make_pointed(2, 1, FieldKind::Q));
        auto res = solve_pivotal(sem.C, sem.table);
        REQUIRE(res.solutions.size() == 2);
        std::vector<Scalar> found{res.solutions[0].varpi[1], res.solutions[1].varpi[1]};
        bool plus = found[0] == sem.C.one() || found[1] == sem.C.one();
        bool minus = found[0] == -sem.C.one() || found[1] == -sem.C.one();
        CHECK(plus);
        CHECK(minus);
        for (auto& s : res.solutions) CHECK(s.spherical);
    }

    SECTION("cyclic rank-3 data has the three cube-root characters") {
        Setup z3(make_pointed(3, 1, FieldKind::QSqrt3i));
        auto res = solve_pivotal(z3.C, z3.table);
        REQUIRE(res.solutions.size() == 3);
        int nontrivial = 0;
        for (auto& s : res.solutions) {
            CHECK(s.varpi[1] * s.varpi[2] == z3.C.one());
            CHECK(s.varpi[1].pow(3) == z3.C.one());
            if (s.varpi[1] != z3.C.one()) {
                ++nontrivial;
                CHECK_FALSE(s.spherical);
            }
        }
        CHECK(nontrivial == 2);
    }

    SECTION("every returned scalar is a root of unity under the cutoff") {
        Setup z4(make_pointed(4, 1, FieldKind::QSqrt3i));
        auto res = solve_pivotal(z4.C, z4.table);
        long cutoff = 2;
        for (int i = 2; i <= z4.C.ring.rank(); ++i) cutoff *= i;
        REQUIRE_FALSE(res.solutions.empty());
        for (auto& s : res.solutions)
            for (auto& w : s.varpi) CHECK(varpi_is_root_of_unity(z4.C, w, cutoff));
    }

    SECTION("an inconsistent sign system is reported with a witness") {
        Setup sem(make_pointed(2, 1, FieldKind::Q));
        EpsilonTable broken = sem.table;
        // flip the sign on the unit channel of x@x: w_x^2 = -1 has no
        // rational solution
        broken.entries.at({1, 1, 0}).eps = {-1};
        auto res = solve_pivotal(sem.C, broken);
        CHECK(res.solutions.empty());
        CHECK(res.unsolvable_witness.has_value());
    }
}

TEST_CASE("Frobenius-Perron dimensions") {
    auto vec = fp_dimensions(make_vec().ring);
    CHECK(vec[0] == Catch::Approx(1.0).margin(1e-11));

    auto fib = fp_dimensions(make_fibonacci().ring);
    CHECK(fib[1] == Catch::Approx(1.6180339887498949).margin(1e-9));

    FusionRing r3 = FusionRing::empty({"1", "x", "y"}, 0, {0, 1, 2});
    for (Label i = 0; i < 3; ++i) {
        r3.set_N(0, i, i, 1);
        r3.set_N(i, 0, i, 1);
    }
    r3.set_N(1, 1, 0, 1);
    r3.set_N(1, 1, 1, 2);
    r3.set_N(1, 1, 2, 1);
    r3.set_N(1, 2, 1, 1);
    r3.set_N(2, 1, 1, 1);
    r3.set_N(2, 2, 0, 1);
    auto d3 = fp_dimensions(r3);
    CHECK(d3[1] == Catch::Approx(2.7320508075688772).margin(1e-9));  // 1 + sqrt3
    CHECK(d3[2] == Catch::Approx(1.0).margin(1e-9));

    // FP dims solve the fusion rules
    for (const FusionRing& R : {make_fibonacci().ring, r3}) {
        auto d = fp_dimensions(R);
        for (Label i = 0; i < R.rank(); ++i)
            for (Label j = 0; j < R.rank(); ++j) {
                double sum = 0;
                for (Label k = 0; k < R.rank(); ++k) sum += R.N(i, j, k) * d[k];
                CHECK(sum == Catch::Approx(d[i] * d[j]).margin(1e-8));
                CHECK(d[i] >= 1.0 - 1e-9);
            }
    }
}

TEST_CASE("pseudo-unitarity dichotomy") {
    SECTION("golden-ratio data is pseudo-unitary") {
        Setup fib(make_fibonacci());
        auto res = solve_pivotal(fib.C, fib.table);
        REQUIRE_FALSE(res.solutions.empty());
        auto fp = fp_dimensions(fib.C.ring);
        auto v = pseudo_unitarity(fib.C, fib.mu, res.solutions[0], fp, fib.table);
        CHECK(v.pseudo_unitary);
        CHECK(v.consistency.ok());
        CHECK(v.paired_float[1] == Catch::Approx(2.6180339887).margin(1e-6));
    }

    SECTION("the conjugate solution is not") {
        Setup yl(make_yanglee());
        auto res = solve_pivotal(yl.C, yl.table);
        REQUIRE_FALSE(res.solutions.empty());
        auto fp = fp_dimensions(yl.C.ring);
        auto v = pseudo_unitarity(yl.C, yl.mu, res.solutions[0], fp, yl.table);
        CHECK_FALSE(v.pseudo_unitary);
        CHECK(v.consistency.ok());
        CHECK(v.paired_float[1] == Catch::Approx(0.3819660113).margin(1e-6));
        CHECK(v.fp_squared[1] == Catch::Approx(2.6180339887).margin(1e-6));
    }

    SECTION("the trivial category is pseudo-unitary") {
        Setup vec(make_vec());
        auto res = solve_pivotal(vec.C, vec.table);
        auto v = pseudo_unitarity(vec.C, vec.mu, res.solutions[0],
                                  fp_dimensions(vec.C.ring), vec.table);
        CHECK(v.pseudo_unitary);
    }
}

TEST_CASE("Frobenius-Schur indicators") {
    Setup vec(make_vec());
    auto rv = solve_pivotal(vec.C, vec.table);
    CHECK(fs_indicators(vec.C, rv.solutions[0])[0] == Scalar::one(FieldKind::Q));

    Setup fib(make_fibonacci());
    auto rf = solve_pivotal(fib.C, fib.table);
    CHECK(fs_indicators(fib.C, rf.solutions[0])[1] == fib.C.one());

    Setup sem(make_pointed(2, 1, FieldKind::Q));
    auto rs = solve_pivotal(sem.C, sem.table);
    bool saw_minus = false;
    for (auto& s : rs.solutions) {
        auto nu = fs_indicators(sem.C, s);
        CHECK(nu[1] == s.varpi[1]);  // x is self-dual
        if (nu[1] == -sem.C.one()) saw_minus = true;
    }
    CHECK(saw_minus);

    // dual pairs are normalized to 1
    Setup z3(make_pointed(3, 1, FieldKind::QSqrt3i));
    auto r3 = solve_pivotal(z3.C, z3.table);
    for (auto& s : r3.solutions) {
        auto nu = fs_indicators(z3.C, s);
        CHECK(nu[1] == z3.C.one());
        CHECK(nu[2] == z3.C.one());
    }
}
