#include <catch2/catch_amalgamated.hpp>

#include <fusion6j/builtins.hpp>
#include <fusion6j/partial.hpp>

#include <random>

using namespace fusion6j;

namespace {

Scalar phi() { return Scalar::exact(FieldKind::QSqrt5, mpq_class(1, 2), mpq_class(1, 2)); }

} // namespace

TEST_CASE("mu choices") {
    RootChoice rc;
    CategoryData vec = make_vec();
    auto mu = choose_mu(vec, MuPolicy::AllOnes, rc);
    CHECK(mu.mu[0] == Scalar::one(FieldKind::Q));

    CategoryData fib = make_fibonacci();
    auto ones = choose_mu(fib, MuPolicy::AllOnes, rc);
    auto bal = choose_mu(fib, MuPolicy::Balanced, rc);
    CHECK(ones.mu == bal.mu);  // every label is self-dual

    CategoryData z3 = make_pointed(3, 1, FieldKind::QSqrt3i);
    auto bal3 = choose_mu(z3, MuPolicy::Balanced, rc);
    auto dims = dimensions(z3, bal3);
    for (Label i = 0; i < 3; ++i) {
        CHECK(dims.dim_l[i] == dims.dim_r[i]);
        CHECK(dims.rel[i] == Scalar::one(FieldKind::QSqrt3i));
    }
    // with mu = 1 the two dimension functions differ on the dual pair
    auto dims1 = dimensions(z3, choose_mu(z3, MuPolicy::AllOnes, rc));
    CHECK(dims1.dim_l[1] != dims1.dim_r[1]);
}

TEST_CASE("dimension table values") {
    RootChoice rc;
    CategoryData vec = make_vec();
    auto dv = dimensions(vec, choose_mu(vec, MuPolicy::AllOnes, rc));
    CHECK(dv.dim_l[0] == Scalar::one(FieldKind::Q));
    CHECK(dv.dim_r[0] == Scalar::one(FieldKind::Q));

    CategoryData fib = make_fibonacci();
    auto df = dimensions(fib, choose_mu(fib, MuPolicy::AllOnes, rc));
    CHECK(df.dim_l[1] == phi());  // -1/a at a = (1-sqrt5)/2
    CHECK(df.paired[1] == phi() * phi());

    // paired dimension does not depend on the mu policy
    auto db = dimensions(fib, choose_mu(fib, MuPolicy::Balanced, rc));
    CHECK(df.paired[0] == db.paired[0]);
    CHECK(df.paired[1] == db.paired[1]);

    CategoryData z4 = make_pointed(4, 1, FieldKind::QSqrt3i);
    auto dz = dimensions(z4, choose_mu(z4, MuPolicy::Balanced, rc));
    for (Label i = 0; i < 4; ++i) CHECK(dz.dim_l[i] == dz.dim_r[i]);
}

TEST_CASE("paired dimensions are gauge invariant") {
    RootChoice rc;
    CategoryData fib = make_fibonacci();
    auto before = dimensions(fib, choose_mu(fib, MuPolicy::AllOnes, rc));
    GaugeTransform g;
    Matrix m(1, 1, FieldKind::QSqrt5);
    m.at(0, 0) = Scalar::integer(-1, FieldKind::QSqrt5);
    g.blocks.emplace(std::array<Label, 3>{1, 1, 1}, m);
    CategoryData out = apply_gauge(fib, g);
    auto after = dimensions(out, choose_mu(out, MuPolicy::AllOnes, rc));
    CHECK(before.paired[1] == after.paired[1]);
}

TEST_CASE("traces") {
    RootChoice rc;
    CategoryData fib = make_fibonacci();
    auto mu = choose_mu(fib, MuPolicy::Balanced, rc);
    auto dims = dimensions(fib, mu);

    // tr_L(id_i) = dim_L(i), through the unit channel of End(i @ 1)
    for (Label i = 0; i < 2; ++i) {
        EndCoeffs f = end_identity(fib, i, 0);
        CHECK(trace_L(fib, dims, i, 0, f) == dims.dim_l[i]);
        CHECK(trace_R(fib, dims, i, 0, f) == dims.dim_r[i]);
    }

    // tr_L(albar o al) for the basis of H(x@x -> x) equals dim_L(x)
    EndCoeffs proj;
    proj.emplace(1, Matrix::identity(1, FieldKind::QSqrt5));
    CHECK(trace_L(fib, dims, 1, 1, proj) == phi());

    // tr_L(id_{x@x}) = dim_L(x)^2 via the completeness relation
    EndCoeffs idxx = end_identity(fib, 1, 1);
    CHECK(trace_L(fib, dims, 1, 1, idxx) == phi() * phi());

    // tr_L(f)/(d_i d_j) = tr_R(f)/(d_ibar d_jbar) for random coefficients
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        EndCoeffs f;
        for (Label k = 0; k < 2; ++k) {
            Matrix c(1, 1, FieldKind::QSqrt5);
            c.at(0, 0) = Scalar::exact(FieldKind::QSqrt5, mpq_class(long(rng() % 9) - 4),
                                       mpq_class(long(rng() % 9) - 4));
            f.emplace(k, c);
        }
        Scalar lhs = trace_L(fib, dims, 1, 1, f) / (dims.dim_l[1] * dims.dim_l[1]);
        Scalar rhs = trace_R(fib, dims, 1, 1, f) / (dims.dim_l[1] * dims.dim_l[1]);
        CHECK(lhs == rhs);
    }

    EndCoeffs bad;
    bad.emplace(0, Matrix::identity(2, FieldKind::QSqrt5));
    CHECK_THROWS_AS(trace_L(fib, dims, 1, 1, bad), ShapeMismatch);
}

TEST_CASE("modified cyclicity of the traces") {
    // tr_L(f o g) = tr_L(g o ddual(f)) on End(x@x) of the rank-2 data
    RootChoice rc;
    CategoryData fib = make_fibonacci(FieldKind::QSqrt5, Scalar::integer(2, FieldKind::QSqrt5));
    auto mu = choose_mu(fib, MuPolicy::AllOnes, rc);
    auto dims = dimensions(fib, mu);
    std::mt19937_64 rng(4242);
    auto rnd_end = [&] {
        EndCoeffs f;
        for (Label k = 0; k < 2; ++k) {
            Matrix c(1, 1, FieldKind::QSqrt5);
            c.at(0, 0) = Scalar::exact(FieldKind::QSqrt5, mpq_class(long(rng() % 11) - 5),
                                       mpq_class(long(rng() % 11) - 5));
            f.emplace(k, c);
        }
        return f;
    };
    for (int t = 0; t < 25; ++t) {
        EndCoeffs f = rnd_end(), g = rnd_end();
        Scalar lhs = trace_L(fib, dims, 1, 1, end_compose(fib, 1, 1, f, g));
        EndCoeffs fdd = end_double_dual(fib, dims, 1, 1, f);
        Scalar rhs = trace_L(fib, dims, 1, 1, end_compose(fib, 1, 1, g, fdd));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sqrt of paired dimensions follows the special symbols") {
    RootChoice rc;
    CategoryData fib = make_fibonacci();
    auto sp = special_symbols(fib);
    CHECK(sqrt_paired(fib, sp, rc, 1) == sp.fo[1].inv());
    CHECK(sqrt_paired(fib, sp, rc, 1) == phi());

    CategoryData z3 = make_pointed(3, 1, FieldKind::QSqrt3i);
    auto sp3 = special_symbols(z3);
    Scalar s1 = sqrt_paired(z3, sp3, rc, 1), s2 = sqrt_paired(z3, sp3, rc, 2);
    CHECK(s1 == s2);  // shared root for the dual orbit
    CHECK(s1 * s1 == (sp3.fo[1] * sp3.fo[2]).inv());
}
