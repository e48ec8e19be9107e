#include <catch2/catch_amalgamated.hpp>

#include <fusion6j/builtins.hpp>
#include <fusion6j/duality.hpp>

#include <random>

using namespace fusion6j;

namespace {

Scalar fib_a() { return Scalar::exact(FieldKind::QSqrt5, mpq_class(1, 2), mpq_class(-1, 2)); }

GaugeTransform xx_to_x_scale(const Scalar& xi, FieldKind kind) {
    GaugeTransform g;
    Matrix m(1, 1, kind);
    m.at(0, 0) = xi;
    g.blocks.emplace(std::array<Label, 3>{1, 1, 1}, m);
    return g;
}

} // namespace

TEST_CASE("pentagon holds exactly for the builtins") {
    for (auto* name : {"vec", "fib", "yanglee", "pointed:Z2:1", "pointed:Z3:1", "pointed:Z4:1"}) {
        CategoryData C = builtin(name, builtin_exact_field(name));
        auto res = check_pentagon(C);
        INFO(name);
        CHECK(res.ok);
        CHECK(res.max_residual == 0.0);
    }
    // fib with b in the field but away from the default gauge
    CategoryData C = make_fibonacci(FieldKind::QSqrt5, Scalar::integer(2, FieldKind::QSqrt5));
    CHECK(check_pentagon(C).ok);
}

TEST_CASE("perturbed data fails the pentagon with a located witness") {
    CategoryData C = make_fibonacci();
    Matrix& m = C.fblocks[{1, 1, 1, 1}];
    m.at(1, 1) += Scalar::rational(1, 10, FieldKind::QSqrt5);
    C.gcache.clear();
    auto res = check_pentagon(C);
    CHECK_FALSE(res.ok);
    CHECK(res.max_residual > 0.0);
    CHECK_FALSE(res.first_violation.empty());
}

TEST_CASE("triangle normalization") {
    CHECK(check_triangle(make_vec()).ok());
    CHECK(check_triangle(make_fibonacci()).ok());
    CHECK(check_triangle(make_pointed(3, 1, FieldKind::QSqrt3i)).ok());

    CategoryData C = make_fibonacci();
    C.fblocks[{1, 0, 1, 1}].at(0, 0) = Scalar::integer(2, FieldKind::QSqrt5);
    auto rep = check_triangle(C);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.entries.front().detail.find("(x,1,x;x)") != std::string::npos);
}

TEST_CASE("inverse blocks") {
    CategoryData vec = make_vec();
    CHECK(vec.gblock(0, 0, 0, 0).is_identity());

    // the all-x block is involutive, so it equals its own inverse
    CategoryData fib = make_fibonacci();
    CHECK(fib.gblock(1, 1, 1, 1) == fib.fblock(1, 1, 1, 1));
    Scalar a = fib_a();
    Matrix sq = fib.fblock(1, 1, 1, 1) * fib.fblock(1, 1, 1, 1);
    CHECK(sq.is_identity());
    CHECK(fib.fentry(1, 1, 1, 1, 0, 0, 0, 0, 0, 0) == -a);

    CategoryData bad = make_vec();
    bad.fblocks[{0, 0, 0, 0}].at(0, 0) = Scalar::zero(FieldKind::Q);
    bad.gcache.clear();
    CHECK_THROWS_AS(bad.gblock(0, 0, 0, 0), SingularBlock);

    CHECK_THROWS_AS(fib.fblock(0, 0, 0, 1), MissingBlock);
}

TEST_CASE("F G = identity blockwise") {
    for (auto* name : {"fib", "yanglee", "pointed:Z3:1"}) {
        CategoryData C = builtin(name, builtin_exact_field(name));
        for (auto& q : C.nonzero_quads())
            CHECK((C.fblock(q[0], q[1], q[2], q[3]) * C.gblock(q[0], q[1], q[2], q[3])).is_identity());
    }
}

TEST_CASE("special symbols") {
    CategoryData vec = make_vec();
    auto sp = special_symbols(vec);
    CHECK(sp.fo[0] == Scalar::one(FieldKind::Q));

    CategoryData fib = make_fibonacci();
    auto spf = special_symbols(fib);
    CHECK(spf.fo[1] == -fib_a());
    CHECK(spf.go[1] == spf.fo[1]);  // x is self-dual and the block is involutive
    CHECK(is_veined(fib));

    CategoryData sem = make_pointed(2, 1, FieldKind::Q);
    auto sps = special_symbols(sem);
    CHECK(sps.fo[1] == Scalar::integer(-1, FieldKind::Q));
    CHECK(sps.go[1] * sps.fo[1] == Scalar::one(FieldKind::Q));

    // Go_i = Fo_ibar across a non-self-dual pair
    CategoryData z3 = make_pointed(3, 1, FieldKind::QSqrt3i);
    auto sp3 = special_symbols(z3);
    CHECK(sp3.go[1] == sp3.fo[2]);
    CHECK(sp3.fo[1] != sp3.fo[2]);

    CategoryData degenerate = make_vec();
    degenerate.fblocks[{0, 0, 0, 0}].at(0, 0) = Scalar::zero(FieldKind::Q);
    CHECK_FALSE(is_veined(degenerate));

    // the conjugate solution carries a = (1+sqrt5)/2 in the x-blocks
    CategoryData yl = make_yanglee();
    Scalar ap = Scalar::exact(FieldKind::QSqrt5, mpq_class(1, 2), mpq_class(1, 2));
    CHECK(yl.fentry(1, 1, 1, 1, 1, 0, 0, 1, 0, 0) == ap);
    CHECK(yl.fentry(1, 1, 1, 1, 0, 0, 0, 0, 0, 0) == -ap);
}

TEST_CASE("completeness trace") {
    for (auto* name : {"vec", "fib", "yanglee", "pointed:Z3:1", "pointed:Z6:1"})
        CHECK(check_completeness(builtin(name, builtin_exact_field(name))).ok());
}

TEST_CASE("gauge transformations") {
    CategoryData fib = make_fibonacci();

    SECTION("identity gauge is a no-op") {
        GaugeTransform g;
        g.blocks.emplace(std::array<Label, 3>{1, 1, 1}, Matrix::identity(1, FieldKind::QSqrt5));
        CategoryData out = apply_gauge(fib, g);
        for (auto& [k, m] : fib.fblocks) CHECK(out.fblocks.at(k) == m);
        CHECK_FALSE(out.covector_warning);
    }

    SECTION("rescaling the x@x -> x basis matches direct construction") {
        Scalar xi = Scalar::integer(3, FieldKind::QSqrt5);
        CategoryData out = apply_gauge(fib, xx_to_x_scale(xi, FieldKind::QSqrt5));
        // b transforms by the square of the basis scale
        CategoryData expect = make_fibonacci(FieldKind::QSqrt5, xi * xi);
        for (auto& [k, m] : expect.fblocks) CHECK(out.fblocks.at(k) == m);
        CHECK(out.covector_warning);  // |xi| != 1 breaks the covector pairing
        CHECK(check_pentagon(out).ok);
    }

    SECTION("Fo Go product is gauge invariant") {
        auto before = special_symbols(fib);
        CategoryData out = apply_gauge(fib, xx_to_x_scale(Scalar::integer(7, FieldKind::QSqrt5),
                                                          FieldKind::QSqrt5));
        auto after = special_symbols(out);
        for (Label i = 0; i < 2; ++i)
            CHECK(before.fo[i] * before.go[i] == after.fo[i] * after.go[i]);
    }

    SECTION("non-invertible gauges are rejected") {
        CHECK_THROWS_AS(apply_gauge(fib, xx_to_x_scale(Scalar::zero(FieldKind::QSqrt5),
                                                       FieldKind::QSqrt5)),
                        NonInvertibleGauge);
    }

    SECTION("random orthogonal-signed gauges keep the covector flag clear") {
        GaugeTransform g;
        Matrix m(1, 1, FieldKind::QSqrt5);
        m.at(0, 0) = Scalar::integer(-1, FieldKind::QSqrt5);
        g.blocks.emplace(std::array<Label, 3>{1, 1, 1}, m);
        CategoryData out = apply_gauge(fib, g);
        CHECK_FALSE(out.covector_warning);
        CHECK(check_pentagon(out).ok);
    }
}

TEST_CASE("pentagon residual is gauge invariant") {
    CategoryData fib = make_fibonacci(FieldKind::C);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 3; ++t) {
        GaugeTransform g;
        Matrix m(1, 1, FieldKind::C);
        double th = double(rng() % 628) / 100.0;
        m.at(0, 0) = Scalar::complex({1.5 * std::cos(th), 1.5 * std::sin(th)});
        g.blocks.emplace(std::array<Label, 3>{1, 1, 1}, m);
        fib = apply_gauge(fib, g);
        auto res = check_pentagon(fib);
        CHECK(res.ok);
    }
}

TEST_CASE("rebalance makes the special symbols dual-symmetric") {
    SECTION("self-dual data is untouched") {
        CategoryData fib = make_fibonacci();
        RootChoice rc;
        CategoryData out = rebalance_fo(fib, rc);
        for (auto& [k, m] : fib.fblocks) CHECK(out.fblocks.at(k) == m);
        CHECK(rebalance_fo(make_vec(), rc).fblocks == make_vec().fblocks);
    }

    SECTION("dual pairs get balanced symbols") {
        CategoryData z3 = make_pointed(3, 1, FieldKind::QSqrt3i);
        auto before = special_symbols(z3);
        REQUIRE(before.fo[1] != before.fo[2]);
        RootChoice rc;
        CategoryData out = rebalance_fo(z3, rc);
        auto after = special_symbols(out);
        CHECK(after.fo[1] == after.fo[2]);
        CHECK(after.fo[1] * after.fo[1] == before.fo[1] * before.fo[2]);
        CHECK(check_pentagon(out).ok);
        // recorded roots square back to their arguments
        for (auto& [key, r] : rc.recorded()) {
            (void)key;
            CHECK((r * r).try_sqrt().has_value());
        }
    }
}

TEST_CASE("rebalanced special symbols are real on the float backend") {
    for (auto* name : {"fib", "yanglee", "pointed:Z3:1", "pointed:Z4:1"}) {
        CategoryData C = builtin(name, FieldKind::C);
        RootChoice rc;
        CategoryData out = rebalance_fo(C, rc);
        auto sp = special_symbols(out);
        INFO(name);
        for (Label i = 0; i < out.ring.rank(); ++i) {
            CHECK(std::abs(sp.fo[i].float_value().imag()) < 1e-9);
            CHECK(sp.fo[i] == sp.fo[out.ring.bar(i)]);
        }
    }
}

TEST_CASE("block table validation") {
    CategoryData fib = make_fibonacci();
    CHECK(validate_blocks(fib).ok());
    CategoryData missing = fib;
    missing.fblocks.erase({1, 1, 1, 1});
    CHECK_FALSE(validate_blocks(missing).ok());
    CategoryData extra = fib;
    extra.fblocks[{0, 0, 0, 1}] = Matrix::identity(1, FieldKind::QSqrt5);  // zero-dim quadruple
    auto rep = validate_blocks(extra);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.entries.front().code == "extra-block");
}
