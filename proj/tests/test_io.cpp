#include <catch2/catch_amalgamated.hpp>

#include <fusion6j/io.hpp>
#include <fusion6j/pipeline.hpp>

using namespace fusion6j;

TEST_CASE("category files round-trip bit-exactly") {
    for (auto* name : {"vec", "fib", "yanglee", "pointed:Z2:1", "pointed:Z3:1"}) {
        CategoryData C = builtin(name, builtin_exact_field(name));
        CategoryData back = load_category(save_category(C));
        INFO(name);
        CHECK(back.field == C.field);
        CHECK(back.ring.names == C.ring.names);
        CHECK(back.ring.dual == C.ring.dual);
        CHECK(back.ring.mult == C.ring.mult);
        REQUIRE(back.fblocks.size() == C.fblocks.size());
        for (auto& [key, m] : C.fblocks) {
            const Matrix& o = back.fblocks.at(key);
            REQUIRE(o.rows == m.rows);
            for (size_t t = 0; t < m.a.size(); ++t) {
                // bit-exact: identical canonical coordinates, not just equality
                for (int c = 0; c < 4; ++c) CHECK(o.a[t].coord(c) == m.a[t].coord(c));
            }
        }
    }
}

TEST_CASE("float data round-trips within tolerance") {
    CategoryData C = make_fibonacci(FieldKind::C);
    CategoryData back = load_category(save_category(C));
    for (auto& [key, m] : C.fblocks) {
        const Matrix& o = back.fblocks.at(key);
        for (size_t t = 0; t < m.a.size(); ++t) CHECK(o.a[t] == m.a[t]);
    }
}

TEST_CASE("parse errors carry a location") {
    try {
        load_category("{\n \"schema\": \"v1\",\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }

    // unparseable scalar inside an entry (the first "1" string is the
    // single block value; "labels" comes later in key order)
    CategoryData C = make_vec();
    std::string text = save_category(C);
    auto pos = text.find("\"1\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "\"1/x\"");
    CHECK_THROWS_AS(load_category(text), ParseError);
}

TEST_CASE("missing required blocks are reported by quadruple") {
    CategoryData C = make_fibonacci();
    nlohmann::json j = nlohmann::json::parse(save_category(C));
    nlohmann::json pruned = nlohmann::json::array();
    for (auto& row : j["fblocks"]) {
        bool is_xxxx = row[0] == 1 && row[1] == 1 && row[2] == 1 && row[3] == 1;
        if (!is_xxxx) pruned.push_back(row);
    }
    j["fblocks"] = pruned;
    try {
        load_category(j.dump());
        FAIL("expected RingInvalid");
    } catch (const RingInvalid& e) {
        CHECK(std::string(e.what()).find("(x,x,x;x)") != std::string::npos);
    }
}

TEST_CASE("invalid rings are rejected at load") {
    CategoryData C = make_fibonacci();
    nlohmann::json j = nlohmann::json::parse(save_category(C));
    j["dual"] = {1, 0};  // not compatible with the fusion rules
    CHECK_THROWS_AS(load_category(j.dump()), RingInvalid);

    j = nlohmann::json::parse(save_category(C));
    j["field"] = "Q(sqrt7)";
    CHECK_THROWS_AS(load_category(j.dump()), ParseError);
}

TEST_CASE("unit blocks default to identity when omitted") {
    CategoryData C = make_fibonacci();
    nlohmann::json j = nlohmann::json::parse(save_category(C));
    nlohmann::json pruned = nlohmann::json::array();
    for (auto& row : j["fblocks"]) {
        bool unit_block = row[0] == 0 || row[1] == 0 || row[2] == 0;
        if (!unit_block) pruned.push_back(row);
    }
    j["fblocks"] = pruned;
    CategoryData back = load_category(j.dump());
    CHECK(check_triangle(back).ok());
    CHECK(check_pentagon(back).ok);
}

TEST_CASE("exact and float backends agree on derived data") {
    // fixed embedding sqrt5 -> 2.23606..., sqrt3 -> 1.73205...
    for (auto* name : {"fib", "yanglee", "pointed:Z2:1", "pointed:Z3:1"}) {
        CategoryData E = builtin(name, builtin_exact_field(name));
        CategoryData F = to_float(E);
        RootChoice rce, rcf;
        MuChoice me = choose_mu(E, MuPolicy::Balanced, rce);
        MuChoice mf = choose_mu(F, MuPolicy::Balanced, rcf);
        DimensionTable de = dimensions(E, me), df = dimensions(F, mf);
        INFO(name);
        for (Label i = 0; i < E.ring.rank(); ++i) {
            CHECK(std::abs(de.dim_l[i].to_complex() - df.dim_l[i].float_value()) < 1e-9);
            CHECK(std::abs(de.paired[i].to_complex() - df.paired[i].float_value()) < 1e-9);
        }
        EpsilonTable te = epsilon_table(E, me, rce), tf = epsilon_table(F, mf, rcf);
        for (auto& [key, ent] : te.entries) CHECK(ent.eps == tf.entries.at(key).eps);
        PivotalResult pe = solve_pivotal(E, te), pf = solve_pivotal(F, tf);
        CHECK(pe.solutions.size() == pf.solutions.size());
    }
}

TEST_CASE("pipeline reports") {
    PipelineOptions all;
    all.want_pentagon = all.want_dims = all.want_epsilon = true;
    all.want_pivotal = all.want_tetra = true;

    SECTION("full pass on the float golden-ratio data") {
        PipelineResult r = run_pipeline(make_fibonacci(FieldKind::C), all);
        CHECK(r.failures == 0);
        CHECK(r.doc["schema"] == "v1");
        CHECK(r.doc["pentagon"]["ok"] == true);
        CHECK(r.doc["tetra"]["f_invariant"] == true);
        CHECK(r.doc["pivotal"]["pseudo_unitary"] == true);
        CHECK(r.doc["s4"]["relations_hold"] == true);
    }

    SECTION("the conjugate data fails only the pseudo-unitarity verdict") {
        PipelineResult r = run_pipeline(make_yanglee(FieldKind::C), all);
        CHECK(r.failures == 0);
        CHECK(r.doc["pivotal"]["pseudo_unitary"] == false);
        CHECK(r.doc["tetra"]["f_invariant"] == true);
    }

    SECTION("away from the distinguished basis parameter") {
        PipelineResult r =
            run_pipeline(make_fibonacci(FieldKind::C, Scalar::complex({1.0, 0.0})), all);
        CHECK(r.failures == 0);
        CHECK(r.doc["s4"]["relations_hold"] == true);
        CHECK(r.doc["mf_reduction"]["gauge_condition_holds"] == false);
        CHECK(r.doc["tetra"]["t23_identity"] == true);
    }

    SECTION("perturbed data is caught") {
        CategoryData C = make_fibonacci();
        C.fblocks[{1, 1, 1, 1}].at(1, 1) += Scalar::rational(1, 10, FieldKind::QSqrt5);
        C.gcache.clear();
        PipelineResult r = run_pipeline(C, all);
        CHECK(r.failures > 0);
        CHECK(r.doc["pentagon"]["ok"] == false);
    }

    SECTION("eigen gauge pipeline") {
        PipelineOptions o = all;
        o.eigen_gauge = true;
        PipelineResult r = run_pipeline(make_fibonacci(), o);
        CHECK(r.failures == 0);
    }
}
