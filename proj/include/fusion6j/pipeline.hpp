#pragma once

// Orchestration of the full derivation chain and its rendering, shared by
// the CLI subcommands.  Sections accumulate into one JSON document
// (schema "v1"); the text view prints the same content for humans.
// failures counts every check that did not pass.

#include <json.hpp>

#include "io.hpp"
#include "pivotal.hpp"
#include "tetra.hpp"

namespace fusion6j {

struct PipelineOptions {
    MuPolicy mu = MuPolicy::Balanced;
    bool eigen_gauge = false;
    unsigned long seed = 0;
    bool want_pentagon = false;
    bool want_dims = false;
    bool want_epsilon = false;
    bool want_pivotal = false;
    bool want_tetra = false;
    std::vector<Label> pentagon_labels;
};

struct PipelineResult {
    nlohmann::json doc;
    int failures = 0;
};

namespace detail {

inline nlohmann::json scalar_json(const Scalar& s) { return s.str(); }

inline nlohmann::json report_json(const ValidationReport& r) {
    nlohmann::json j;
    j["ok"] = r.ok();
    nlohmann::json es = nlohmann::json::array();
    for (auto& e : r.entries) es.push_back(e.code + ": " + e.detail);
    j["violations"] = es;
    return j;
}

} // namespace detail

inline PipelineResult run_pipeline(const CategoryData& input, const PipelineOptions& opt) {
    PipelineResult res;
    nlohmann::json& doc = res.doc;
    doc["schema"] = "v1";
    doc["field"] = field_name(input.field);
    doc["labels"] = input.ring.names;
    doc["mu_policy"] = opt.mu == MuPolicy::Balanced ? "balanced" : "ones";
    doc["gauge"] = opt.eigen_gauge ? "eigen" : "raw";
    doc["convention"] =
        input.convention == CodualConvention::DimWeighted ? "dimweighted" : "unit";
    auto fail_if = [&](bool ok) {
        if (!ok) ++res.failures;
        return ok;
    };

    // ring and block-table validation always run
    ValidationReport ring_rep = validate_ring(input.ring);
    doc["ring"] = detail::report_json(ring_rep);
    fail_if(ring_rep.ok());
    ValidationReport blocks_rep = validate_blocks(input);
    doc["blocks"] = detail::report_json(blocks_rep);
    fail_if(blocks_rep.ok());
    ValidationReport tri = check_triangle(input);
    doc["triangle"] = detail::report_json(tri);
    fail_if(tri.ok());
    if (!ring_rep.ok() || !blocks_rep.ok()) return res;

    auto guarded = [&](const char* section, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            doc[section] = {{"error", e.what()}};
            ++res.failures;
        }
    };

    guarded("completeness", [&] {
        ValidationReport comp = check_completeness(input);
        doc["completeness"] = detail::report_json(comp);
        fail_if(comp.ok());
    });

    doc["veined"] = is_veined(input);
    doc["covector_warning"] = input.covector_warning;

    // the pentagon check needs only the raw blocks, so it runs before any
    // derived data that may refuse inconsistent input
    if (opt.want_pentagon) {
        PentagonResult p = check_pentagon(input, opt.pentagon_labels);
        nlohmann::json j;
        j["ok"] = p.ok;
        j["instances"] = p.instances;
        j["max_residual"] = p.max_residual;
        if (!p.ok) j["first_violation"] = p.first_violation;
        doc["pentagon"] = j;
        fail_if(p.ok);
    }

    if (!is_veined(input)) {
        doc["failures"] = res.failures;
        return res;
    }

    RootChoice rc;
    CategoryData C = input;
    SpecialSymbols sp;
    MuChoice mu;
    DimensionTable dims;
    try {
        if (opt.eigen_gauge) {
            MuChoice mu0 = choose_mu(input, opt.mu, rc);
            C = eigengauge(input, epsilon_table(input, mu0, rc));
        }
        sp = special_symbols(C);
        mu = choose_mu(C, opt.mu, rc);
        dims = dimensions(C, mu);
        nlohmann::json t;
        for (Label i = 0; i < C.ring.rank(); ++i) {
            t[C.ring.name(i)] = {{"Fo", sp.fo[i].str()},
                                 {"Go", sp.go[i].str()},
                                 {"paired", dims.paired[i].str()}};
        }
        doc["special_symbols"] = t;
    } catch (const std::exception& e) {
        doc["special_symbols"] = {{"error", e.what()}};
        ++res.failures;
        doc["failures"] = res.failures;
        return res;
    }

    if (opt.want_dims) {
        nlohmann::json t;
        for (Label i = 0; i < C.ring.rank(); ++i)
            t[C.ring.name(i)] = {{"dim_l", dims.dim_l[i].str()},
                                 {"dim_r", dims.dim_r[i].str()},
                                 {"paired", dims.paired[i].str()},
                                 {"relative", dims.rel[i].str()}};
        doc["dimensions"] = t;
    }

    if (opt.want_epsilon || opt.want_pivotal || opt.want_tetra) {
        guarded("epsilon", [&] {
            EpsilonTable table = epsilon_table(C, mu, rc);
            if (opt.want_epsilon) {
                nlohmann::json t = nlohmann::json::array();
                for (auto& [key, ent] : table.entries) {
                    nlohmann::json e;
                    e["triple"] = {C.ring.name(key[0]), C.ring.name(key[1]), C.ring.name(key[2])};
                    e["eps"] = ent.eps;
                    e["alpha_dependent"] = ent.alpha_dependent;
                    t.push_back(e);
                }
                doc["epsilon"] = t;
                ValidationReport sum = check_sum_rule(C, table, rc);
                doc["sum_rule"] = detail::report_json(sum);
                fail_if(sum.ok());
                bool mf = true;
                for (auto& [key, ent] : table.entries) {
                    (void)key;
                    mf &= ent.eps.size() == 1;
                }
                if (mf || opt.eigen_gauge) {
                    // the sign-product rule needs eigenbases unless every
                    // space is one-dimensional
                    ValidationReport prod = check_eps_products(C, table);
                    doc["eps_products"] = detail::report_json(prod);
                    fail_if(prod.ok());
                }
                S3Report s3 = check_s3(C, mu, rc);
                nlohmann::json j;
                j["involutions"] = s3.involutions_hold;
                j["braid"] = s3.braid_holds;
                j["double_dual_identity"] = s3.double_dual_identity;
                j["genuine"] = s3.genuine;
                j["consistent"] = s3.consistent;
                j["eps_transport"] = s3.eps_transport_ok;
                j["witnesses"] = s3.witnesses;
                doc["s3"] = j;
                fail_if(s3.involutions_hold);
                fail_if(s3.consistent);
                fail_if(s3.eps_transport_ok);
            }

            if (opt.want_pivotal) {
                guarded("pivotal", [&] {
                    ValidationReport obstruction = pivotal_obstruction(C, table);
                    nlohmann::json j;
                    j["obstruction"] = detail::report_json(obstruction);
                    PivotalResult piv = solve_pivotal(C, table);
                    if (piv.unsolvable_witness) j["unsolvable"] = *piv.unsolvable_witness;
                    nlohmann::json sols = nlohmann::json::array();
                    for (auto& s : piv.solutions) {
                        nlohmann::json sj;
                        nlohmann::json w = nlohmann::json::array(), dl = nlohmann::json::array(),
                                       dr = nlohmann::json::array();
                        for (Label i = 0; i < C.ring.rank(); ++i) {
                            w.push_back(s.varpi[i].str());
                            dl.push_back(s.dim_l_piv[i].str());
                            dr.push_back(s.dim_r_piv[i].str());
                        }
                        sj["varpi"] = w;
                        sj["dim_l_piv"] = dl;
                        sj["dim_r_piv"] = dr;
                        sj["spherical"] = s.spherical;
                        auto nu = fs_indicators(C, s);
                        nlohmann::json nj = nlohmann::json::array();
                        for (auto& v : nu) nj.push_back(v.str());
                        sj["fs_indicators"] = nj;
                        sols.push_back(sj);
                    }
                    j["solutions"] = sols;
                    if (C.field == FieldKind::C) {
                        auto fp = fp_dimensions(C.ring);
                        j["fp_dims"] = fp;
                        if (!piv.solutions.empty()) {
                            auto verdict =
                                pseudo_unitarity(C, mu, piv.solutions.front(), fp, table);
                            j["pseudo_unitary"] = verdict.pseudo_unitary;
                            j["paired_vs_fp_squared"] = {verdict.paired_float, verdict.fp_squared};
                            j["pivotal_dimension_checks"] = detail::report_json(verdict.consistency);
                            fail_if(verdict.consistency.ok());
                        }
                    } else {
                        j["fp_dims"] = "n/a (float backend only)";
                    }
                    doc["pivotal"] = j;
                });
            }

            if (opt.want_tetra) {
                guarded("tetra", [&] {
                    S4Report s4 = check_s4(C, sp, mu, dims, opt.seed);
                    nlohmann::json j;
                    j["relations_hold"] = s4.relations_hold;
                    j["double_dual_identity"] = s4.double_dual_identity;
                    j["consistent"] = s4.consistent;
                    j["checked"] = s4.checked;
                    j["witnesses"] = s4.witnesses;
                    doc["s4"] = j;
                    fail_if(s4.consistent);

                    TetraVerdict v = check_tau_identities(C, mu, table, rc, opt.seed);
                    nlohmann::json t;
                    t["s4_relations_hold"] = s4.relations_hold;
                    t["f_invariant"] = v.f_invariant;
                    t["t23_identity"] = v.t23_identity;
                    t["t12_m_form"] = v.t12_m_form;
                    t["t34_m_form"] = v.t34_m_form;
                    t["t12_diagonal"] = v.t12_diagonal;
                    t["t34_diagonal"] = v.t34_diagonal;
                    t["composite_identity"] = v.composite_identity;
                    t["checked"] = v.checked;
                    t["witnesses"] = v.witnesses;
                    doc["tetra"] = t;
                    fail_if(v.t23_identity);
                    fail_if(v.t12_m_form);
                    fail_if(v.t34_m_form);
                    fail_if(v.composite_identity);

                    try {
                        MfReductionReport mf = check_mf_reduction(C, mu, rc);
                        nlohmann::json m;
                        m["multiplicity_free"] = mf.multiplicity_free;
                        m["gauge_condition_holds"] = mf.gauge_condition_holds;
                        m["relations_checked"] = mf.relations_checked;
                        m["relations_failed"] = mf.relations_failed;
                        m["witnesses"] = mf.witnesses;
                        doc["mf_reduction"] = m;
                    } catch (const NoRootInField& e) {
                        doc["mf_reduction"] = {{"skipped", e.what()}};
                    }
                });
            }
        });
    }

    doc["failures"] = res.failures;
    return res;
}

namespace detail {

inline void render_text(std::ostream& os, const nlohmann::json& j, int indent = 0) {
    std::string pad(size_t(indent) * 2, ' ');
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_object())) {
                os << pad << k << ":\n";
                render_text(os, v, indent + 1);
            } else {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (auto& v : j) render_text(os, v, indent);
    }
}

} // namespace detail

inline std::string render_report(const PipelineResult& r, bool as_json) {
    if (as_json) return r.doc.dump(1) + "\n";
    std::ostringstream os;
    detail::render_text(os, r.doc);
    os << (r.failures == 0 ? "all checks passed\n"
                           : std::to_string(r.failures) + " check(s) failed\n");
    return os.str();
}

} // namespace fusion6j
