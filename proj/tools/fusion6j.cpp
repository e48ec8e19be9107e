// fusion6j: verification and computation for fusion-category 6j-symbol
// data.  Exit codes: 0 all checks passed, 1 check failures, 2 input errors.

#include <CLI11.hpp>

#include <fusion6j/pipeline.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace fusion6j;

namespace {

struct CliOptions {
    std::string builtin_name, file, backend = "exact", mu = "balanced", gauge = "raw";
    std::string convention = "unit", b_param, labels;
    double tol = 0.0;
    unsigned long seed = 0;
    bool json = false;
};

void add_common(CLI::App* cmd, CliOptions& o) {
    auto* b = cmd->add_option("--builtin", o.builtin_name,
                              "built-in data: vec | fib | yanglee | pointed:Z<n>:<s>");
    auto* f = cmd->add_option("--file", o.file, "category file (JSON)");
    b->excludes(f);
    f->excludes(b);
    cmd->add_option("--backend", o.backend, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tol", o.tol, "relative tolerance of the float backend");
    cmd->add_option("--mu", o.mu, "evaluation scalars: ones | balanced")
        ->check(CLI::IsMember({"ones", "balanced"}));
    cmd->add_option("--gauge", o.gauge, "raw | eigen")->check(CLI::IsMember({"raw", "eigen"}));
    cmd->add_option("--convention", o.convention, "covector pairing: unit | dimweighted")
        ->check(CLI::IsMember({"unit", "dimweighted"}));
    cmd->add_option("--seed", o.seed, "seed for sampled relation checks");
    cmd->add_option("--b", o.b_param,
                    "basis parameter for fib/yanglee (default sqrt(-a) on the float "
                    "backend, 1 on the exact backend)");
    cmd->add_flag("--json", o.json, "machine-readable output");
}

CategoryData load_input(const CliOptions& o) {
    if (o.builtin_name.empty() == o.file.empty())
        throw ParseError("exactly one of --builtin or --file is required");
    CategoryData C;
    if (!o.builtin_name.empty()) {
        FieldKind kind = o.backend == "float" ? FieldKind::C
                                              : builtin_exact_field(o.builtin_name);
        C = builtin(o.builtin_name, kind,
                    o.b_param.empty() ? std::nullopt : std::optional<std::string>(o.b_param));
    } else {
        C = load_category_file(o.file);
        if (o.backend == "float")
            C = to_float(C);
        else if (C.field == FieldKind::C)
            throw FieldMismatch("file declares the float field; use --backend float");
    }
    if (o.convention == "dimweighted") C.convention = CodualConvention::DimWeighted;
    return C;
}

int run(const CliOptions& o, PipelineOptions popt) {
    if (o.tol > 0) float_tolerance() = o.tol;
    popt.mu = o.mu == "ones" ? MuPolicy::AllOnes : MuPolicy::Balanced;
    popt.eigen_gauge = o.gauge == "eigen";
    popt.seed = o.seed;
    CategoryData C = load_input(o);
    if (!o.labels.empty()) {
        std::stringstream ss(o.labels);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            for (Label i = 0; i < C.ring.rank(); ++i)
                if (C.ring.name(i) == tok) popt.pentagon_labels.push_back(i);
        }
        if (popt.pentagon_labels.empty())
            throw ParseError("no label in --labels matches the data");
    }
    PipelineResult res = run_pipeline(C, popt);
    std::cout << render_report(res, o.json);
    return res.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for fusion-category 6j-symbol data"};
    app.require_subcommand(1);

    CliOptions o;

    auto* validate = app.add_subcommand("validate", "ring, block table and triangle checks");
    add_common(validate, o);

    auto* pentagon = app.add_subcommand("pentagon", "pentagon consistency");
    add_common(pentagon, o);
    pentagon->add_option("--labels", o.labels,
                         "comma-separated label names restricting the outer pentagon loops");

    auto* dims = app.add_subcommand("dims", "dimension table");
    add_common(dims, o);

    auto* epsilon = app.add_subcommand("epsilon", "sign spectrum, sum rule, S3 action");
    add_common(epsilon, o);

    auto* pivotal = app.add_subcommand("pivotal", "pivotal structures and pseudo-unitarity");
    add_common(pivotal, o);

    auto* tetra = app.add_subcommand("tetra", "S4 action and tetrahedral identities");
    add_common(tetra, o);

    auto* report = app.add_subcommand("report", "everything");
    add_common(report, o);
    report->add_option("--labels", o.labels,
                       "comma-separated label names restricting the outer pentagon loops");

    CLI11_PARSE(app, argc, argv);

    PipelineOptions popt;
    if (pentagon->parsed()) {
        popt.want_pentagon = true;
    } else if (dims->parsed()) {
        popt.want_dims = true;
    } else if (epsilon->parsed()) {
        popt.want_epsilon = true;
    } else if (pivotal->parsed()) {
        popt.want_pivotal = true;
    } else if (tetra->parsed()) {
        popt.want_tetra = true;
    } else if (report->parsed()) {
        popt.want_pentagon = popt.want_dims = popt.want_epsilon = true;
        popt.want_pivotal = popt.want_tetra = true;
    }
    (void)validate;  // base checks only

    try {
        return run(o, popt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const RingInvalid& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownBuiltin& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const FieldMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NoRootInField& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    }
}
