#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "th/errors.hpp"
#include "th/report.hpp"
#include "th/selftest.hpp"

namespace {

// Exit policy: 0 success, 1 failed criteria, 2 bad configuration or bad
// request, 3 broken internal invariant.
int exit_code_for(const th::Error& e) {
    if (dynamic_cast<const th::ValidationFailedError*>(&e) != nullptr ||
        dynamic_cast<const th::NegativeResidualError*>(&e) != nullptr ||
        dynamic_cast<const th::NonIntegralMultiplicityError*>(&e) != nullptr ||
        dynamic_cast<const th::NotBiEquivariantError*>(&e) != nullptr ||
        dynamic_cast<const th::ZeroFunctionError*>(&e) != nullptr ||
        dynamic_cast<const th::DegenerateChannelError*>(&e) != nullptr)
        return 3;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic analysis of the twisted Coxeter-torus algebra on GL(2,q)"};
    app.require_subcommand(1);

    th::RunConfig config;
    int q = 3;
    int phi = 0;
    int lambda = 1;
    int samples = 20;
    bool exhaustive = false;
    std::vector<int> selftest_qs;

    auto add_common = [&config](CLI::App* sub) {
        sub->add_option("--format", config.format, "Output format: csv or json")
            ->capture_default_str();
        sub->add_option("--out", config.out_path, "Output path (stdout when empty)");
        sub->add_option("--tolerance", config.tolerance, "Numeric tolerance")
            ->capture_default_str();
        sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
        sub->add_flag("-v,--verbose", config.verbosity, "Increase verbosity");
    };
    auto add_q = [&q](CLI::App* sub) {
        sub->add_option("--q", q, "Field size, an odd prime")->capture_default_str();
    };

    CLI::App* sub_field = app.add_subcommand("field-info", "Field tower parameters");
    add_common(sub_field);
    add_q(sub_field);

    CLI::App* sub_chartable = app.add_subcommand("chartable", "Irreducible character table");
    add_common(sub_chartable);
    add_q(sub_chartable);

    CLI::App* sub_cosets = app.add_subcommand("doublecosets", "Torus double coset decomposition");
    add_common(sub_cosets);
    add_q(sub_cosets);

    CLI::App* sub_decompose =
        app.add_subcommand("decompose", "Constituents of the induced module for one character");
    add_common(sub_decompose);
    add_q(sub_decompose);
    sub_decompose->add_option("--phi", phi, "Twisting character index")->capture_default_str();

    CLI::App* sub_spherical =
        app.add_subcommand("spherical", "Spherical function values per double coset");
    add_common(sub_spherical);
    add_q(sub_spherical);
    sub_spherical->add_option("--phi", phi, "Twisting character index")->capture_default_str();
    sub_spherical->add_option("--lambda", lambda, "Cuspidal parameter index")
        ->capture_default_str();

    CLI::App* sub_uncertainty =
        app.add_subcommand("uncertainty", "Support-bound records for basis and random functions");
    add_common(sub_uncertainty);
    add_q(sub_uncertainty);
    sub_uncertainty->add_option("--phi", phi, "Twisting character index")->capture_default_str();
    sub_uncertainty->add_option("--samples", samples, "Number of random draws")
        ->capture_default_str();
    sub_uncertainty->add_flag("--exhaustive", exhaustive, "Include the named basis scan");

    CLI::App* sub_selftest =
        app.add_subcommand("selftest", "Run the acceptance criteria and write FINDINGS.md");
    add_common(sub_selftest);
    sub_selftest->add_option("--q", selftest_qs,
                             "Field sizes to run against (repeatable; default 3 5 7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_selftest->parsed()) {
            config.qs = selftest_qs.empty() ? std::vector<int>{3, 5, 7} : selftest_qs;
            config.validate();
            th::SelftestReport report = th::run_selftest(config);
            int passed = 0;
            for (const th::CriterionResult& r : report.criteria) {
                if (r.pass) ++passed;
                std::printf("criterion %2d %s %s (%.2f s): %s\n", r.id,
                            r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
            }
            std::string findings_path = config.out_path.empty() ? "FINDINGS.md" : config.out_path;
            std::ofstream out(findings_path, std::ios::binary);
            if (!out) throw th::ConfigError("cannot write findings to " + findings_path);
            out << report.findings.to_markdown();
            out.close();
            std::printf("%d of %zu criteria passed; findings written to %s\n", passed,
                        report.criteria.size(), findings_path.c_str());
            return report.all_pass ? 0 : 1;
        }

        config.qs = {q};
        config.validate();
        th::FieldCtx field = th::FieldCtx::build(q);
        if (sub_field->parsed()) {
            th::write_output(config, th::field_info_table(field));
            return 0;
        }
        th::Gl2Ctx group = th::Gl2Ctx::build(field);
        if (sub_cosets->parsed()) {
            th::write_output(config, th::doublecosets_table(group, double_coset_decomposition(group)));
            return 0;
        }
        th::CharacterTable table = th::CharacterTable::build(group, config.tolerance);
        if (sub_chartable->parsed()) {
            th::write_output(config, th::chartable_table(table));
            return 0;
        }
        th::CharLabel Phi = field.ext_char(phi);
        if (sub_decompose->parsed()) {
            th::write_output(config, th::decompose_table(table, Phi));
            return 0;
        }
        th::DoubleCosetTable cosets = th::double_coset_decomposition(group);
        if (sub_spherical->parsed()) {
            th::write_output(config,
                            th::spherical_table(table, cosets, Phi, field.ext_char(lambda)));
            return 0;
        }
        if (sub_uncertainty->parsed()) {
            th::write_output(config, th::uncertainty_table(table, cosets, Phi, samples,
                                                           config.seed, exhaustive));
            return 0;
        }
    } catch (const th::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return 2;
}
