// SPDX-License-Identifier: Apache-2.0
//
// Batch verification driver: load a manifold (builtin:NAME or a JSON file),
// run named check suites or volume formulas, print text or structured reports.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "solstat/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"verification engine for statistical structures, eta-connections and gradient solitons"};
    app.require_subcommand(1);

    std::string manifold = "builtin:flat-torus-2";
    std::string suite = "all";
    std::string format = "text";
    solstat::SuiteConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--manifold", manifold, "builtin:NAME, builtin:all, or a JSON spec file");
        cmd->add_option("--points", cfg.points, "sample points per check")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "RNG seed for sampling and random draws");
        cmd->add_option("--tol", cfg.tol, "tolerance for jet-exact identities")->check(CLI::PositiveNumber);
        cmd->add_option("--grid", cfg.grid, "quadrature resolution per axis");
        cmd->add_option("--format", format, "text | structured")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* check = app.add_subcommand("check", "run identity-check suites");
    add_common(check);
    check->add_option("--suite", suite, "statistical | connections | etaconn | solitons | bounds | all")
        ->check(CLI::IsMember({"statistical", "connections", "etaconn", "solitons", "bounds", "all"}));

    std::string formula = "all";
    CLI::App* volume = app.add_subcommand("volume", "compare vol(M) with the compact-case volume formulas");
    add_common(volume);
    volume->add_option("--formula", formula,
                       "prop_p | prop_bochner_form | zero_remark | soliton_gdf | soliton_dfg | "
                       "remark_i | remark_ii | all");

    CLI::App* catalog = app.add_subcommand("catalog", "list or show builtin manifolds");
    std::string action;
    std::string name;
    catalog->add_option("action", action, "list | show")->required();
    catalog->add_option("name", name, "builtin manifold name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const solstat::OutputFormat fmt =
        format == "structured" ? solstat::OutputFormat::Structured : solstat::OutputFormat::Text;

    solstat::CommandResult res;
    if (check->parsed()) res = solstat::cmd_check(manifold, suite, cfg, fmt);
    else if (volume->parsed()) res = solstat::cmd_volume(manifold, formula, cfg, fmt);
    else res = solstat::cmd_catalog(action, name);

    std::fputs(res.output.c_str(), stdout);
    return res.exit_code;
}
