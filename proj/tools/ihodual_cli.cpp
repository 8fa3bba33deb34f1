#include "ihodual/cli.hpp"
#include "ihodual/errors.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace ihodual;
using namespace ihodual::cli;

namespace {

void print_selftest(const CommandResult& r)
{
    std::printf("%-22s %-6s %-12s %-10s %s\n", "check", "status", "error", "tolerance", "seconds");
    for (const auto& row : r.table.rows) {
        std::printf("%-22s %-6s %-12.3e %-10.1e %.3f", std::get<std::string>(row[0]).c_str(),
                    std::get<std::string>(row[1]).c_str(), std::get<double>(row[2]), std::get<double>(row[3]),
                    std::get<double>(row[4]));
        const auto& detail = std::get<std::string>(row[5]);
        if (!detail.empty()) std::printf("  %s", detail.c_str());
        std::printf("\n");
    }
    std::printf("%s\n", r.exit_code == 0 ? "selftest: all checks passed" : "selftest: FAILED");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Inverted harmonic oscillator / Berry-Keating / inverse-square duality toolkit", "ihodual"};
    app.set_version_flag("--version", std::string(IHODUAL_VERSION));
    app.set_config("--config", "", "TOML or INI file with default option values")->envname("IHODUAL_CONFIG");
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<double> e_hat, scale, target_scale, tolerance, mass, omega, hbar;
    std::string c1, c2, alpha, beta, lambda, grid, flow_range;
    std::string system = "iho", direction = "isp-to-iho", format = "csv", out, state = "general";
    bool round_trip = false;
    unsigned threads = 0;
    int figure = 0;

    app.add_option("--e-hat", e_hat, "Dimensionless energy E/(hbar omega)");
    app.add_option("--c1", c1, "IHO coefficient C1, e.g. 1+0.5i");
    app.add_option("--c2", c2, "IHO coefficient C2");
    app.add_option("--alpha", alpha, "ISP coefficient alpha (BK: amplitude A on Q > 0)");
    app.add_option("--beta", beta, "ISP coefficient beta (BK: amplitude B on Q < 0)");
    app.add_option("--state", state, "IHO state: general, phi1, phi2, plus, minus");
    app.add_option("--lambda", lambda, "Robin parameter (map-bc) or reduced coupling Lambda0 (rg-flow)");
    app.add_option("--scale", scale, "Scale at which --lambda is imposed");
    app.add_option("--target-scale", target_scale, "Scale of the mapped boundary condition");
    app.add_option("--grid", grid, "Sample grid min:max:n");
    app.add_option("--system", system, "iho, bk or isp")->check(CLI::IsMember({"iho", "bk", "isp"}));
    app.add_option("--direction", direction, "isp-to-iho or iho-to-isp")
        ->check(CLI::IsMember({"isp-to-iho", "iho-to-isp"}));
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out, "Output file (default stdout)");
    app.add_option("--tolerance", tolerance, "Pass threshold for transform-check");
    app.add_option("--mass", mass, "Mass m (physical-units mode)");
    app.add_option("--omega", omega, "Frequency omega (physical-units mode)");
    app.add_option("--hbar", hbar, "Planck constant hbar (physical-units mode)");
    app.add_option("--flow-range", flow_range, "ISP scale range a:b for RG invariants in map-bc");
    app.add_flag("--round-trip", round_trip, "Map back and report the round-trip error");
    app.add_option("--threads", threads, "Worker threads for grid sweeps (0: all cores)");

    auto* eval = app.add_subcommand("eval-state", "Evaluate a state on a grid");
    auto* tcheck = app.add_subcommand("transform-check", "Quadrature vs closed form for both canonical transforms");
    auto* mapbc = app.add_subcommand("map-bc", "Map a Robin boundary condition across the duality");
    auto* rgflow = app.add_subcommand("rg-flow", "RG flow of the reduced coupling");
    auto* fig = app.add_subcommand("figure", "Emit the data for figure preset 1-7");
    fig->add_option("number", figure, "Figure 1-7")->required()->check(CLI::Range(1, 7));
    auto* self = app.add_subcommand("selftest", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ConfigFailure;
    }

    RunConfig cfg;
    try {
        if (*eval) cfg.command = Command::EvalState;
        if (*tcheck) cfg.command = Command::TransformCheck;
        if (*mapbc) cfg.command = Command::MapBc;
        if (*rgflow) cfg.command = Command::RgFlow;
        if (*fig) cfg.command = Command::Figure;
        if (*self) cfg.command = Command::Selftest;
        cfg.e_hat = e_hat;
        if (!c1.empty()) cfg.c1 = parse_complex(c1);
        if (!c2.empty()) cfg.c2 = parse_complex(c2);
        if (!alpha.empty()) cfg.alpha = parse_complex(alpha);
        if (!beta.empty()) cfg.beta = parse_complex(beta);
        if (!lambda.empty()) cfg.lambda = parse_complex(lambda);
        if (!grid.empty()) cfg.grid = parse_grid(grid);
        if (!flow_range.empty()) cfg.flow_range = parse_range(flow_range);
        cfg.state = state;
        cfg.scale = scale;
        cfg.target_scale = target_scale;
        cfg.tolerance = tolerance;
        cfg.system = system == "bk" ? SystemKind::BK : system == "isp" ? SystemKind::ISP : SystemKind::IHO;
        cfg.direction = direction == "iho-to-isp" ? Direction::IhoToIsp : Direction::IspToIho;
        cfg.format = format == "json" ? OutputFormat::JSON : OutputFormat::CSV;
        cfg.out = out;
        cfg.round_trip = round_trip;
        cfg.figure = figure;
        cfg.threads = threads;
        const int n_phys = mass.has_value() + omega.has_value() + hbar.has_value();
        if (n_phys != 0 && n_phys != 3) throw ConfigError("--mass, --omega and --hbar go together");
        if (n_phys == 3) cfg.physical = PhysicalScales(*mass, *omega, *hbar);
        validate(cfg);
    } catch (const Error& e) {
        std::cerr << "ihodual: " << e.what() << "\n";
        return ConfigFailure;
    }

    CommandResult res;
    try {
        res = run_command(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "ihodual: " << e.what() << "\n";
        return ConfigFailure;
    } catch (const DomainError& e) {
        std::cerr << "ihodual: invalid input: " << e.what() << "\n";
        return ConfigFailure;
    } catch (const Error& e) {
        std::cerr << "ihodual: numerical failure: " << e.what() << "\n";
        return NumericalFailure;
    }

    for (const auto& n : res.notes) std::cerr << "note: " << n << "\n";
    if (cfg.command == Command::Selftest && out.empty() && cfg.format == OutputFormat::CSV) {
        print_selftest(res);
        return res.exit_code;
    }
    if (out.empty()) {
        write_result(res, cfg.format, std::cout);
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "ihodual: cannot open " << out << "\n";
            return ConfigFailure;
        }
        write_result(res, cfg.format, f);
    }
    return res.exit_code;
}
