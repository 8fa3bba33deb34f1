#pragma once

#include "ihodual/complex_special.hpp"
#include "ihodual/duality.hpp"
#include "ihodual/states.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ihodual::cli {

enum class Command { EvalState, TransformCheck, MapBc, RgFlow, Figure, Selftest };
enum class OutputFormat { CSV, JSON };
enum class SystemKind { IHO, BK, ISP };

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int n = 2;
};

struct RunConfig {
    Command command = Command::Selftest;
    std::optional<double> e_hat;
    // IHO coefficients; --alpha/--beta are the ISP coefficients, and on the BK
    // system they are read as the branch amplitudes A (Q > 0) and B (Q < 0)
    cplx c1 = 1.0, c2 = 0.0;
    cplx alpha = 1.0, beta = 0.0;
    std::string state = "general";  // IHO: general, phi1, phi2, plus, minus
    std::optional<cplx> lambda;     // Robin parameter (map-bc) or Lambda0 (rg-flow)
    std::optional<double> scale;
    std::optional<double> target_scale;
    std::optional<GridSpec> grid;
    SystemKind system = SystemKind::IHO;
    Direction direction = Direction::IspToIho;
    OutputFormat format = OutputFormat::CSV;
    std::string out;  // empty: stdout
    std::optional<double> tolerance;
    std::optional<PhysicalScales> physical;
    std::optional<std::pair<double, double>> flow_range;
    bool round_trip = false;
    int figure = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row);
};

struct CommandResult {
    Table table;
    nlohmann::ordered_json metadata;
    int exit_code = 0;
    std::vector<std::string> notes;  // printed to stderr
};

enum ExitCode { Ok = 0, SelftestFailed = 1, ConfigFailure = 2, NumericalFailure = 3 };

// "1.5", "-2i", "i", "7+1.5i", "1e-3-2e-2i"
cplx parse_complex(const std::string& text);
// "min:max:n"
GridSpec parse_grid(const std::string& text);
// "a:b"
std::pair<double, double> parse_range(const std::string& text);

std::string format_double(double v);
void write_csv(const Table& t, std::ostream& os);
void write_json(const CommandResult& r, std::ostream& os);
void write_result(const CommandResult& r, OutputFormat fmt, std::ostream& os);

// Throws ConfigError for inconsistent or missing settings.
void validate(const RunConfig& cfg);

nlohmann::ordered_json config_echo(const RunConfig& cfg);

CommandResult cmd_eval_state(const RunConfig& cfg);
CommandResult cmd_transform_check(const RunConfig& cfg);
CommandResult cmd_map_bc(const RunConfig& cfg);
CommandResult cmd_rg_flow(const RunConfig& cfg);
CommandResult cmd_figure(const RunConfig& cfg);
CommandResult cmd_selftest(const RunConfig& cfg);

CommandResult run_command(const RunConfig& cfg);

}  // namespace ihodual::cli
