#include "ihodual/cli.hpp"
#include "ihodual/errors.hpp"
#include "ihodual/rg.hpp"
#include "ihodual/selftest.hpp"
#include "ihodual/transforms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

namespace ihodual::cli {

namespace {

constexpr double pi = std::numbers::pi;
using json = nlohmann::ordered_json;

const char* command_name(Command c)
{
    switch (c) {
    case Command::EvalState: return "eval-state";
    case Command::TransformCheck: return "transform-check";
    case Command::MapBc: return "map-bc";
    case Command::RgFlow: return "rg-flow";
    case Command::Figure: return "figure";
    case Command::Selftest: return "selftest";
    }
    return "?";
}

const char* system_name(SystemKind s)
{
    switch (s) {
    case SystemKind::IHO: return "iho";
    case SystemKind::BK: return "bk";
    case SystemKind::ISP: return "isp";
    }
    return "?";
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json base_metadata(const char* command, json config)
{
    json m;
    m["command"] = command;
    m["config"] = std::move(config);
    m["version"] = IHODUAL_VERSION;
    m["tolerances"] = {{"pcf", pcf_tolerance}};
    return m;
}

// Runs fn(i) for i in [0, n) on a few threads. Each index is written by
// exactly one call, so output order never depends on scheduling.
void parallel_for(int n, unsigned threads, const std::function<void(int)>& fn)
{
    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    t = std::min<unsigned>(t, unsigned(std::max(1, n / 16)));
    if (t <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::vector<double> grid_points(const GridSpec& g)
{
    std::vector<double> x(g.n);
    for (int i = 0; i < g.n; ++i) x[i] = i == g.n - 1 ? g.max : g.min + (g.max - g.min) * i / (g.n - 1);
    return x;
}

double unit_scale(const RunConfig& cfg) { return cfg.physical ? cfg.physical->inverse_length() : 1.0; }

EnergyParam energy(const RunConfig& cfg) { return EnergyParam(*cfg.e_hat); }

// Sample values, per-point error text, and the unwrapped phase.
struct Sweep {
    std::vector<cplx> v;
    std::vector<std::string> err;
    int failures = 0;
};

Sweep sweep(const std::vector<double>& x, unsigned threads, const std::function<cplx(double)>& f)
{
    Sweep s;
    s.v.assign(x.size(), cplx(std::nan(""), std::nan("")));
    s.err.assign(x.size(), "");
    parallel_for(int(x.size()), threads, [&](int i) {
        try {
            s.v[i] = f(x[i]);
        } catch (const Error& ex) {
            s.err[i] = ex.what();
        }
    });
    for (const auto& e : s.err) s.failures += !e.empty();
    return s;
}

std::vector<double> unwrap_phase(const std::vector<cplx>& v)
{
    std::vector<double> ph(v.size(), std::nan(""));
    double prev = std::nan("");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(std::abs(v[i])) || v[i] == 0.0) continue;
        const double a = std::arg(v[i]);
        prev = std::isnan(prev) ? a : prev + std::remainder(a - prev, 2.0 * pi);
        ph[i] = prev;
    }
    return ph;
}

void note_failures(CommandResult& r, const Sweep& s, const std::vector<double>& x)
{
    if (!s.failures) return;
    r.exit_code = NumericalFailure;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!s.err[i].empty()) r.notes.push_back("x = " + format_double(x[i]) + ": " + s.err[i]);
    r.metadata["failed_points"] = s.failures;
}

Table state_table(const std::vector<double>& x, const Sweep& s, const std::vector<double>& phase,
                  const std::vector<double>* amplitude = nullptr)
{
    Table t;
    t.columns = {"x", "re", "im", "abs", "abs2", "phase"};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = amplitude ? (*amplitude)[i] : std::abs(s.v[i]);
        t.add({x[i], s.v[i].real(), s.v[i].imag(), a, a * a, phase[i]});
    }
    return t;
}

std::function<cplx(double)> iho_state_fn(const RunConfig& cfg)
{
    const EnergyParam e = energy(cfg);
    const double u = unit_scale(cfg);
    const std::string& st = cfg.state;
    if (st == "plus" || st == "minus") {
        const Parity p = st == "plus" ? Parity::Plus : Parity::Minus;
        return [e, u, p](double x) { return iho_parity_state(p, e, u * x); };
    }
    IHOCoefficients c(cfg.c1, cfg.c2);
    if (st == "phi1") c = IHOCoefficients(1.0, 0.0);
    if (st == "phi2") c = IHOCoefficients(0.0, 1.0);
    return [e, u, c](double x) { return iho_eigenstate(c, e, u * x); };
}

CommandResult state_result(const RunConfig& cfg, const std::vector<double>& x, json meta)
{
    CommandResult r;
    r.metadata = std::move(meta);
    const EnergyParam e = energy(cfg);
    if (cfg.system == SystemKind::BK) {
        // modulus and phase are elementary here, so they are emitted exactly
        const BKBranchCoefficients c(cfg.alpha, cfg.beta);
        const Sweep s = sweep(x, cfg.threads, [&](double q) { return bk_eigenstate(c, e, q); });
        std::vector<double> amp(x.size()), ph(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const cplx coef = x[i] > 0 ? c.a_plus : c.b_minus;
            amp[i] = std::abs(coef) * std::pow(std::abs(x[i]), -0.5);
            ph[i] = coef == 0.0 ? std::nan("") : bk_phase(c, e, x[i]);
        }
        r.table = state_table(x, s, ph, &amp);
        note_failures(r, s, x);
        return r;
    }
    Sweep s;
    if (cfg.system == SystemKind::ISP) {
        const ISPCoefficients c(cfg.alpha, cfg.beta);
        s = sweep(x, cfg.threads, [&](double q) { return isp_zero_energy_state(c, e, q); });
    } else {
        s = sweep(x, cfg.threads, iho_state_fn(cfg));
    }
    r.table = state_table(x, s, unwrap_phase(s.v));
    note_failures(r, s, x);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const RunConfig& cfg)
{
    const bool needs_energy = cfg.command == Command::EvalState || cfg.command == Command::TransformCheck ||
                              cfg.command == Command::MapBc || cfg.command == Command::RgFlow;
    if (needs_energy && !cfg.e_hat) throw ConfigError("--e-hat is required");
    if (cfg.e_hat && !std::isfinite(*cfg.e_hat)) throw ConfigError("--e-hat must be finite");
    if (cfg.tolerance && !(*cfg.tolerance > 0)) throw ConfigError("--tolerance must be positive");
    if (cfg.scale && !(*cfg.scale > 0)) throw ConfigError("--scale must be positive");
    if (cfg.target_scale && !(*cfg.target_scale > 0)) throw ConfigError("--target-scale must be positive");
    if (cfg.grid && (cfg.grid->n < 2 || !(cfg.grid->min < cfg.grid->max))) throw ConfigError("invalid grid");

    switch (cfg.command) {
    case Command::EvalState: {
        if (!cfg.grid) throw ConfigError("eval-state needs --grid");
        static const char* states[] = {"general", "phi1", "phi2", "plus", "minus"};
        if (std::find(std::begin(states), std::end(states), cfg.state) == std::end(states))
            throw ConfigError("--state must be general, phi1, phi2, plus or minus");
        if (cfg.system == SystemKind::ISP && !(cfg.grid->min > 0)) throw ConfigError("ISP states need Q > 0");
        if (cfg.system == SystemKind::BK)
            for (double q : grid_points(*cfg.grid))
                if (q == 0.0) throw ConfigError("BK states are singular at Q = 0; shift the grid");
        if (cfg.system != SystemKind::IHO && cfg.alpha == 0.0 && cfg.beta == 0.0)
            throw ConfigError("--alpha and --beta cannot both vanish");
        if (cfg.system == SystemKind::IHO && cfg.state == "general" && cfg.c1 == 0.0 && cfg.c2 == 0.0)
            throw ConfigError("--c1 and --c2 cannot both vanish");
        break;
    }
    case Command::MapBc:
        if (!cfg.lambda || !cfg.scale || !cfg.target_scale)
            throw ConfigError("map-bc needs --lambda, --scale and --target-scale");
        if (cfg.flow_range && !(cfg.flow_range->first > 0)) throw ConfigError("--flow-range must be positive");
        break;
    case Command::RgFlow:
        if (cfg.system == SystemKind::BK) throw ConfigError("rg-flow supports --system isp or iho");
        if (!cfg.lambda) throw ConfigError("rg-flow needs --lambda (the reduced coupling Lambda0)");
        if (!cfg.grid || !(cfg.grid->min > 0)) throw ConfigError("rg-flow needs --grid with positive scales");
        break;
    case Command::Figure:
        if (cfg.figure < 1 || cfg.figure > 7) throw ConfigError("figure must be 1 to 7");
        break;
    default: break;
    }
}

json config_echo(const RunConfig& cfg)
{
    json j;
    j["command"] = command_name(cfg.command);
    if (cfg.e_hat) j["e_hat"] = *cfg.e_hat;
    j["system"] = system_name(cfg.system);
    j["c1"] = cjson(cfg.c1);
    j["c2"] = cjson(cfg.c2);
    j["alpha"] = cjson(cfg.alpha);
    j["beta"] = cjson(cfg.beta);
    j["state"] = cfg.state;
    if (cfg.lambda) j["lambda"] = cjson(*cfg.lambda);
    if (cfg.scale) j["scale"] = *cfg.scale;
    if (cfg.target_scale) j["target_scale"] = *cfg.target_scale;
    if (cfg.grid) j["grid"] = {cfg.grid->min, cfg.grid->max, cfg.grid->n};
    j["direction"] = cfg.direction == Direction::IspToIho ? "isp-to-iho" : "iho-to-isp";
    if (cfg.tolerance) j["tolerance"] = *cfg.tolerance;
    if (cfg.physical) j["physical"] = {cfg.physical->mass, cfg.physical->omega, cfg.physical->hbar};
    if (cfg.flow_range) j["flow_range"] = {cfg.flow_range->first, cfg.flow_range->second};
    j["round_trip"] = cfg.round_trip;
    return j;
}

CommandResult cmd_eval_state(const RunConfig& cfg)
{
    validate(cfg);
    json meta = base_metadata("eval-state", config_echo(cfg));
    if (cfg.physical && cfg.system == SystemKind::IHO) meta["xi_per_unit_x"] = unit_scale(cfg);
    return state_result(cfg, grid_points(*cfg.grid), std::move(meta));
}

CommandResult cmd_transform_check(const RunConfig& cfg)
{
    validate(cfg);
    const GridSpec g = cfg.grid.value_or(GridSpec{-4.0, 4.0, 33});
    const double tol = cfg.tolerance.value_or(1e-6);
    const EnergyParam e = energy(cfg);
    const double u = unit_scale(cfg);
    const auto x = grid_points(g);

    struct Row {
        cplx q1, f1, q2, f2;
        std::string err;
    };
    std::vector<Row> rows(x.size());
    parallel_for(int(x.size()), cfg.threads, [&](int i) {
        Row& r = rows[i];
        const double xi = u * x[i];
        const double nan = std::nan("");
        r.q1 = r.f1 = r.q2 = r.f2 = cplx(nan, nan);
        try {
            r.q1 = qct_first(e, xi);
            r.f1 = closed_form_first(e, xi);
            r.q2 = qct_second(e, xi);
            r.f2 = closed_form_second(e, xi);
        } catch (const Error& ex) {
            r.err = ex.what();
        }
    });

    CommandResult res;
    res.metadata = base_metadata("transform-check", config_echo(cfg));
    res.table.columns = {"xi",           "qct_first_re",  "qct_first_im",  "closed_first_re",  "closed_first_im",
                         "rel_err_first", "qct_second_re", "qct_second_im", "closed_second_re", "closed_second_im",
                         "rel_err_second", "status"};
    double worst = 0.0;
    int failures = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Row& r = rows[i];
        const double e1 = std::abs(r.q1 - r.f1) / std::abs(r.f1);
        const double e2 = std::abs(r.q2 - r.f2) / std::abs(r.f2);
        if (r.err.empty())
            worst = std::max({worst, e1, e2});
        else {
            ++failures;
            res.notes.push_back("xi = " + format_double(x[i]) + ": " + r.err);
        }
        res.table.add({x[i], r.q1.real(), r.q1.imag(), r.f1.real(), r.f1.imag(), e1, r.q2.real(), r.q2.imag(),
                       r.f2.real(), r.f2.imag(), e2, r.err.empty() ? std::string("ok") : r.err});
    }
    const bool passed = failures == 0 && worst <= tol;
    res.metadata["tolerances"]["transform"] = tol;
    res.metadata["max_rel_error"] = worst;
    res.metadata["failed_points"] = failures;
    res.metadata["passed"] = passed;
    res.exit_code = passed ? Ok : NumericalFailure;
    return res;
}

CommandResult cmd_map_bc(const RunConfig& cfg)
{
    validate(cfg);
    const EnergyParam e = energy(cfg);
    const double u = unit_scale(cfg);
    const bool from_isp = cfg.direction == Direction::IspToIho;
    // physical units touch the IHO side only: ell = u L and lambda_IHO = lambda_phys / u
    const double src_scale = from_isp ? *cfg.scale : u * *cfg.scale;
    const double dst_scale = from_isp ? u * *cfg.target_scale : *cfg.target_scale;
    const cplx src_lambda = from_isp ? *cfg.lambda : *cfg.lambda / u;

    const RobinBoundary bc(src_lambda, src_scale);
    const MappedBoundary m = map_boundary(cfg.direction, bc, e, dst_scale);
    const double out_factor = from_isp ? u : 1.0;
    const cplx mapped = m.bc.pole ? cplx(std::nan(""), std::nan("")) : m.bc.lambda * out_factor;

    CommandResult res;
    res.metadata = base_metadata("map-bc", config_echo(cfg));
    double rt = std::nan("");
    if (cfg.round_trip) {
        const Direction back = from_isp ? Direction::IhoToIsp : Direction::IspToIho;
        const MappedBoundary b = map_boundary(back, m.bc, e, src_scale);
        rt = b.bc.pole ? std::nan("") : std::abs(b.bc.lambda - src_lambda) / std::max(std::abs(src_lambda), 1e-300);
        res.metadata["round_trip_error"] = rt;
    }

    double eps_star = std::nan(""), y_star = std::nan("");
    if (cfg.flow_range) {
        const ReducedCouplingISP isp{from_isp ? m.lambda_source : m.lambda_target,
                                     from_isp ? m.source_pole : m.target_pole};
        const double isp_scale = from_isp ? src_scale : dst_scale;
        try {
            const RobinBoundary start = robin_from_reduced_isp(isp, isp_scale);
            const auto traj = flow_isp(start, e, *cfg.flow_range, 400);
            const auto inv = rg_invariants_isp(traj);
            eps_star = inv.eps_star;
            y_star = inv.y_star;
            json cr = json::array();
            for (const auto& c : inv.crossings) cr.push_back({std::exp(c.log_scale), c.Lambda.imag()});
            res.metadata["rg_crossings"] = std::move(cr);
        } catch (const NoCrossing& ex) {
            res.notes.push_back(ex.what());
        }
    }

    std::string note;
    if (m.outside_asymptotic_regime) note = "IHO scale below the asymptotic regime (ell^2 < 2E + 4)";
    if (from_isp && cfg.lambda->imag() == 0.0 && !m.bc.pole &&
        std::abs(m.bc.lambda.imag()) > 1e-12 * std::abs(m.bc.lambda)) {
        if (!note.empty()) note += "; ";
        note += "non-self-adjoint image";
    }
    if (!note.empty()) res.notes.push_back(note);

    auto ratio_cells = [](const CoefficientRatio& r) -> std::vector<Cell> {
        if (r.is_infinite()) return {std::nan(""), std::nan(""), 1.0};
        return {r.value().real(), r.value().imag(), 0.0};
    };
    res.table.columns = {"direction",        "lambda_re",        "lambda_im",        "lambda_pole",
                         "Lambda_source_re", "Lambda_source_im", "source_pole",      "Lambda_target_re",
                         "Lambda_target_im", "target_pole",      "ratio_source_re",  "ratio_source_im",
                         "ratio_source_inf", "ratio_target_re",  "ratio_target_im",  "ratio_target_inf",
                         "outside_asymptotic_regime", "round_trip_error", "eps_star", "y_star", "note"};
    std::vector<Cell> row{std::string(from_isp ? "isp-to-iho" : "iho-to-isp"), mapped.real(), mapped.imag(),
                          double(m.bc.pole)};
    const double nan = std::nan("");
    row.insert(row.end(), {m.source_pole ? nan : m.lambda_source.real(), m.source_pole ? nan : m.lambda_source.imag(),
                           double(m.source_pole), m.target_pole ? nan : m.lambda_target.real(),
                           m.target_pole ? nan : m.lambda_target.imag(), double(m.target_pole)});
    for (auto& c : ratio_cells(m.ratio_source)) row.push_back(c);
    for (auto& c : ratio_cells(m.ratio_target)) row.push_back(c);
    row.insert(row.end(), {double(m.outside_asymptotic_regime), rt, eps_star, y_star, note});
    res.table.add(std::move(row));
    return res;
}

namespace {

Table flow_table(const RGTrajectory& t)
{
    Table tab;
    tab.columns = {"log_scale", "re", "im", "re_numeric", "im_numeric", "pole", "pole_crossed"};
    for (const auto& s : t.samples) {
        const double nan = std::nan("");
        tab.add({s.log_scale, s.at_pole ? nan : s.Lambda.real(), s.at_pole ? nan : s.Lambda.imag(),
                 s.at_pole ? nan : s.Lambda_numeric.real(), s.at_pole ? nan : s.Lambda_numeric.imag(),
                 double(s.at_pole), double(s.pole_crossed)});
    }
    return tab;
}

json cycle_json(const RGTrajectory& t, std::optional<std::pair<double, double>> window)
{
    json j;
    try {
        const auto rep = limit_cycle_analysis(t, window);
        j["cycle_detected"] = rep.cycle_detected;
        j["monotonicity"] = to_string(rep.monotonicity);
        j["crossings"] = rep.crossings;
        j["spacings"] = rep.spacings;
    } catch (const InsufficientSpan& ex) {
        j["cycle_detected"] = false;
        j["error"] = ex.what();
    }
    if (window) j["window"] = {window->first, window->second};
    return j;
}

CommandResult flow_result(FlowSystem sys, cplx lambda0, double e_hat, const GridSpec& g, std::optional<double> start,
                          json meta)
{
    CommandResult res;
    res.metadata = std::move(meta);
    const EnergyParam e(e_hat);
    std::optional<std::pair<double, double>> window;
    RGTrajectory t = sys == FlowSystem::ISP
                         ? flow_isp(RobinBoundary((lambda0 + 0.5) / start.value_or(g.min), start.value_or(g.min)), e,
                                    {g.min, g.max}, g.n)
                         : flow_iho(lambda0, e, {g.min, g.max}, g.n, start);
    if (sys == FlowSystem::IHO && e_hat > 0) window = std::pair{0.5 * std::log(e_hat), std::log(g.max)};
    res.table = flow_table(t);
    res.metadata["fixed_point"] = t.model.fixed_point();
    res.metadata["max_route_discrepancy"] = t.max_route_discrepancy;
    res.metadata["limit_cycle"] = cycle_json(t, window);
    if (sys == FlowSystem::ISP) {
        try {
            const auto inv = rg_invariants_isp(t);
            res.metadata["rg_invariants"] = {{"eps_star", inv.eps_star}, {"y_star", inv.y_star}};
        } catch (const NoCrossing&) {
            res.metadata["rg_invariants"] = nullptr;
        }
    }
    return res;
}

}  // namespace

CommandResult cmd_rg_flow(const RunConfig& cfg)
{
    validate(cfg);
    const bool iho = cfg.system == SystemKind::IHO;
    GridSpec g = *cfg.grid;
    std::optional<double> start = cfg.scale;
    if (iho && cfg.physical) {
        const double u = unit_scale(cfg);
        g.min *= u;
        g.max *= u;
        if (start) *start *= u;
    }
    return flow_result(iho ? FlowSystem::IHO : FlowSystem::ISP, *cfg.lambda, *cfg.e_hat, g, start,
                       base_metadata("rg-flow", config_echo(cfg)));
}

// ---------------------------------------------------------------------------

namespace {

json preset_meta(int n, json preset) { return base_metadata("figure", {{"figure", n}, {"preset", std::move(preset)}}); }

CommandResult figure1()
{
    const double E = 6.0;
    CommandResult r;
    r.metadata = preset_meta(1, {{"e_hat", E}, {"grid", {-5.0, 5.0, 201}}});
    r.table.columns = {"xi", "V", "level"};
    for (double x : grid_points({-5.0, 5.0, 201})) r.table.add({x, -0.5 * x * x, -E});
    return r;
}

CommandResult figure2()
{
    const std::vector<double> xi0s = {-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0};
    CommandResult r;
    r.metadata = preset_meta(2, {{"xi0", xi0s}, {"t0", 0.0}, {"t", {-2.0, 2.0, 201}}});
    r.notes.push_back("figure 2 orbits are illustrative: the turning points are a preset choice");
    r.table.columns = {"orbit", "xi0", "t", "xi", "pi", "Q", "P"};
    int id = 0;
    for (double x0 : xi0s) {
        for (double t : grid_points({-2.0, 2.0, 201})) {
            const ClassicalState s = classical_orbit(ClassicalSystem::IHO, {x0, 0.0}, t);
            const double Q = (s.momentum + s.position) / std::sqrt(2.0);
            const double P = (s.momentum - s.position) / std::sqrt(2.0);
            r.table.add({double(id), x0, t, s.position, s.momentum, Q, P});
        }
        ++id;
    }
    return r;
}

CommandResult figure3(unsigned threads)
{
    const EnergyParam e(1.0);
    const GridSpec g{-5.0, 5.0, 401};
    CommandResult r;
    r.metadata = preset_meta(3, {{"e_hat", 1.0}, {"grid", {g.min, g.max, g.n}}, {"c", 1.0}});
    const auto x = grid_points(g);
    std::vector<IHOBasis> b(x.size());
    std::vector<std::string> err(x.size());
    parallel_for(int(x.size()), threads, [&](int i) {
        try {
            b[i] = iho_basis(e, x[i]);
        } catch (const Error& ex) {
            err[i] = ex.what();
        }
    });
    r.table.columns = {"xi", "phi1_re", "phi1_im", "phi1_abs2", "phi2_re", "phi2_im", "phi2_abs2"};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!err[i].empty()) {
            r.exit_code = NumericalFailure;
            r.notes.push_back(err[i]);
        }
        r.table.add({x[i], b[i].phi1.real(), b[i].phi1.imag(), std::norm(b[i].phi1), b[i].phi2.real(),
                     b[i].phi2.imag(), std::norm(b[i].phi2)});
    }
    return r;
}

CommandResult figure4()
{
    const double xi0 = 2.0;
    CommandResult r;
    r.metadata = preset_meta(4, {{"xi0", xi0}, {"q", {0.1, 5.0, 200}}});
    r.table.columns = {"Q", "xi"};
    auto pos = grid_points({0.1, 5.0, 200});
    std::vector<double> q;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) q.push_back(-*it);
    q.insert(q.end(), pos.begin(), pos.end());
    for (double v : q) r.table.add({v, xi_of_q(xi0, v)});
    return r;
}

CommandResult figure5(unsigned threads)
{
    RunConfig cfg;
    cfg.command = Command::EvalState;
    cfg.system = SystemKind::BK;
    cfg.e_hat = 10.0;
    cfg.alpha = 1.0;
    cfg.beta = 0.0;
    cfg.threads = threads;
    const GridSpec g{0.05, 5.0, 2001};
    return state_result(cfg, grid_points(g),
                        preset_meta(5, {{"system", "bk"}, {"e_hat", 10.0}, {"A", 1.0}, {"grid", {g.min, g.max, g.n}}}));
}

CommandResult figure6()
{
    const cplx L0(7.0, 1.5);
    const double E = 8.7;
    const GridSpec g{std::exp(0.1), std::exp(3.0), 1500};
    return flow_result(FlowSystem::IHO, L0, E, g, std::nullopt,
                       preset_meta(6, {{"system", "iho"}, {"lambda0", cjson(L0)}, {"e_hat", E},
                                       {"log_scale", {0.1, 3.0}}, {"samples", g.n}}));
}

CommandResult figure7()
{
    const double E = 8.7;
    const std::vector<cplx> starts = {{7.0, 1.5}, {2.0, 0.5}, {0.5, 0.2}, {-3.0, -0.5}, {0.3, -0.1}, {7.0, 0.0}};
    const GridSpec g{std::exp(0.1), std::exp(3.0), 1500};
    json js = json::array();
    for (cplx s : starts) js.push_back(cjson(s));
    CommandResult r;
    r.metadata = preset_meta(7, {{"system", "iho"}, {"e_hat", E}, {"lambda0", js}, {"log_scale", {0.1, 3.0}},
                                 {"samples", g.n}});
    r.table.columns = {"kind", "id", "log_scale", "re", "im", "pole"};
    int id = 0;
    for (cplx s : starts) {
        const auto t = flow_iho(s, EnergyParam(E), {g.min, g.max}, g.n);
        for (const auto& p : t.samples) {
            const double nan = std::nan("");
            r.table.add({std::string("trajectory"), double(id), p.log_scale, p.at_pole ? nan : p.Lambda.real(),
                         p.at_pole ? nan : p.Lambda.imag(), double(p.at_pole)});
        }
        ++id;
    }
    r.table.add({std::string("fixed_point"), 0.0, std::nan(""), 0.0, 1.0, 0.0});
    r.table.add({std::string("fixed_point"), 1.0, std::nan(""), 0.0, -1.0, 0.0});
    return r;
}

}  // namespace

CommandResult cmd_figure(const RunConfig& cfg)
{
    validate(cfg);
    switch (cfg.figure) {
    case 1: return figure1();
    case 2: return figure2();
    case 3: return figure3(cfg.threads);
    case 4: return figure4();
    case 5: return figure5(cfg.threads);
    case 6: return figure6();
    default: return figure7();
    }
}

CommandResult cmd_selftest(const RunConfig& cfg)
{
    const double scale = tolerance_scale_from_env();
    const SelfTestReport rep = run_selftest(scale);
    CommandResult r;
    r.metadata = base_metadata("selftest", config_echo(cfg));
    r.metadata["tolerance_scale"] = scale;
    r.table.columns = {"check", "status", "error", "tolerance", "seconds", "detail"};
    for (const auto& c : rep.checks)
        r.table.add({c.name, std::string(c.passed ? "pass" : "FAIL"), c.value, c.tolerance, c.seconds, c.detail});
    r.metadata["passed"] = rep.all_passed();
    r.exit_code = rep.all_passed() ? Ok : SelftestFailed;
    return r;
}

CommandResult run_command(const RunConfig& cfg)
{
    switch (cfg.command) {
    case Command::EvalState: return cmd_eval_state(cfg);
    case Command::TransformCheck: return cmd_transform_check(cfg);
    case Command::MapBc: return cmd_map_bc(cfg);
    case Command::RgFlow: return cmd_rg_flow(cfg);
    case Command::Figure: return cmd_figure(cfg);
    case Command::Selftest: return cmd_selftest(cfg);
    }
    throw ConfigError("unknown command");
}

}  // namespace ihodual::cli
