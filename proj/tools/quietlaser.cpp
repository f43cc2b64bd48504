// quietlaser command-line front end.
//
//   quietlaser analytic --a 0.25 --a 1 --out run/
//   quietlaser design --min-noise --mu 1 --tau-p 1e-6
//   quietlaser renewal --a 1 --horizon-tau 1e5 --out run/
//   quietlaser loop --min-noise --mu 100 --horizon 1e5 --out run/
//   quietlaser tdse --grid-points 2048 --out run/
//
// Every run writes manifest.json (resolved config, seed, version) next to its
// outputs; `--config manifest.json` reruns it. Exit status: 0 all checks pass,
// 1 a check failed, 2 usage or input error, 3 no steady state.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quietlaser/quietlaser.hpp"

#ifndef QUIETLASER_VERSION
#define QUIETLASER_VERSION "unknown"
#endif

using namespace quietlaser;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Options of one subcommand that may also come from a JSON config. A flag given
// on the command line always wins.
class ConfigBinder
{
  public:
    explicit ConfigBinder(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* add(const std::string& flag, T& target, const std::string& help)
    {
        CLI::Option* opt = app_->add_option(flag, target, help);
        register_key(flag, opt, target);
        return opt;
    }

    CLI::Option* add_flag(const std::string& flag, bool& target, const std::string& help)
    {
        CLI::Option* opt = app_->add_flag(flag, target, help);
        register_key(flag, opt, target);
        return opt;
    }

    void apply(const json& cfg) const
    {
        for (const auto& [key, fn] : setters_)
            if (cfg.contains(key)) fn(cfg.at(key));
    }

    json resolved() const
    {
        json out = json::object();
        for (const auto& [key, fn] : getters_) out[key] = fn();
        return out;
    }

  private:
    static std::string key_of(const std::string& flag)
    {
        std::string k = flag.substr(flag.find_first_not_of('-'));
        for (char& c : k)
            if (c == '-') c = '_';
        return k;
    }

    template <class T>
    void register_key(const std::string& flag, CLI::Option* opt, T& target)
    {
        const std::string key = key_of(flag);
        setters_.emplace_back(key, [opt, &target, key](const json& v) {
            if (opt->count() > 0) return;
            try {
                target = v.get<T>();
            } catch (const json::exception&) {
                throw UsageError("config key '" + key + "' has the wrong type");
            }
        });
        getters_.emplace_back(key, [&target] { return json(target); });
    }

    CLI::App* app_;
    std::vector<std::pair<std::string, std::function<void(const json&)>>> setters_;
    std::vector<std::pair<std::string, std::function<json()>>> getters_;
};

json load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config " + path);
    json cfg;
    try {
        cfg = json::parse(is);
    } catch (const json::exception& e) {
        throw UsageError("config " + path + " is not valid JSON: " + e.what());
    }
    // A manifest nests the resolved options under "config".
    if (cfg.contains("config") && cfg["config"].is_object()) return cfg["config"];
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    return cfg;
}

class Output
{
  public:
    explicit Output(std::string dir) : dir_(std::move(dir)) {}

    void prepare() const { fs::create_directories(dir_); }
    std::string path(const std::string& name)
    {
        files_.push_back(name);
        return (fs::path(dir_) / name).string();
    }
    void write_json(const std::string& name, const json& j)
    {
        std::ofstream os(path(name));
        os << j.dump(2) << '\n';
        if (!os) throw std::runtime_error("failed writing " + name);
    }
    void manifest(const std::string& command, const json& config, std::optional<std::uint64_t> seed)
    {
        json m;
        m["tool"] = "quietlaser";
        m["version"] = QUIETLASER_VERSION;
        m["command"] = command;
        m["config"] = config;
        m["seed"] = seed ? json(*seed) : json(nullptr);
        m["outputs"] = files_;
        std::ofstream os((fs::path(dir_) / "manifest.json").string());
        os << m.dump(2) << '\n';
    }

  private:
    std::string dir_;
    std::vector<std::string> files_;
};

void report(const json& stats)
{
    std::cout << stats.dump(2) << '\n';
}

// a from --a, or from --rabi with --gamma.
CouplingParams coupling_from(double a, double gamma, double rabi)
{
    if (rabi > 0) return CouplingParams(rabi * rabi, gamma);
    if (!(a > 0)) throw UsageError("give --a or --rabi");
    return CouplingParams::from_a(a, gamma);
}

int run_analytic(const std::vector<double>& grid, Output& out, const json& cfg)
{
    if (grid.empty()) throw UsageError("analytic: the a-grid is empty (give --a)");
    for (double a : grid)
        if (!(a > 0) || !std::isfinite(a)) throw UsageError("analytic: a must be positive");
    json rows = json::array();
    for (double a : grid) {
        const auto [A, amp] = closed_loop_transfer(a);
        rows.push_back({{"a", a},
                        {"R_over_gamma", 1.0 / (1.0 + a)},
                        {"tau_times_gamma", 1.0 + a},
                        {"R_tau", 1.0},
                        {"pump_noise_ratio", pump_noise_ratio(a)},
                        {"loop_gain_A", A},
                        {"detected_noise_ratio", detected_noise_ratio(a)}});
    }
    out.prepare();
    {
        std::ofstream os(out.path("analytic.csv"));
        os << "a,R_over_gamma,tau_times_gamma,R_tau,pump_noise_ratio,loop_gain_A,detected_noise_ratio\n";
        for (const auto& r : rows) {
            bool first = true;
            for (const auto& [k, v] : r.items()) {
                os << (first ? "" : ",") << format_double(v.get<double>());
                first = false;
            }
            os << '\n';
        }
    }
    out.write_json("analytic.json", json{{"rows", rows}});
    out.manifest("analytic", cfg, std::nullopt);
    report(json{{"rows", rows}});
    return 0;
}

json describe(const OperatingPoint& op, const BoxGeometry& g)
{
    return {{"J", op.J},
            {"tau_p", op.tau_p},
            {"volume", op.volume},
            {"mu", op.mu},
            {"rabi_sq", op.rabi_sq},
            {"rabi", std::sqrt(op.rabi_sq)},
            {"gamma", op.gamma},
            {"a", op.a},
            {"detected_noise_ratio", detected_noise_ratio(op.a)},
            {"box_width", g.width()},
            {"capacitor_side", std::sqrt(op.volume / g.width())}};
}

struct DesignArgs
{
    bool min_noise = false;
    double mu = 1.0, tau_p = 1e-6, J = 0.0, volume = 0.0, frequency = 1.42e9;
};

int run_design(const DesignArgs& d, Output& out, const json& cfg)
{
    if (!(d.frequency > 0)) throw UsageError("design: --frequency must be positive");
    const BoxGeometry g = box_width_for_frequency(2.0 * pi * d.frequency);
    json result;
    result["frequency_hz"] = d.frequency;
    if (d.min_noise) {
        if (!(d.mu > 0 && d.tau_p > 0)) throw UsageError("design: --mu and --tau-p must be positive");
        result["design"] = describe(min_noise_design(d.mu, d.tau_p), g);
        result["volume_over_tau_p_sq"] = result["design"]["volume"].get<double>() / (d.tau_p * d.tau_p);
    } else {
        if (!(d.J > 0 && d.tau_p > 0 && d.volume > 0))
            throw UsageError("design: give --J, --tau-p and --volume, or --min-noise with --mu");
        const auto roots = steady_state(d.J, d.tau_p, d.volume);
        if (roots.empty()) {
            const double rabi_sq = rabi_sq_from_energy(d.J * d.tau_p, d.volume);
            std::cerr << "no steady state: Omega_R = " << std::sqrt(rabi_sq) << " s^-1 is below 2 sqrt(2) J = "
                      << 2.0 * std::sqrt(2.0) * d.J << " s^-1; the drive is too weak to sustain J\n";
            return 3;
        }
        json list = json::array();
        for (const auto& op : roots) list.push_back(describe(op, g));
        result["roots"] = list;
    }
    out.prepare();
    out.write_json("design.json", result);
    out.manifest("design", cfg, std::nullopt);
    report(result);
    return 0;
}

struct RenewalArgs
{
    double a = 0.0, gamma = 1.0, rabi = 0.0, horizon = 0.0, horizon_tau = 1e5, window = 0.0, window_tau = 100.0;
    std::uint64_t seed = 1;
    bool poisson = false;
    int psd_points = 0;
    int segments = 100;
};

int run_renewal(const RenewalArgs& r, Output& out, const json& cfg)
{
    if (!(r.gamma > 0)) throw UsageError("renewal: --gamma must be positive");
    const CouplingParams c = coupling_from(r.a, r.gamma, r.rabi);
    const double tau = mean_waiting_time(c);
    const double horizon = r.horizon > 0 ? r.horizon : r.horizon_tau * tau;
    const double window = r.window > 0 ? r.window : r.window_tau * tau;
    if (!(horizon > 0 && window > 0)) throw UsageError("renewal: horizon and window must be positive");
    // Fail fast on estimator preconditions.
    if (horizon / window < 10.0)
        throw UsageError("renewal: horizon/window = " + std::to_string(horizon / window)
                         + " gives fewer than 10 counting windows");
    const double bin = tau / 5.0;
    if (r.psd_points > 0 && (r.segments < 20 || horizon / r.segments < 10.0 * bin))
        throw UsageError("renewal: PSD needs >= 20 segments, each at least 2 tau long");

    const EventTrain tr = r.poisson ? generate_event_train(ExponentialSampler(1.0 / tau), horizon, r.seed)
                                    : generate_event_train(WaitingTimeLaw(c), horizon, r.seed);
    const CountStatistics st = fano_factor(tr, window);
    const double target = r.poisson ? 1.0 : pump_noise_ratio(c);
    const double tol = std::max(3.0 * st.std_err, 0.02);
    const bool pass = std::abs(st.fano - target) <= tol;

    json stats{{"process", r.poisson ? "poisson" : "renewal"},
               {"a", c.a()},
               {"gamma", c.gamma()},
               {"rabi", c.rabi()},
               {"tau", tau},
               {"horizon", horizon},
               {"events", tr.size()},
               {"rate", static_cast<double>(tr.size()) / horizon},
               {"rate_target", 1.0 / tau},
               {"window", window},
               {"windows", st.windows},
               {"fano", st.fano},
               {"std_err", st.std_err},
               {"target", target},
               {"abs_deviation", std::abs(st.fano - target)},
               {"z_score", (st.fano - target) / st.std_err},
               {"tolerance", tol},
               {"pass", pass}};

    out.prepare();
    save_event_train(out.path("events.csv"), tr);
    if (r.psd_points > 0) {
        const double lo = 2.0 * pi * r.segments / horizon;
        const double hi = 0.5 * pi / bin;
        std::vector<double> grid;
        for (int k = 0; k < r.psd_points; ++k)
            grid.push_back(lo * std::pow(hi / lo, r.psd_points == 1 ? 0.0 : k / (r.psd_points - 1.0)));
        const auto est = psd_estimate(tr, grid, bin, static_cast<std::size_t>(r.segments));
        const RenewalSpectrum spec(c);
        std::ofstream os(out.path("psd.csv"));
        os << "omega,density,std_err,model\n";
        for (const auto& p : est) {
            const double model = r.poisson ? 1.0 / tau
                                           : spec.rate() * (1.0 + 2.0 * laplace_G_regular({0.0, p.omega}, spec).real());
            os << format_double(p.omega) << ',' << format_double(p.density) << ',' << format_double(p.std_err)
               << ',' << format_double(model) << '\n';
        }
    }
    out.write_json("stats.json", stats);
    out.manifest("renewal", cfg, r.seed);
    report(stats);
    return pass ? 0 : 1;
}

struct LoopArgs
{
    bool min_noise = false, freeze = false;
    double a = 0.25, mu = 100.0, tau_p = 1.0, horizon = 0.0, horizon_tau_p = 1e5, window_tau_p = 100.0;
    double stride_tau_p = 1.0, warmup_tau_p = 20.0;
    std::uint64_t seed = 1;
};

int run_loop(const LoopArgs& l, Output& out, const json& cfg)
{
    const double a = l.min_noise ? 0.25 : l.a;
    if (!(a > 0 && l.mu > 0 && l.tau_p > 0)) throw UsageError("loop: --a, --mu and --tau-p must be positive");
    const OperatingPoint op = operating_point_for_a(a, l.mu, l.tau_p);
    const double horizon = l.horizon > 0 ? l.horizon : l.horizon_tau_p * l.tau_p;
    const double window = l.window_tau_p * l.tau_p;
    if (!(window > 0) || horizon / window < 10.0)
        throw UsageError("loop: horizon/window gives fewer than 10 counting windows");

    LoopOptions opt;
    opt.warmup = l.warmup_tau_p * l.tau_p;
    opt.freeze_feedback = l.freeze;
    opt.record_emissions = true;
    opt.trajectory_stride = l.stride_tau_p * l.tau_p;
    const LoopResult res = simulate_loop(op, horizon, l.seed, opt);
    const CountStatistics st = fano_factor(res.detections, window);

    const double expected = op.J * horizon;
    const double count_sigma = std::sqrt(std::max(detected_noise_ratio(a), 1.0) * expected);
    const bool rate_ok = std::abs(static_cast<double>(res.detections.size()) - expected) <= 3.0 * count_sigma;
    const bool mu_ok = std::abs(res.mean_mu / op.mu - 1.0) <= 0.05;
    const bool sub_poissonian = st.fano < 1.0;
    const double target = detected_noise_ratio(a);
    const bool pass = rate_ok && mu_ok && (l.freeze || target >= 1.0 || sub_poissonian);

    json stats{{"operating_point",
                {{"J", op.J}, {"tau_p", op.tau_p}, {"volume", op.volume}, {"mu", op.mu},
                 {"rabi_sq", op.rabi_sq}, {"gamma", op.gamma}, {"a", op.a}}},
               {"feedback_frozen", l.freeze},
               {"horizon", horizon},
               {"detections", res.detections.size()},
               {"detection_rate", res.detection_rate},
               {"emission_rate", res.emission_rate},
               {"mean_mu", res.mean_mu},
               {"window", window},
               {"windows", st.windows},
               {"fano", st.fano},
               {"std_err", st.std_err},
               {"target", target},
               {"relative_deviation", st.fano / target - 1.0},
               {"z_below_shot_noise", (1.0 - st.fano) / st.std_err},
               {"sub_poissonian", sub_poissonian},
               {"rate_balance_ok", rate_ok},
               {"mean_mu_ok", mu_ok},
               {"pass", pass}};
    if (l.freeze) {
        const CountStatistics se = fano_factor(res.emissions, window);
        stats["emission_fano"] = se.fano;
        stats["emission_std_err"] = se.std_err;
        stats["emission_target"] = pump_noise_ratio(a);
    }

    out.prepare();
    save_event_train(out.path("detections.csv"), res.detections);
    {
        std::ofstream os(out.path("trajectory.csv"));
        os << "t,mu_int\n";
        for (const auto& s : res.trajectory) os << format_double(s.t) << ',' << s.mu << '\n';
    }
    out.write_json("stats.json", stats);
    out.manifest("loop", cfg, l.seed);
    report(stats);
    return pass ? 0 : 1;
}

struct TdseArgs
{
    int grid_points = 2048;
    double frequency = 1.42e9, rabi_ratio = 1e-3, detuning = 1.0, dt = 0.0, periods = 1.0;
    int record_every = 40;
};

int run_tdse(const TdseArgs& t, Output& out, const json& cfg)
{
    if (t.grid_points < 3) throw UsageError("tdse: --grid-points must be at least 3");
    if (!(t.frequency > 0 && t.rabi_ratio > 0 && t.detuning > 0 && t.periods > 0))
        throw UsageError("tdse: frequency, rabi-ratio, detuning and periods must be positive");
    const BoxGeometry g = box_width_for_frequency(2.0 * pi * t.frequency);
    const SpatialGrid grid(static_cast<std::size_t>(t.grid_points), g);
    const TdseSolver solver(grid);
    const double omega = solver.transition_frequency();
    const double drive = t.detuning * omega;
    const double rabi = t.rabi_ratio * omega;
    const double v = potential_for_rabi_frequency(rabi, g);
    const double dt = t.dt > 0 ? t.dt : 2.0 * pi / drive / 400.0;
    if (dt > 0.01 * 2.0 * pi / drive) throw UsageError("tdse: --dt exceeds 1% of the drive period");

    const auto tr = solver.evolve(solver.stationary_state(Level::lower), v, drive, t.periods * 2.0 * pi / rabi, dt,
                                  static_cast<std::size_t>(std::max(t.record_every, 1)));
    const auto current = induced_current(tr, g);
    double max_leak = 0.0, max_p2 = 0.0;
    for (const auto& s : tr.samples) {
        max_leak = std::max(max_leak, std::abs(s.leakage));
        max_p2 = std::max(max_p2, std::norm(s.c2));
    }
    const double x12_err = std::abs(numeric_dipole(grid, solver.eigenstates()) / dipole_element(g) - 1.0);
    const bool resonant = t.detuning == 1.0;

    json stats{{"grid_points", t.grid_points},
               {"box_width", g.width()},
               {"omega", omega},
               {"drive_omega", drive},
               {"rabi", rabi},
               {"potential_v", v},
               {"dt", dt},
               {"steps", static_cast<std::uint64_t>(std::llround(t.periods * 2.0 * pi / rabi / dt))},
               {"max_norm_drift", tr.max_norm_drift},
               {"max_leakage", max_leak},
               {"max_upper_population", max_p2},
               {"x12_relative_error", x12_err}};
    bool pass = x12_err <= 1e-5;
    if (resonant) {
        const double residual = rabi_residual(tr, rabi);
        const double fitted = fit_rabi_frequency(tr, rabi);
        const double fit_err = std::abs(fitted / rabi_frequency_from_potential(v, g) - 1.0);
        stats["rwa_residual"] = residual;
        stats["fitted_rabi"] = fitted;
        stats["fitted_rabi_relative_error"] = fit_err;
        pass = pass && residual <= 0.02 && fit_err <= 0.005 && max_leak < 1e-3;
    } else {
        pass = pass && max_p2 < 0.05;
    }
    stats["pass"] = pass;

    out.prepare();
    {
        std::ofstream os(out.path("trajectory.csv"));
        os << "t,re_c1,im_c1,re_c2,im_c2,mean_x,current\n";
        for (std::size_t k = 0; k < tr.samples.size(); ++k) {
            const auto& s = tr.samples[k];
            os << format_double(s.t) << ',' << format_double(s.c1.real()) << ',' << format_double(s.c1.imag())
               << ',' << format_double(s.c2.real()) << ',' << format_double(s.c2.imag()) << ','
               << format_double(s.mean_x) << ',' << format_double(current[k]) << '\n';
        }
    }
    out.write_json("stats.json", stats);
    out.manifest("tdse", cfg, std::nullopt);
    report(stats);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quietlaser: sub-Poissonian one-electron laser model"};
    app.set_version_flag("--version", QUIETLASER_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "quietlaser-out";

    auto* analytic = app.add_subcommand("analytic", "tabulate rate and noise ratios over an a-grid");
    auto* design = app.add_subcommand("design", "steady-state operating points or the minimum-noise design");
    auto* renewal = app.add_subcommand("renewal", "Monte Carlo of the decay renewal process");
    auto* loop = app.add_subcommand("loop", "closed-loop quantum-jump laser simulation");
    auto* tdse = app.add_subcommand("tdse", "grid Schroedinger check of the Rabi picture");

    std::map<CLI::App*, ConfigBinder> binders;
    for (auto* sub : {analytic, design, renewal, loop, tdse}) {
        sub->add_option("--config", config_path, "JSON config (or a manifest.json); flags win");
        sub->add_option("--out", out_dir, "output directory");
        binders.emplace(sub, ConfigBinder(sub));
    }

    std::vector<double> a_grid;
    binders.at(analytic).add("--a", a_grid, "values of a = 2 gamma^2 / Omega_R^2 (repeat or comma-separate)")
        ->delimiter(',');

    DesignArgs d;
    {
        auto& b = binders.at(design);
        b.add_flag("--min-noise", d.min_noise, "minimum-noise design (a = 1/4) for --mu, --tau-p");
        b.add("--mu", d.mu, "reduced resonator energy E / (hbar omega)");
        b.add("--tau-p", d.tau_p, "photon lifetime, s");
        b.add("--J", d.J, "injection rate, s^-1");
        b.add("--volume", d.volume, "capacitance volume, m^3");
        b.add("--frequency", d.frequency, "transition frequency, Hz");
    }

    RenewalArgs r;
    {
        auto& b = binders.at(renewal);
        b.add("--a", r.a, "a = 2 gamma^2 / Omega_R^2");
        b.add("--gamma", r.gamma, "decay rate gamma, s^-1");
        b.add("--rabi", r.rabi, "Rabi frequency Omega_R, s^-1 (instead of --a)");
        b.add("--horizon", r.horizon, "simulated time, s (overrides --horizon-tau)");
        b.add("--horizon-tau", r.horizon_tau, "simulated time in mean waiting times");
        b.add("--window", r.window, "counting window, s (overrides --window-tau)");
        b.add("--window-tau", r.window_tau, "counting window in mean waiting times");
        b.add("--seed", r.seed, "RNG seed");
        b.add_flag("--poisson", r.poisson, "exponential waiting times at the same rate (control)");
        b.add("--psd-points", r.psd_points, "also estimate the spectrum at this many frequencies");
        b.add("--segments", r.segments, "Bartlett segments for the spectrum");
    }

    LoopArgs l;
    {
        auto& b = binders.at(loop);
        b.add_flag("--min-noise", l.min_noise, "use a = 1/4");
        b.add_flag("--freeze", l.freeze, "pin Omega_R to its mean-field value (open loop)");
        b.add("--a", l.a, "a at the operating point");
        b.add("--mu", l.mu, "mean photon number");
        b.add("--tau-p", l.tau_p, "photon lifetime, s");
        b.add("--horizon", l.horizon, "recorded time, s (overrides --horizon-tau-p)");
        b.add("--horizon-tau-p", l.horizon_tau_p, "recorded time in photon lifetimes");
        b.add("--window-tau-p", l.window_tau_p, "counting window in photon lifetimes");
        b.add("--stride-tau-p", l.stride_tau_p, "trajectory sampling stride in photon lifetimes");
        b.add("--warmup-tau-p", l.warmup_tau_p, "discarded warm-up in photon lifetimes");
        b.add("--seed", l.seed, "RNG seed");
    }

    TdseArgs t;
    {
        auto& b = binders.at(tdse);
        b.add("--grid-points", t.grid_points, "interior grid points");
        b.add("--dt", t.dt, "time step, s (default: drive period / 400)");
        b.add("--frequency", t.frequency, "transition frequency, Hz (sets the box width)");
        b.add("--rabi-ratio", t.rabi_ratio, "Omega_R / omega");
        b.add("--detuning", t.detuning, "drive frequency as a multiple of the transition frequency");
        b.add("--periods", t.periods, "run length in Rabi periods");
        b.add("--record-every", t.record_every, "steps between recorded samples");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        ConfigBinder& binder = binders.at(sub);
        if (!config_path.empty()) {
            const json cfg = load_config(config_path);
            binder.apply(cfg);
            if (cfg.contains("out") && sub->get_option("--out")->count() == 0) out_dir = cfg["out"].get<std::string>();
        }
        json resolved = binder.resolved();
        resolved["out"] = out_dir;
        Output out(out_dir);

        if (sub == analytic) return run_analytic(a_grid, out, resolved);
        if (sub == design) return run_design(d, out, resolved);
        if (sub == renewal) return run_renewal(r, out, resolved);
        if (sub == loop) return run_loop(l, out, resolved);
        return run_tdse(t, out, resolved);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return 1;
    }
}
