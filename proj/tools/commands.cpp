#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <thread>

#include "fddestab/boundary.hpp"
#include "fddestab/char_roots.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/fdde_sim.hpp"
#include "fddestab/scaling.hpp"

namespace fddestab::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kTool = "fdde-stab";

// Holds either the --out file or the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw Error(ErrorKind::InvalidInput, "cannot write output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& os() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string provenance(const std::string& command, const std::vector<std::string>& flags) {
    std::string line = fmt::format("# {} {} {}", kTool, FDDESTAB_VERSION, command);
    for (const auto& f : flags) line += " " + f;
    return line;
}

json number_or_overflow(double x) {
    if (std::isfinite(x)) return x;
    return "overflow";
}

json delay_json(const CriticalDelay& d) {
    return json{{"tau", d.tau}, {"branch", std::string(to_string(d.branch))}, {"v", d.v}};
}

void require_finite(std::initializer_list<double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "numeric arguments must be finite");
}

struct ClassifyArgs {
    double alpha = 0, a = 0, b = 0;
    std::optional<double> tau;
};

int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
    require_finite({args.alpha, args.a, args.b});
    const RegionClassifier classifier(args.alpha);
    const auto verdict = classifier.classify(args.a, args.b);

    json j;
    j["command"] = "classify";
    j["version"] = FDDESTAB_VERSION;
    j["alpha"] = args.alpha;
    j["a"] = args.a;
    j["b"] = args.b;
    j["region"] = std::string(to_string(verdict.region));
    j["region_code"] = static_cast<int>(verdict.region);
    j["t1_slope"] = classifier.m1();
    j["critical_delays"] = json::array();
    for (const auto& d : verdict.critical_delays) j["critical_delays"].push_back(delay_json(d));
    if (verdict.region == Region::SSR) {
        j["tau_star"] = verdict.critical_delays[0].tau;
        j["branch"] = std::string(to_string(verdict.critical_delays[0].branch));
    } else if (verdict.region == Region::SS) {
        j["tau1"] = verdict.critical_delays[0].tau;
        j["tau2"] = verdict.critical_delays[1].tau;
    }
    j["extra_crossings"] = json::array();
    for (const auto& d : verdict.extra_crossings) j["extra_crossings"].push_back(delay_json(d));
    if (!verdict.note.empty()) j["note"] = verdict.note;
    if (args.tau) {
        j["tau"] = *args.tau;
        j["stability"] = std::string(to_string(classifier.stability_at(args.a, args.b, *args.tau)));
    }
    out << j.dump(2) << "\n";
    return kExitOk;
}

struct BoundaryArgs {
    double alpha = 0;
    std::string branch;
    int n = 200;
    double b_cap = 50.0;
    std::string out;
    bool paper_eq11 = false;
};

int cmd_boundary(const BoundaryArgs& args, const std::vector<std::string>& flags, std::ostream& fallback) {
    require_finite({args.alpha, args.b_cap});
    const BranchId branch = parse_branch(args.branch);
    const auto points = sample_branch(args.alpha, branch, args.n, args.b_cap);
    Sink sink(args.out, fallback);
    auto& os = sink.os();
    os << provenance("boundary", flags) << "\n";
    os << "v,A,B\n";
    for (const auto& p : points) {
        const double B = args.paper_eq11 && p.v > 0.0 ? boundary_point_printed(args.alpha, p.v).B : p.B;
        os << format_double(p.v) << ',' << format_double(p.A) << ',' << format_double(B) << '\n';
    }
    return kExitOk;
}

struct DiagramArgs {
    double alpha = 0;
    double a_min = -10, a_max = 10, b_min = -10, b_max = 10;
    int n_a = 100, n_b = 100;
    unsigned threads = 0;
    std::string out;
};

int cmd_diagram(const DiagramArgs& args, const std::vector<std::string>& flags, std::ostream& fallback) {
    const auto grid =
        compute_diagram(args.alpha, args.a_min, args.a_max, args.b_min, args.b_max, args.n_a, args.n_b, args.threads);
    Sink sink(args.out, fallback);
    auto& os = sink.os();
    os << provenance("diagram", flags) << "\n";
    os << "a,b,code\n";
    for (int j = 0; j < grid.n_b; ++j)
        for (int i = 0; i < grid.n_a; ++i)
            os << format_double(grid.a_at(i)) << ',' << format_double(grid.b_at(j)) << ','
               << static_cast<int>(grid.at(i, j)) << '\n';
    return kExitOk;
}

struct SimulateArgs {
    double alpha = 0, a = 0, b = 0, tau = 0;
    double x0 = 1.0;
    int steps_per_delay = 50;
    double h = 0.01;
    std::optional<double> T;
    double settle_fraction = 0.2;
    std::string oracle = "none";
    std::string out;
};

int cmd_simulate(const SimulateArgs& args, const std::vector<std::string>& flags, std::ostream& fallback) {
    require_finite({args.alpha, args.a, args.b, args.tau, args.x0, args.h});
    const ModelParams params{args.alpha, args.a, args.b, args.tau};
    params.validate();
    const double T = args.T.value_or(std::max(15.0, 12.0 * args.tau));
    const SimConfig config = args.tau > 0.0 ? SimConfig::aligned(params, args.x0, args.steps_per_delay, T)
                                            : SimConfig::with_step(params, args.x0, args.h, T);
    const bool with_ml = args.oracle == "ml";
    if (with_ml) {
        if (args.b != 0.0 && args.tau != 0.0)
            throw Error(ErrorKind::InvalidInput, "the Mittag-Leffler oracle applies to the delay-free case (b = 0)");
        if (std::abs(args.a) * std::pow(T, args.alpha) > 50.0)
            throw Error(ErrorKind::DomainExceeded, "|a| T^alpha exceeds the Mittag-Leffler domain");
    }

    auto traj = integrate(config);
    if (!traj.overflow_truncated) {
        const auto v = classify_trajectory(traj, args.settle_fraction);
        traj.classification = v.classification;
        traj.envelope_ratio = v.ratio;
    }

    Sink sink(args.out, fallback);
    auto& os = sink.os();
    os << provenance("simulate", flags) << "\n";
    os << (with_ml ? "t,x,ml\n" : "t,x\n");
    for (std::size_t i = 0; i < traj.values.size(); ++i) {
        os << format_double(traj.times[i]) << ',' << format_double(traj.values[i]);
        if (with_ml) {
            const double t = traj.times[i];
            os << ',' << format_double(args.x0 * mittag_leffler(args.alpha, args.a * std::pow(t, args.alpha)));
        }
        os << '\n';
    }
    json summary;
    summary["classification"] = std::string(to_string(traj.classification));
    summary["envelope_ratio"] = number_or_overflow(traj.envelope_ratio);
    summary["overflow"] = traj.overflow_truncated;
    summary["steps"] = traj.values.size() - 1;
    summary["h"] = config.h;
    summary["T"] = T;
    summary["short_horizon"] = config.short_horizon();
    os << summary.dump() << "\n";
    return traj.overflow_truncated ? kExitOverflow : kExitOk;
}

struct RootsArgs {
    double alpha = 0, a = 0, b = 0, tau = 0;
    ScanWindow window;
};

int cmd_roots(const RootsArgs& args, std::ostream& out) {
    require_finite({args.alpha, args.a, args.b, args.tau, args.window.v_max, args.window.re_min, args.window.re_max});
    if (!(args.tau > 0.0)) throw Error(ErrorKind::InvalidInput, "roots needs tau > 0");
    const auto scaled = scale({args.alpha, args.a, args.b, args.tau});
    const auto roots = rightmost_root_scan(args.alpha, scaled.A, scaled.B, args.window);
    json arr = json::array();
    for (const auto& r : roots) arr.push_back(json{{"re", r.beta.real()}, {"im", r.beta.imag()}, {"residual", r.residual}});
    out << arr.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

DiagramGrid compute_diagram(double alpha, double a_min, double a_max, double b_min, double b_max, int n_a, int n_b,
                            unsigned threads) {
    require_finite({alpha, a_min, a_max, b_min, b_max});
    if (!(a_min < a_max) || !(b_min < b_max)) throw Error(ErrorKind::InvalidInput, "ranges must satisfy min < max");
    if (n_a < 2 || n_b < 2) throw Error(ErrorKind::InvalidInput, "diagram resolution must be at least 2 x 2");

    DiagramGrid grid{a_min, a_max, b_min, b_max, n_a, n_b, {}};
    grid.codes.assign(static_cast<std::size_t>(n_a) * n_b, static_cast<std::uint8_t>(Region::Marginal));
    const RegionClassifier classifier(alpha);

    auto fill_rows = [&](int j_begin, int j_end) {
        for (int j = j_begin; j < j_end; ++j)
            for (int i = 0; i < n_a; ++i) {
                Region r = Region::Marginal;
                try {
                    r = classifier.region_of(grid.a_at(i), grid.b_at(j));
                } catch (const Error&) {
                    // (0, 0) stays marginal
                }
                grid.codes[static_cast<std::size_t>(j) * n_a + i] = static_cast<std::uint8_t>(r);
            }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_b));
    std::vector<std::jthread> workers;
    const int chunk = (n_b + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int j = 0; j < n_b; j += chunk) workers.emplace_back(fill_rows, j, std::min(n_b, j + chunk));
    workers.clear();
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stability analysis of D^alpha x = a x(t) + b x(t - tau) - b x(t - 2 tau)", kTool};
    app.require_subcommand(1);
    app.set_version_flag("--version", FDDESTAB_VERSION);

    ClassifyArgs ca;
    double classify_tau = 0.0;
    auto* classify = app.add_subcommand("classify", "Region, critical delays and (with --tau) the pointwise verdict");
    classify->add_option("--alpha", ca.alpha, "fractional order in (0, 1]")->required();
    classify->add_option("--a", ca.a, "instantaneous coefficient")->required();
    classify->add_option("--b", ca.b, "delayed coefficient")->required();
    auto* tau_opt = classify->add_option("--tau", classify_tau, "delay for the pointwise verdict");

    BoundaryArgs ba;
    auto* boundary = app.add_subcommand("boundary", "Sample a stability-boundary branch as CSV v,A,B");
    boundary->add_option("--alpha", ba.alpha)->required();
    boundary->add_option("--branch", ba.branch, "gamma1 | gamma2 | gamma3")->required();
    boundary->add_option("--n", ba.n, "number of samples")->check(CLI::Range(2, 10000000));
    boundary->add_option("--b-cap", ba.b_cap, "truncate where |B| exceeds this");
    boundary->add_option("--out", ba.out, "output path (default stdout)");
    boundary->add_flag("--paper-eq11", ba.paper_eq11, "emit B with the extra (cos 2v - cos v) factor as printed");

    DiagramArgs da;
    auto* diagram = app.add_subcommand("diagram", "Region codes over an (a, b) grid as CSV a,b,code");
    diagram->add_option("--alpha", da.alpha)->required();
    diagram->add_option("--a-min", da.a_min);
    diagram->add_option("--a-max", da.a_max);
    diagram->add_option("--b-min", da.b_min);
    diagram->add_option("--b-max", da.b_max);
    diagram->add_option("--na", da.n_a, "grid points along a");
    diagram->add_option("--nb", da.n_b, "grid points along b");
    diagram->add_option("--threads", da.threads, "worker threads (0 = hardware)");
    diagram->add_option("--out", da.out);

    SimulateArgs sa;
    double sim_T = 0.0;
    auto* simulate = app.add_subcommand("simulate", "Integrate the equation and classify the trajectory");
    simulate->set_help_flag("--help", "Print this help message and exit");  // frees -h / --h for the step
    simulate->add_option("--alpha", sa.alpha)->required();
    simulate->add_option("--a", sa.a)->required();
    simulate->add_option("--b", sa.b)->required();
    simulate->add_option("--tau", sa.tau)->required();
    simulate->add_option("--x0", sa.x0, "constant history level");
    simulate->add_option("--steps-per-delay", sa.steps_per_delay, "k with h = tau / k");
    simulate->add_option("--h", sa.h, "step when tau = 0");
    auto* T_opt = simulate->add_option("--T", sim_T, "horizon (default max(15, 12 tau))");
    simulate->add_option("--settle-fraction", sa.settle_fraction, "tail window for classification");
    simulate->add_option("--oracle", sa.oracle, "none | ml")->check(CLI::IsMember({"none", "ml"}));
    simulate->add_option("--out", sa.out);

    RootsArgs ra;
    auto* roots = app.add_subcommand("roots", "Characteristic roots as JSON, sorted by decreasing real part");
    roots->add_option("--alpha", ra.alpha)->required();
    roots->add_option("--a", ra.a)->required();
    roots->add_option("--b", ra.b)->required();
    roots->add_option("--tau", ra.tau)->required();
    roots->add_option("--v-max", ra.window.v_max, "imaginary extent of the seed grid");
    roots->add_option("--re-min", ra.window.re_min);
    roots->add_option("--re-max", ra.window.re_max);
    roots->add_option("--seed-spacing", ra.window.seed_spacing);
    roots->add_option("--dedup-radius", ra.window.dedup_radius);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << FDDESTAB_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    const std::vector<std::string> flags(args.begin() + 1, args.end());
    try {
        if (*classify) {
            if (*tau_opt) ca.tau = classify_tau;
            return cmd_classify(ca, out);
        }
        if (*boundary) return cmd_boundary(ba, flags, out);
        if (*diagram) return cmd_diagram(da, flags, out);
        if (*simulate) {
            if (*T_opt) sa.T = sim_T;
            return cmd_simulate(sa, flags, out);
        }
        if (*roots) return cmd_roots(ra, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace fddestab::cli
