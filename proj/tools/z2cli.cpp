// Command-line front end: every library operation as a subcommand with
// CSV/JSON output. Warnings go to stderr; data goes to --output or stdout.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <z2cubed/branches.hpp>
#include <z2cubed/cubic.hpp>
#include <z2cubed/group.hpp>
#include <z2cubed/network.hpp>
#include <z2cubed/phase.hpp>
#include <z2cubed/tangent.hpp>

using nlohmann::json;
using namespace z2cubed;

namespace {

struct OutputSink {
    std::string path; // empty: stdout
    std::string format = "json";

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream os(path);
        if (!os) throw CLI::RuntimeError("cannot open output file: " + path, 1);
        os << text;
    }
    void emit(const json& report, const std::string& csv) const {
        write(format == "csv" ? csv : report.dump(2));
    }
};

void add_output_flags(CLI::App* cmd, OutputSink& sink) {
    cmd->add_option("--format", sink.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    std::string env_default;
    if (const char* dir = std::getenv("Z2CLI_OUTPUT_DIR")) env_default = dir;
    cmd->add_option("--output,-o", sink.path,
                    "output file (default stdout; relative to $Z2CLI_OUTPUT_DIR if set)")
        ->transform([env_default](std::string p) {
            if (!env_default.empty() && !p.empty() && p.front() != '/')
                return env_default + "/" + p;
            return p;
        });
}

Vec3 parse_point(const std::string& s) {
    Vec3 p{};
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> p[0] >> c1 >> p[1] >> c2 >> p[2]) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("--point", "expected x,y,z");
    return p;
}

// "A,B,C,D,E,F,G,H,I;alpha,beta,gamma"
CubicProblem parse_coeffs(const std::string& s) {
    std::array<double, 12> v{};
    std::string t = s;
    for (auto& ch : t)
        if (ch == ';' || ch == ',') ch = ' ';
    std::istringstream is(t);
    for (auto& x : v)
        if (!(is >> x))
            throw CLI::ValidationError("--coeffs",
                                       "expected A,B,C,D,E,F,G,H,I;alpha,beta,gamma");
    CubicProblem k;
    k.A = v[0]; k.B = v[1]; k.C = v[2]; k.D = v[3]; k.E = v[4]; k.F = v[5];
    k.G = v[6]; k.H = v[7]; k.I = v[8]; k.alpha = v[9]; k.beta = v[10]; k.gamma = v[11];
    return k;
}

json config_header(std::initializer_list<std::pair<std::string, json>> kv) {
    json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

std::string csv_header_comment(const json& cfg) {
    std::string s;
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        s += "# " + it.key() + " = " + it.value().dump() + "\n";
    return s;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// ---------------------------------------------------------------------------

int run_group_orbit(const Vec3& p, const OutputSink& sink) {
    auto pts = orbit(p);
    auto iso = isotropy(p);
    json rep;
    rep["config"] = config_header({{"command", "group orbit"}, {"point", {p[0], p[1], p[2]}}});
    rep["orbit_size"] = pts.size();
    rep["isotropy_order"] = iso.size();
    rep["orbit_stabilizer_product"] = pts.size() * iso.size();
    for (const auto& q : pts) rep["orbit"].push_back({q[0], q[1], q[2]});
    for (const auto& g : iso)
        rep["isotropy"].push_back({{"kappa", g.kappa}, {"zeta", g.zeta}, {"xi", g.xi}});
    std::string csv = csv_header_comment(rep["config"]) + "x,y,z\n";
    for (const auto& q : pts)
        csv += fmt(q[0]) + "," + fmt(q[1]) + "," + fmt(q[2]) + "\n";
    sink.emit(rep, csv);
    return 0;
}

int run_group_verify_table(int samples, unsigned seed, const OutputSink& sink) {
    auto rows = verify_isotropy_table(samples, seed);
    json rep;
    rep["config"] = config_header(
        {{"command", "group verify-table"}, {"samples", samples}, {"seed", seed}});
    bool all = true;
    std::string csv = csv_header_comment(rep["config"]) +
                      "name,dimension,pattern_invariant,dimension_ok,printed_generators_ok,note\n";
    for (const auto& r : rows) {
        bool pass = r.pattern_invariant && r.dimension_ok;
        all = all && pass;
        json jr{{"name", r.name},
                {"dimension", r.dimension},
                {"pattern_invariant", r.pattern_invariant},
                {"dimension_ok", r.dimension_ok},
                {"printed_generators_ok", r.printed_generators_ok},
                {"pass", pass},
                {"note", r.note}};
        for (const auto& [w, sh] : r.computed_generators)
            jr["computed_stabilizer"].push_back({{"word", w}, {"shift", sh}});
        rep["rows"].push_back(jr);
        csv += r.name + "," + std::to_string(r.dimension) + "," +
               (r.pattern_invariant ? "1" : "0") + "," + (r.dimension_ok ? "1" : "0") + "," +
               (r.printed_generators_ok ? "1" : "0") + ",\"" + r.note + "\"\n";
        if (!r.printed_generators_ok)
            std::cerr << "warning: " << r.name << ": " << r.note << "\n";
    }
    rep["all_rows_pass"] = all;
    sink.emit(rep, csv);
    return all ? 0 : 1;
}

int run_normal_form(const CubicProblem& k, bool exact, const OutputSink& sink) {
    auto nd = check_nondegeneracy(k);
    json rep;
    rep["config"] = config_header({{"command", "normal-form"},
                                   {"tolerance", nd.tolerance},
                                   {"exact_rank", exact},
                                   {"coefficients", to_json(k)}});
    for (const auto& c : nd.conditions)
        rep["nondegeneracy"].push_back({{"condition", c.name}, {"margin", c.margin}, {"pass", c.pass}});
    if (!nd.pass()) {
        std::string msg;
        for (const auto& n : nd.failing()) msg += (msg.empty() ? "" : "; ") + ("condition " + n + " failed");
        rep["error"] = msg;
        sink.emit(rep, csv_header_comment(rep["config"]) + "error\n\"" + msg + "\"\n");
        std::cerr << msg << "\n";
        return 2;
    }
    auto res = reduce_to_normal_form(k);
    auto cert = rank_certificate(k, exact);
    rep["normal_form"] = to_json(res.nf);
    rep["scaling"] = {{"a", res.scaling.a}, {"b", res.scaling.b}, {"c", res.scaling.c},
                      {"d", res.scaling.d}, {"e", res.scaling.e}, {"f", res.scaling.f},
                      {"sigma", res.scaling.sigma}};
    rep["rank_certificate"] = {{"rank", cert.rank},
                               {"numeric_rank", cert.numeric},
                               {"columns", cert.column_count},
                               {"failing_conditions", cert.failing_conditions}};
    auto modal = check_modal_nondegeneracy(res.nf);
    for (const auto& c : modal.conditions)
        rep["modal_nondegeneracy"].push_back({{"condition", c.name}, {"margin", c.margin}, {"pass", c.pass}});
    std::string csv = csv_header_comment(rep["config"]) +
                      "m1,m2,m3,n1,n2,n3,eps1,eps2,eps3,eps4,eps5,eps6,rank\n" +
                      fmt(res.nf.m1) + "," + fmt(res.nf.m2) + "," + fmt(res.nf.m3) + "," +
                      fmt(res.nf.n1) + "," + fmt(res.nf.n2) + "," + fmt(res.nf.n3);
    for (int e : res.nf.eps) csv += "," + std::to_string(e);
    csv += "," + std::to_string(cert.rank) + "\n";
    sink.emit(rep, csv);
    return 0;
}

int run_branches(const NormalForm& nf, double lo, double hi, int n,
                 const std::string& convention, const OutputSink& sink) {
    if (n < 1) throw CLI::ValidationError("--count", "grid must be nonempty");
    std::vector<double> grid;
    for (int i = 0; i < n; ++i)
        grid.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    auto conv = convention == "standard" ? StabilityConvention::NegativeRealParts
                                         : StabilityConvention::PositiveRealParts;
    auto rows = sweep_bifurcation(nf, grid, conv);
    json rep;
    rep["config"] = config_header({{"command", "branches"},
                                   {"normal_form", to_json(nf)},
                                   {"lambda_min", lo}, {"lambda_max", hi}, {"count", n},
                                   {"stability_convention", convention}});
    std::string csv = csv_header_comment(rep["config"]) +
                      "lambda,mode,x,y,z,eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im,stable,orbit_size,degenerate\n";
    for (const auto& r : rows) {
        json jr{{"lambda", r.lambda}, {"mode", mode_name(r.mode)},
                {"point", {r.point[0], r.point[1], r.point[2]}},
                {"stable", r.eigen.stable}, {"orbit_size", r.orbit_size},
                {"degenerate", r.degenerate}};
        for (const auto& ev : r.eigen.values)
            jr["eigenvalues"].push_back({{"re", ev.real()}, {"im", ev.imag()}});
        rep["rows"].push_back(jr);
        csv += fmt(r.lambda) + "," + mode_name(r.mode) + "," + fmt(r.point[0]) + "," +
               fmt(r.point[1]) + "," + fmt(r.point[2]);
        for (const auto& ev : r.eigen.values)
            csv += "," + fmt(ev.real()) + "," + fmt(ev.imag());
        csv += std::string(",") + (r.eigen.stable ? "1" : "0") + "," +
               std::to_string(r.orbit_size) + "," + (r.degenerate ? "1" : "0") + "\n";
    }
    sink.emit(rep, csv);
    return 0;
}

void warn_region(const PhaseParams& p) {
    if (!p.in_assumed_region())
        std::cerr << "warning: parameters violate the assumed region |eps|<u/2, |eps+2q|<u/2\n";
}

json classification_json(const CycleClassification& c) {
    json j{{"verdict", verdict_name(c.verdict)},
           {"rho", c.rho},
           {"rho_factors", {c.rho_factors[0], c.rho_factors[1], c.rho_factors[2]}},
           {"rho_paper", c.rho_paper},
           {"assumed_region", c.assumed_region}};
    for (const auto& n : c.nodes)
        j["nodes"].push_back({{"label", n.label}, {"contracting", n.contracting},
                              {"expanding", n.expanding}, {"transverse", n.transverse},
                              {"rho", n.rho}});
    return j;
}

int run_phase_classify(const PhaseParams& p, const OutputSink& sink) {
    warn_region(p);
    auto c = classify_cycle(p);
    json rep;
    rep["config"] = config_header({{"command", "phase classify"},
                                   {"u", p.u}, {"eps", p.eps}, {"q", p.q}});
    rep["classification"] = classification_json(c);
    std::string csv = csv_header_comment(rep["config"]) +
                      "u,eps,q,verdict,rho,rho1,rho2,rho3,paper_rho\n" +
                      fmt(p.u) + "," + fmt(p.eps) + "," + fmt(p.q) + "," +
                      verdict_name(c.verdict) + "," + fmt(c.rho) + "," +
                      fmt(c.rho_factors[0]) + "," + fmt(c.rho_factors[1]) + "," +
                      fmt(c.rho_factors[2]) + "," + fmt(c.rho_paper) + "\n";
    sink.emit(rep, csv);
    return 0;
}

int run_phase_simulate(const PhaseParams& p, const Vec3& start, double t_end, double step,
                       const OutputSink& sink) {
    warn_region(p);
    auto traj = integrate_phase({start[0], start[1], start[2]}, p, t_end, step);
    json rep;
    rep["config"] = config_header({{"command", "phase simulate"},
                                   {"u", p.u}, {"eps", p.eps}, {"q", p.q},
                                   {"start", {start[0], start[1], start[2]}},
                                   {"t_end", t_end}, {"step", step}});
    std::string csv = csv_header_comment(rep["config"]) + "t,theta1,theta2,theta3\n";
    for (size_t i = 0; i < traj.t.size(); ++i) {
        rep["trajectory"].push_back(
            {traj.t[i], traj.x[i].t1, traj.x[i].t2, traj.x[i].t3});
        csv += fmt(traj.t[i]) + "," + fmt(traj.x[i].t1) + "," + fmt(traj.x[i].t2) + "," +
               fmt(traj.x[i].t3) + "\n";
    }
    sink.emit(rep, csv);
    return 0;
}

int run_phase_sweep(double u, int nq, int neps, const OutputSink& sink) {
    json rep;
    rep["config"] = config_header({{"command", "phase sweep"}, {"u", u},
                                   {"q_points", nq}, {"eps_points", neps},
                                   {"region", "|eps|<u/2 and |eps+2q|<u/2"}});
    std::string csv = csv_header_comment(rep["config"]) +
                      "u,eps,q,verdict,rho,rho1,rho2,rho3,paper_rho\n";
    for (int iq = 0; iq < nq; ++iq)
        for (int ie = 0; ie < neps; ++ie) {
            // open grid strictly inside the assumed region
            double eps = -u / 2 + u * (ie + 1) / (neps + 1);
            double q = (-u / 2 + u * (iq + 1) / (nq + 1) - eps) / 2;
            PhaseParams p{u, eps, q};
            auto c = classify_cycle(p);
            rep["rows"].push_back({{"u", u}, {"eps", eps}, {"q", q},
                                   {"verdict", verdict_name(c.verdict)},
                                   {"rho", c.rho}, {"rho_paper", c.rho_paper}});
            csv += fmt(u) + "," + fmt(eps) + "," + fmt(q) + "," + verdict_name(c.verdict) +
                   "," + fmt(c.rho) + "," + fmt(c.rho_factors[0]) + "," +
                   fmt(c.rho_factors[1]) + "," + fmt(c.rho_factors[2]) + "," +
                   fmt(c.rho_paper) + "\n";
        }
    sink.emit(rep, csv);
    return 0;
}

int run_phase_dwell(const PhaseParams& p, double t_max, double step, double radius,
                    int runs, unsigned seed, const OutputSink& sink) {
    warn_region(p);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(1e-3, 0.05);
    json rep;
    rep["config"] = config_header({{"command", "phase dwell"},
                                   {"u", p.u}, {"eps", p.eps}, {"q", p.q},
                                   {"t_max", t_max}, {"step", step}, {"radius", radius},
                                   {"runs", runs}, {"seed", seed},
                                   {"start", "near (pi,0,0)"}});
    std::string csv = csv_header_comment(rep["config"]) +
                      "run,visit,saddle,t_enter,t_exit,dwell\n";
    int increasing = 0;
    for (int r = 0; r < runs; ++r) {
        PhaseState s{pi + uni(rng), uni(rng), uni(rng)};
        auto a = measure_dwell_times_streaming(p, s, t_max, step, radius, 6);
        json jr{{"run", r},
                {"longest_increasing_run", a.longest_increasing_run},
                {"growth_ratio", a.growth_ratio},
                {"inconclusive", a.inconclusive},
                {"escaped", a.escaped}};
        for (size_t i = 0; i < a.visits.size(); ++i) {
            const auto& v = a.visits[i];
            jr["visits"].push_back({{"saddle", v.saddle}, {"t_enter", v.t_enter},
                                    {"t_exit", v.t_exit}, {"dwell", v.dwell()}});
            csv += std::to_string(r) + "," + std::to_string(i) + "," +
                   std::to_string(v.saddle) + "," + fmt(v.t_enter) + "," + fmt(v.t_exit) +
                   "," + fmt(v.dwell()) + "\n";
        }
        if (a.longest_increasing_run >= 4) ++increasing;
        rep["runs_detail"].push_back(jr);
    }
    rep["runs_with_increasing_dwells"] = increasing;
    sink.emit(rep, csv);
    return 0;
}

CellDynamics network_preset(const std::string& preset, double coupling) {
    if (preset == "linear")
        return {[](double x) { return -x; },
                [](double s, double t) { return t - s; },
                [](double s, double t) { return t - s; }, coupling};
    if (preset == "sinusoidal")
        return {[](double x) { return x - x * x * x; },
                [](double s, double t) { return std::sin(t - s); },
                [](double s, double t) { return 0.5 * std::sin(t - s); }, coupling};
    throw CLI::ValidationError("--preset", "unknown preset: " + preset +
                                               " (valid: linear, sinusoidal)");
}

int run_network_check(const std::string& mode, const std::string& preset, double coupling,
                      int samples, unsigned seed, const OutputSink& sink) {
    auto net = build_network(network_preset(preset, coupling),
                             mode == "paper-verbatim" ? NetworkMode::PaperVerbatim
                                                      : NetworkMode::GroupGenerated);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<State8> states(static_cast<size_t>(samples));
    for (auto& s : states)
        for (auto& v : s) v = uni(rng);
    double res = equivariance_residual_network(net, states);
    json rep;
    rep["config"] = config_header({{"command", "network check"}, {"mode", mode},
                                   {"preset", preset}, {"coupling", coupling},
                                   {"samples", samples}, {"seed", seed}});
    rep["equivariance_residual"] = res;
    sink.emit(rep, csv_header_comment(rep["config"]) + "equivariance_residual\n" + fmt(res) + "\n");
    return 0;
}

int run_network_simulate(const std::string& mode, const std::string& preset, double coupling,
                         double t_end, double step, unsigned seed, const OutputSink& sink) {
    auto net = build_network(network_preset(preset, coupling),
                             mode == "paper-verbatim" ? NetworkMode::PaperVerbatim
                                                      : NetworkMode::GroupGenerated);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    State8 x0;
    for (auto& v : x0) v = uni(rng);
    auto traj = integrate_network(net, x0, t_end, step);
    json rep;
    rep["config"] = config_header({{"command", "network simulate"}, {"mode", mode},
                                   {"preset", preset}, {"coupling", coupling},
                                   {"t_end", t_end}, {"step", step}, {"seed", seed}});
    std::string csv = csv_header_comment(rep["config"]) + "t,x0,x1,x2,x3,x4,x5,x6,x7\n";
    for (size_t i = 0; i < traj.t.size(); ++i) {
        json row = {traj.t[i]};
        csv += fmt(traj.t[i]);
        for (double v : traj.x[i]) {
            row.push_back(v);
            csv += "," + fmt(v);
        }
        csv += "\n";
        rep["trajectory"].push_back(row);
    }
    sink.emit(rep, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Z2xZ2xZ2 equivariant bifurcation and heteroclinic-cycle toolkit"};
    app.require_subcommand(1);
    unsigned seed = 12345;
    app.add_option("--seed", seed, "seed for all stochastic sampling")->capture_default_str();

    // ---- group
    auto* grp = app.add_subcommand("group", "orbits, isotropy, torus isotropy table");
    grp->require_subcommand(1);
    std::string point_str = "0,0,0";
    OutputSink go, gi, gv;
    auto* g_orbit = grp->add_subcommand("orbit", "orbit and isotropy of a point in R^3");
    g_orbit->add_option("--point", point_str, "point x,y,z")->required();
    add_output_flags(g_orbit, go);
    auto* g_iso = grp->add_subcommand("isotropy", "isotropy subgroup of a point");
    g_iso->add_option("--point", point_str, "point x,y,z")->required();
    add_output_flags(g_iso, gi);
    auto* g_table = grp->add_subcommand("verify-table", "verify all isotropy-table rows");
    int table_samples = 100;
    g_table->add_option("--samples", table_samples, "random pattern samples per free parameter")
        ->capture_default_str();
    add_output_flags(g_table, gv);

    // ---- normal-form
    auto* nfc = app.add_subcommand("normal-form",
                                   "nondegeneracy, normal form, scaling, rank certificate");
    std::string coeffs, input_file;
    bool exact = false, json_flag = false;
    OutputSink nfo;
    nfc->add_option("--coeffs", coeffs, "inline A,B,C,D,E,F,G,H,I;alpha,beta,gamma");
    nfc->add_option("--input,-i", input_file, "JSON coefficient file");
    nfc->add_flag("--exact", exact, "exact rational rank computation");
    nfc->add_flag("--json", json_flag, "shorthand for --format json");
    add_output_flags(nfc, nfo);

    // ---- branches
    auto* brc = app.add_subcommand("branches", "branch/stability sweep over a lambda grid");
    std::string preset, nf_file, convention = "paper";
    double lam_lo = -1, lam_hi = 1;
    int lam_n = 200;
    OutputSink bro;
    brc->add_option("--preset", preset, "figure1-left or figure1-right");
    brc->add_option("--normal-form", nf_file, "JSON normal-form file");
    brc->add_option("--lambda-min", lam_lo, "grid start")->capture_default_str();
    brc->add_option("--lambda-max", lam_hi, "grid end")->capture_default_str();
    brc->add_option("--count", lam_n, "grid points")->capture_default_str();
    brc->add_option("--convention", convention, "stability sign convention")
        ->check(CLI::IsMember({"paper", "standard"}))
        ->capture_default_str();
    add_output_flags(brc, bro);

    // ---- phase
    auto* phc = app.add_subcommand("phase", "torus phase dynamics");
    phc->require_subcommand(1);
    double u = 1, eps = 0, q = 0;
    phc->add_option("-u,--u", u, "parameter u")->capture_default_str();
    phc->add_option("-e,--eps", eps, "parameter eps")->capture_default_str();
    phc->add_option("-q,--q", q, "parameter q")->capture_default_str();
    OutputSink pc, ps, pw, pd;
    auto* p_cls = phc->add_subcommand("classify", "heteroclinic-cycle stability verdict");
    p_cls->fallthrough();
    add_output_flags(p_cls, pc);
    auto* p_sim = phc->add_subcommand("simulate", "integrate the phase field");
    p_sim->fallthrough();
    std::string start_str = "0.1,0.1,0.1";
    double t_end = 100, pstep = 1e-2;
    p_sim->add_option("--start", start_str, "initial angles t1,t2,t3")->capture_default_str();
    p_sim->add_option("--t-end", t_end, "integration horizon")->capture_default_str();
    p_sim->add_option("--step", pstep, "RK4 step")->capture_default_str();
    add_output_flags(p_sim, ps);
    auto* p_swp = phc->add_subcommand("sweep", "(q,eps) verdict sweep inside the region");
    p_swp->fallthrough();
    int nq = 50, neps = 50;
    p_swp->add_option("--q-points", nq, "grid points in q")->capture_default_str();
    p_swp->add_option("--eps-points", neps, "grid points in eps")->capture_default_str();
    add_output_flags(p_swp, pw);
    auto* p_dwl = phc->add_subcommand("dwell", "saddle dwell-time measurement");
    p_dwl->fallthrough();
    double dw_tmax = 4000, dw_step = 1e-2, dw_radius = 0.1;
    int dw_runs = 20;
    p_dwl->add_option("--t-max", dw_tmax, "max integration time")->capture_default_str();
    p_dwl->add_option("--step", dw_step, "RK4 step")->capture_default_str();
    p_dwl->add_option("--radius", dw_radius, "saddle neighborhood radius")->capture_default_str();
    p_dwl->add_option("--runs", dw_runs, "number of random starts")->capture_default_str();
    add_output_flags(p_dwl, pd);

    // ---- network
    auto* nwc = app.add_subcommand("network", "8-cell Cayley-graph network");
    nwc->require_subcommand(1);
    std::string nw_mode = "group-generated", nw_preset = "sinusoidal";
    double coupling = 0.1;
    nwc->add_option("--mode", nw_mode, "wiring mode")
        ->check(CLI::IsMember({"group-generated", "paper-verbatim"}))
        ->capture_default_str();
    nwc->add_option("--preset", nw_preset, "builtin dynamics (linear, sinusoidal)")
        ->capture_default_str();
    nwc->add_option("--coupling", coupling, "coupling strength")->capture_default_str();
    OutputSink nc, ns;
    auto* n_chk = nwc->add_subcommand("check", "equivariance residual");
    n_chk->fallthrough();
    int nw_samples = 1000;
    n_chk->add_option("--samples", nw_samples, "random states")->capture_default_str();
    add_output_flags(n_chk, nc);
    auto* n_sim = nwc->add_subcommand("simulate", "integrate from a random start");
    n_sim->fallthrough();
    double nw_tend = 10, nw_step = 1e-3;
    n_sim->add_option("--t-end", nw_tend, "integration horizon")->capture_default_str();
    n_sim->add_option("--step", nw_step, "RK4 step")->capture_default_str();
    add_output_flags(n_sim, ns);

    CLI11_PARSE(app, argc, argv);

    try {
        if (g_orbit->parsed()) return run_group_orbit(parse_point(point_str), go);
        if (g_iso->parsed()) return run_group_orbit(parse_point(point_str), gi);
        if (g_table->parsed()) return run_group_verify_table(table_samples, seed, gv);
        if (nfc->parsed()) {
            CubicProblem k;
            if (!coeffs.empty()) {
                k = parse_coeffs(coeffs);
            } else if (!input_file.empty()) {
                std::ifstream is(input_file);
                if (!is) throw CLI::RuntimeError("cannot open " + input_file, 1);
                k = cubic_from_json(json::parse(is));
            } else {
                throw CLI::RequiredError("--coeffs or --input");
            }
            if (json_flag) nfo.format = "json";
            return run_normal_form(k, exact, nfo);
        }
        if (brc->parsed()) {
            NormalForm nf;
            if (!preset.empty()) {
                nf = figure1_preset(preset);
            } else if (!nf_file.empty()) {
                std::ifstream is(nf_file);
                if (!is) throw CLI::RuntimeError("cannot open " + nf_file, 1);
                nf = normal_form_from_json(json::parse(is));
            } else {
                throw CLI::RequiredError("--preset or --normal-form");
            }
            return run_branches(nf, lam_lo, lam_hi, lam_n, convention, bro);
        }
        PhaseParams p{u, eps, q};
        if (p_cls->parsed()) return run_phase_classify(p, pc);
        if (p_sim->parsed())
            return run_phase_simulate(p, parse_point(start_str), t_end, pstep, ps);
        if (p_swp->parsed()) return run_phase_sweep(u, nq, neps, pw);
        if (p_dwl->parsed())
            return run_phase_dwell(p, dw_tmax, dw_step, dw_radius, dw_runs, seed, pd);
        if (n_chk->parsed())
            return run_network_check(nw_mode, nw_preset, coupling, nw_samples, seed, nc);
        if (n_sim->parsed())
            return run_network_simulate(nw_mode, nw_preset, coupling, nw_tend, nw_step, seed, ns);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "no subcommand executed\n";
    return 1;
}
