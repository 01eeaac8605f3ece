// Acceptance gate: nine top-level criteria, one pass/fail line each.
// Usage: acceptance [N ...]  (no args: run all nine)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <z2cubed/branches.hpp>
#include <z2cubed/cubic.hpp>
#include <z2cubed/group.hpp>
#include <z2cubed/network.hpp>
#include <z2cubed/phase.hpp>
#include <z2cubed/tangent.hpp>

using namespace z2cubed;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

CubicProblem random_nondegenerate(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.2, 2.0);
    std::bernoulli_distribution sign(0.5);
    for (;;) {
        CubicProblem k;
        auto draw = [&] { return (sign(rng) ? 1 : -1) * mag(rng); };
        k.A = draw(); k.B = draw(); k.C = draw(); k.D = draw(); k.E = draw();
        k.F = draw(); k.G = draw(); k.H = draw(); k.I = draw();
        k.alpha = draw(); k.beta = draw(); k.gamma = draw();
        if (check_nondegeneracy(k).pass()) return k;
    }
}

// 1. Table of equilibrium eigenvalues: closed forms vs numeric Jacobian.
Outcome criterion1() {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ud(0.1, 2.0), qd(-1.0, 1.0);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        double u = ud(rng);
        std::uniform_real_distribution<double> ed(-u / 2, u / 2);
        PhaseParams p{u, ed(rng), qd(rng)};
        for (const auto& row : equilibrium_eigenvalues(p))
            for (int i = 0; i < 3; ++i) {
                double c = row.closed_form[static_cast<size_t>(i)];
                double n = row.numeric[static_cast<size_t>(i)];
                worst = std::max(worst, std::fabs(n - c) / std::max(1.0, std::fabs(c)));
            }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max relative eigenvalue error %.3g (limit 1e-10)", worst);
    return {worst <= 1e-10, buf};
}

// 2. Rank certificate: generic 27; each determinant degeneracy drops the rank.
Outcome criterion2() {
    std::mt19937 rng(102);
    int generic_ok = 0;
    for (int t = 0; t < 100; ++t)
        if (rank_certificate(random_nondegenerate(rng)).rank == 27) ++generic_ok;
    std::array<int, 3> degen_ok{0, 0, 0};
    for (int which = 0; which < 3; ++which)
        for (int t = 0; t < 100; ++t) {
            auto k = random_nondegenerate(rng);
            if (which == 0) k.D = k.A * k.E / k.B;      // AE = BD
            else if (which == 1) k.F = k.C * k.E / k.B; // BF = CE
            else k.F = k.C * k.D / k.A;                 // AF = CD
            if (rank_certificate(k).rank < 27) ++degen_ok[static_cast<size_t>(which)];
        }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "generic rank 27 in %d/100; degeneracies rank<27 in %d/100, %d/100, %d/100",
                  generic_ok, degen_ok[0], degen_ok[1], degen_ok[2]);
    return {generic_ok == 100 && degen_ok[0] == 100 && degen_ok[1] == 100 && degen_ok[2] == 100,
            buf};
}

// 3. Normal-form round trip under the computed equivalence scaling.
Outcome criterion3() {
    std::mt19937 rng(103);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        auto k = random_nondegenerate(rng);
        auto res = reduce_to_normal_form(k);
        auto rt = apply_scaling(k, res.scaling);
        const std::array<std::pair<double, double>, 12> pairs = {{
            {rt.A, double(res.nf.eps[0])}, {rt.B, res.nf.m1}, {rt.C, res.nf.n1},
            {rt.alpha, double(res.nf.eps[1])}, {rt.D, res.nf.m2},
            {rt.E, double(res.nf.eps[2])}, {rt.F, res.nf.n2},
            {rt.beta, double(res.nf.eps[3])}, {rt.G, res.nf.m3}, {rt.H, res.nf.n3},
            {rt.I, double(res.nf.eps[4])}, {rt.gamma, double(res.nf.eps[5])},
        }};
        for (const auto& [got, want] : pairs)
            worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max relative coefficient error %.3g (limit 1e-10)", worst);
    return {worst <= 1e-10, buf};
}

// 4. Branch residuals and closed-vs-numeric eigenvalues on a lambda grid.
Outcome criterion4() {
    std::mt19937 rng(104);
    std::uniform_real_distribution<double> mag(0.2, 2.0);
    std::bernoulli_distribution sign(0.5);
    double worst_res = 0, worst_eig = 0;
    int branch_points = 0;
    std::vector<NormalForm> forms = {figure1_preset("figure1-left"),
                                     figure1_preset("figure1-right")};
    for (int t = 0; t < 10; ++t) {
        NormalForm nf;
        for (auto& e : nf.eps) e = sign(rng) ? 1 : -1;
        auto draw = [&] { return (sign(rng) ? 1 : -1) * mag(rng); };
        nf.m1 = draw(); nf.m2 = draw(); nf.m3 = draw();
        nf.n1 = draw(); nf.n2 = draw(); nf.n3 = draw();
        nf.perturbed = sign(rng);
        forms.push_back(nf);
    }
    for (const auto& nf : forms) {
        auto f = unfolded_field(nf);
        for (int i = 0; i < 200; ++i) {
            double lam = -3.0 + 6.0 * i / 199;
            for (const auto& b : solve_branches(nf, lam)) {
                if (b.degenerate) continue;
                auto pt = b.representative();
                auto v = evaluate(f, pt, lam);
                for (double x : v) worst_res = std::max(worst_res, std::fabs(x));
                auto closed = mode_eigenvalues(f, b.mode, pt, lam);
                auto numeric = numeric_eigenvalues(jacobian(f, pt, lam),
                                                   StabilityConvention::PositiveRealParts);
                for (int j = 0; j < 3; ++j)
                    worst_eig = std::max(worst_eig,
                                         std::abs(closed.values[static_cast<size_t>(j)] -
                                                  numeric.values[static_cast<size_t>(j)]));
                ++branch_points;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d branch points; max residual %.3g (limit 1e-10); max eigenvalue gap %.3g (limit 1e-8)",
                  branch_points, worst_res, worst_eig);
    return {worst_res <= 1e-10 && worst_eig <= 1e-8 && branch_points > 0, buf};
}

// 5. Invariant planes of the phase field.
Outcome criterion5() {
    std::mt19937 rng(105);
    std::uniform_real_distribution<double> par(-1.5, 1.5);
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        PhaseParams p{par(rng), par(rng), par(rng)};
        for (int axis = 0; axis < 3; ++axis)
            worst = std::max(worst, invariant_surface_residual(p, axis, 50));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "max plane residual over 6 planes x 20 parameter sets %.3g (limit 1e-12)", worst);
    return {worst <= 1e-12, buf};
}

// 6. Stability trichotomy on a (q, eps) grid inside the assumed region.
Outcome criterion6() {
    const double u = 1.0;
    int agree = 0, total = 0, disagreements = 0;
    for (int iq = 0; iq < 50; ++iq)
        for (int ie = 0; ie < 50; ++ie) {
            double eps = -u / 2 + u * (ie + 1) / 51.0;
            double q = (-u / 2 + u * (iq + 1) / 51.0 - eps) / 2; // |eps+2q| < u/2
            PhaseParams p{u, eps, q};
            if (!p.in_assumed_region()) continue;
            ++total;
            auto verdict = classify_cycle(p).verdict;
            // independent re-evaluation of the theorem's inequality regions
            CycleVerdict want;
            if (q < 3 * u / 4 - eps / 2) {
                want = CycleVerdict::AsymptoticallyStable;
            } else {
                double denom = (-u + 2 * eps) * (-u + 2 * eps);
                double upper = u / 2 - std::pow(u + 2 * eps, 3) / denom;
                want = q < upper ? CycleVerdict::EssentiallyAsymptoticallyStable
                                 : CycleVerdict::CompletelyUnstable;
            }
            if (verdict == want) ++agree;
            else {
                ++disagreements;
                std::fprintf(stderr,
                             "criterion 6 disagreement at eps=%.4f q=%.4f: got %s want %s\n",
                             eps, q, verdict_name(verdict), verdict_name(want));
            }
        }
    char buf[128];
    std::snprintf(buf, sizeof buf, "verdict agreement %d/%d (%.1f%%, limit 99%%)", agree, total,
                  100.0 * agree / total);
    return {total > 0 && agree >= total * 99 / 100, buf};
}

// 7. Dwell-time growth near the stable cycle; none for u < 0.
Outcome criterion7() {
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> uni(1e-3, 0.05);
    int increasing = 0;
    for (int r = 0; r < 20; ++r) {
        PhaseState s{pi + uni(rng), uni(rng), uni(rng)};
        auto a = measure_dwell_times_streaming({1, -0.2, -0.1}, s, 4000.0, 0.01, 0.1, 6);
        if (a.longest_increasing_run >= 4) ++increasing;
    }
    int unstable_increasing = 0;
    for (int r = 0; r < 20; ++r) {
        PhaseState s{pi + uni(rng), uni(rng), uni(rng)};
        auto a = measure_dwell_times_streaming({-1, -0.2, -0.1}, s, 4000.0, 0.01, 0.1, 6);
        if (a.longest_increasing_run >= 4) ++unstable_increasing;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "stable cycle: increasing dwells in %d/20 (need >= 18); u=-1: %d/20 (need 0)",
                  increasing, unstable_increasing);
    return {increasing >= 18 && unstable_increasing == 0, buf};
}

// 8. Network equivariance and diagonal flow invariance.
Outcome criterion8() {
    CellDynamics dyn{[](double x) { return x - x * x * x; },
                     [](double s, double t) { return std::sin(t - s); },
                     [](double s, double t) { return 0.5 * std::sin(t - s); }, 0.2};
    auto net = build_network(dyn, NetworkMode::GroupGenerated);
    std::mt19937 rng(108);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<State8> states(1000);
    for (auto& s : states)
        for (auto& v : s) v = uni(rng);
    // residual per generator
    auto gens = cayley_generators();
    double worst = 0;
    for (const auto& perm : {gens.a, gens.b, gens.c}) {
        for (const auto& x : states) {
            State8 Vx = net(x), sx, sVx;
            for (int i = 0; i < 8; ++i) {
                sx[static_cast<size_t>(i)] = x[static_cast<size_t>(perm(i))];
                sVx[static_cast<size_t>(i)] = Vx[static_cast<size_t>(perm(i))];
            }
            State8 Vsx = net(sx);
            for (int i = 0; i < 8; ++i)
                worst = std::max(worst, std::fabs(Vsx[static_cast<size_t>(i)] -
                                                  sVx[static_cast<size_t>(i)]));
        }
    }
    State8 diag;
    for (auto& v : diag) v = 0.4;
    auto traj = integrate_network(net, diag, 10.0, 1e-3);
    double spread = 0;
    for (const auto& s : traj.x) {
        double lo = *std::min_element(s.begin(), s.end());
        double hi = *std::max_element(s.begin(), s.end());
        spread = std::max(spread, hi - lo);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "equivariance residual %.3g (limit 1e-12); diagonal spread %.3g (limit 1e-8)",
                  worst, spread);
    return {worst <= 1e-12 && spread <= 1e-8, buf};
}

// 9. Group exhaustives: orbit-stabilizer, generator relations, isotropy table.
Outcome criterion9() {
    std::mt19937 rng(109);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::bernoulli_distribution zero(0.25);
    int os_ok = 0;
    for (int t = 0; t < 1000; ++t) {
        Vec3 p;
        for (auto& x : p) x = zero(rng) ? 0.0 : uni(rng);
        if (orbit(p).size() * isotropy(p).size() == 8) ++os_ok;
    }
    auto g = cayley_generators();
    bool relations = is_involution(g.a) && is_involution(g.b) && is_involution(g.c) &&
                     compose(g.a, g.b) == compose(g.b, g.a) &&
                     compose(g.a, g.c) == compose(g.c, g.a) &&
                     compose(g.b, g.c) == compose(g.c, g.b);
    auto rows = verify_isotropy_table(100, 12345);
    int table_ok = 0;
    for (const auto& r : rows)
        if (r.pattern_invariant && r.dimension_ok) ++table_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "orbit-stabilizer %d/1000; generator relations %s; table rows %d/9",
                  os_ok, relations ? "exact" : "VIOLATED", table_ok);
    return {os_ok == 1000 && relations && table_ok == 9, buf};
}

const std::array<std::pair<const char*, Outcome (*)()>, 9> criteria = {{
    {"equilibrium eigenvalue table reproduction", criterion1},
    {"tangent-space rank certificate", criterion2},
    {"normal-form round trip", criterion3},
    {"branch residuals and closed-form eigenvalues", criterion4},
    {"phase-field invariant planes", criterion5},
    {"cycle stability trichotomy", criterion6},
    {"dwell-time dynamical validation", criterion7},
    {"network equivariance", criterion8},
    {"group exhaustives", criterion9},
}};

const std::array<double, 9> time_limits = {5, 10, 0, 0, 0, 0, 60, 0, 0};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 9; ++i) which.push_back(i);

    bool all_pass = true;
    for (int n : which) {
        if (n < 1 || n > 9) {
            std::fprintf(stderr, "unknown criterion %d\n", n);
            return 2;
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome out = criteria[static_cast<size_t>(n - 1)].second();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double limit = time_limits[static_cast<size_t>(n - 1)];
        bool in_time = limit <= 0 || secs < limit;
        bool pass = out.pass && in_time;
        all_pass = all_pass && pass;
        std::printf("criterion %d (%s): %s — %s [%.2f s%s]\n", n,
                    criteria[static_cast<size_t>(n - 1)].first, pass ? "PASS" : "FAIL",
                    out.detail.c_str(), secs,
                    limit > 0 ? (std::string(", limit ") + std::to_string(int(limit)) + " s").c_str()
                              : "");
    }
    return all_pass ? 0 : 1;
}
