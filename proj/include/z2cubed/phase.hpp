#pragma once
// Weak-coupling phase dynamics on T^3: vector field, invariant planes,
// equilibrium eigenvalues, heteroclinic-cycle stability classification, torus
// integration, and saddle dwell-time measurement.
//
// Dwell measurement uses a folded state representation theta_i = k_i*pi + d_i
// (k_i in {0,1}, |d_i| <= pi/2) integrated in long double: deviations from the
// invariant planes at both 0 and pi then enjoy full subnormal resolution, which
// a plain double/theta integrator lacks near pi (it freezes onto the plane
// after ~2 dwells and never completes a third visit).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "group.hpp"

namespace z2cubed {

struct PhaseParams {
    double u = 1.0;
    double eps = 0.0; // coupling-shape constant of the phase model
    double q = 0.0;

    // assumed region for the cycle analysis
    bool in_assumed_region() const {
        return std::fabs(eps) < u / 2 && std::fabs(eps + 2 * q) < u / 2;
    }
};

struct PhaseState {
    double t1 = 0, t2 = 0, t3 = 0;

    PhaseState canonical() const {
        return {wrap_angle(t1), wrap_angle(t2), wrap_angle(t3)};
    }
};

inline Vec3 phase_field(const PhaseState& s, const PhaseParams& p) {
    const double t1 = s.t1, t2 = s.t2, t3 = s.t3;
    return {p.u * std::sin(t1) * std::cos(t2) + p.eps * std::sin(2 * t1) * std::cos(2 * t2),
            p.u * std::sin(t2) * std::cos(t3) + p.eps * std::sin(2 * t2) * std::cos(2 * t3),
            p.u * std::sin(t3) * std::cos(t1) + p.eps * std::sin(2 * t3) * std::cos(2 * t1) +
                p.q * (1 - std::cos(t1 - t2)) * std::sin(2 * t3)};
}

// Factored form exposing sin(theta_i) as invariant surfaces.
inline Vec3 phase_field_factored(const PhaseState& s, const PhaseParams& p) {
    const double t1 = s.t1, t2 = s.t2, t3 = s.t3;
    return {std::sin(t1) * (p.u * std::cos(t2) + 2 * p.eps * std::cos(t1) * std::cos(2 * t2)),
            std::sin(t2) * (p.u * std::cos(t3) + 2 * p.eps * std::cos(t2) * std::cos(2 * t3)),
            std::sin(t3) * (p.u * std::cos(t1) + 2 * p.eps * std::cos(2 * t1) * std::cos(t3) +
                            2 * p.q * (1 - std::cos(t1 - t2)) * std::cos(t3))};
}

inline Eigen::Matrix3d phase_jacobian(const PhaseState& s, const PhaseParams& p) {
    const double t1 = s.t1, t2 = s.t2, t3 = s.t3;
    Eigen::Matrix3d J;
    J(0, 0) = p.u * std::cos(t1) * std::cos(t2) + 2 * p.eps * std::cos(2 * t1) * std::cos(2 * t2);
    J(0, 1) = -p.u * std::sin(t1) * std::sin(t2) - 2 * p.eps * std::sin(2 * t1) * std::sin(2 * t2);
    J(0, 2) = 0;
    J(1, 0) = 0;
    J(1, 1) = p.u * std::cos(t2) * std::cos(t3) + 2 * p.eps * std::cos(2 * t2) * std::cos(2 * t3);
    J(1, 2) = -p.u * std::sin(t2) * std::sin(t3) - 2 * p.eps * std::sin(2 * t2) * std::sin(2 * t3);
    J(2, 0) = -p.u * std::sin(t3) * std::sin(t1) - 2 * p.eps * std::sin(2 * t3) * std::sin(2 * t1) +
              p.q * std::sin(t1 - t2) * std::sin(2 * t3);
    J(2, 1) = -p.q * std::sin(t1 - t2) * std::sin(2 * t3);
    J(2, 2) = p.u * std::cos(t3) * std::cos(t1) + 2 * p.eps * std::cos(2 * t3) * std::cos(2 * t1) +
              2 * p.q * (1 - std::cos(t1 - t2)) * std::cos(2 * t3);
    return J;
}

// Max |component i| of the field over a grid on the plane theta_i in {0, pi}.
inline double invariant_surface_residual(const PhaseParams& p, int axis, int grid_n = 100) {
    double worst = 0;
    for (double plane : {0.0, pi}) {
        for (int a = 0; a < grid_n; ++a)
            for (int b = 0; b < grid_n; ++b) {
                double ta = two_pi * a / grid_n, tb = two_pi * b / grid_n;
                PhaseState s;
                if (axis == 0) s = {plane, ta, tb};
                else if (axis == 1) s = {ta, plane, tb};
                else s = {ta, tb, plane};
                worst = std::max(worst, std::fabs(phase_field(s, p)[static_cast<size_t>(axis)]));
            }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Equilibria and their eigenvalues

struct LabeledEigenvalues {
    std::string label;
    PhaseState point;
    std::array<double, 3> numeric{};     // sorted ascending
    std::array<double, 3> closed_form{}; // sorted ascending
};

// The four non-conjugate zero-dimensional fixed points with closed forms:
// (0,0,0): (u+2e) x3; (pi,0,0): (-u+2e, u+2e, -u+2e+4q);
// (0,pi,0): (-u+2e, -u+2e, u+2e+4q); (0,0,pi): (u+2e, -u+2e, -u+2e).
inline std::vector<LabeledEigenvalues> equilibrium_eigenvalues(const PhaseParams& p) {
    const double u = p.u, e = p.eps, q = p.q;
    std::vector<LabeledEigenvalues> out;
    auto add = [&](const std::string& label, PhaseState s, std::array<double, 3> closed) {
        LabeledEigenvalues le;
        le.label = label;
        le.point = s;
        Eigen::EigenSolver<Eigen::Matrix3d> es(phase_jacobian(s, p));
        for (int i = 0; i < 3; ++i) le.numeric[static_cast<size_t>(i)] = es.eigenvalues()(i).real();
        std::sort(le.numeric.begin(), le.numeric.end());
        le.closed_form = closed;
        std::sort(le.closed_form.begin(), le.closed_form.end());
        out.push_back(le);
    };
    add("(0,0,0)", {0, 0, 0}, {u + 2 * e, u + 2 * e, u + 2 * e});
    add("(pi,0,0)", {pi, 0, 0}, {-u + 2 * e, u + 2 * e, -u + 2 * e + 4 * q});
    add("(0,pi,0)", {0, pi, 0}, {-u + 2 * e, -u + 2 * e, u + 2 * e + 4 * q});
    add("(0,0,pi)", {0, 0, pi}, {u + 2 * e, -u + 2 * e, -u + 2 * e});
    return out;
}

// ---------------------------------------------------------------------------
// Cycle classification

enum class CycleVerdict {
    AsymptoticallyStable,
    EssentiallyAsymptoticallyStable,
    CompletelyUnstable,
    NoCycle,
};

inline const char* verdict_name(CycleVerdict v) {
    switch (v) {
        case CycleVerdict::AsymptoticallyStable: return "AsymptoticallyStable";
        case CycleVerdict::EssentiallyAsymptoticallyStable: return "EssentiallyAsymptoticallyStable";
        case CycleVerdict::CompletelyUnstable: return "CompletelyUnstable";
        case CycleVerdict::NoCycle: return "NoCycle";
    }
    return "?";
}

struct NodeEigenvalues {
    std::string label;
    double contracting = 0; // magnitude, > 0 for a genuine saddle on the cycle
    double expanding = 0;   // signed; must be > 0 for the cycle to exist
    double transverse = 0;  // signed
    double rho = 0;         // min{c/e, 1 - t/e}
};

struct CycleClassification {
    CycleVerdict verdict = CycleVerdict::NoCycle;
    double rho = 0;                       // product of min-formula factors
    std::array<double, 3> rho_factors{};  // per node
    std::array<NodeEigenvalues, 3> nodes{};
    double rho_paper = 0;                 // literal piecewise expression
    bool assumed_region = false;          // Eq. |eps|<u/2, |eps+2q|<u/2
    std::string warning;
};

// Role assignment from the connection order (pi,0,0)->(0,pi,0)->(0,0,pi)->...:
// contracting = coordinate at pi at the node, expanding = the next node's pi
// coordinate, transverse = the remaining one. `start_node` rotates the cycle
// root (the classification must not depend on it).
inline CycleClassification classify_cycle(const PhaseParams& p, int start_node = 0) {
    const double u = p.u, e = p.eps, q = p.q;
    CycleClassification cls;
    cls.assumed_region = p.in_assumed_region();
    if (!cls.assumed_region)
        cls.warning = "parameters violate the assumed region |eps|<u/2, |eps+2q|<u/2";

    // signed (contracting, expanding, transverse) at the three nodes in order
    const std::array<NodeEigenvalues, 3> base = {{
        {"(pi,0,0)", -(-u + 2 * e), u + 2 * e, -u + 2 * e + 4 * q, 0},
        {"(0,pi,0)", -(-u + 2 * e), u + 2 * e + 4 * q, -u + 2 * e, 0},
        {"(0,0,pi)", -(-u + 2 * e), u + 2 * e, -u + 2 * e, 0},
    }};
    bool cycle_exists = true;
    for (int i = 0; i < 3; ++i) {
        auto n = base[static_cast<size_t>((i + start_node) % 3)];
        if (n.expanding <= 0 || n.contracting <= 0) cycle_exists = false;
        if (n.expanding != 0)
            n.rho = std::min(n.contracting / n.expanding, 1 - n.transverse / n.expanding);
        cls.nodes[static_cast<size_t>(i)] = n;
        cls.rho_factors[static_cast<size_t>(i)] = n.rho;
    }
    cls.rho = cls.rho_factors[0] * cls.rho_factors[1] * cls.rho_factors[2];

    // the literal piecewise expression from the source material
    if (q < 3 * u / 4 - e / 2)
        cls.rho_paper = (-u + 2 * e) * (-u + 2 * e) * (2 * u - 4 * q) /
                        ((u + 2 * e) * (u + 2 * e) * (u + 2 * e + 4 * q));
    else
        cls.rho_paper = (-u + 2 * e) * (-u + 2 * e) * (-u + 2 * e) /
                        ((u + 2 * e) * (u + 2 * e) * (u + 2 * e + 4 * q));

    if (u < 0) {
        cls.verdict = CycleVerdict::CompletelyUnstable;
    } else if (!cycle_exists) {
        cls.verdict = CycleVerdict::NoCycle;
    } else if (q < 3 * u / 4 - e / 2) {
        cls.verdict = CycleVerdict::AsymptoticallyStable;
    } else {
        double denom = (-u + 2 * e) * (-u + 2 * e);
        double upper = u / 2 - (u + 2 * e) * (u + 2 * e) * (u + 2 * e) / denom;
        cls.verdict = q < upper ? CycleVerdict::EssentiallyAsymptoticallyStable
                                : CycleVerdict::CompletelyUnstable;
    }
    return cls;
}

// ---------------------------------------------------------------------------
// Integration on the torus

struct PhaseTrajectory {
    std::vector<double> t;
    std::vector<PhaseState> x;
};

inline PhaseTrajectory integrate_phase(const PhaseState& s0, const PhaseParams& p,
                                       double t_end, double step = 1e-2) {
    if (step <= 0) throw std::invalid_argument("step must be positive");
    PhaseTrajectory traj;
    PhaseState s = s0;
    double t = 0;
    traj.t.push_back(t);
    traj.x.push_back(s.canonical());
    auto deriv = [&](const PhaseState& st) { return phase_field(st, p); };
    auto axpy = [](const PhaseState& base, const Vec3& dir, double h) {
        return PhaseState{base.t1 + h * dir[0], base.t2 + h * dir[1], base.t3 + h * dir[2]};
    };
    const auto n = static_cast<size_t>(std::ceil(t_end / step - 1e-12));
    for (size_t it = 0; it < n; ++it) {
        double hh = std::min(step, t_end - t);
        Vec3 k1 = deriv(s);
        Vec3 k2 = deriv(axpy(s, k1, hh / 2));
        Vec3 k3 = deriv(axpy(s, k2, hh / 2));
        Vec3 k4 = deriv(axpy(s, k3, hh));
        s.t1 += hh / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        s.t2 += hh / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        s.t3 += hh / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
        if (!std::isfinite(s.t1) || !std::isfinite(s.t2) || !std::isfinite(s.t3))
            throw std::runtime_error("non-finite state at t=" + std::to_string(t));
        t += hh;
        traj.t.push_back(t);
        traj.x.push_back(s.canonical());
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Dwell-time measurement

struct DwellVisit {
    int saddle = -1; // index into the watched saddle list
    double t_enter = 0, t_exit = 0;
    double dwell() const { return t_exit - t_enter; }
};

struct DwellAnalysis {
    std::vector<DwellVisit> visits;     // completed visits, in order
    int longest_increasing_run = 0;     // over consecutive completed visits
    double growth_ratio = 0;            // least-squares fit of log-dwell growth
    bool inconclusive = false;          // fewer than 4 completed visits
    bool escaped = false;               // settled away from every watched saddle
};

// The six saddles of the heteroclinic structure: three cycle nodes plus the
// three corner saddles the asymptotic route passes through.
inline const std::array<std::array<int, 3>, 6>& dwell_saddles() {
    static const std::array<std::array<int, 3>, 6> s = {{
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1},
    }};
    return s;
}

inline void finish_dwell_analysis(DwellAnalysis& a) {
    int run = a.visits.empty() ? 0 : 1, best = run;
    for (size_t i = 1; i < a.visits.size(); ++i) {
        run = a.visits[i].dwell() > a.visits[i - 1].dwell() ? run + 1 : 1;
        best = std::max(best, run);
    }
    a.longest_increasing_run = best;
    a.inconclusive = a.visits.size() < 4;
    if (a.visits.size() >= 2) {
        // least squares on log d_k vs k: slope -> growth ratio
        double n = static_cast<double>(a.visits.size()), sx = 0, sy = 0, sxy = 0, sxx = 0;
        for (size_t i = 0; i < a.visits.size(); ++i) {
            double xi = static_cast<double>(i), yi = std::log(a.visits[i].dwell());
            sx += xi; sy += yi; sxy += xi * yi; sxx += xi * xi;
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        a.growth_ratio = std::exp(slope);
    }
}

// Dwell analysis over a stored trajectory (double precision); suitable for
// short horizons. `radius` is the saddle-neighborhood radius on the torus.
inline DwellAnalysis measure_dwell_times(const PhaseTrajectory& traj, double radius = 0.1) {
    DwellAnalysis a;
    const auto& saddles = dwell_saddles();
    auto near_saddle = [&](const PhaseState& s) {
        std::array<double, 3> th{s.t1, s.t2, s.t3};
        for (int n = 0; n < 6; ++n) {
            double d2 = 0;
            for (int i = 0; i < 3; ++i) {
                double target = saddles[static_cast<size_t>(n)][static_cast<size_t>(i)] ? pi : 0.0;
                double d = angle_dist(th[static_cast<size_t>(i)], target);
                d2 += d * d;
            }
            if (std::sqrt(d2) < radius) return n;
        }
        return -1;
    };
    int cur = -1;
    double t_enter = 0;
    for (size_t i = 0; i < traj.t.size(); ++i) {
        int n = near_saddle(traj.x[i]);
        if (n != cur) {
            if (cur >= 0) a.visits.push_back({cur, t_enter, traj.t[i]});
            if (n >= 0) t_enter = traj.t[i];
            cur = n;
        }
    }
    a.escaped = a.visits.size() <= 1 && cur < 0;
    finish_dwell_analysis(a);
    return a;
}

// Streaming dwell measurement with the folded long-double integrator.
// Stops early once `stop_after_visits` completed visits are recorded (0: never).
struct FoldedState {
    std::array<long double, 3> d{0, 0, 0};
    std::array<int, 3> k{0, 0, 0};

    static FoldedState from_angles(const PhaseState& s) {
        FoldedState f;
        std::array<double, 3> th{wrap_angle(s.t1), wrap_angle(s.t2), wrap_angle(s.t3)};
        for (int i = 0; i < 3; ++i) {
            // nearest multiple of pi within [0, 2pi): 0, pi, or 2pi (== 0)
            double t = th[static_cast<size_t>(i)];
            int m = static_cast<int>(std::lround(t / pi));
            f.k[static_cast<size_t>(i)] = m & 1;
            f.d[static_cast<size_t>(i)] = static_cast<long double>(t) -
                                          static_cast<long double>(m) * std::numbers::pi_v<long double>;
        }
        return f;
    }
    PhaseState to_angles() const {
        return PhaseState{static_cast<double>(k[0] * std::numbers::pi_v<long double> + d[0]),
                          static_cast<double>(k[1] * std::numbers::pi_v<long double> + d[1]),
                          static_cast<double>(k[2] * std::numbers::pi_v<long double> + d[2])}
            .canonical();
    }
};

namespace detail {
// field in folded coordinates; sgn_i = (-1)^{k_i} folds the single-angle trig
inline std::array<long double, 3> folded_field(const std::array<long double, 3>& d,
                                               const std::array<int, 3>& k,
                                               long double u, long double e, long double q) {
    std::array<long double, 3> s, c, s2, c2;
    for (int i = 0; i < 3; ++i) {
        long double sg = k[static_cast<size_t>(i)] ? -1.0L : 1.0L;
        long double sd = sinl(d[static_cast<size_t>(i)]), cd = cosl(d[static_cast<size_t>(i)]);
        s[static_cast<size_t>(i)] = sg * sd;
        c[static_cast<size_t>(i)] = sg * cd;
        s2[static_cast<size_t>(i)] = 2 * sd * cd;
        c2[static_cast<size_t>(i)] = 1 - 2 * sd * sd;
    }
    long double sg12 = ((k[0] + k[1]) & 1) ? -1.0L : 1.0L;
    long double c12 = cosl(d[0] - d[1]); // cos(t1-t2) = sg12 * cos(d1-d2)
    return {u * s[0] * c[1] + e * s2[0] * c2[1],
            u * s[1] * c[2] + e * s2[1] * c2[2],
            u * s[2] * c[0] + e * s2[2] * c2[0] + q * (1.0L - sg12 * c12) * s2[2]};
}
} // namespace detail

inline DwellAnalysis measure_dwell_times_streaming(const PhaseParams& p, const PhaseState& start,
                                                   double t_max, double step = 1e-2,
                                                   double radius = 0.1,
                                                   int stop_after_visits = 0) {
    DwellAnalysis a;
    const auto& saddles = dwell_saddles();
    FoldedState st = FoldedState::from_angles(start);
    const long double u = p.u, e = p.eps, q = p.q, h = step;
    const long double half_pi = std::numbers::pi_v<long double> / 2;
    auto near_saddle = [&](const FoldedState& f) {
        for (int n = 0; n < 6; ++n) {
            long double d2 = 0;
            bool match = true;
            for (int i = 0; i < 3; ++i) {
                if (f.k[static_cast<size_t>(i)] != saddles[static_cast<size_t>(n)][static_cast<size_t>(i)]) {
                    match = false;
                    break;
                }
                d2 += f.d[static_cast<size_t>(i)] * f.d[static_cast<size_t>(i)];
            }
            if (match && sqrtl(d2) < static_cast<long double>(radius)) return n;
        }
        return -1;
    };
    int cur = near_saddle(st) >= 0 ? near_saddle(st) : -1;
    double t = 0, t_enter = 0;
    const auto steps = static_cast<size_t>(std::ceil(t_max / step));
    for (size_t it = 0; it < steps; ++it) {
        auto k1 = detail::folded_field(st.d, st.k, u, e, q);
        std::array<long double, 3> tmp;
        for (int i = 0; i < 3; ++i) tmp[static_cast<size_t>(i)] = st.d[static_cast<size_t>(i)] + h / 2 * k1[static_cast<size_t>(i)];
        auto k2 = detail::folded_field(tmp, st.k, u, e, q);
        for (int i = 0; i < 3; ++i) tmp[static_cast<size_t>(i)] = st.d[static_cast<size_t>(i)] + h / 2 * k2[static_cast<size_t>(i)];
        auto k3 = detail::folded_field(tmp, st.k, u, e, q);
        for (int i = 0; i < 3; ++i) tmp[static_cast<size_t>(i)] = st.d[static_cast<size_t>(i)] + h * k3[static_cast<size_t>(i)];
        auto k4 = detail::folded_field(tmp, st.k, u, e, q);
        for (int i = 0; i < 3; ++i) {
            auto& di = st.d[static_cast<size_t>(i)];
            di += h / 6 * (k1[static_cast<size_t>(i)] + 2 * k2[static_cast<size_t>(i)] +
                           2 * k3[static_cast<size_t>(i)] + k4[static_cast<size_t>(i)]);
            if (di > half_pi) {
                di -= std::numbers::pi_v<long double>;
                st.k[static_cast<size_t>(i)] ^= 1;
            } else if (di < -half_pi) {
                di += std::numbers::pi_v<long double>;
                st.k[static_cast<size_t>(i)] ^= 1;
            }
        }
        t += step;
        int n = near_saddle(st);
        if (n != cur) {
            if (cur >= 0) {
                a.visits.push_back({cur, t_enter, t});
                if (stop_after_visits > 0 &&
                    static_cast<int>(a.visits.size()) >= stop_after_visits)
                    break;
            }
            if (n >= 0) t_enter = t;
            cur = n;
        }
    }
    a.escaped = a.visits.size() <= 1 && near_saddle(st) < 0;
    finish_dwell_analysis(a);
    return a;
}

} // namespace z2cubed
