#pragma once
// Cubic equivariant bifurcation problems in three state variables:
// equivariance testing, the 15 nondegeneracy conditions, and reduction to
// the six-modal-parameter normal form by the diagonal linear equivalence.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "group.hpp"

namespace z2cubed {

// ---------------------------------------------------------------------------
// The truncated cubic problem
//   k = (A x^3 + B x y^2 + C x z^2 + a L x,
//        D y x^2 + E y^3 + F y z^2 + b L y,
//        G z x^2 + H z y^2 + I z^3 + g L z)
struct CubicProblem {
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0, G = 0, H = 0, I = 0;
    double alpha = 0, beta = 0, gamma = 0;

    Vec3 operator()(const Vec3& s, double lam) const {
        const double x = s[0], y = s[1], z = s[2];
        const double u = x * x, v = y * y, w = z * z;
        return {(A * u + B * v + C * w + alpha * lam) * x,
                (D * u + E * v + F * w + beta * lam) * y,
                (G * u + H * v + I * w + gamma * lam) * z};
    }
};

inline nlohmann::json to_json(const CubicProblem& k) {
    return {{"A", k.A}, {"B", k.B}, {"C", k.C}, {"D", k.D}, {"E", k.E},
            {"F", k.F}, {"G", k.G}, {"H", k.H}, {"I", k.I},
            {"alpha", k.alpha}, {"beta", k.beta}, {"gamma", k.gamma}};
}

inline CubicProblem cubic_from_json(const nlohmann::json& j) {
    CubicProblem k;
    k.A = j.at("A"); k.B = j.at("B"); k.C = j.at("C");
    k.D = j.at("D"); k.E = j.at("E"); k.F = j.at("F");
    k.G = j.at("G"); k.H = j.at("H"); k.I = j.at("I");
    k.alpha = j.at("alpha"); k.beta = j.at("beta"); k.gamma = j.at("gamma");
    return k;
}

// ---------------------------------------------------------------------------
// Normal form: signs eps1..eps6 and modal parameters m1..m3, n1..n3.
// `perturbed` selects the lambda offsets of the unfolded form used for
// branch solving: false -> (-L, -L, -L); true -> (-L, -(e2+L), -(e2+e6+L)).
struct NormalForm {
    std::array<int, 6> eps{1, 1, 1, 1, 1, 1};
    double m1 = 0, m2 = 0, m3 = 0;
    double n1 = 0, n2 = 0, n3 = 0;
    bool perturbed = false;

    // lambda offsets of the unfolded form's second and third components
    double offset2() const { return perturbed ? static_cast<double>(eps[1]) : 0.0; }
    double offset3() const { return perturbed ? static_cast<double>(eps[1] + eps[5]) : 0.0; }
};

inline nlohmann::json to_json(const NormalForm& nf) {
    return {{"eps1", nf.eps[0]}, {"eps2", nf.eps[1]}, {"eps3", nf.eps[2]},
            {"eps4", nf.eps[3]}, {"eps5", nf.eps[4]}, {"eps6", nf.eps[5]},
            {"m1", nf.m1}, {"m2", nf.m2}, {"m3", nf.m3},
            {"n1", nf.n1}, {"n2", nf.n2}, {"n3", nf.n3},
            {"perturbed", nf.perturbed}};
}

inline NormalForm normal_form_from_json(const nlohmann::json& j) {
    NormalForm nf;
    nf.eps = {j.at("eps1"), j.at("eps2"), j.at("eps3"),
              j.at("eps4"), j.at("eps5"), j.at("eps6")};
    nf.m1 = j.at("m1"); nf.m2 = j.at("m2"); nf.m3 = j.at("m3");
    nf.n1 = j.at("n1"); nf.n2 = j.at("n2"); nf.n3 = j.at("n3");
    nf.perturbed = j.value("perturbed", false);
    return nf;
}

// ---------------------------------------------------------------------------
// Smooth equivariant field g = (p(u,v,w,L) x, q(.) y, r(.) z), u=x^2 etc.
struct SmoothEquivariantField {
    using Fn = std::function<double(double, double, double, double)>;
    Fn p, q, r;
    // optional analytic partials w.r.t. (u, v, w); nullptr -> central differences
    std::array<Fn, 3> dp{}, dq{}, dr{};
    double fd_step = 1e-6;

    // The origin check enforces the factorized form's defining property; the
    // perturbed unfolded form carries constant lambda-offsets and opts out.
    SmoothEquivariantField(Fn p_, Fn q_, Fn r_, bool require_origin_zero = true)
        : p(std::move(p_)), q(std::move(q_)), r(std::move(r_)) {
        if (require_origin_zero &&
            (std::fabs(p(0, 0, 0, 0)) > 1e-12 || std::fabs(q(0, 0, 0, 0)) > 1e-12 ||
             std::fabs(r(0, 0, 0, 0)) > 1e-12))
            throw std::invalid_argument("p, q, r must vanish at the origin");
    }

    double partial(const Fn& f, const Fn& analytic, int axis,
                   double u, double v, double w, double lam) const {
        if (analytic) return analytic(u, v, w, lam);
        std::array<double, 3> s{u, v, w};
        std::array<double, 3> hi = s, lo = s;
        hi[static_cast<size_t>(axis)] += fd_step;
        lo[static_cast<size_t>(axis)] -= fd_step;
        return (f(hi[0], hi[1], hi[2], lam) - f(lo[0], lo[1], lo[2], lam)) / (2 * fd_step);
    }
    double p_u(double u, double v, double w, double l) const { return partial(p, dp[0], 0, u, v, w, l); }
    double p_v(double u, double v, double w, double l) const { return partial(p, dp[1], 1, u, v, w, l); }
    double p_w(double u, double v, double w, double l) const { return partial(p, dp[2], 2, u, v, w, l); }
    double q_u(double u, double v, double w, double l) const { return partial(q, dq[0], 0, u, v, w, l); }
    double q_v(double u, double v, double w, double l) const { return partial(q, dq[1], 1, u, v, w, l); }
    double q_w(double u, double v, double w, double l) const { return partial(q, dq[2], 2, u, v, w, l); }
    double r_u(double u, double v, double w, double l) const { return partial(r, dr[0], 0, u, v, w, l); }
    double r_v(double u, double v, double w, double l) const { return partial(r, dr[1], 1, u, v, w, l); }
    double r_w(double u, double v, double w, double l) const { return partial(r, dr[2], 2, u, v, w, l); }
};

inline Vec3 evaluate(const SmoothEquivariantField& f, const Vec3& s, double lam) {
    const double u = s[0] * s[0], v = s[1] * s[1], w = s[2] * s[2];
    return {f.p(u, v, w, lam) * s[0], f.q(u, v, w, lam) * s[1], f.r(u, v, w, lam) * s[2]};
}

// Field with linear p,q,r built from a cubic problem's coefficients.
inline SmoothEquivariantField field_from_cubic(const CubicProblem& k) {
    SmoothEquivariantField f(
        [k](double u, double v, double w, double l) { return k.A * u + k.B * v + k.C * w + k.alpha * l; },
        [k](double u, double v, double w, double l) { return k.D * u + k.E * v + k.F * w + k.beta * l; },
        [k](double u, double v, double w, double l) { return k.G * u + k.H * v + k.I * w + k.gamma * l; });
    f.dp = {[k](double, double, double, double) { return k.A; },
            [k](double, double, double, double) { return k.B; },
            [k](double, double, double, double) { return k.C; }};
    f.dq = {[k](double, double, double, double) { return k.D; },
            [k](double, double, double, double) { return k.E; },
            [k](double, double, double, double) { return k.F; }};
    f.dr = {[k](double, double, double, double) { return k.G; },
            [k](double, double, double, double) { return k.H; },
            [k](double, double, double, double) { return k.I; }};
    return f;
}

// Recognition-form field: lambda terms (+e2 L x, +e4 L y, +e6 L z).
inline CubicProblem recognition_cubic(const NormalForm& nf) {
    CubicProblem k;
    k.A = nf.eps[0]; k.B = nf.m1; k.C = nf.n1; k.alpha = nf.eps[1];
    k.D = nf.m2; k.E = nf.eps[2]; k.F = nf.n2; k.beta = nf.eps[3];
    k.G = nf.m3; k.H = nf.n3; k.I = nf.eps[4]; k.gamma = nf.eps[5];
    return k;
}

inline SmoothEquivariantField recognition_field(const NormalForm& nf) {
    return field_from_cubic(recognition_cubic(nf));
}

// Unfolded-form field used for branch solving; lambda enters as
// (-L, -(o2+L), -(o3+L)) with offsets per nf.perturbed.
inline SmoothEquivariantField unfolded_field(const NormalForm& nf) {
    const double o2 = nf.offset2(), o3 = nf.offset3();
    SmoothEquivariantField f(
        [nf](double u, double v, double w, double l) {
            return nf.eps[0] * u + nf.m1 * v + nf.n1 * w - l;
        },
        [nf, o2](double u, double v, double w, double l) {
            return nf.m2 * u + nf.eps[2] * v + nf.n2 * w - (o2 + l);
        },
        [nf, o3](double u, double v, double w, double l) {
            return nf.m3 * u + nf.n3 * v + nf.eps[4] * w - (o3 + l);
        },
        /*require_origin_zero=*/false);
    f.dp = {[nf](double, double, double, double) { return double(nf.eps[0]); },
            [nf](double, double, double, double) { return nf.m1; },
            [nf](double, double, double, double) { return nf.n1; }};
    f.dq = {[nf](double, double, double, double) { return nf.m2; },
            [nf](double, double, double, double) { return double(nf.eps[2]); },
            [nf](double, double, double, double) { return nf.n2; }};
    f.dr = {[nf](double, double, double, double) { return nf.m3; },
            [nf](double, double, double, double) { return nf.n3; },
            [nf](double, double, double, double) { return double(nf.eps[4]); }};
    return f;
}

// ---------------------------------------------------------------------------
// Equivariance residual of an arbitrary 3-component field
inline double equivariance_residual(
    const std::function<Vec3(const Vec3&, double)>& F,
    const std::vector<std::pair<Vec3, double>>& samples) {
    if (samples.empty()) throw std::invalid_argument("empty sample list");
    double worst = 0;
    for (const auto& [x, lam] : samples) {
        Vec3 Fx = F(x, lam);
        for (const auto& g : all_group_elements()) {
            Vec3 lhs = F(act_on_R3(g, x), lam);
            Vec3 rhs = act_on_R3(g, Fx);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, std::fabs(lhs[i] - rhs[i]));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Nondegeneracy: the 15 conditions on (A..I, alpha, beta, gamma)
struct Condition {
    std::string name;
    double margin = 0; // |difference| that must stay away from zero
    bool pass = false;
};

struct NondegeneracyReport {
    std::vector<Condition> conditions;
    double tolerance = 1e-9;

    bool pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
    std::vector<std::string> failing() const {
        std::vector<std::string> f;
        for (const auto& c : conditions)
            if (!c.pass) f.push_back(c.name);
        return f;
    }
};

inline NondegeneracyReport check_nondegeneracy(const CubicProblem& k, double tol = 1e-9) {
    NondegeneracyReport rep;
    rep.tolerance = tol;
    auto add = [&](const std::string& name, double margin) {
        rep.conditions.push_back({name, std::fabs(margin), std::fabs(margin) > tol});
    };
    add("A != 0", k.A);
    add("E != 0", k.E);
    add("I != 0", k.I);
    add("alpha != 0", k.alpha);
    add("beta != 0", k.beta);
    add("gamma != 0", k.gamma);
    add("B|beta| != |E alpha|", k.B * std::fabs(k.beta) - std::fabs(k.E * k.alpha));
    add("D|alpha| != |A beta|", k.D * std::fabs(k.alpha) - std::fabs(k.A * k.beta));
    add("G|alpha| != |A gamma|", k.G * std::fabs(k.alpha) - std::fabs(k.A * k.gamma));
    add("C|gamma| != |I alpha|", k.C * std::fabs(k.gamma) - std::fabs(k.I * k.alpha));
    add("F|gamma| != |I beta|", k.F * std::fabs(k.gamma) - std::fabs(k.I * k.beta));
    add("H|beta| != |E gamma|", k.H * std::fabs(k.beta) - std::fabs(k.E * k.gamma));
    add("AE != BD", k.A * k.E - k.B * k.D);
    add("BF != CE", k.B * k.F - k.C * k.E);
    add("AF != CD", k.A * k.F - k.C * k.D);
    return rep;
}

// ---------------------------------------------------------------------------
// Diagonal linear equivalence: (x,y,z,L) -> diag(d,e,f) k(ax, by, cz, sL)
struct EquivalenceScaling {
    double a = 1, b = 1, c = 1, d = 1, e = 1, f = 1, sigma = 1;
    double a_over_c = 1;            // value forced by the defining system
    double a_over_c_as_printed = 1; // the alternative printed ratio (C in radicand)
};

// Apply the scaling to a cubic problem (the round-trip oracle).
inline CubicProblem apply_scaling(const CubicProblem& k, const EquivalenceScaling& s) {
    CubicProblem r;
    r.A = s.d * s.a * s.a * s.a * k.A;
    r.B = s.d * s.a * s.b * s.b * k.B;
    r.C = s.d * s.a * s.c * s.c * k.C;
    r.alpha = s.d * s.a * s.sigma * k.alpha;
    r.D = s.e * s.a * s.a * s.b * k.D;
    r.E = s.e * s.b * s.b * s.b * k.E;
    r.F = s.e * s.b * s.c * s.c * k.F;
    r.beta = s.e * s.b * s.sigma * k.beta;
    r.G = s.f * s.a * s.a * s.c * k.G;
    r.H = s.f * s.b * s.b * s.c * k.H;
    r.I = s.f * s.c * s.c * s.c * k.I;
    r.gamma = s.f * s.c * s.sigma * k.gamma;
    return r;
}

struct ReductionResult {
    NormalForm nf;
    EquivalenceScaling scaling;
    NondegeneracyReport report;
};

inline ReductionResult reduce_to_normal_form(const CubicProblem& k, double tol = 1e-9) {
    ReductionResult res;
    res.report = check_nondegeneracy(k, tol);
    if (!res.report.pass()) {
        std::string msg = "degenerate problem:";
        for (const auto& n : res.report.failing()) msg += " [" + n + "]";
        throw std::invalid_argument(msg);
    }
    auto sgn = [](double x) { return x > 0 ? 1 : -1; };
    NormalForm& nf = res.nf;
    nf.eps = {sgn(k.A), sgn(k.alpha), sgn(k.E), sgn(k.beta), sgn(k.I), sgn(k.gamma)};
    nf.m1 = k.B * std::fabs(k.beta) / std::fabs(k.E * k.alpha);
    nf.m2 = k.D * std::fabs(k.alpha) / std::fabs(k.A * k.beta);
    nf.m3 = k.G * std::fabs(k.alpha) / std::fabs(k.A * k.gamma);
    nf.n1 = k.C * std::fabs(k.gamma) / std::fabs(k.I * k.alpha);
    nf.n2 = k.F * std::fabs(k.gamma) / std::fabs(k.I * k.beta);
    nf.n3 = k.H * std::fabs(k.beta) / std::fabs(k.E * k.gamma);

    EquivalenceScaling& s = res.scaling;
    s.a = 1.0;
    s.d = 1.0 / std::fabs(k.A);
    s.sigma = std::fabs(k.A) / std::fabs(k.alpha);
    s.b = std::sqrt(std::fabs(k.A * k.beta / (k.E * k.alpha)));
    s.e = 1.0 / (std::fabs(k.E) * s.b * s.b * s.b);
    s.c = std::sqrt(std::fabs(k.A * k.gamma / (k.I * k.alpha)));
    s.f = 1.0 / (std::fabs(k.I) * s.c * s.c * s.c);
    s.a_over_c = std::sqrt(std::fabs(k.I * k.alpha / (k.A * k.gamma)));
    s.a_over_c_as_printed = std::sqrt(std::fabs(k.I * k.alpha / (k.C * k.gamma)));
    return res;
}

// ---------------------------------------------------------------------------
// Modal nondegeneracy: the 8 inequalities on the normal-form parameters
inline NondegeneracyReport check_modal_nondegeneracy(const NormalForm& nf, double tol = 1e-9) {
    NondegeneracyReport rep;
    rep.tolerance = tol;
    auto add = [&](const std::string& name, double margin) {
        rep.conditions.push_back({name, std::fabs(margin), std::fabs(margin) > tol});
    };
    const auto& e = nf.eps;
    add("m1 != e2 e3 e4", nf.m1 - e[1] * e[2] * e[3]);
    add("m2 != e1 e2 e4", nf.m2 - e[0] * e[1] * e[3]);
    add("m3 != e1 e2 e6", nf.m3 - e[0] * e[1] * e[5]);
    add("n1 != e2 e5 e6", nf.n1 - e[1] * e[4] * e[5]);
    add("n2 != e4 e5 e6", nf.n2 - e[3] * e[4] * e[5]);
    add("n3 != e3 e4 e5", nf.n3 - e[2] * e[3] * e[4]);
    add("m1 m2 != e1 e3", nf.m1 * nf.m2 - e[0] * e[2]);
    add("m1 n2 != e3 n1", nf.m1 * nf.n2 - e[2] * nf.n1);
    return rep;
}

} // namespace z2cubed
