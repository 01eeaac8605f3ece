#pragma once
// Branch solving for the unfolded normal form (eight solution modes), the
// Jacobian of a general equivariant field, closed-form mode eigenvalues, and
// lambda sweeps producing bifurcation-diagram data.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cubic.hpp"

namespace z2cubed {

enum class Mode { Trivial, X, Y, Z, XY, XZ, YZ, XYZ };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Trivial: return "trivial";
        case Mode::X: return "x";
        case Mode::Y: return "y";
        case Mode::Z: return "z";
        case Mode::XY: return "xy";
        case Mode::XZ: return "xz";
        case Mode::YZ: return "yz";
        case Mode::XYZ: return "xyz";
    }
    return "?";
}

// Orbit size of a representative solution (solutions come 1/2/4/8 at a time).
inline int mode_orbit_size(Mode m) {
    switch (m) {
        case Mode::Trivial: return 1;
        case Mode::X:
        case Mode::Y:
        case Mode::Z: return 2;
        case Mode::XY:
        case Mode::XZ:
        case Mode::YZ: return 4;
        case Mode::XYZ: return 8;
    }
    return 0;
}

struct Branch {
    Mode mode = Mode::Trivial;
    double u = 0, v = 0, w = 0; // squares (x^2, y^2, z^2)
    bool degenerate = false;    // singular mixed-mode system
    double condition_number = 0;

    Vec3 representative() const {
        return {std::sqrt(std::max(u, 0.0)), std::sqrt(std::max(v, 0.0)),
                std::sqrt(std::max(w, 0.0))};
    }
};

// Solve the eight branch systems of the unfolded form at a given lambda.
// A branch is emitted when its required squares are >= 0 (squares belonging to
// active coordinates); singular mixed-mode systems are emitted as degenerate.
inline std::vector<Branch> solve_branches(const NormalForm& nf, double lam) {
    const double e1 = nf.eps[0], e3 = nf.eps[2], e5 = nf.eps[4];
    const double o2 = nf.offset2(), o3 = nf.offset3();
    std::vector<Branch> out;
    out.push_back({Mode::Trivial, 0, 0, 0, false, 0});

    auto add_pure = [&](Mode m, double sq) {
        if (sq < 0) return;
        Branch b{m, 0, 0, 0, false, 0};
        if (m == Mode::X) b.u = sq;
        if (m == Mode::Y) b.v = sq;
        if (m == Mode::Z) b.w = sq;
        out.push_back(b);
    };
    add_pure(Mode::X, lam / e1);
    add_pure(Mode::Y, (o2 + lam) / e3);
    add_pure(Mode::Z, (o3 + lam) / e5);

    auto add_two = [&](Mode m, double a11, double a12, double a21, double a22,
                       double r1, double r2) {
        double det = a11 * a22 - a12 * a21;
        Eigen::Matrix2d A;
        A << a11, a12, a21, a22;
        double cond = A.norm() * (std::fabs(det) > 0 ? A.inverse().norm() : 0.0);
        if (std::fabs(det) < 1e-12) {
            Branch b{m, 0, 0, 0, true, std::numeric_limits<double>::infinity()};
            out.push_back(b);
            return;
        }
        double s1 = (r1 * a22 - r2 * a12) / det;
        double s2 = (a11 * r2 - a21 * r1) / det;
        if (s1 < 0 || s2 < 0) return;
        Branch b{m, 0, 0, 0, false, cond};
        if (m == Mode::XY) { b.u = s1; b.v = s2; }
        if (m == Mode::XZ) { b.u = s1; b.w = s2; }
        if (m == Mode::YZ) { b.v = s1; b.w = s2; }
        out.push_back(b);
    };
    add_two(Mode::XY, e1, nf.m1, nf.m2, e3, lam, o2 + lam);
    add_two(Mode::XZ, e1, nf.n1, nf.m3, e5, lam, o3 + lam);
    add_two(Mode::YZ, e3, nf.n2, nf.n3, e5, o2 + lam, o3 + lam);

    {
        Eigen::Matrix3d A;
        A << e1, nf.m1, nf.n1, nf.m2, e3, nf.n2, nf.m3, nf.n3, e5;
        Eigen::Vector3d rhs(lam, o2 + lam, o3 + lam);
        double det = A.determinant();
        if (std::fabs(det) < 1e-12) {
            out.push_back({Mode::XYZ, 0, 0, 0, true, std::numeric_limits<double>::infinity()});
        } else {
            Eigen::Vector3d s = A.fullPivLu().solve(rhs);
            if (s(0) >= 0 && s(1) >= 0 && s(2) >= 0) {
                Branch b{Mode::XYZ, s(0), s(1), s(2), false,
                         A.norm() * A.inverse().norm()};
                out.push_back(b);
            }
        }
    }
    return out;
}

// Jacobian of g = (p x, q y, r z) in the original coordinates.
inline Eigen::Matrix3d jacobian(const SmoothEquivariantField& f, const Vec3& s, double lam) {
    const double x = s[0], y = s[1], z = s[2];
    const double u = x * x, v = y * y, w = z * z;
    Eigen::Matrix3d J;
    J(0, 0) = f.p(u, v, w, lam) + 2 * u * f.p_u(u, v, w, lam);
    J(0, 1) = 2 * f.p_v(u, v, w, lam) * x * y;
    J(0, 2) = 2 * f.p_w(u, v, w, lam) * x * z;
    J(1, 0) = 2 * f.q_u(u, v, w, lam) * x * y;
    J(1, 1) = f.q(u, v, w, lam) + 2 * v * f.q_v(u, v, w, lam);
    J(1, 2) = 2 * f.q_w(u, v, w, lam) * y * z;
    J(2, 0) = 2 * f.r_u(u, v, w, lam) * x * z;
    J(2, 1) = 2 * f.r_v(u, v, w, lam) * y * z;
    J(2, 2) = f.r(u, v, w, lam) + 2 * w * f.r_w(u, v, w, lam);
    return J;
}

enum class StabilityConvention { PositiveRealParts, NegativeRealParts };

struct EigenTriple {
    std::array<std::complex<double>, 3> values{};
    std::array<int, 3> real_part_signs{};
    bool stable = false;

    void finish(StabilityConvention conv) {
        stable = true;
        for (int i = 0; i < 3; ++i) {
            double re = values[static_cast<size_t>(i)].real();
            real_part_signs[static_cast<size_t>(i)] = re > 0 ? 1 : (re < 0 ? -1 : 0);
            bool ok = conv == StabilityConvention::PositiveRealParts ? re > 0 : re < 0;
            if (!ok) stable = false;
        }
    }
};

inline EigenTriple numeric_eigenvalues(const Eigen::Matrix3d& J,
                                       StabilityConvention conv) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(J);
    EigenTriple t;
    for (int i = 0; i < 3; ++i) t.values[static_cast<size_t>(i)] = es.eigenvalues()(i);
    std::sort(t.values.begin(), t.values.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    t.finish(conv);
    return t;
}

// Closed-form eigenvalues per solution mode. The two-mode centers are
// u p_u + v q_v (and the analogous pairs); the xz center uses w r_w + u p_u,
// which is what the discriminant and the Jacobian force. xyz is numeric.
inline EigenTriple mode_eigenvalues(const SmoothEquivariantField& f, Mode mode,
                                    const Vec3& s, double lam,
                                    StabilityConvention conv = StabilityConvention::PositiveRealParts) {
    const double x = s[0], y = s[1], z = s[2];
    const double u = x * x, v = y * y, w = z * z;
    const double p = f.p(u, v, w, lam), q = f.q(u, v, w, lam), r = f.r(u, v, w, lam);
    const double pu = f.p_u(u, v, w, lam), qv = f.q_v(u, v, w, lam), rw = f.r_w(u, v, w, lam);
    EigenTriple t;
    auto pair_from = [&](double other, double center, double disc) {
        std::complex<double> root = disc >= 0
            ? std::complex<double>(std::sqrt(disc), 0)
            : std::complex<double>(0, std::sqrt(-disc));
        t.values = {std::complex<double>(other, 0), center + root, center - root};
    };
    switch (mode) {
        case Mode::Trivial: t.values = {p, q, r}; break;
        case Mode::X: t.values = {2 * u * pu, q, r}; break;
        case Mode::Y: t.values = {p, 2 * v * qv, r}; break;
        case Mode::Z: t.values = {p, q, 2 * w * rw}; break;
        case Mode::XY: {
            double c = u * pu + v * qv;
            double d = (u * pu - v * qv) * (u * pu - v * qv) +
                       4 * f.p_v(u, v, w, lam) * f.q_u(u, v, w, lam) * u * v;
            pair_from(r, c, d);
            break;
        }
        case Mode::XZ: {
            double c = u * pu + w * rw;
            double d = (u * pu - w * rw) * (u * pu - w * rw) +
                       4 * f.p_w(u, v, w, lam) * f.r_u(u, v, w, lam) * u * w;
            pair_from(q, c, d);
            break;
        }
        case Mode::YZ: {
            double c = v * qv + w * rw;
            double d = (v * qv - w * rw) * (v * qv - w * rw) +
                       4 * f.q_w(u, v, w, lam) * f.r_v(u, v, w, lam) * v * w;
            pair_from(p, c, d);
            break;
        }
        case Mode::XYZ: return numeric_eigenvalues(jacobian(f, s, lam), conv);
    }
    std::sort(t.values.begin(), t.values.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    t.finish(conv);
    return t;
}

// One row of a bifurcation sweep.
struct SweepRow {
    double lambda = 0;
    Mode mode = Mode::Trivial;
    Vec3 point{0, 0, 0};
    EigenTriple eigen;
    bool degenerate = false;
    int orbit_size = 1;
};

inline std::vector<SweepRow> sweep_bifurcation(
    const NormalForm& nf, const std::vector<double>& grid,
    StabilityConvention conv = StabilityConvention::PositiveRealParts) {
    auto f = unfolded_field(nf);
    std::vector<SweepRow> rows;
    for (double lam : grid) {
        for (const auto& b : solve_branches(nf, lam)) {
            SweepRow row;
            row.lambda = lam;
            row.mode = b.mode;
            row.degenerate = b.degenerate;
            row.orbit_size = mode_orbit_size(b.mode);
            if (!b.degenerate) {
                row.point = b.representative();
                row.eigen = mode_eigenvalues(f, b.mode, row.point, lam, conv);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// Named parameter presets inside the two caption regimes of the schematic
// bifurcation figure (the remaining free parameters fixed to documented values;
// one printed caption inequality is unsatisfiable and is not enforced).
inline NormalForm figure1_preset(const std::string& name) {
    NormalForm nf;
    nf.eps = {+1, -1, +1, +1, +1, -1};
    nf.perturbed = true;
    if (name == "figure1-left") {
        nf.m1 = 0.5; nf.m2 = 0.5; nf.m3 = 0.5;
        nf.n1 = 0.5; nf.n2 = -3.0; nf.n3 = 0.5;
    } else if (name == "figure1-right") {
        nf.m1 = 4.0; nf.m2 = 0.5; nf.m3 = 0.5;
        nf.n1 = 4.0; nf.n2 = -0.5; nf.n3 = 0.5;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return nf;
}

} // namespace z2cubed
