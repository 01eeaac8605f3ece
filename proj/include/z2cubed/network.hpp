#pragma once
// The 8-cell coupled ODE system wired from the Cayley graph: group-generated
// construction (equivariant by definition), the system exactly as printed in
// the source material, fixed-step integration, and equivariance residuals.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"

namespace z2cubed {

struct CellDynamics {
    std::function<double(double)> f;                 // internal dynamics
    std::function<double(double, double)> g;         // coupling along a-edges
    std::function<double(double, double)> h;         // coupling along b-edges
    double coupling = 1.0;                           // overall coupling strength
};

enum class NetworkMode { GroupGenerated, PaperVerbatim };

using State8 = std::array<double, 8>;

struct CayleyNetwork {
    CellDynamics dyn;
    NetworkMode mode = NetworkMode::GroupGenerated;
    std::array<int, 8> a_partner{};
    std::array<int, 8> b_partner{};

    State8 operator()(const State8& x) const {
        State8 dx{};
        if (mode == NetworkMode::GroupGenerated) {
            for (int i = 0; i < 8; ++i)
                dx[i] = dyn.f(x[i]) +
                        dyn.coupling * (dyn.g(x[i], x[a_partner[static_cast<size_t>(i)]]) +
                                        dyn.h(x[i], x[b_partner[static_cast<size_t>(i)]]));
        } else {
            // exactly as printed; known not to commute with the generators
            const auto& f = dyn.f;
            auto g = [&](double s, double t) { return dyn.coupling * dyn.g(s, t); };
            auto h = [&](double s, double t) { return dyn.coupling * dyn.h(s, t); };
            dx[0] = f(x[0]) + g(x[0], x[4]) + h(x[1], x[5]);
            dx[1] = f(x[1]) + g(x[3], x[7]) + h(x[2], x[6]);
            dx[2] = f(x[2]) + g(x[0], x[3]) + h(x[1], x[2]);
            dx[3] = f(x[3]) + g(x[4], x[7]) + h(x[5], x[6]);
            dx[4] = f(x[4]) + g(x[3], x[2]) + h(x[7], x[6]);
            dx[5] = f(x[5]) + g(x[0], x[1]) + h(x[4], x[5]);
            dx[6] = f(x[6]) + g(x[0], x[5]) + h(x[1], x[4]);
            dx[7] = f(x[7]) + g(x[2], x[7]) + h(x[3], x[6]);
        }
        return dx;
    }
};

inline CayleyNetwork build_network(CellDynamics dyn, NetworkMode mode) {
    CayleyNetwork net;
    net.dyn = std::move(dyn);
    net.mode = mode;
    auto gens = cayley_generators();
    for (int i = 0; i < 8; ++i) {
        net.a_partner[static_cast<size_t>(i)] = gens.a(i);
        net.b_partner[static_cast<size_t>(i)] = gens.b(i);
    }
    return net;
}

struct NetworkTrajectory {
    std::vector<double> t;
    std::vector<State8> x;
};

inline NetworkTrajectory integrate_network(const CayleyNetwork& net, const State8& x0,
                                           double t_end, double step = 1e-3) {
    if (step <= 0) throw std::invalid_argument("step must be positive");
    NetworkTrajectory traj;
    State8 x = x0;
    double t = 0;
    traj.t.push_back(t);
    traj.x.push_back(x);
    auto axpy = [](const State8& base, const State8& dir, double s) {
        State8 r;
        for (int i = 0; i < 8; ++i) r[i] = base[i] + s * dir[i];
        return r;
    };
    const auto n = static_cast<size_t>(std::ceil(t_end / step - 1e-12));
    for (size_t it = 0; it < n; ++it) {
        double hh = std::min(step, t_end - t);
        State8 k1 = net(x);
        State8 k2 = net(axpy(x, k1, hh / 2));
        State8 k3 = net(axpy(x, k2, hh / 2));
        State8 k4 = net(axpy(x, k3, hh));
        for (int i = 0; i < 8; ++i) {
            x[i] += hh / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (!std::isfinite(x[i]))
                throw std::runtime_error("non-finite state at t=" + std::to_string(t));
        }
        t += hh;
        traj.t.push_back(t);
        traj.x.push_back(x);
    }
    return traj;
}

// Max over samples and the three generators of ||V(s.x) - s.V(x)||_inf.
inline double equivariance_residual_network(const CayleyNetwork& net,
                                            const std::vector<State8>& samples) {
    auto gens = cayley_generators();
    double worst = 0;
    for (const auto& x : samples) {
        State8 Vx = net(x);
        for (const auto& s : {gens.a, gens.b, gens.c}) {
            State8 sx, sVx;
            for (int i = 0; i < 8; ++i) {
                sx[i] = x[s(i)];
                sVx[i] = Vx[s(i)];
            }
            State8 Vsx = net(sx);
            for (int i = 0; i < 8; ++i)
                worst = std::max(worst, std::fabs(Vsx[i] - sVx[i]));
        }
    }
    return worst;
}

} // namespace z2cubed
