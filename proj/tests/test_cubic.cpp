#include <doctest.h>

#include <random>

#include <z2cubed/cubic.hpp>

using namespace z2cubed;

namespace {

CubicProblem sample_problem() {
    CubicProblem k;
    k.A = 1; k.B = 2; k.C = 3; k.D = 1; k.E = 1; k.F = 1; k.G = 1; k.H = 2; k.I = 2;
    k.alpha = 1; k.beta = 2; k.gamma = 3;
    return k;
}

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

} // namespace

TEST_CASE("evaluate: odd factorization and pinned substitution") {
    auto f = recognition_field(NormalForm{{1, 1, 1, 1, 1, 1}, 0, 0, 0, 0, 0, 0, false});
    auto at_origin = evaluate(f, {0, 0, 0}, 0.7);
    CHECK(at_origin[0] == 0);
    CHECK(at_origin[1] == 0);
    CHECK(at_origin[2] == 0);
    // eps1=1, m1=n1=0, eps2=1 at (1,0,0), lambda=-1: first component 1*1 + 1*(-1) = 0
    auto v = evaluate(f, {1, 0, 0}, -1.0);
    CHECK(v[0] == doctest::Approx(0.0));
}

TEST_CASE("equivariance residual") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<std::pair<Vec3, double>> samples;
    for (int i = 0; i < 1000; ++i)
        samples.push_back({{uni(rng), uni(rng), uni(rng)}, uni(rng)});

    auto odd = [](const Vec3& x, double) {
        return Vec3{x[0] * x[0] * x[0], x[1] * x[1] * x[1], x[2] * x[2] * x[2]};
    };
    CHECK(equivariance_residual(odd, samples) <= 1e-12);

    auto broken = [](const Vec3& x, double) { return Vec3{x[0] + x[1], x[1], x[2]}; };
    CHECK(equivariance_residual(broken, samples) > 0.1);

    auto k = sample_problem();
    auto cubic = [&](const Vec3& x, double lam) { return k(x, lam); };
    CHECK(equivariance_residual(cubic, samples) <= 1e-12);

    // any evaluate-constructed field is equivariant by construction
    auto f = field_from_cubic(k);
    auto wrapped = [&](const Vec3& x, double lam) { return evaluate(f, x, lam); };
    CHECK(equivariance_residual(wrapped, samples) <= 1e-12);
}

TEST_CASE("nondegeneracy: pinned pass and fail cases") {
    CHECK(check_nondegeneracy(sample_problem()).pass());

    auto k = sample_problem();
    k.B = 1; k.D = 1; k.A = 1; k.E = 1; // AE = BD = 1
    auto rep = check_nondegeneracy(k);
    CHECK(!rep.pass());
    bool found = false;
    for (const auto& n : rep.failing())
        if (n == "AE != BD") found = true;
    CHECK(found);

    auto k2 = sample_problem();
    k2.alpha = 0;
    auto rep2 = check_nondegeneracy(k2);
    CHECK(!rep2.pass());
    CHECK(rep2.failing().front() == "alpha != 0");
}

TEST_CASE("reduction: pinned modal parameters") {
    auto res = reduce_to_normal_form(sample_problem());
    CHECK(res.nf.m1 == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(res.nf.m2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.nf.m3 == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(res.nf.n1 == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(res.nf.n2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(res.nf.n3 == doctest::Approx(4.0 / 3).epsilon(1e-12));
    for (int e : res.nf.eps) CHECK(e == 1);
}

TEST_CASE("reduction: identity scaling for unit diagonal coefficients") {
    CubicProblem k;
    k.A = k.E = k.I = 1;
    k.alpha = k.beta = k.gamma = 1;
    k.B = 0.3; k.C = 0.4; k.D = 0.5; k.F = 0.6; k.G = 0.7; k.H = 0.8;
    auto res = reduce_to_normal_form(k);
    CHECK(res.scaling.a == doctest::Approx(1.0));
    CHECK(res.scaling.b == doctest::Approx(1.0));
    CHECK(res.scaling.c == doctest::Approx(1.0));
    CHECK(res.scaling.d == doctest::Approx(1.0));
    CHECK(res.scaling.e == doctest::Approx(1.0));
    CHECK(res.scaling.f == doctest::Approx(1.0));
    CHECK(res.scaling.sigma == doctest::Approx(1.0));
}

TEST_CASE("reduction: degenerate input throws with the failing condition named") {
    auto k = sample_problem();
    k.alpha = 0;
    CHECK_THROWS_WITH_AS(reduce_to_normal_form(k),
                         doctest::Contains("alpha != 0"), std::invalid_argument);
}

TEST_CASE("round trip: rescaled problem equals the normal form coefficients") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        auto k = random_nondegenerate(rng);
        auto res = reduce_to_normal_form(k);
        auto rt = apply_scaling(k, res.scaling);
        auto rel = [](double got, double want) {
            return std::fabs(got - want) / std::max(1.0, std::fabs(want));
        };
        CHECK(rel(rt.A, res.nf.eps[0]) <= 1e-10);
        CHECK(rel(rt.B, res.nf.m1) <= 1e-10);
        CHECK(rel(rt.C, res.nf.n1) <= 1e-10);
        CHECK(rel(rt.alpha, res.nf.eps[1]) <= 1e-10);
        CHECK(rel(rt.D, res.nf.m2) <= 1e-10);
        CHECK(rel(rt.E, res.nf.eps[2]) <= 1e-10);
        CHECK(rel(rt.F, res.nf.n2) <= 1e-10);
        CHECK(rel(rt.beta, res.nf.eps[3]) <= 1e-10);
        CHECK(rel(rt.G, res.nf.m3) <= 1e-10);
        CHECK(rel(rt.H, res.nf.n3) <= 1e-10);
        CHECK(rel(rt.I, res.nf.eps[4]) <= 1e-10);
        CHECK(rel(rt.gamma, res.nf.eps[5]) <= 1e-10);
        // positivity of all scaling constants
        CHECK(res.scaling.a > 0);
        CHECK(res.scaling.b > 0);
        CHECK(res.scaling.c > 0);
        CHECK(res.scaling.d > 0);
        CHECK(res.scaling.e > 0);
        CHECK(res.scaling.f > 0);
        CHECK(res.scaling.sigma > 0);
    }
}

TEST_CASE("normal form is invariant under joint positive rescaling") {
    // scaling a whole component equation (one row of coefficients) is the
    // diagonal equivalence the normal form quotients out
    std::mt19937 rng(13);
    auto k = random_nondegenerate(rng);
    auto base = reduce_to_normal_form(k).nf;
    auto scaled = k;
    scaled.A *= 3.7; scaled.B *= 3.7; scaled.C *= 3.7; scaled.alpha *= 3.7;
    scaled.D *= 0.21; scaled.E *= 0.21; scaled.F *= 0.21; scaled.beta *= 0.21;
    scaled.G *= 12.0; scaled.H *= 12.0; scaled.I *= 12.0; scaled.gamma *= 12.0;
    auto nf2 = reduce_to_normal_form(scaled).nf;
    CHECK(nf2.eps == base.eps);
    CHECK(nf2.m1 == doctest::Approx(base.m1).epsilon(1e-12));
    CHECK(nf2.m2 == doctest::Approx(base.m2).epsilon(1e-12));
    CHECK(nf2.m3 == doctest::Approx(base.m3).epsilon(1e-12));
    CHECK(nf2.n1 == doctest::Approx(base.n1).epsilon(1e-12));
    CHECK(nf2.n2 == doctest::Approx(base.n2).epsilon(1e-12));
    CHECK(nf2.n3 == doctest::Approx(base.n3).epsilon(1e-12));
}

TEST_CASE("modal nondegeneracy: pinned pass and fail") {
    NormalForm nf;
    nf.eps = {1, 1, 1, 1, 1, 1};
    nf.m1 = 4; nf.m2 = 0.5; nf.m3 = 1.0 / 3;
    nf.n1 = 4.5; nf.n2 = 0.75; nf.n3 = 4.0 / 3;
    CHECK(check_modal_nondegeneracy(nf).pass());

    auto bad = nf;
    bad.m1 = 1; // equals eps2*eps3*eps4
    auto rep = check_modal_nondegeneracy(bad);
    CHECK(!rep.pass());
    CHECK(rep.failing().front() == "m1 != e2 e3 e4");

    auto bad2 = nf;
    bad2.m2 = 1.0 / bad2.m1; // m1*m2 = 1 = eps1*eps3
    CHECK(!check_modal_nondegeneracy(bad2).pass());
}

TEST_CASE("JSON round trip for problems and normal forms") {
    auto k = sample_problem();
    auto k2 = cubic_from_json(to_json(k));
    CHECK(k2.A == k.A);
    CHECK(k2.gamma == k.gamma);
    NormalForm nf;
    nf.eps = {1, -1, 1, 1, 1, -1};
    nf.m1 = 0.5; nf.n2 = -3; nf.perturbed = true;
    auto nf2 = normal_form_from_json(to_json(nf));
    CHECK(nf2.eps == nf.eps);
    CHECK(nf2.n2 == nf.n2);
    CHECK(nf2.perturbed == nf.perturbed);
}
