#include <doctest.h>

#include <cmath>
#include <string>

#include "semloss/finite_diff.hpp"
#include "semloss/fixtures.hpp"
#include "semloss/fit_surface.hpp"
#include "semloss/rng.hpp"
#include "semloss/surface.hpp"

using namespace semloss;

namespace {

SemanticLossParams random_params(std::uint64_t seed, std::size_t n_terms) {
    return detail::initial_params(fixture_table1(), n_terms, FitConfig{}, seed);
}

AccuracyGrid grid_from_params(const SemanticLossParams& p) {
    AccuracyGrid g;
    g.q_axis = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    g.s_axis = {0.41, 0.82, 1.23, 1.64};
    g.label = "synthetic";
    g.values = eval_surface_grid(p, g);  // reads only the axes
    validate_grid(g);
    return g;
}

} // namespace

TEST_CASE("surface with no terms is the constant offset") {
    SemanticLossParams p;
    p.mu0 = 77.7;
    for (double q : {1.0, 50.0, 100.0})
        for (double s : {0.41, 1.64}) CHECK(eval_semantic_loss(p, q, s) == 77.7);
}

TEST_CASE("zero-weight term contributes nothing") {
    SemanticLossParams p;
    p.mu0 = 5.0;
    p.terms.push_back({0.0, 0.0, 1.7, -0.3, 0.01});
    for (double q : {10.0, 100.0})
        for (double s : {0.5, 1.5}) CHECK(eval_semantic_loss(p, q, s) == 5.0);
}

TEST_CASE("removing a zero-weight term never changes the surface") {
    SeededRng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        SemanticLossParams with;
        with.mu0 = rng.uniform(-10.0, 10.0);
        with.terms.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0),
                              rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                              rng.uniform(-0.05, 0.005)});
        with.terms.push_back({0.0, 0.0, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                              rng.uniform(-0.05, 0.005)});
        SemanticLossParams without = with;
        without.terms.pop_back();

        const double q = rng.uniform(1.0, 100.0);
        const double s = rng.uniform(0.3, 2.0);
        CHECK(eval_semantic_loss(with, q, s) == eval_semantic_loss(without, q, s));
    }
}

TEST_CASE("flat single-term surface degenerates to mu0 plus mu1") {
    // mu5 = 0 kills the q dependence, mu2 = 0 kills the s dependence
    SemanticLossParams p;
    p.mu0 = 3.25;
    p.terms.push_back({1.5, 0.0, 2.0, -1.0, 0.0});
    SeededRng rng(8);
    for (int i = 0; i < 20; ++i)
        CHECK(eval_semantic_loss(p, rng.uniform(0.0, 200.0), rng.uniform(-5.0, 5.0)) ==
              doctest::Approx(4.75).epsilon(1e-15));
}

TEST_CASE("sigma stays inside (0,1) and beta stays positive") {
    // Openness is checkable wherever double precision can represent it; the
    // logistic saturates to exactly 1.0 once its argument passes ~37.
    SeededRng rng(13);
    for (int i = 0; i < 500; ++i) {
        SurfaceTerm t{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0),
                      rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0),
                      rng.uniform(-0.05, 0.005)};
        const double s = rng.uniform(0.0, 3.0);
        const double q = rng.uniform(0.0, 100.0);
        const double sigma = detail::term_sigma(t, s);
        CHECK(sigma > 0.0);
        CHECK(sigma < 1.0);
        CHECK(detail::term_beta(t, q, 0) > 0.0);
    }
}

TEST_CASE("extreme sigmoid arguments saturate without leaving [0,1]") {
    for (double mu4 : {-500.0, 500.0}) {
        const SurfaceTerm t{1.0, 1.0, 0.0, mu4, 0.0};
        const double sigma = detail::term_sigma(t, 1.0);
        CHECK(std::isfinite(sigma));
        CHECK(sigma >= 0.0);
        CHECK(sigma <= 1.0);
    }
}

TEST_CASE("overflow guard names the offending term") {
    SemanticLossParams p;
    p.mu0 = 0.0;
    p.terms.push_back({1.0, 0.0, 0.0, 0.0, 0.0});
    p.terms.push_back({1.0, 0.0, 0.0, 0.0, 10.0});  // exp(10*q) explodes
    CHECK_THROWS_WITH_AS(eval_semantic_loss(p, 100.0, 1.0), doctest::Contains("term 2"),
                         eval_error);
}

TEST_CASE("gradients vanish at a perfect fit") {
    SemanticLossParams truth;
    truth.mu0 = 80.0;
    truth.terms.push_back({2.0, 5.0, 2.0, -1.0, -0.01});
    truth.terms.push_back({-3.0, 1.0, 1.0, 0.5, -0.02});
    const AccuracyGrid grid = grid_from_params(truth);
    const SurfaceGradients g = semantic_loss_gradients(truth, grid);
    CHECK(g.d_mu0 == 0.0);
    for (const auto& t : g.d_terms)
        for (double d : t) CHECK(d == 0.0);
}

TEST_CASE("constant-model gradient is the scalar-quadratic derivative") {
    AccuracyGrid g;
    g.q_axis = {10.0};
    g.s_axis = {0.5};
    g.values = {{70.0}};
    g.label = "one cell";
    SemanticLossParams p;
    p.mu0 = 64.0;
    const SurfaceGradients grad = semantic_loss_gradients(p, g);
    CHECK(grad.d_mu0 == doctest::Approx(-2.0 * (70.0 - 64.0)).epsilon(1e-15));
    CHECK(grad.d_terms.empty());
}

TEST_CASE("analytic gradients agree with central finite differences") {
    const AccuracyGrid grid = fixture_table1();
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SemanticLossParams p = random_params(seed, 4);
        const GradientComparison cmp = compare_gradients(
            semantic_loss_gradients(p, grid), finite_diff_gradient(p, grid, 1e-6));
        worst = std::max(worst, cmp.max_rel_error);
        INFO("seed ", seed, " worst component ", cmp.worst_component);
        CHECK(cmp.max_rel_error <= 1e-5);
    }
    // typical agreement is an order better than the asserted bound
    CHECK(worst < 1e-5);
}

TEST_CASE("finite differences demand a positive step") {
    CHECK_THROWS_AS(finite_diff_gradient(random_params(0, 1), fixture_table1(), 0.0),
                    input_error);
    CHECK_THROWS_AS(finite_diff_gradient(random_params(0, 1), fixture_table1(), -1e-6),
                    input_error);
}

TEST_CASE("gradient comparison pinpoints the worst component") {
    const AccuracyGrid grid = fixture_table1();
    const SemanticLossParams p = random_params(1, 3);
    SurfaceGradients analytic = semantic_loss_gradients(p, grid);
    const SurfaceGradients reference = finite_diff_gradient(p, grid, 1e-6);
    analytic.d_terms[1][2] += 1000.0;  // corrupt mu3 of the second term
    const GradientComparison cmp = compare_gradients(analytic, reference);
    CHECK(cmp.worst_component.find("mu3") != std::string::npos);
    CHECK(cmp.worst_component.find("term 2") != std::string::npos);
    CHECK(cmp.max_rel_error > 0.9);
}

TEST_CASE("surface SSE matches a hand accumulation") {
    const SemanticLossParams p = random_params(9, 2);
    const AccuracyGrid grid = fixture_table1();
    double expected = 0.0;
    for (std::size_t i = 0; i < grid.n_s(); ++i)
        for (std::size_t j = 0; j < grid.n_q(); ++j) {
            const double e =
                grid.values[i][j] - eval_semantic_loss(p, grid.q_axis[j], grid.s_axis[i]);
            expected += e * e;
        }
    CHECK(surface_sse(p, grid) == doctest::Approx(expected).epsilon(1e-14));
}
