#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>

#include "attoclock/ode.hpp"
#include "attoclock/quadrature.hpp"
#include "attoclock/rootfind.hpp"

using namespace attoclock;

TEST_CASE("segment quadrature against closed forms") {
  // exp along a tilted complex segment
  const cplx a(0.0, 0.0), b(2.0, 1.5);
  const cplx got = integrate_segment([](cplx t) { return std::exp(t); }, a, b);
  const cplx want = std::exp(b) - std::exp(a);
  CHECK(std::abs(got - want) / std::abs(want) < 1e-12);

  // oscillatory integrand needs subdivision
  const cplx osc = integrate_segment([](cplx t) { return std::cos(40.0 * t); }, cplx(0), cplx(1));
  CHECK(std::abs(osc - std::sin(cplx(40.0)) / 40.0) < 1e-12);

  // path independence for an entire function
  auto f = [](cplx t) { return t * t * std::exp(-t); };
  const cplx direct = integrate_segment(f, cplx(0), cplx(3, 2));
  const cplx detour = integrate_path(f, {cplx(0), cplx(0, 2), cplx(3, 2)});
  CHECK(std::abs(direct - detour) < 1e-11);
}

TEST_CASE("quadrature failure is reported") {
  QuadratureOptions opt;
  opt.max_depth = 3;
  CHECK_THROWS_AS(integrate_segment([](cplx t) { return std::cos(500.0 * t); }, cplx(0),
                                    cplx(20), opt),
                  QuadratureError);
}

TEST_CASE("adaptive dopri5 on the harmonic oscillator") {
  using State = Eigen::Vector2d;
  auto rhs = [](real, const State& y) { return State(y[1], -y[0]); };
  OdeOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  const real t_end = 20.0;
  const State y = integrate_adaptive(rhs, 0.0, t_end, State(1.0, 0.0), opt);
  CHECK(y[0] == doctest::Approx(std::cos(t_end)).epsilon(1e-9));
  CHECK(y[1] == doctest::Approx(-std::sin(t_end)).epsilon(1e-9));
}

TEST_CASE("adaptive dopri5 with a complex state") {
  using State = Eigen::Vector2cd;
  const cplx lambda(0.3, 2.0);
  auto rhs = [&](real, const State& y) { return State(lambda * y[0], -lambda * y[1]); };
  const State y = integrate_adaptive(rhs, 0.0, 3.0, State(cplx(1, 0), cplx(0, 1)));
  CHECK(std::abs(y[0] - std::exp(lambda * 3.0)) < 1e-8);
  CHECK(std::abs(y[1] - cplx(0, 1) * std::exp(-lambda * 3.0)) < 1e-8);
}

TEST_CASE("observer abort surfaces as exception") {
  using State = Eigen::Vector2d;
  auto rhs = [](real, const State& y) { return State(y[1], 0.0); };
  auto observer = [](real, const State& y) {
    if (y[0] > 1.0) throw CoreCollisionError("hit");
  };
  CHECK_THROWS_AS(
      integrate_adaptive(rhs, 0.0, 10.0, State(0.0, 1.0), OdeOptions{}, observer),
      CoreCollisionError);
}

TEST_CASE("complex newton") {
  auto f = [](cplx z) { return z * z + 1.0; };
  auto df = [](cplx z) { return 2.0 * z; };
  const cplx root = newton_complex(f, df, cplx(0.4, 0.9));
  CHECK(std::abs(root - cplx(0, 1)) < 1e-12);
}

TEST_CASE("multivariate newton with fd jacobian") {
  auto fun = [](const Eigen::VectorXd& v) {
    Eigen::VectorXd f(2);
    f << v[0] * v[0] + v[1] - 3.0, v[0] - v[1] * v[1] + 1.0;
    return f;
  };
  Eigen::VectorXd x0(2);
  x0 << 1.5, 1.5;
  const Eigen::VectorXd root = newton_fd(fun, x0);
  CHECK(fun(root).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("golden section and bisection") {
  const real xmin = golden_minimize([](real x) { return (x - 1.3) * (x - 1.3); }, 0.0, 3.0, 1e-10);
  CHECK(xmin == doctest::Approx(1.3).epsilon(1e-8));
  const real root = bisect([](real x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13);
  CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
}

TEST_CASE("sqrt branch with nonnegative real part") {
  const cplx z(-1.0, -1e-12);
  CHECK(sqrt_re_nonneg(z).real() >= 0.0);
  CHECK(sqrt_re_nonneg(cplx(4.0, 0.0)) == cplx(2.0, 0.0));
  const cplx w(0.3, -0.8);
  const cplx s = sqrt_re_nonneg(w * w);
  CHECK(std::abs(s - w) < 1e-14);  // Re(w) > 0 round-trips
}
