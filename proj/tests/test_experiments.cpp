#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyplyap/calabi_yau.hpp"
#include "hyplyap/error.hpp"
#include "hyplyap/experiments.hpp"

using namespace hyplyap;
using namespace hyplyap::experiments;

TEST_CASE("cy_mu reproduces the tabulated angles") {
  for (const CYCase& c : cy_cases()) {
    const calabi_yau::Mu mu = calabi_yau::cy_mu(c.C, c.d);
    INFO("C = ", c.C, ", d = ", c.d);
    CHECK(std::abs(mu.mu1 - c.mu1) < 1e-9);
    CHECK(std::abs(mu.mu2 - c.mu2) < 1e-9);
  }
}

TEST_CASE("cy_mu agrees with numerical eigenvalues") {
  for (const CYCase& c : cy_cases()) {
    const auto ms = calabi_yau::monodromy_set(c.C, c.d);
    std::vector<double> args;
    for (const Complex& z : monodromy::eigenvalues(ms.minf)) {
      args.push_back(std::abs(std::arg(z)) / (2.0 * 3.141592653589793));
    }
    std::sort(args.begin(), args.end());
    // numerical eigenvalues of defective matrices are only accurate to ~sqrt(eps)
    CHECK(std::abs(args[0] - c.mu1) < 1e-4);
    CHECK(std::abs(args[3] - c.mu2) < 1e-4);
  }
}

TEST_CASE("realize_mu round trips") {
  for (const CYCase& c : cy_cases()) {
    const calabi_yau::Realization r = calabi_yau::realize_mu(c.mu1, c.mu2);
    CHECK(r.C == doctest::Approx(c.C).epsilon(1e-9));
    CHECK(r.d == doctest::Approx(c.d).epsilon(1e-9));
  }
  for (const auto& [m1, m2] : mu_grid(20)) {
    const calabi_yau::Realization r = calabi_yau::realize_mu(m1, m2);
    const calabi_yau::Mu mu = calabi_yau::cy_mu(r.C, r.d);
    CHECK(std::abs(mu.mu1 - m1) < 1e-9);
    CHECK(std::abs(mu.mu2 - m2) < 1e-9);
  }
  CHECK(mu_grid(20).size() == 210);
  CHECK_THROWS_AS(calabi_yau::realize_mu(0.4, 0.3), Error);
  CHECK_THROWS_AS(calabi_yau::realize_mu(0.0, 0.3), Error);
}

TEST_CASE("cy_mu rejects non-unimodular spectra") {
  try {
    calabi_yau::cy_mu(100.0, 1.0);
    FAIL("expected NonUnimodular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonUnimodular);
  }
}

TEST_CASE("n = 2 zones") {
  CHECK(n2_zone(0.1, 0.55) == 5);
  CHECK(n2_zone(0.4, 0.1) == 1);
  CHECK(n2_zone(0.2, 0.1) == 2);
  CHECK(n2_zone(0.3, 0.7) == 4);
  CHECK(n2_zone(0.3, 0.45) == 3);
  CHECK_THROWS_AS(n2_zone(0.25, 0.5), Error);
  try {
    n2_zone(0.2, 0.4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChamberWall);
  }
}

TEST_CASE("n = 2 parabolic degrees give the zone formulas") {
  struct Point {
    double r, x, lambda;
  };
  for (const Point& p : {Point{0.1, 0.55, 0.2}, Point{0.4, 0.1, 0.4}, Point{0.2, 0.1, 0.2}, Point{0.3, 0.7, 0.2}}) {
    const auto d = hodge::parabolic_degrees(hodge::analyze(n2_params(p.r, p.x)));
    CHECK(2.0 * d.deg_par[0] == doctest::Approx(p.lambda).epsilon(1e-12));
  }
}

TEST_CASE("weight 2 family") {
  CHECK_THROWS_AS(weight2_params(0.1, 0.2), Error);
  CHECK_THROWS_AS(weight2_params(0.0, 0.1), Error);
  const HGParams p = weight2_params(0.05, 0.1);
  const hodge::Diagram d = hodge::analyze(p);
  CHECK(d.h == std::vector<int>{1, 1, 1});
  const auto deg = hodge::parabolic_degrees(d);
  double total = 0.0;
  for (double v : deg.deg_par) total += v;
  CHECK(std::abs(total) < 1e-12);
}

TEST_CASE("linspace and run_jobs") {
  CHECK(linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(linspace(0.3, 0.9, 1) == std::vector<double>{0.3});
  const auto rows = run_jobs(7, 3, [](int i) {
    ResultRow r;
    r.point = i;
    return r;
  });
  for (int i = 0; i < 7; ++i) CHECK(rows[static_cast<std::size_t>(i)].point == i);
  CHECK_THROWS(run_jobs(3, 2, [](int i) -> ResultRow {
    if (i == 1) throw Error(ErrorCode::InvalidParams, "boom");
    return {};
  }));
}

TEST_CASE("CSV schema") {
  const std::string header = csv_header();
  CHECK(header.rfind("experiment,point,C,d,mu1,mu2,r,x,y,n,", 0) == 0);
  CHECK(header.find("lambda_1,lambda_2,lambda_3,lambda_4") != std::string::npos);
  CHECK(header.find("gap,gap_stderr,flag,zone") != std::string::npos);
  ResultRow row;
  row.experiment = "n2";
  row.n = 2;
  row.lambda = {0.2, -0.2};
  std::ostringstream os;
  write_csv(os, {row});
  const std::string text = os.str();
  CHECK(text.rfind(header + "\n", 0) == 0);
  const std::string line = text.substr(header.size() + 1);
  const auto commas = std::count(line.begin(), line.end(), ',');
  CHECK(commas == std::count(header.begin(), header.end(), ','));
  CHECK(line.find("n2,0,,,,,,,,2,0.2,-0.2,,") == 0);
}

TEST_CASE("small estimates fill the rows") {
  lyapunov::RunConfig cfg;
  cfg.digits = 20'000;
  cfg.windows = 10;
  const ResultRow cy = cy_point(64, 16, cfg);
  CHECK(cy.reference == doctest::Approx(2.0));
  CHECK(cy.n == 4);
  CHECK(std::abs(cy.gap) < 0.3);
  CHECK(cy.line3 == doctest::Approx(0.0));
  const ResultRow n2 = n2_point(0.1, 0.55, cfg);
  CHECK(n2.zone == 5);
  CHECK(n2.reference == doctest::Approx(0.2));
  const auto scan = n2_scan({0.25, 0.1}, {0.5}, cfg);
  CHECK(scan[0].flag == "wall");
  CHECK(scan[1].flag != "wall");
}
