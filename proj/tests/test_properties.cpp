#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>

#include "assouad_kit/closed_form.hpp"
#include "assouad_kit/covering.hpp"
#include "assouad_kit/verify.hpp"
#include "test_support.hpp"

using namespace akit;
using testing_support::Rng;

namespace {

constexpr int kSpecs = 200;
constexpr double kTol = 1e-12;

struct Model {
  std::string label;
  double lower = 0, box = 0, qa = 0;
  std::function<double(double)> assouad;
  std::function<double(double)> lower_spectrum;
};

CarpetSpec any_carpet(Rng& rng) {
  CarpetSpec c;
  c.m = rng.integer(2, 6);
  c.n = rng.integer(c.m + 1, 10);
  std::set<std::pair<int, int>> cells;
  const int want = rng.integer(1, c.m * c.n);
  while (static_cast<int>(cells.size()) < want) cells.insert({rng.integer(0, c.m - 1), rng.integer(0, c.n - 1)});
  c.cells.assign(cells.begin(), cells.end());
  return c;
}

Model any_model(Rng& rng, int i) {
  switch (i % 4) {
    case 0: {
      auto c = any_carpet(rng);
      auto r = carpet_dimensions(c);
      return {"carpet", r.lower->value, r.box_upper->value, r.quasi_assouad->value,
              [c](double t) { return carpet_spectrum(c, t).first; },
              [c](double t) { return carpet_spectrum(c, t).second; }};
    }
    case 1: {
      auto lg = lalley_gatzouras_family(rng.uniform(0.005, 1.0 / 3));
      return {"three-map family", lg.report.lower->value, lg.report.box_upper->value,
              lg.report.quasi_assouad->value, lg.assouad_spectrum, lg.lower_spectrum};
    }
    case 2: {
      const double p = rng.uniform(0.02, 8.0);
      return {"sequence", 0.0, sequence_box_dimension(p), 1.0, [p](double t) { return sequence_spectrum(p, t); }, {}};
    }
    default: {
      const double p = rng.uniform(0.02, 8.0);
      return {"spiral", 0.0, spiral_box_dimension(p), 2.0, [p](double t) { return spiral_spectrum(p, t); }, {}};
    }
  }
}

PointSet any_finite_set(Rng& rng, std::size_t d) {
  std::set<std::vector<double>> pts;
  const int n = rng.integer(1, 40);
  const double spread = std::ldexp(1.0, -rng.integer(0, 10));
  std::vector<double> base(d);
  for (auto& b : base) b = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = base[j] + spread * rng.uniform();
    pts.insert(p);
  }
  std::vector<double> coords;
  for (const auto& p : pts) coords.insert(coords.end(), p.begin(), p.end());
  return PointSet(d, std::move(coords), 0.0);
}

}  // namespace

TEST(Properties, DimensionLattice) {
  Rng rng(101);
  for (int i = 0; i < kSpecs; ++i) {
    DimensionReport r;
    if (i % 5 == 4) {
      const int d = rng.integer(1, 3), m = rng.integer(2, 6);
      r = percolation_theory(d, m, rng.uniform(std::pow(m, -d) * 1.001, 0.999));
    } else if (i % 5 == 0) {
      r = carpet_dimensions(any_carpet(rng));
    } else if (i % 5 == 1) {
      r = lalley_gatzouras_family(rng.uniform(0.005, 1.0 / 3)).report;
    } else if (i % 5 == 2) {
      r = sequence_dimensions(rng.uniform(0.02, 8.0));
    } else {
      r = spiral_dimensions(rng.uniform(0.02, 8.0));
    }
    // Pairwise ordering over whichever entries are present.
    const std::vector<const std::optional<DimensionEntry>*> chain{&r.lower, &r.hausdorff, &r.box_lower, &r.box_upper,
                                                                  &r.assouad};
    for (std::size_t a = 0; a < chain.size(); ++a)
      for (std::size_t b = a + 1; b < chain.size(); ++b)
        if (*chain[a] && *chain[b]) {
          EXPECT_LE((*chain[a])->value, (*chain[b])->value + kTol) << i;
        }
    if (r.quasi_assouad && r.assouad) {
      EXPECT_LE(r.quasi_assouad->value, r.assouad->value + kTol);
    }
    EXPECT_TRUE(r.lattice_holds());
  }
}

TEST(Properties, SpectrumSandwich) {
  Rng rng(202);
  for (int i = 0; i < kSpecs; ++i) {
    auto m = any_model(rng, i);
    const double t = rng.uniform(0.001, 0.999);
    const double a = m.assouad(t);
    EXPECT_GE(a, m.box - kTol) << m.label << " " << t;
    EXPECT_LE(a, std::min(m.box / (1 - t), m.qa) + kTol) << m.label << " " << t;
    if (m.lower_spectrum) {
      const double l = m.lower_spectrum(t);
      EXPECT_GE(l, m.lower - kTol);
      EXPECT_LE(l, m.box + kTol);
    }
  }
}

TEST(Properties, TwoPointInequality) {
  Rng rng(303);
  for (int i = 0; i < kSpecs; ++i) {
    auto m = any_model(rng, i);
    const double t1 = rng.uniform(0.01, 0.98);
    const double t2 = rng.uniform(t1 + 1e-4, 0.995);
    const double w = (1 - t2) / (1 - t1);
    const double aq = m.assouad(t1 / t2);
    EXPECT_LE(w * m.assouad(t2), m.assouad(t1) + kTol) << m.label;
    EXPECT_LE(m.assouad(t1), w * m.assouad(t2) + (t2 - t1) / (1 - t1) * aq + kTol) << m.label;
    if (m.lower_spectrum) {
      const double den = t2 - t1 * t2;
      EXPECT_LE(w * m.lower_spectrum(t2), m.lower_spectrum(t1) + kTol);
      EXPECT_LE(m.lower_spectrum(t1), (t1 - t1 * t2) / den * m.lower_spectrum(t2) + (t2 - t1) / den * aq + kTol);
    }
  }
}

TEST(Properties, PlateauPersists) {
  Rng rng(404);
  int reached_somewhere = 0;
  for (int i = 0; i < kSpecs; ++i) {
    auto m = any_model(rng, i);
    const double t0 = rng.uniform(0.01, 0.99);
    if (std::abs(m.assouad(t0) - m.qa) > 1e-9) continue;
    ++reached_somewhere;
    for (int g = 0; g < 50; ++g) {
      const double t = t0 + (1 - t0) * g / 50.0;
      EXPECT_NEAR(m.assouad(t), m.qa, 1e-9) << m.label << " from " << t0;
    }
  }
  EXPECT_GT(reached_somewhere, kSpecs / 4);
}

TEST(Properties, ProductCountingSuperMultiplicative) {
  Rng rng(505);
  for (int i = 0; i < kSpecs; ++i) {
    auto a = any_finite_set(rng, static_cast<std::size_t>(rng.integer(1, 2)));
    auto b = any_finite_set(rng, static_cast<std::size_t>(rng.integer(1, 2)));
    auto ab = product_set(a, b);
    const int k = rng.integer(-2, 14);
    const auto na = testing_support::enumerate_cells(a, k);
    const auto nb = testing_support::enumerate_cells(b, k);
    const auto nab = mesh_count(ab, {k}).count;
    EXPECT_EQ(nab, testing_support::enumerate_cells(ab, k));
    const double c = std::pow(3.0, static_cast<double>(a.dim() + b.dim()));
    EXPECT_GE(static_cast<double>(nab), static_cast<double>(na * nb) / c);
    EXPECT_LE(static_cast<double>(nab), c * static_cast<double>(na * nb));
  }
}

TEST(Properties, LibrarySuiteAgrees) {
  auto rep = run_suite("properties");
  ASSERT_EQ(rep.checks.size(), 5u);
  for (const auto& c : rep.checks) {
    EXPECT_TRUE(c.pass) << c.name << ": " << c.observed;
    EXPECT_EQ(c.observed, "200/200");
  }
}
