#include <gtest/gtest.h>

#include <cmath>

#include "assouad_kit/closed_form.hpp"
#include "test_support.hpp"

using namespace akit;

namespace {

const double kLog2 = std::log(2.0), kLog3 = std::log(3.0), kLog5 = std::log(5.0);

CarpetSpec example861() { return {3, 5, {{0, 2}, {2, 0}, {2, 2}, {2, 4}}}; }
CarpetSpec fig84() { return {2, 3, {{0, 0}, {0, 2}, {1, 1}}}; }

WeightedMeasureSpec eps_measure(double eps) {
  return {example861(), {eps, (1 - eps) / 3, (1 - eps) / 3, (1 - eps) / 3}};
}

}  // namespace

TEST(SimilarityDimension, PaperValues) {
  EXPECT_NEAR(similarity_dimension({1.0 / 3, 1.0 / 3}), kLog2 / kLog3, 1e-11);
  EXPECT_NEAR(similarity_dimension({1.0 / 3, 0.5, 0.125}), 0.9582, 1e-4);
  EXPECT_NEAR(similarity_dimension({0.5, 0.5, 0.5, 1.0 / 3}), 1.7999, 1e-4);
  EXPECT_EQ(similarity_dimension({0.5}), 0.0);
  EXPECT_THROW(similarity_dimension({}), Error);
  EXPECT_THROW(similarity_dimension({1.0}), Error);
}

TEST(SimilarityDimension, ResidualVanishes) {
  testing_support::Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> c;
    for (int i = rng.integer(1, 9); i > 0; --i) c.push_back(rng.uniform(0.01, 0.99));
    const double s = similarity_dimension(c);
    double sum = 0.0, deriv = 0.0;
    for (double x : c) {
      sum += std::pow(x, s);
      deriv += std::pow(x, s) * std::log(x);
    }
    if (c.size() > 1) {
      EXPECT_NEAR(sum, 1.0, std::abs(deriv) * 2e-12 + 1e-14);
    }
  }
}

TEST(CarpetDimensions, Example861) {
  auto r = carpet_dimensions(example861());
  EXPECT_NEAR(r.lower->value, 0.6309, 1e-4);
  EXPECT_NEAR(r.hausdorff->value, 1.0347, 1e-4);
  EXPECT_NEAR(r.box_upper->value, 1.0616, 1e-4);
  EXPECT_NEAR(r.assouad->value, 1.3135, 1e-4);
  EXPECT_NEAR(r.assouad->value, kLog2 / kLog3 + kLog3 / kLog5, 1e-14);
  EXPECT_TRUE(r.lattice_holds());
}

TEST(CarpetDimensions, UniformFibresCoincide) {
  auto r = carpet_dimensions({3, 5, {{0, 1}, {0, 3}, {1, 0}, {1, 4}}});
  EXPECT_NEAR(r.lower->value, r.assouad->value, 1e-14);
  EXPECT_NEAR(r.hausdorff->value, r.assouad->value, 1e-14);
  EXPECT_NEAR(r.box_upper->value, r.assouad->value, 1e-14);
}

TEST(CarpetDimensions, Fig84ByHand) {
  auto r = carpet_dimensions(fig84());
  EXPECT_NEAR(r.assouad->value, 1 + kLog2 / kLog3, 1e-14);
  EXPECT_NEAR(r.lower->value, 1.0, 1e-14);
  EXPECT_NEAR(r.box_upper->value, 1 + std::log(1.5) / kLog3, 1e-14);
  EXPECT_NEAR(r.box_upper->value, 1.3690, 1e-4);
}

TEST(CarpetSpectrum, PlateauAndContinuity) {
  auto c = fig84();
  auto dims = carpet_dimensions(c);
  const double rho = kLog2 / kLog3;
  auto [a, l] = carpet_spectrum(c, 1 - 1e-9);
  EXPECT_EQ(a, dims.assouad->value);
  EXPECT_EQ(l, dims.lower->value);
  auto at = carpet_spectrum(c, rho);
  EXPECT_NEAR(at.first, dims.assouad->value, 1e-13);
  auto below = carpet_spectrum(c, std::nextafter(rho, 0.0));
  EXPECT_NEAR(below.first, dims.assouad->value, 1e-12);
  EXPECT_NEAR(below.second, dims.lower->value, 1e-12);
  EXPECT_THROW(carpet_spectrum(c, 0.0), Error);
  EXPECT_THROW(carpet_spectrum(c, 1.0), Error);
}

TEST(CarpetSpectrum, Fig84PaperValues) {
  EXPECT_NEAR(carpet_spectrum(fig84(), 0.25).first, 1.420, 1e-3);
  EXPECT_NEAR(carpet_spectrum(fig84(), 0.5).first, 1.522, 1e-3);
  EXPECT_NEAR(carpet_spectrum(fig84(), 0.75).first, 1.631, 1e-3);
}

TEST(CarpetSpectrum, AgreesWithGenericForm) {
  auto c = example861();
  auto dims = carpet_dimensions(c);
  const double rho = kLog3 / kLog5, theta = 0.2;
  const double b = dims.box_upper->value, qa = dims.quasi_assouad->value;
  const double generic = b + (1 - rho) * theta / ((1 - theta) * rho) * (qa - b);
  EXPECT_NEAR(carpet_spectrum(c, theta).first, generic, 1e-12);
  EXPECT_NEAR(spectrum_bounds(b, qa, rho, theta).generic, generic, 1e-12);
}

TEST(SequenceSpectrum, Values) {
  EXPECT_DOUBLE_EQ(sequence_spectrum(1.0, 0.5), 1.0);
  EXPECT_NEAR(sequence_spectrum(1.0, 1e-9), 0.5, 1e-8);
  EXPECT_DOUBLE_EQ(sequence_spectrum(3.0, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(sequence_box_dimension(1.0), 0.5);
}

TEST(SpiralFormulas, Values) {
  EXPECT_NEAR(spiral_box_dimension(0.5), 4.0 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(spiral_box_dimension(2.0), 1.0);
  EXPECT_NEAR(spiral_spectrum(2.0, 0.5), 1.5, 1e-15);
  for (double p : {1.0, 1.5, 3.0})
    for (double theta : {p / (1 + p), p / (1 + p) + 0.01, 0.99}) EXPECT_NEAR(spiral_spectrum(p, theta), 2.0, 1e-12);
  auto r = spiral_dimensions(0.5);
  EXPECT_EQ(r.assouad->value, 2.0);
  EXPECT_EQ(r.quasi_assouad->value, 2.0);
}

TEST(SpiralWinding, Bounds) {
  auto b = spiral_winding_alpha_bound(1.0, 1.0);
  EXPECT_DOUBLE_EQ(b.box_bound, 1.0);
  EXPECT_DOUBLE_EQ(b.spectrum_bound, 2.0 / 3);
  EXPECT_DOUBLE_EQ(b.sharp_bound, 0.5);
  auto far = spiral_winding_alpha_bound(0.7, 1e9);
  EXPECT_NEAR(far.spectrum_bound, far.box_bound, 1e-8);
  testing_support::Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const double p = rng.uniform(0.01, 1.0), beta = rng.uniform(1, 100);
    auto w = spiral_winding_alpha_bound(p, beta);
    EXPECT_LE(w.sharp_bound, w.spectrum_bound + 1e-15);
    EXPECT_LE(w.spectrum_bound, w.box_bound + 1e-15);
  }
  // Past p = 1 the sharp bound exceeds the spectrum bound exactly when p * beta > p + beta.
  for (int t = 0; t < 200; ++t) {
    const double p = rng.uniform(1.0, 10.0), beta = rng.uniform(1, 100);
    auto w = spiral_winding_alpha_bound(p, beta);
    if (std::abs(p * beta - (p + beta)) > 1e-6) {
      EXPECT_EQ(w.sharp_bound <= w.spectrum_bound, p * beta <= p + beta);
    }
    EXPECT_LE(w.spectrum_bound, w.box_bound + 1e-15);
  }
  EXPECT_THROW(spiral_winding_alpha_bound(1.0, 0.5), Error);
}

TEST(Kleinian, Examples) {
  auto ap = kleinian_dimensions(1.305, 1, 1, 2, true);
  EXPECT_NEAR(ap.measure_assouad, 1.61, 1e-9);
  EXPECT_NEAR(ap.limit_set.assouad->value, 1.305, 1e-15);
  EXPECT_EQ(ap.limit_set.lower->value, 1.0);
  auto fu = kleinian_dimensions(0.7, 1, 1, 1, true);
  EXPECT_EQ(fu.limit_set.assouad->value, 1.0);
  EXPECT_EQ(fu.limit_set.hausdorff->value, 0.7);
  auto plain = kleinian_dimensions(0.9, 0, 0, 2, false);
  for (const auto* e : plain.limit_set.chain()) EXPECT_EQ((*e)->value, 0.9);
  EXPECT_EQ(plain.measure_assouad, 0.9);
  EXPECT_EQ(plain.measure_lower, 0.9);
  EXPECT_THROW(kleinian_dimensions(0.4, 1, 1, 2, true), Error);
  EXPECT_THROW(kleinian_dimensions(1.5, 2, 1, 2, true), Error);
}

TEST(SelfSimilarMeasure, Examples) {
  auto u = self_similar_measure_dimensions({1.0 / 3, 1.0 / 3}, {0.5, 0.5});
  for (double v : {u.assouad, u.box, u.lower, u.hausdorff}) EXPECT_NEAR(v, kLog2 / kLog3, 1e-14);
  auto b = self_similar_measure_dimensions({1.0 / 3, 1.0 / 3}, {0.7, 0.3});
  EXPECT_NEAR(b.assouad, std::log(0.3) / std::log(1.0 / 3), 1e-14);
  EXPECT_NEAR(b.assouad, 1.0959, 1e-4);
  EXPECT_NEAR(b.lower, std::log(0.7) / std::log(1.0 / 3), 1e-14);
  testing_support::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.integer(2, 6);
    std::vector<double> c, p;
    double s = 0;
    for (int i = 0; i < n; ++i) {
      c.push_back(rng.uniform(0.05, 0.9));
      p.push_back(rng.uniform(0.01, 1));
      s += p.back();
    }
    for (auto& x : p) x /= s;
    auto m = self_similar_measure_dimensions(c, p);
    EXPECT_LE(m.hausdorff, m.assouad + 1e-12);
    EXPECT_GE(m.hausdorff, m.lower - 1e-12);
  }
  EXPECT_THROW(self_similar_measure_dimensions({0.5}, {0.5, 0.5}), Error);
}

TEST(CarpetMeasure, CoordinateUniformRealisesSupportBounds) {
  auto m = carpet_measure_dimensions(eps_measure(0.5));
  auto f = carpet_dimensions(example861());
  EXPECT_NEAR(m.assouad, f.assouad->value, 1e-14);
  EXPECT_NEAR(m.lower, f.lower->value, 1e-14);
  EXPECT_NEAR(m.assouad, 1.3135, 1e-4);
}

TEST(CarpetMeasure, McMullenWeightsGiveCarpetHausdorff) {
  for (const auto& c : {example861(), fig84(), CarpetSpec{4, 7, {{0, 0}, {0, 3}, {2, 1}, {2, 2}, {2, 6}, {3, 5}}}}) {
    WeightedMeasureSpec mu{c, mcmullen_weights(c)};
    EXPECT_NEAR(carpet_measure_dimensions(mu).hausdorff, carpet_dimensions(c).hausdorff->value, 1e-12);
  }
}

TEST(CarpetMeasure, UniformMeasureBoxByHand) {
  // eps = 1/4: P = 1/4 on the single-cell column, 3/4 on the other; every p = 1/4.
  auto m = carpet_measure_dimensions(eps_measure(0.25));
  const double want = std::log(4.0) * (1 / kLog3 - 1 / kLog5) + std::log(4.0) / kLog5;
  EXPECT_NEAR(m.box, want, 1e-14);
  EXPECT_NEAR(m.assouad, std::log(4.0) / kLog3 + std::log(3.0) / kLog5, 1e-14);
  EXPECT_NEAR(m.lower, std::log(4.0 / 3) / kLog3, 1e-14);
}

TEST(CarpetMeasure, HausdorffAgainstDirectEntropy) {
  for (double eps : {0.1, 0.25, 0.5, 0.8}) {
    auto m = carpet_measure_dimensions(eps_measure(eps));
    const double q = (1 - eps) / 3;
    const double h = -(eps * std::log(eps) + 3 * q * std::log(q));
    const double hp = -(eps * std::log(eps) + (1 - eps) * std::log(1 - eps));
    EXPECT_NEAR(m.hausdorff, h / kLog5 + (kLog5 - kLog3) / kLog5 * hp / kLog3, 1e-14);
    EXPECT_LE(m.lower, m.hausdorff + 1e-12);
    EXPECT_LE(m.hausdorff, m.box + 1e-12);
    EXPECT_LE(m.box, m.assouad + 1e-12);
  }
}

TEST(CarpetMeasure, WarnsWithoutSeparation) {
  WeightedMeasureSpec mu{fig84(), {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  EXPECT_FALSE(carpet_measure_dimensions(mu).warnings.empty());
  EXPECT_TRUE(carpet_measure_dimensions(eps_measure(0.3)).warnings.empty());
}

TEST(LalleyGatzouras, Examples) {
  auto third = lalley_gatzouras_family(1.0 / 3);
  for (const auto* e : third.report.chain()) EXPECT_EQ((*e)->value, 1.0);
  auto ninth = lalley_gatzouras_family(1.0 / 9);
  EXPECT_NEAR(ninth.report.assouad->value, kLog2 / kLog3 + kLog2 / std::log(9.0), 1e-14);
  EXPECT_NEAR(ninth.report.assouad->value, 0.9464, 1e-4);
  auto near = lalley_gatzouras_family(1.0 / 3 - 1e-9);
  EXPECT_NEAR(near.report.assouad->value, 2 * kLog2 / kLog3, 1e-8);
  EXPECT_NEAR(near.report.box_upper->value, 1.0, 1e-8);
  EXPECT_THROW(lalley_gatzouras_family(0.5), Error);
  EXPECT_THROW(lalley_gatzouras_family(0.0), Error);
}

TEST(LalleyGatzouras, SpectraContinuousAtTransition) {
  for (double lambda : {0.05, 0.1, 0.2, 0.3}) {
    auto f = lalley_gatzouras_family(lambda);
    const double t = f.transition;
    EXPECT_NEAR(f.assouad_spectrum(t), f.report.assouad->value, 1e-12);
    EXPECT_NEAR(f.lower_spectrum(t), f.report.lower->value, 1e-12);
    EXPECT_NEAR(f.assouad_spectrum(1e-9), f.report.box_upper->value, 1e-8);
    EXPECT_TRUE(f.report.lattice_holds());
  }
}

TEST(AffinityDimension, SimilaritiesReduceToHutchinsonMoran) {
  std::vector<double> c{1.0 / 3, 0.5, 0.125};
  std::vector<Eigen::MatrixXd> maps;
  for (double x : c) maps.push_back(Eigen::MatrixXd::Constant(1, 1, x));
  auto rep = affinity_dimension(maps, 8);
  ASSERT_EQ(rep.trace.size(), 8u);
  const double s = similarity_dimension(c);
  for (double v : rep.trace) EXPECT_NEAR(v, s, 1e-10);
}

TEST(AffinityDimension, SingleMapTraceIsMonotone) {
  Eigen::MatrixXd a(2, 2);
  a << 0.5, 0.0, 0.0, 0.25;
  auto rep = affinity_dimension({a}, 10);
  for (std::size_t i = 1; i < rep.trace.size(); ++i) EXPECT_LE(rep.trace[i], rep.trace[i - 1] + 1e-12);
  EXPECT_NEAR(rep.dimension, 0.0, 1e-11);
}

TEST(AffinityDimension, DiagonalCarpetMapsByHand) {
  // N = 2 maps diag(1/3, 1/5) at level 1: 2 * 3^-s = 1 on the s <= 1 branch.
  Eigen::MatrixXd a(2, 2);
  a << 1.0 / 3, 0.0, 0.0, 0.2;
  auto rep = affinity_dimension({a, a}, 1);
  EXPECT_NEAR(rep.dimension, kLog2 / kLog3, 1e-11);
  // N = 4: s > 1, 4 * (1/3) * 5^-(s-1) = 1.
  auto four = affinity_dimension({a, a, a, a}, 1);
  EXPECT_NEAR(four.dimension, 1 + std::log(4.0 / 3) / kLog5, 1e-11);
}

TEST(AffinityDimension, SingularValueFunction) {
  Eigen::VectorXd sv(2);
  sv << 0.5, 0.2;
  EXPECT_DOUBLE_EQ(singular_value_function(sv, 0.0), 1.0);
  EXPECT_NEAR(singular_value_function(sv, 1.5), 0.5 * std::sqrt(0.2), 1e-15);
  EXPECT_NEAR(singular_value_function(sv, 3.0), std::pow(0.1, 1.5), 1e-15);
}

TEST(Percolation, Formula) {
  auto r = percolation_theory(2, 2, 0.8);
  EXPECT_NEAR(r.box_upper->value, 2 + std::log(0.8) / kLog2, 1e-15);
  EXPECT_NEAR(r.box_upper->value, 1.678, 1e-3);
  EXPECT_EQ(r.assouad->value, 2.0);
  EXPECT_NEAR(percolation_theory(2, 2, 1 - 1e-12).box_upper->value, 2.0, 1e-10);
  auto thin = percolation_theory(2, 2, 0.25 + 1e-6);
  EXPECT_LT(thin.box_upper->value, 1e-4);
  EXPECT_EQ(thin.assouad->value, 2.0);
  EXPECT_THROW(percolation_theory(2, 2, 0.2), Error);
}

TEST(SpectrumBounds, Examples) {
  auto b = spectrum_bounds(0.5, 1.0, 0.8, 0.4);
  // (1/5 * 2/5) / (3/5 * 4/5) = 1/6 of the gap qA - box = 1/2.
  EXPECT_NEAR(b.generic, 0.5 + 0.5 / 6, 1e-15);
  EXPECT_NEAR(b.upper, std::min(0.5 / 0.6, 1.0), 1e-15);
  EXPECT_NEAR(b.lower, std::max(0.5, 0.2 / 0.6), 1e-15);
  auto tiny = spectrum_bounds(0.5, 1.0, 0.8, 1e-12);
  EXPECT_NEAR(tiny.generic, 0.5, 1e-11);
  EXPECT_NEAR(tiny.upper, 0.5, 1e-11);
  EXPECT_NEAR(tiny.lower, 0.5, 1e-11);
  EXPECT_EQ(spectrum_bounds(0.5, 1.0, 0.8, 0.9).generic, 1.0);
  EXPECT_THROW(spectrum_bounds(1.0, 0.5, 0.8, 0.4), Error);
}

TEST(DimensionReportType, LatticeDetectsViolations) {
  DimensionReport r;
  r.box_upper = DimensionEntry{1.0, ""};
  r.assouad = DimensionEntry{0.5, ""};
  EXPECT_FALSE(r.lattice_holds());
  r.assouad = DimensionEntry{1.5, ""};
  r.quasi_assouad = DimensionEntry{1.6, ""};
  EXPECT_FALSE(r.lattice_holds());
  r.quasi_assouad = DimensionEntry{1.2, ""};
  EXPECT_TRUE(r.lattice_holds());
  DimensionReport z;
  z.box_upper = DimensionEntry{0.0, ""};
  z.quasi_assouad = DimensionEntry{0.3, ""};
  EXPECT_FALSE(z.lattice_holds());
}
