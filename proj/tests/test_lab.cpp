#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "odd/errors.hpp"
#include "odd/lab.hpp"
#include "odd/quantity.hpp"

namespace odd {
namespace {

TEST(Generate, DeterministicEnvelope) {
  const auto a = generate(DecayModel{DecayModel::Kind::Deterministic, 2.0, 1.0, 0}, 1, 4);
  for (int k = -4; k <= 4; ++k)
    for (int l = -4; l <= 4; ++l)
      EXPECT_DOUBLE_EQ(a.at(LatticeIndex::d1(k), LatticeIndex::d1(l)).real(), std::pow(1.0 + std::abs(k - l), -2.0));
  for (const cplx v : side_diagonal(a, LatticeIndex::d1(0))) EXPECT_EQ(v, cplx(1.0));
}

TEST(Generate, EnvelopeBoundHolds) {
  for (const auto kind : {DecayModel::Kind::RandomPhase, DecayModel::Kind::RandomMagnitude})
    for (const int dim : {1, 2}) {
      const DecayModel m{kind, 1.5, 0.7, 99};
      const auto a = generate(m, dim, dim == 1 ? 10 : 3);
      const Window& w = a.window();
      for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t q = 0; q < w.size(); ++q) {
          const LatticeIndex k = w.point(p), l = w.point(q);
          EXPECT_LE(std::abs(a.at(k, l)), m.c * std::pow(1.0 + (k - l).norm2(), -m.r) * (1 + 1e-15));
        }
    }
}

TEST(Generate, SeedsAndNestedWindows) {
  const DecayModel m{DecayModel::Kind::RandomPhase, 2.0, 1.0, 7};
  EXPECT_EQ(generate(m, 1, 8), generate(m, 1, 8));
  DecayModel other = m;
  other.seed = 8;
  EXPECT_FALSE(generate(m, 1, 8) == generate(other, 1, 8));
  const auto small = generate(m, 2, 2), large = generate(m, 2, 4);
  for (std::size_t p = 0; p < small.window().size(); ++p)
    for (std::size_t q = 0; q < small.window().size(); ++q) {
      const LatticeIndex k = small.window().point(p), l = small.window().point(q);
      EXPECT_EQ(small.at(k, l), large.at(k, l));
    }
}

TEST(Generate, FlatEnvelopeAndDiagonalCount) {
  const auto a = generate(DecayModel{DecayModel::Kind::RandomPhase, 0.0, 1.5, 2}, 1, 8);
  for (const auto& d : a.slots())
    for (const cplx v : d) EXPECT_NEAR(std::abs(v), 1.5, 1e-15);
  EXPECT_EQ(generate(DecayModel{}, 1, 64).stored_count(), 257u);
  EXPECT_THROW(generate(DecayModel{DecayModel::Kind::Deterministic, -1.0, 1.0, 0}, 1, 4), InvalidArgument);
  EXPECT_THROW(generate(DecayModel{DecayModel::Kind::Deterministic, 1.0, 0.0, 0}, 1, 4), InvalidArgument);
  EXPECT_THROW(generate(DecayModel{}, 1, 0), InvalidArgument);
  EXPECT_THROW(generate(DecayModel{}, 3, 4), InvalidArgument);
}

TEST(Generate, KindNames) {
  for (const auto k : {DecayModel::Kind::Deterministic, DecayModel::Kind::RandomPhase, DecayModel::Kind::RandomMagnitude})
    EXPECT_EQ(parse_decay_kind(to_string(k)), k);
  EXPECT_EQ(parse_decay_kind("random-phase"), DecayModel::Kind::RandomPhase);
  EXPECT_THROW(parse_decay_kind("gaussian"), ParseError);
}

TEST(Corpus, ModelsDependOnSeedOnly) {
  const auto m = decay_models(9, 5);
  ASSERT_EQ(m.size(), 9u);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(int(m[i].kind), int(i % 3));
    EXPECT_GE(m[i].r, 2.0);
    EXPECT_LE(m[i].r, 4.0);
    EXPECT_GE(m[i].c, 0.5);
    EXPECT_LE(m[i].c, 2.0);
  }
  EXPECT_EQ(decay_models(9, 5), m);
  const auto c = decay_corpus(1, 6, 9, 5);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i], generate(m[i], 1, 6));
}

TEST(Invert, MarginAndExamples) {
  EXPECT_THROW(make_invertible(LatticeMatrix::zero(Window(1, 4))), InvalidArgument);
  EXPECT_THROW(make_invertible(LatticeMatrix::identity(Window(1, 4)), 1.0), InvalidArgument);
  const auto s = LatticeMatrix::single_diagonal(Window(1, 6), LatticeIndex::d1(1), 1.0);
  const auto b = make_invertible(s, 2.0);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.to_dense());
  EXPECT_GE(svd.singularValues().minCoeff(), 1.0 - 1e-12);

  const auto id = LatticeMatrix::identity(Window(2, 2));
  EXPECT_EQ(invert_finite_section(id), id);
  EXPECT_EQ(invert_finite_section(scale(id, 2.0)), scale(id, 0.5));
}

TEST(Invert, ShiftedIdentityHasGeometricInverse) {
  const Window w(1, 10);
  const auto b = add(scale(LatticeMatrix::identity(w), 2.0), LatticeMatrix::single_diagonal(w, LatticeIndex::d1(1), 1.0));
  double residual = -1.0;
  const auto x = invert_finite_section(b, &residual);
  EXPECT_LT(residual, 1e-14);
  for (int m = 0; m <= 2 * 10; ++m)
    for (const cplx v : side_diagonal(x, LatticeIndex::d1(m)))
      EXPECT_NEAR(std::abs(v - cplx((m % 2 ? -1.0 : 1.0) * std::ldexp(1.0, -(m + 1)))), 0.0, 1e-15);
  for (int m = 1; m <= 20; ++m) EXPECT_TRUE(side_diagonal(x, LatticeIndex::d1(-m)) == std::vector<cplx>(std::size_t(21 - m)));
}

TEST(Invert, SingularSectionRejected) {
  const Window w(1, 3);
  const auto singular = LatticeMatrix::from_function(w, [](const LatticeIndex& k, const LatticeIndex&) {
    return cplx(k[0] == 0 ? 0.0 : 1.0);
  });
  try {
    invert_finite_section(singular);
    FAIL() << "expected SingularSection";
  } catch (const SingularSection& e) {
    EXPECT_GT(e.condition_estimate(), 1e10);
  }
}

TEST(Invert, QuotientRuleOnInverse) {
  for (const auto& a : decay_corpus(1, 24, 3, 13)) {
    const auto b = make_invertible(a);
    const auto x = invert_finite_section(b);
    const Vec t{0.318, 0.0};
    const auto q = scale(multiply(multiply(modulate(x, t), difference(b, t, 1)), x), -1.0);
    EXPECT_LT(max_abs_difference(difference(x, t, 1), q), 1e-12);
  }
}

TEST(Profile, PolynomialDecayFit) {
  const auto a = generate(DecayModel{DecayModel::Kind::Deterministic, 2.0, 1.0, 0}, 1, 64);
  const auto p = decay_profile(a);
  EXPECT_NEAR(p.exponent, 2.0, 0.05);
  EXPECT_NEAR(p.exponent, -p.slope, 1e-15);
  EXPECT_EQ(p.fit_lo, 1);
  EXPECT_EQ(p.fit_hi, 72);
  EXPECT_FALSE(p.super_polynomial);
  EXPECT_EQ(p.envelope.size(), 97u);
  EXPECT_LT(p.residual, 1e-12);
}

TEST(Profile, ModelExponentRecoveredAtLargeWindow) {
  for (const double r : {2.0, 3.0, 3.7}) {
    const auto p = decay_profile(generate(DecayModel{DecayModel::Kind::Deterministic, r, 1.0, 0}, 1, 128));
    EXPECT_NEAR(p.exponent, r, 0.05);
  }
}

TEST(Profile, IdentityRefused) {
  EXPECT_THROW(decay_profile(LatticeMatrix::identity(Window(1, 32))), InsufficientData);
  EXPECT_THROW(decay_profile(generate(DecayModel{}, 1, 32), 5, 4), InvalidArgument);
}

TEST(Profile, GeometricInverseFlaggedSuperPolynomial) {
  double previous = 0.0;
  for (const int W : {32, 64, 128}) {
    const Window w(1, W);
    const auto b = add(scale(LatticeMatrix::identity(w), 2.0), LatticeMatrix::single_diagonal(w, LatticeIndex::d1(1), 1.0));
    const auto p = decay_profile(invert_finite_section(b));
    EXPECT_TRUE(p.super_polynomial) << W;
    EXPECT_GT(p.exponent, previous);
    previous = p.exponent;
  }
}

TEST(Profile, PlotCsv) {
  const auto p = decay_profile(generate(DecayModel{}, 1, 16));
  std::ostringstream os;
  write_profile_csv(os, p);
  EXPECT_EQ(os.str().rfind("m,envelope\n0,1\n1,0.25\n", 0), 0u);
}

TEST(Report, JaffardInvariance) {
  DecayModel model;
  model.r = 3.0;
  const auto rep = spectral_invariance_report(model, {32, 64}, ReportOptions{});
  ASSERT_EQ(rep.cells.size(), 2u);
  ASSERT_EQ(rep.cells[0].norms.size(), default_report_quantities(model).size());
  for (const auto& c : rep.cells) {
    EXPECT_GE(c.inverse_profile.exponent, 3.0 - 0.25);
    EXPECT_LT(c.residual, 1e-12);
    EXPECT_NEAR(c.matrix_profile.exponent, 3.0, 0.05);
    for (const auto& n : c.norms) EXPECT_GT(n.inverse, 0.0);
  }
  ASSERT_EQ(rep.inverse_drift.size(), rep.cells[0].norms.size());
  for (const double d : rep.inverse_drift) EXPECT_LT(d, 0.1);

  std::ostringstream js;
  write_report_json(js, rep, R"({"seed": 0})");
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j["cells"].size(), 2u);
  EXPECT_EQ(j["config"]["seed"], 0);
  EXPECT_TRUE(j["cells"][0]["inverse"].contains("exponent"));

  std::ostringstream cs;
  write_report_csv(cs, rep);
  std::istringstream lines(cs.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "W,quantity,matrix,inverse,exponent_matrix,exponent_inverse,super_polynomial_inverse,residual");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, int(2 * rep.cells[0].norms.size()));
}

TEST(Report, Preconditions) {
  ReportOptions opt;
  EXPECT_THROW(spectral_invariance_report(DecayModel{}, {8}, opt), InvalidArgument);
  EXPECT_THROW(spectral_invariance_report(DecayModel{}, {32, 16}, opt), InvalidArgument);
  EXPECT_THROW(spectral_invariance_report(DecayModel{}, {}, opt), InvalidArgument);
  opt.quantities = {"nonsense"};
  EXPECT_THROW(spectral_invariance_report(DecayModel{}, {16}, opt), ParseError);
}

TEST(Quantity, DispatchAndRoundTrip) {
  const auto a = generate(DecayModel{DecayModel::Kind::RandomPhase, 2.0, 1.0, 3}, 1, 8);
  for (const std::string text : {"jaffard:r=1", "besov:base=jaffard:r=0,r=1,p=inf,method=solidlp",
                                 "approx:base=op,r=1,p=2,form=sum", "bessel:base=schur:p=1,r=0,r=0.5,method=weighted"}) {
    const auto q = parse_quantity(text);
    EXPECT_EQ(parse_quantity(to_string(q)), q) << text;
    EXPECT_GT(evaluate_quantity(a, q), 0.0) << text;
  }
  EXPECT_DOUBLE_EQ(evaluate_quantity(a, parse_quantity("jaffard:r=1")), jaffard_norm(a, 1.0));
}

}  // namespace
}  // namespace odd
