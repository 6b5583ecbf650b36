#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "odd/errors.hpp"
#include "odd/grammar.hpp"
#include "odd/io.hpp"
#include "odd/kernels.hpp"
#include "odd/lab.hpp"
#include "odd/ops.hpp"

namespace odd {
namespace {

constexpr double kPi = std::numbers::pi;

LatticeMatrix geometric(int W) {
  return LatticeMatrix::from_function(Window(1, W), [](const LatticeIndex& k, const LatticeIndex& l) {
    return cplx(std::pow(2.0, -std::abs(k[0] - l[0])));
  });
}

LatticeMatrix ones_on(const Window& w, const LatticeIndex& m) { return LatticeMatrix::single_diagonal(w, m, 1.0); }

LatticeMatrix random_matrix(const Window& w, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return LatticeMatrix::from_function(w, [&](const LatticeIndex&, const LatticeIndex&) { return cplx(u(gen), u(gen)); });
}

TEST(Lattice, OffsetSlotsRoundTrip) {
  for (const Window w : {Window(1, 3), Window(2, 2)}) {
    EXPECT_EQ(w.offset_count(), std::size_t(std::pow(4 * w.half_width() + 1, w.dim())));
    for (std::size_t s = 0; s < w.offset_count(); ++s) EXPECT_EQ(w.slot(w.offset(s)), s);
    for (std::size_t p = 0; p < w.size(); ++p) EXPECT_EQ(w.position(w.point(p)), p);
  }
}

TEST(Lattice, DiagonalWalkMatchesRowFormula) {
  const Window w(2, 2);
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    const LatticeIndex m = w.offset(s);
    std::size_t count = 0;
    w.for_each_diagonal_entry(m, [&](std::size_t i, std::size_t r, std::size_t c) {
      const LatticeIndex k = w.diagonal_row(m, i);
      EXPECT_EQ(r, w.position(k));
      EXPECT_EQ(c, w.position(k - m));
      EXPECT_EQ(w.diagonal_position(m, k), i);
      ++count;
    });
    EXPECT_EQ(count, w.diagonal_length(m));
  }
}

TEST(SideDiagonal, IdentityMainDiagonalIsOnes) {
  const auto id = LatticeMatrix::identity(Window(1, 3));
  const auto d = side_diagonal(id, LatticeIndex::d1(0));
  ASSERT_EQ(d.size(), 7u);
  for (const cplx v : d) EXPECT_EQ(v, cplx(1.0));
}

TEST(SideDiagonal, IdentityOffDiagonalIsZero) {
  const auto d = side_diagonal(LatticeMatrix::identity(Window(1, 3)), LatticeIndex::d1(1));
  ASSERT_EQ(d.size(), 6u);
  for (const cplx v : d) EXPECT_EQ(v, cplx(0.0));
}

TEST(SideDiagonal, GeometricDecay) {
  const auto d = side_diagonal(geometric(4), LatticeIndex::d1(2));
  ASSERT_EQ(d.size(), 7u);
  for (const cplx v : d) EXPECT_EQ(v, cplx(0.25));
}

TEST(SideDiagonal, OutOfWindowOffsetThrows) {
  EXPECT_THROW(side_diagonal(geometric(2), LatticeIndex::d1(5)), IndexOutOfRange);
}

TEST(BandTruncate, ZeroBandwidthGivesZero) {
  EXPECT_TRUE(band_truncate(geometric(4), 0).is_zero());
}

TEST(BandTruncate, IdentityKeptAtBandwidthOne) {
  const auto id = LatticeMatrix::identity(Window(2, 2));
  EXPECT_EQ(band_truncate(id, 1), id);
}

TEST(BandTruncate, StrictConventionMatchesDenseMask) {
  const Window w(1, 4);
  const auto a = add(add(ones_on(w, LatticeIndex::d1(0)), ones_on(w, LatticeIndex::d1(1))), ones_on(w, LatticeIndex::d1(2)));
  const auto t = band_truncate(a, 2);
  Eigen::MatrixXcd mask = a.to_dense();
  for (Eigen::Index i = 0; i < mask.rows(); ++i)
    for (Eigen::Index j = 0; j < mask.cols(); ++j)
      if (std::abs(i - j) >= 2) mask(i, j) = 0.0;
  EXPECT_EQ(t.to_dense(), mask);
  EXPECT_EQ(t.bandwidth_inf(), 1);
  EXPECT_THROW(band_truncate(a, -1), InvalidArgument);
}

TEST(Algebra, IdentityIsNeutral) {
  const auto a = random_matrix(Window(1, 5), 3);
  EXPECT_LT(max_abs_difference(multiply(LatticeMatrix::identity(a.window()), a), a), 1e-15);
}

TEST(Algebra, AdjointIsInvolution) {
  const auto a = random_matrix(Window(2, 2), 4);
  EXPECT_EQ(adjoint(adjoint(a)), a);
  EXPECT_EQ(adjoint(a).to_dense(), a.to_dense().adjoint());
}

TEST(Algebra, ProductOfShiftsLandsOnSumDiagonal) {
  const Window w(1, 5);
  const auto c = multiply(ones_on(w, LatticeIndex::d1(1)), ones_on(w, LatticeIndex::d1(2)));
  EXPECT_EQ(c.stored_offsets().size(), 1u);
  const auto d = side_diagonal(c, LatticeIndex::d1(3));
  ASSERT_EQ(d.size(), 8u);
  for (const cplx v : d) EXPECT_EQ(v, cplx(1.0));
}

TEST(Algebra, WindowMismatchThrows) {
  EXPECT_THROW(add(geometric(2), geometric(3)), WindowMismatch);
  EXPECT_THROW(multiply(geometric(2), geometric(3)), WindowMismatch);
}

TEST(Modulate, ZeroAndFullPeriodAreIdentity) {
  const auto a = random_matrix(Window(1, 4), 5);
  EXPECT_EQ(modulate(a, {0.0, 0.0}), a);
  EXPECT_EQ(modulate(a, {1.0, 0.0}), a);
}

TEST(Modulate, QuarterTurnOnFirstDiagonal) {
  const Window w(1, 3);
  const auto m = modulate(ones_on(w, LatticeIndex::d1(1)), {0.25, 0.0});
  for (const cplx v : side_diagonal(m, LatticeIndex::d1(1))) {
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 1.0, 1e-15);
  }
}

TEST(Modulate, GroupLaw) {
  const auto a = random_matrix(Window(2, 2), 6);
  const Vec s{0.37, 0.81}, t{0.44, 0.93};
  EXPECT_LT(max_abs_difference(modulate(modulate(a, s), t), modulate(a, {s[0] + t[0], s[1] + t[1]})), 1e-14);
}

TEST(Difference, ZeroStepGivesZero) {
  EXPECT_TRUE(difference(random_matrix(Window(1, 3), 7), {0.0, 0.0}, 2).is_zero());
}

TEST(Difference, MainDiagonalIsFixed) {
  const auto d = ones_on(Window(1, 3), LatticeIndex::d1(0));
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(difference(d, {0.3, 0.0}, k).is_zero());
}

TEST(Difference, HalfTurnOnFirstDiagonal) {
  const auto d = difference(ones_on(Window(1, 3), LatticeIndex::d1(1)), {0.5, 0.0}, 1);
  for (const cplx v : side_diagonal(d, LatticeIndex::d1(1))) EXPECT_NEAR(std::abs(v - cplx(-2.0)), 0.0, 1e-15);
  EXPECT_THROW(difference(d, {0.5, 0.0}, 0), InvalidArgument);
}

TEST(Difference, BinomialExpansion) {
  const auto a = random_matrix(Window(1, 4), 8);
  const Vec t{0.137, 0.0};
  for (int k = 1; k <= 4; ++k) {
    LatticeMatrix sum(a.window());
    double c = 1.0;
    for (int j = 0; j <= k; ++j) {
      sum = add(sum, scale(modulate(a, {j * t[0], 0.0}), ((k - j) % 2 ? -1.0 : 1.0) * c));
      c = c * (k - j) / (j + 1);
    }
    EXPECT_LT(max_abs_difference(difference(a, t, k), sum), 1e-13) << k;
  }
}

TEST(Difference, LeibnizAndQuotientIdentities) {
  const auto corpus = decay_corpus(1, 8, 3, 11);
  const Vec t{0.291, 0.0};
  const auto& a = corpus[0];
  const auto& b = corpus[1];
  const auto lhs = difference(multiply(a, b), t, 1);
  const auto rhs = add(multiply(modulate(a, t), difference(b, t, 1)), multiply(difference(a, t, 1), b));
  EXPECT_LT(max_abs_difference(lhs, rhs), 1e-14);

  const auto B = make_invertible(corpus[2]);
  const auto X = invert_finite_section(B);
  const auto q = scale(multiply(multiply(modulate(X, t), difference(B, t, 1)), X), -1.0);
  EXPECT_LT(max_abs_difference(difference(X, t, 1), q), 1e-13);
}

TEST(Derivation, ZeroOrderIsIdentity) {
  const auto a = random_matrix(Window(2, 2), 9);
  EXPECT_EQ(derivation(a, {0, 0}), a);
}

TEST(Derivation, MainDiagonalIsAnnihilated) {
  EXPECT_TRUE(derivation(ones_on(Window(1, 3), LatticeIndex::d1(0)), {1, 0}).is_zero());
}

TEST(Derivation, SecondDiagonal) {
  const auto d = derivation(ones_on(Window(1, 3), LatticeIndex::d1(2)), {1, 0});
  for (const cplx v : side_diagonal(d, LatticeIndex::d1(2))) EXPECT_NEAR(std::abs(v - cplx(0.0, 4.0 * kPi)), 0.0, 1e-13);
}

TEST(Phase, ReducedPhaseAndSmallDifference) {
  EXPECT_DOUBLE_EQ(reduced_phase(LatticeIndex::d1(3), {1.25, 0.0}), -0.25);
  EXPECT_NEAR(phase_difference_magnitude(1e-9), 2.0 * kPi * 1e-9, 1e-22);
  EXPECT_NEAR(phase_difference_magnitude(0.5), 2.0, 1e-15);
}

// OpenMP kernels against their serial references.
class KernelEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(KernelEquivalence, MatchesSerial) {
  const Window w(GetParam(), GetParam() == 1 ? 12 : 3);
  const auto a = random_matrix(w, 21);
  const auto b = band_truncate(random_matrix(w, 22), 3);
  std::vector<cplx> mult(w.offset_count());
  for (std::size_t s = 0; s < mult.size(); ++s) mult[s] = cplx(std::cos(0.1 * s), std::sin(0.3 * s));

  EXPECT_LT(max_abs_difference(kernels::apply_multiplier(a, mult), kernels::serial::apply_multiplier(a, mult)), 1e-14);
  EXPECT_EQ(kernels::diagonal_envelope(a), kernels::serial::diagonal_envelope(a));
  for (const double p : {1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()}) {
    const auto x = kernels::diagonal_pnorm(a, p), y = kernels::serial::diagonal_pnorm(a, p);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], y[i], 1e-12 * (1.0 + y[i]));
  }
  EXPECT_LT(max_abs_difference(kernels::multiply(a, b), kernels::serial::multiply(a, b)), 1e-12);

  Eigen::VectorXcd v = Eigen::VectorXcd::Random(Eigen::Index(w.size()));
  EXPECT_LT((kernels::matvec(a, v) - kernels::serial::matvec(a, v)).norm(), 1e-12);
  EXPECT_LT((kernels::matvec_adjoint(a, v) - a.to_dense().adjoint() * v).norm(), 1e-12);

  const auto f = [](std::size_t i) { return std::sin(double(i)); };
  EXPECT_EQ(kernels::max_over(1000, f), kernels::serial::max_over(1000, f));
  EXPECT_EQ(kernels::max_over(0, f), 0.0);

  std::vector<double> coeff(w.offset_count());
  for (std::size_t s = 0; s < coeff.size(); ++s) coeff[s] = 1.0 + 0.01 * double(s % 17);
  for (const double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
    const kernels::RowColumnTable table(a, p);
    EXPECT_NEAR(table.max_weighted_line(coeff), kernels::serial::max_weighted_line(a, p, coeff), 1e-12 * table.max_weighted_line(coeff));
  }
  EXPECT_LT(max_abs_difference(kernels::combine(a, 2.0, b, cplx(0, 1)), add(scale(a, 2.0), scale(b, cplx(0, 1)))), 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Dims, KernelEquivalence, ::testing::Values(1, 2));

TEST(Io, MatrixJsonRoundTripIsBitExact) {
  for (const Window w : {Window(1, 6), Window(2, 2)}) {
    const auto a = random_matrix(w, 31);
    std::stringstream ss;
    write_matrix_json(ss, a);
    EXPECT_EQ(read_matrix_json(ss), a);
  }
}

TEST(Io, MatrixJsonRejectsMalformedInput) {
  const std::vector<std::string> bad{
      "{",
      R"({"dim": 3, "window": 1, "diagonals": []})",
      R"({"dim": 1, "window": 1, "diagonals": [{"offset": [0], "re": [1, 2], "im": [0, 0]}]})",
      R"({"dim": 1, "window": 1, "diagonals": [{"offset": [5], "re": [1], "im": [0]}]})",
      R"({"dim": 1, "window": 1, "diagonals": [{"offset": [1], "re": [1, 1], "im": [0, 0]},
                                               {"offset": [1], "re": [1, 1], "im": [0, 0]}]})",
  };
  for (const auto& text : bad) {
    std::stringstream ss(text);
    EXPECT_THROW(read_matrix_json(ss), ParseError) << text;
  }
}

TEST(Io, DenseCsv) {
  std::stringstream in("row,col,re,im\n0,0,1,0\n1,0,0.5,-0.25\n-1,1,2\n");
  const auto a = read_dense_csv(in);
  EXPECT_EQ(a.window().half_width(), 1);
  EXPECT_EQ(a.at(LatticeIndex::d1(1), LatticeIndex::d1(0)), cplx(0.5, -0.25));
  EXPECT_EQ(a.at(LatticeIndex::d1(-1), LatticeIndex::d1(1)), cplx(2.0));
  std::stringstream out;
  write_dense_csv(out, a);
  EXPECT_EQ(read_dense_csv(out, 1), a);
  std::stringstream broken("0,0\n");
  EXPECT_THROW(read_dense_csv(broken), ParseError);
}

TEST(Grammar, NumbersRoundTrip) {
  for (const double v : {0.1, 1.0 / 3.0, 1e-300, 2.5, -7.0}) EXPECT_EQ(grammar::parse_number(grammar::format_number(v)), v);
  EXPECT_TRUE(std::isinf(grammar::parse_number("inf")));
  EXPECT_EQ(grammar::format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_THROW(grammar::parse_number("1.5x"), ParseError);
}

}  // namespace
}  // namespace odd
