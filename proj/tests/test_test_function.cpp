#include <projbound/test_function.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace projbound;

namespace {

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::fabs(x));
  return out;
}

} // namespace

TEST(TestFunction, ComplexPlaneLineOne) {
  const auto tf = build_test_function(Field::complex(), 2, 1);
  EXPECT_NEAR(tf.xi, 0.0, 1e-15);
  EXPECT_NEAR(tf.coeff_h[0], 1.0, 1e-14);
  EXPECT_NEAR(bound_from_test_function(tf), 2.0, 1e-13);
}

TEST(TestFunction, QuaternionLineTwo) {
  const auto tf = build_test_function(Field::quaternion(), 2, 2);
  const double xi = 1.0 / std::sqrt(7.0);
  EXPECT_NEAR(tf.xi, xi, 1e-14);
  const double want = 4.0 / ((2.0 + xi) * (1.0 - xi) * (1.0 - xi));
  EXPECT_NEAR(bound_from_test_function(tf), want, 1e-10 * want);
  EXPECT_NEAR(want, 4.3473, 1e-4);
}

TEST(TestFunction, MoreBoundExamples) {
  EXPECT_NEAR(bound_from_test_function(build_test_function(Field::complex(), 2, 2)), 2.0 / (1.0 - 1.0 / std::sqrt(5.0)),
              1e-10);
  EXPECT_NEAR(bound_from_test_function(build_test_function(Field::quaternion(), 2, 1)), 2.0, 1e-12);
  for (int p = 2; p <= 40; p += 2)
    EXPECT_NEAR(bound_from_test_function(build_test_function(Field::real(), 2, p / 2)), p / 2.0 + 1.0,
                1e-10 * (p / 2.0 + 1.0))
        << p;
}

TEST(TestFunction, SignPatternRealThreeFive) {
  const auto tf = build_test_function(Field::real(), 3, 5, 200);
  const double scale = max_abs(tf.coeff_f);
  EXPECT_LT(std::fabs(tf.coeff_f[6]), 1e-12 * scale);
  for (int k = 7; k <= 200; ++k) EXPECT_LT(tf.coeff_f[k], 0.0) << k;
}

TEST(TestFunction, Invariants) {
  for (Field f : all_fields)
    for (int m = 2; m <= 4; ++m)
      for (int l = 1; l <= 12; ++l) {
        const auto tf = build_test_function(f, m, l);
        EXPECT_EQ(tf.r, l + 1);
        EXPECT_EQ(tf.coeff_f.size(), 201u);
        EXPECT_LT(std::fabs(tf.coeff_h[tf.r]), 1e-12 * std::fabs(tf.coeff_h[0]));
        EXPECT_GT(tf.coeff_f[0], 0.0);
        EXPECT_GT(tf.value_at_one(), 0.0);
        EXPECT_LT(tf.p_r_at_xi, 0.0);
        EXPECT_NEAR(tf.coeff_g[0], -tf.p_r_at_xi * tf.coeff_h[0], 1e-12 * std::fabs(tf.coeff_g[0]));
      }
}

TEST(TestFunction, MembershipCertificate) {
  for (Field f : all_fields)
    for (int m = 2; m <= 4; ++m)
      for (int l = 1; l <= 12; ++l) {
        const auto tf = build_test_function(f, m, l, 200);
        const double scale = max_abs(tf.coeff_f);
        for (int k = l + 1; k <= 200; ++k)
          ASSERT_LE(tf.coeff_f[k], 1e-12 * scale) << to_string(f) << " m=" << m << " l=" << l << " k=" << k;
        // The truncated series can undershoot zero only by the dropped tail.
        for (int i = 0; i < 2000; ++i) {
          const double t = -1.0 + 2.0 * i / 1999.0;
          ASSERT_GE(eval_f(tf, t).value, -tf.tail_bound - 1e-14 * tf.value_at_one())
              << to_string(f) << " m=" << m << " l=" << l << " t=" << t;
        }
      }
}

TEST(TestFunction, NonnegativeOnceTruncationIsSmall) {
  for (Field f : all_fields)
    for (int m = 2; m <= 4; ++m)
      for (int l : {1, 2, 5, 8, 12}) {
        const auto tf = build_test_function(f, m, l, 2000);
        const double top = tf.value_at_one();
        for (int i = 0; i < 2000; ++i) {
          const double t = -1.0 + 2.0 * i / 1999.0;
          ASSERT_GE(eval_f(tf, t).value, -1e-8 * top) << to_string(f) << " m=" << m << " l=" << l << " t=" << t;
        }
      }
}

TEST(TestFunction, TruncationBoundShrinks) {
  const auto a = build_test_function(Field::real(), 3, 6, 100);
  const auto b = build_test_function(Field::real(), 3, 6, 400);
  EXPECT_GT(a.tail_bound, 0.0);
  EXPECT_LT(b.tail_bound, a.tail_bound / 10.0);
  EXPECT_NEAR(eval_f(b, 1.0).value - b.value_at_one(), b.tail_bound, 1e-15);
}

TEST(TestFunction, ClosedFormCoefficientsMatchQuadrature) {
  for (Field f : all_fields)
    for (int m = 2; m <= 4; ++m)
      for (int l : {1, 3, 6, 12}) {
        const auto tf = build_test_function(f, m, l);
        const double sh = std::max(max_abs({tf.coeff_h.begin(), tf.coeff_h.begin() + 26}), 1e-300);
        const double sg = max_abs({tf.coeff_g.begin(), tf.coeff_g.begin() + 26});
        for (int k = 0; k <= 25; ++k) {
          const double ch = oracle::tanh_sinh_tail(tf.params, tf.xi, [&](double t) { return jacobi_eval(tf.params, k, t); });
          const double cg = oracle::tanh_sinh_tail(tf.params, tf.xi, [&](double t) {
            return (jacobi_eval(tf.params, tf.r, t) - tf.p_r_at_xi) * jacobi_eval(tf.params, k, t);
          });
          EXPECT_NEAR(tf.coeff_h[k], ch, 1e-10 * sh) << to_string(f) << " m=" << m << " l=" << l << " k=" << k;
          EXPECT_NEAR(tf.coeff_g[k], cg, 1e-10 * sg) << to_string(f) << " m=" << m << " l=" << l << " k=" << k;
        }
      }
}

TEST(TestFunction, ProductRuleFromQuadratureCoefficients) {
  const auto tf = build_test_function(Field::quaternion(), 3, 4);
  const double sf = max_abs(tf.coeff_f);
  for (int k = 0; k <= 20; ++k) {
    const double ch = oracle::tanh_sinh_tail(tf.params, tf.xi, [&](double t) { return jacobi_eval(tf.params, k, t); });
    const double cg = oracle::tanh_sinh_tail(tf.params, tf.xi, [&](double t) {
      return (jacobi_eval(tf.params, tf.r, t) - tf.p_r_at_xi) * jacobi_eval(tf.params, k, t);
    });
    const double cf = cg * ch / (tf.tau * jacobi_at_one(tf.params, k));
    EXPECT_NEAR(tf.coeff_f[k], cf, 1e-10 * sf) << k;
  }
}

TEST(TestFunction, ConvolutionIsDiagonal) {
  // ∫ P_j(xu) P_k(uy) dσ(u) = δ_jk P_k(xy) / (τ ν_k P_k(1)), checked by
  // integrating over the sphere directly.
  for (Field f : all_fields)
    for (int m : {2, 3, 4}) {
      const auto pr = JacobiParams::for_field(f, m);
      for (double t : {-0.93, -0.4, 0.0, 0.35, 0.88})
        for (int j = 0; j <= 6; ++j)
          for (int k = 0; k <= 6; ++k) {
            const double got = oracle::sphere_convolution(
                f, m, [&](double s) { return jacobi_eval(pr, j, s); }, [&](double s) { return jacobi_eval(pr, k, s); },
                t);
            const double want =
                j == k ? jacobi_eval(pr, k, t) / (tau(pr) * jacobi_norm_nu(pr, k) * jacobi_at_one(pr, k)) : 0.0;
            EXPECT_NEAR(got, want, 1e-11) << to_string(f) << " m=" << m << " t=" << t << " j=" << j << " k=" << k;
          }
    }
}

TEST(TestFunction, SeriesMatchesDirectConvolution) {
  const auto coarse = build_test_function(Field::real(), 3, 2, 200);
  const auto fine = build_test_function(Field::real(), 3, 2, 1000);
  for (double t : {-1.0, -0.8, -0.3, 0.0, 0.2, 0.5, 0.7, 0.9, 0.99, 1.0}) {
    const double direct = oracle::real_m3_indicator_convolution([&](double s) { return fine.g(s); }, fine.xi, t);
    EXPECT_NEAR(eval_f(fine, t).value, direct, 1e-8) << t;
    EXPECT_NEAR(eval_f(coarse, t).value, direct, coarse.tail_bound + 1e-11) << t;
  }
}

TEST(TestFunction, ValueAtOne) {
  for (Field f : all_fields)
    for (int m : {2, 3}) {
      const auto tf = build_test_function(f, m, 4);
      const auto v = eval_f(tf, 1.0);
      EXPECT_NEAR(tf.value_at_one(), tf.coeff_g[0] / tf.tau, 1e-15);
      EXPECT_NEAR(v.value, tf.value_at_one(), v.tail_estimate + 1e-14);
      EXPECT_LT(v.tail_estimate, 1e-4 * tf.value_at_one());
    }
  const auto c2 = build_test_function(Field::complex(), 2, 1);
  EXPECT_GE(eval_f(c2, -0.9).value, -1e-8);
}

TEST(TestFunction, SupBoundedByNorms) {
  for (Field f : all_fields) {
    const auto tf = build_test_function(f, 3, 5);
    const double gn = std::sqrt(oracle::tanh_sinh_tail(tf.params, tf.xi, [&](double t) { return tf.g(t) * tf.g(t); }));
    const double hn = std::sqrt(oracle::tanh_sinh_tail(tf.params, tf.xi, [](double) { return 1.0; }));
    const double cap = gn * hn / tf.tau * (1.0 + 1e-8);
    for (int i = 0; i <= 2000; ++i) EXPECT_LE(std::fabs(eval_f(tf, -1.0 + i / 1000.0).value), cap);
  }
}

TEST(TestFunction, TailWarningFollowsTruncation) {
  const auto small = build_test_function(Field::quaternion(), 4, 12, 14);
  EXPECT_TRUE(small.tail_warning);
  const auto big = build_test_function(Field::complex(), 2, 1, 201);
  EXPECT_GT(big.last_term, 0.0);
  EXPECT_EQ(big.tail_warning, big.last_term > 1e-12 * big.value_at_one());
}

TEST(TestFunction, ParameterErrors) {
  EXPECT_THROW(build_test_function(Field::real(), 3, 0), ParameterError);
  EXPECT_THROW(build_test_function(Field::real(), 3, 5, 6), ParameterError);
  EXPECT_NO_THROW(build_test_function(Field::real(), 3, 5, 7));
  EXPECT_THROW(build_test_function(Field::real(), 1, 2), ParameterError);
}
