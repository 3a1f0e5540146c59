// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "dilation_search.hpp"
#include "oracles.hpp"
#include "unistochasticity.hpp"

using namespace weylsg;

namespace {

const double r3 = std::sqrt(3.0);

RealMatrix abs2(const ComplexMatrix& u) {
  RealMatrix b(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.data().size(); ++i) b.data()[i] = std::norm(u.data()[i]);
  return b;
}

ComplexMatrix worked_dilation() {
  ComplexMatrix h(2, 2), a(3, 3);
  h(0, 0) = h(0, 1) = h(1, 0) = 1 / std::sqrt(2.0);
  h(1, 1) = -1 / std::sqrt(2.0);
  a(0, 2) = 1, a(1, 1) = -1, a(2, 0) = 1;
  return direct_sum<cplx>({ComplexMatrix::identity(2), h, a, ComplexMatrix::identity(2)});
}

RealMatrix worked_transition() {
  RealMatrix t(3, 3);
  const double v[3][3] = {{5, 1, 0}, {1, 3, 2}, {0, 2, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = v[i][j] / 6;
  return t;
}

ComplexMatrix uc_matrix() {
  ComplexMatrix u = ComplexMatrix::identity(9);
  u(6, 6) = std::polar(1.0, 2 * std::numbers::pi / 3);
  u(8, 8) = std::polar(1.0, 4 * std::numbers::pi / 3);
  return u;
}

TEST(Jarlskog, Examples) {
  EXPECT_NEAR(jarlskog_Q({1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3}), 1.0 / 27, 1e-12);
  EXPECT_NEAR(jarlskog_Q({0, 0.5, 0.5, 0}), -1.0 / 16, 1e-12);
  EXPECT_NEAR(jarlskog_Q({0, 1, 0, 0}), 0.0, 1e-12);
  EXPECT_NEAR(jarlskog_Q(Bistochastic3::from_matrix(worked_transition())), -1.0 / 324, 1e-12);
  EXPECT_THROW(jarlskog_Q({0.9, 0.9, 0, 0}), InvalidInput);
}

TEST(UnitaryFromBistochastic, Examples) {
  EXPECT_LT(max_abs_diff(unitary_from_bistochastic3({1, 0, 0, 1}), ComplexMatrix::identity(3)), 1e-12);
  const auto v = unitary_from_bistochastic3({1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3});
  EXPECT_TRUE(is_unitary(v, 1e-8));
  for (auto x : v.data()) EXPECT_NEAR(std::norm(x), 1.0 / 3, 1e-12);
  EXPECT_THROW(unitary_from_bistochastic3({0, 0.5, 0.5, 0}), NotUnistochastic);
}

TEST(UnitaryFromBistochastic, RandomRoundTrips) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0, 1);
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  int refused = 0, built = 0;
  for (int r = 0; r < 100000; ++r) {
    RealMatrix b(3, 3);
    if (r % 2 == 0) {
      b = abs2(oracle::random_unitary(rng, 3));
    } else {
      // random point of the Birkhoff polytope, many of them not unistochastic
      const auto w = oracle::random_probs(rng, 6);
      for (int p = 0; p < 6; ++p)
        for (int i = 0; i < 3; ++i) b(i, perms[p][i]) += w[p];
    }
    const auto bs = Bistochastic3::from_matrix(b);
    const double q = jarlskog_Q(bs);
    if (q >= 1e-9) {
      const auto v = unitary_from_bistochastic3(bs);
      ASSERT_TRUE(is_unitary(v, 1e-8));
      ASSERT_LT(max_abs_diff(abs2(v), b), 1e-8);
      ++built;
    } else if (q < -1e-9) {
      EXPECT_THROW(unitary_from_bistochastic3(bs), NotUnistochastic);
      ++refused;
    }
  }
  EXPECT_GT(refused, 1000);
  EXPECT_GT(built, 50000);
}

TEST(Hypocycloid, Examples) {
  EXPECT_TRUE(hypocycloid_test({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_NEAR(hypocycloid_value({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1.0 / 27, 1e-15);
  EXPECT_TRUE(hypocycloid_test({1, 0, 0}));
  EXPECT_NEAR(hypocycloid_value({1, 0, 0}), 0, 1e-15);
  const double p1 = 0.875, p2 = 0.1, p3 = 0.025;
  const double hand = 4 * p1 * p1 * p3 * p2 - std::pow(p1 - p1 * p1 - p3 * p2, 2);
  EXPECT_NEAR(hand, -0.003766015625, 1e-15);
  EXPECT_NEAR(hypocycloid_value({p1, p2, p3}), hand, 1e-15);
  EXPECT_FALSE(hypocycloid_test({p1, p2, p3}));
}

TEST(Hypocycloid, EqualsJarlskogOfCirculant) {
  std::mt19937_64 rng(72);
  for (int r = 0; r < 1000; ++r) {
    const auto p = oracle::random_probs(rng, 3);
    // circulant with first column p: B00 = p1, B01 = p3, B10 = p2, B11 = p1
    EXPECT_NEAR(hypocycloid_value({p[0], p[1], p[2]}), jarlskog_Q({p[0], p[2], p[1], p[0]}), 1e-14);
  }
}

TEST(Star, Examples) {
  EXPECT_TRUE(david_star_test({2.0 / 3, 1.0 / 3, 0}));
  EXPECT_TRUE(david_star_test({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  const FacePoint pc{0.875, 0.1, 0.025};
  EXPECT_NEAR(pc.planar()[0], 0.1125, 1e-15);
  EXPECT_NEAR(pc.planar()[1], 0.0216506350946110, 1e-12);
  EXPECT_FALSE(david_star_test(pc));
  EXPECT_FALSE(david_star_test({1, 0, 0}));
}

TEST(Star, OverlapsHypocycloidInterior) {
  std::mt19937_64 rng(73);
  int both = 0;
  for (int r = 0; r < 2000; ++r) {
    const auto p = oracle::random_probs(rng, 3);
    const FacePoint f{p[0], p[1], p[2]};
    if (hypocycloid_value(f) > 1e-3 && david_star_test(f)) ++both;
  }
  EXPECT_GT(both, 0);
}

TEST(FaceDilation, Examples) {
  const auto id = face_channel_dilation({1, 0, 0});
  EXPECT_LT(max_abs_diff(id.u, ComplexMatrix::identity(9)), 1e-12);
  const auto bary = face_channel_dilation({1.0 / 3, 1.0 / 3, 1.0 / 3});
  EXPECT_TRUE(is_unitary(bary.u, 1e-10));
  // coefficient of X^j (x) X^j sits at entry ((j, 0), (0, 0)) shifted; read through the trace
  for (std::size_t j = 0; j < 3; ++j) {
    const auto xj = weyl_matrix(Dimension(3), j, 0);
    EXPECT_NEAR(std::abs((kron(xj, xj).adjoint() * bary.u).trace() / 9.0), 1 / r3, 1e-12);
  }
  const auto ch = channel_from_dilation(bary);
  EXPECT_NEAR(ch.weyl_p[0], 1.0 / 3, 1e-8);
  EXPECT_NEAR(ch.weyl_p[3], 1.0 / 3, 1e-8);
  EXPECT_NEAR(ch.weyl_p[6], 1.0 / 3, 1e-8);
  EXPECT_THROW(face_channel_dilation({0.875, 0.1, 0.025}), TriangleViolation);
}

TEST(FaceDilation, RandomHypocycloidPoints) {
  std::mt19937_64 rng(74);
  int done = 0;
  for (int r = 0; r < 3000 && done < 300; ++r) {
    const auto p = oracle::random_probs(rng, 3);
    const FacePoint f{p[0], p[1], p[2]};
    if (!hypocycloid_test(f)) {
      if (hypocycloid_value(f) < -1e-6) EXPECT_THROW(face_channel_dilation(f), TriangleViolation);
      continue;
    }
    ++done;
    const auto u = face_channel_dilation(f);
    ASSERT_TRUE(is_unitary(u.u, 1e-10));
    const auto ch = channel_from_dilation(u);
    EXPECT_LT(ch.weyl_residual, 1e-8);
    EXPECT_NEAR(ch.weyl_p[0], f.p1, 1e-8);
    EXPECT_NEAR(ch.weyl_p[3], f.p2, 1e-8);
    EXPECT_NEAR(ch.weyl_p[6], f.p3, 1e-8);
    // the shadow is the circulant built from p, hence unistochastic
    EXPECT_GE(jarlskog_Q({f.p1, f.p3, f.p2, f.p1}), -1e-9);
  }
  EXPECT_GT(done, 100);
}

TEST(Dilation, ProductFormGivesUnistochastic) {
  std::mt19937_64 rng(75);
  for (int r = 0; r < 50; ++r) {
    const auto v = oracle::random_unitary(rng, 3);
    const auto t = transition_from_dilation({kron(v, ComplexMatrix::identity(3)), 3});
    EXPECT_LT(max_abs_diff(t, abs2(v)), 1e-12);
  }
}

TEST(Dilation, WorkedExample) {
  const DilationUnitary u{worked_dilation(), 3};
  ASSERT_TRUE(is_unitary(u.u, 1e-12));
  const auto t = transition_from_dilation(u);
  EXPECT_LT(max_abs_diff(t, worked_transition()), 1e-12);
  EXPECT_NEAR(jarlskog_Q(Bistochastic3::from_matrix(t)), -1.0 / 324, 1e-12);
}

TEST(Dilation, DiagonalPhaseUnitary) {
  const auto ch = channel_from_dilation({uc_matrix(), 3});
  EXPECT_NEAR(ch.weyl_p[0], 2.0 / 3, 1e-12);
  EXPECT_NEAR(ch.weyl_p[1], 1.0 / 3, 1e-12);
  EXPECT_LT(ch.weyl_residual, 1e-12);
}

TEST(Dilation, ChoiIsPositiveAndBistochastic) {
  std::mt19937_64 rng(76);
  for (int r = 0; r < 20; ++r) {
    const auto ch = channel_from_dilation({oracle::random_unitary(rng, 9), 3});
    EXPECT_GE(hermitian_eigenvalues(ch.choi).front(), -1e-10);
    // partial traces of D over either factor are the identity
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        cplx t1 = 0, t2 = 0;
        for (std::size_t c = 0; c < 3; ++c) {
          t1 += ch.choi(a * 3 + c, b * 3 + c);
          t2 += ch.choi(c * 3 + a, c * 3 + b);
        }
        EXPECT_LT(std::abs(t1 - (a == b ? 1.0 : 0.0)), 1e-10);
        EXPECT_LT(std::abs(t2 - (a == b ? 1.0 : 0.0)), 1e-10);
      }
  }
  EXPECT_THROW(channel_from_dilation({ComplexMatrix(9, 9, 1.0), 3}), InvalidInput);
}

TEST(Dilation, TransitionIsClassicalBlockOfDilatedChannel) {
  std::mt19937_64 rng(77);
  for (int r = 0; r < 20; ++r) {
    const DilationUnitary u{oracle::random_unitary(rng, 9), 3};
    const auto s = dilation_superoperator(u);
    const auto t = transition_from_dilation(u);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(t(i, j), s(i * 3 + i, j * 3 + j).real(), 1e-12);
  }
}

TEST(CoarseGrain, Examples) {
  std::mt19937_64 rng(78);
  const auto v = oracle::random_unitary(rng, 4);
  EXPECT_LT(max_abs_diff(k_unistochastic_coarse_grain(v, 4, 1), abs2(v)), 1e-14);
  const auto b = k_unistochastic_coarse_grain(worked_dilation(), 3, 3);
  EXPECT_LT(max_abs_diff(b, worked_transition()), 1e-12);
  EXPECT_LT(max_abs_diff(k_unistochastic_coarse_grain(ComplexMatrix::identity(4), 2, 2), RealMatrix::identity(2)), 1e-15);
  EXPECT_THROW(k_unistochastic_coarse_grain(ComplexMatrix::identity(5), 2, 2), ShapeMismatch);
  for (int r = 0; r < 20; ++r) {
    const auto u = oracle::random_unitary(rng, 9);
    const auto g = k_unistochastic_coarse_grain(u, 3, 3);
    EXPECT_LT(max_abs_diff(g, transition_from_dilation({u, 3})), 1e-14);
    for (std::size_t i = 0; i < 3; ++i) {
      double rs = 0, cs = 0;
      for (std::size_t j = 0; j < 3; ++j) rs += g(i, j), cs += g(j, i);
      EXPECT_NEAR(rs, 1, 1e-12);
      EXPECT_NEAR(cs, 1, 1e-12);
    }
  }
}

TEST(Corners, ReproduceClaimedChannels) {
  const auto corners = star_corner_unitaries();
  ASSERT_EQ(corners.size(), 6u);
  std::vector<std::array<double, 2>> vertices;
  for (const auto& t : star_triangles())
    for (const auto& v : t) vertices.push_back(v);
  for (const auto& c : corners) {
    EXPECT_TRUE(is_unitary(c.u.u, 1e-12));
    const auto ch = channel_from_dilation(c.u);
    EXPECT_LT(ch.weyl_residual, 1e-10) << c.label;
    EXPECT_NEAR(ch.weyl_p[0], c.expected.p1, 1e-8) << c.label;
    EXPECT_NEAR(ch.weyl_p[3], c.expected.p2, 1e-8) << c.label;
    EXPECT_NEAR(ch.weyl_p[6], c.expected.p3, 1e-8) << c.label;
    EXPECT_TRUE(david_star_test(c.expected));
    const auto xy = c.expected.planar();
    double best = INFINITY;
    for (const auto& v : vertices) best = std::min(best, std::hypot(v[0] - xy[0], v[1] - xy[1]));
    EXPECT_LT(best, 1e-9) << c.label;
  }
}

TEST(Fourier, Examples) {
  const auto id = fourier_conjugate_dilation({ComplexMatrix::identity(9), 3});
  EXPECT_LT(max_abs_diff(id.u, ComplexMatrix::identity(9)), 1e-12);
  const auto ch = channel_from_dilation(fourier_conjugate_dilation({uc_matrix(), 3}));
  EXPECT_NEAR(ch.weyl_p[0], 2.0 / 3, 1e-10);
  EXPECT_NEAR(ch.weyl_p[3], 1.0 / 3, 1e-10);
  EXPECT_THROW(fourier_conjugate_dilation({ComplexMatrix::identity(4), 2}), ShapeMismatch);
}

TEST(Fourier, ZFaceToXFace) {
  std::mt19937_64 rng(79);
  const auto f = fourier_9();
  int done = 0;
  for (int r = 0; r < 500 && done < 50; ++r) {
    const auto p = oracle::random_probs(rng, 3);
    const FacePoint fp{p[0], p[1], p[2]};
    if (!hypocycloid_test(fp)) continue;
    ++done;
    // undo the conjugation on an X-face dilation to get a Z-face one
    const DilationUnitary ux = face_channel_dilation(fp);
    const DilationUnitary uz{f.conj() * ux.u * f, 3};
    const auto chz = channel_from_dilation(uz);
    EXPECT_NEAR(chz.weyl_p[0], fp.p1, 1e-8);
    EXPECT_NEAR(chz.weyl_p[1], fp.p2, 1e-8);
    EXPECT_NEAR(chz.weyl_p[2], fp.p3, 1e-8);
    const auto chx = channel_from_dilation(fourier_conjugate_dilation(uz));
    EXPECT_NEAR(chx.weyl_p[0], fp.p1, 1e-8);
    EXPECT_NEAR(chx.weyl_p[3], fp.p2, 1e-8);
    EXPECT_NEAR(chx.weyl_p[6], fp.p3, 1e-8);
  }
  EXPECT_GT(done, 10);
}

TEST(Overlap, Values) {
  EXPECT_LT(std::abs(z_face_overlap({1, 0, 0}) - 1.0), 1e-15);
  EXPECT_LT(std::abs(z_face_overlap({1.0 / 3, 1.0 / 3, 1.0 / 3})), 1e-15);
  // s = c(1) = p1 + p2 w + p3 w^2
  const cplx w = std::polar(1.0, 2 * std::numbers::pi / 3);
  EXPECT_LT(std::abs(z_face_overlap({0.875, 0.1, 0.025}) - (0.875 + 0.1 * w + 0.025 * w * w)), 1e-15);
}

TEST(Search, EasyInstancesHaveWitnesses) {
  for (const FacePoint p : {FacePoint{1, 0, 0}, FacePoint{1.0 / 3, 1.0 / 3, 1.0 / 3}, FacePoint{0.5, 0.3, 0.2}}) {
    const auto r = dilation_search_z_face(p, {.restarts = 64});
    ASSERT_TRUE(r.found);
    EXPECT_LE(r.residual, 1e-6);
    // witness checked through the physical system-first channel
    const auto ch = physical_channel_from_dilation(r.u);
    EXPECT_NEAR(ch.weyl_p[0], p.p1, 1e-5);
    EXPECT_NEAR(ch.weyl_p[1], p.p2, 1e-5);
    EXPECT_NEAR(ch.weyl_p[2], p.p3, 1e-5);
  }
}

TEST(Search, CounterexampleNotFound) {
  const auto r = dilation_search_z_face({0.875, 0.1, 0.025}, {.restarts = 64, .seed = 5});
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.restarts, 64);
  EXPECT_GT(r.residual, 1e-6);
}

}  // namespace
