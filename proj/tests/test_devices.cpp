#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcfsim/devices.hpp"
#include "mcfsim/source.hpp"
#include "mcfsim/state.hpp"
#include "test_helpers.hpp"

using namespace mcfsim;

TEST_CASE("ideal splitter matrix entries") {
  const auto bs = SplitterMatrix::ideal();
  for (int j = 0; j < kCores; ++j) {
    CHECK(bs.matrix()(0, j).real() == doctest::Approx(0.5));
    CHECK(bs.matrix()(0, j).imag() == 0.0);
  }
  for (int k = 0; k < kCores; ++k) {
    for (int j = 0; j < kCores; ++j) {
      CHECK(std::abs(bs.matrix()(k, j)) == doctest::Approx(0.5));
      CHECK(bs.matrix()(k, j).real() == doctest::Approx(0.5 * SplitterMatrix::sign(k, j)));
    }
  }
}

TEST_CASE("splitter is self-inverse: U*U = I by direct multiplication") {
  const auto bs = SplitterMatrix::ideal();
  const Matrix4c& u = bs.matrix();
  // plain-loop product, no library shortcuts
  for (int r = 0; r < kCores; ++r) {
    for (int c = 0; c < kCores; ++c) {
      Complex acc = 0.0;
      for (int m = 0; m < kCores; ++m) acc += u(r, m) * u(m, c);
      CHECK(std::abs(acc - (r == c ? 1.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("splitter column orthogonality: sum_m u_mj u_mk = 4 delta_jk") {
  for (int j = 0; j < kCores; ++j) {
    for (int k = 0; k < kCores; ++k) {
      double acc = 0.0;
      for (int m = 0; m < kCores; ++m) {
        acc += SplitterMatrix::sign(m, j) * SplitterMatrix::sign(m, k);
      }
      CHECK(acc == (j == k ? 4.0 : 0.0));
    }
  }
}

TEST_CASE("named bases") {
  SUBCASE("Z is the identity") {
    const auto z = MeasurementBasis::named("Z");
    CHECK((z.matrix().matrix() - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("X0 is the bare splitter") {
    const auto x0 = MeasurementBasis::named("X0");
    CHECK((x0.matrix().matrix() - SplitterMatrix::ideal().matrix()).cwiseAbs().maxCoeff() <
          1e-15);
  }
  SUBCASE("phase tables") {
    const auto x1 = MeasurementBasis::named("X1");
    CHECK(x1.phases()[0] == 0.0);
    CHECK(x1.phases()[1] == doctest::Approx(testref::kPi));
    CHECK(x1.phases()[2] == doctest::Approx(testref::kPi / 2));
    CHECK(x1.phases()[3] == doctest::Approx(testref::kPi / 2));
    const auto x2 = MeasurementBasis::named("X2");
    CHECK(x2.phases()[2] == doctest::Approx(testref::kPi));
    const auto x3 = MeasurementBasis::named("X3");
    CHECK(x3.phases()[3] == doctest::Approx(testref::kPi));
  }
  SUBCASE("unknown names are rejected") {
    CHECK_THROWS_AS(MeasurementBasis::named("X4"), ConfigError);
    CHECK_THROWS_AS(MeasurementBasis::named("z"), ConfigError);
    CHECK_THROWS_AS(MeasurementBasis::named(""), ConfigError);
  }
}

TEST_CASE("all five bases are pairwise mutually unbiased") {
  // brute force over all 16 vector pairs per basis pair: |<a_m|b_n>|^2 = 1/4
  const std::array<MeasurementBasis, 5> bases = {
      MeasurementBasis::named("Z"), MeasurementBasis::named("X0"),
      MeasurementBasis::named("X1"), MeasurementBasis::named("X2"),
      MeasurementBasis::named("X3")};
  for (std::size_t a = 0; a < bases.size(); ++a) {
    for (std::size_t b = 0; b < bases.size(); ++b) {
      if (a == b) continue;
      const Matrix4c overlap = bases[a].matrix().matrix() * bases[b].matrix().matrix().adjoint();
      for (int m = 0; m < kCores; ++m) {
        for (int n = 0; n < kCores; ++n) {
          CHECK(std::norm(overlap(m, n)) == doctest::Approx(0.25).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("global phase shift leaves joint distributions unchanged") {
  const auto state = ideal_state();
  for (int b = 0; b < 4; ++b) {
    PhaseVector phi = basis_phases(static_cast<BasisId>(static_cast<int>(BasisId::X0) + b));
    const auto base = MeasurementBasis::custom(phi);
    PhaseVector shifted = phi;
    for (auto& x : shifted) x += 1.2345;
    const auto moved = MeasurementBasis::custom(shifted);
    const auto d0 = born_distribution(state, base.matrix(), base.matrix());
    const auto d1 = born_distribution(state, moved.matrix(), moved.matrix());
    CHECK((d0.p - d1.p).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("custom bases validate phases") {
  CHECK_NOTHROW(MeasurementBasis::custom({0.1, -2.0, 7.0, 0.0}));
  CHECK_THROWS_AS(MeasurementBasis::custom({0.0, std::nan(""), 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("demux loss validation and scaling") {
  const std::array<double, 4> above_unity = {1.2, 1.0, 1.0, 1.0};
  const std::array<double, 4> negative = {-0.1, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(DemuxLoss{above_unity}, std::invalid_argument);
  CHECK_THROWS_AS(DemuxLoss{negative}, std::invalid_argument);

  SUBCASE("unity transmittance is the identity") {
    const Eigen::Matrix4d rates = Eigen::Matrix4d::Constant(3.0);
    CHECK((DemuxLoss::lossless().apply(rates) - rates).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("uniform 0.97 scales coincidences by 0.9409") {
    const DemuxLoss loss({0.97, 0.97, 0.97, 0.97});
    const Eigen::Matrix4d rates = Eigen::Matrix4d::Constant(1.0);
    const Eigen::Matrix4d out = loss.apply(rates);
    for (int j = 0; j < kCores; ++j) {
      for (int k = 0; k < kCores; ++k) {
        CHECK(out(j, k) == doctest::Approx(0.9409).epsilon(1e-12));
      }
    }
  }
  SUBCASE("dark core zeroes its row and column") {
    const DemuxLoss loss({0.0, 1.0, 1.0, 1.0});
    const Eigen::Matrix4d out = loss.apply(Eigen::Matrix4d::Constant(1.0));
    for (int i = 0; i < kCores; ++i) {
      CHECK(out(0, i) == 0.0);
      CHECK(out(i, 0) == 0.0);
    }
    CHECK(out(1, 1) == 1.0);
  }
}
