#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include <gtest/gtest.h>

#include <casimir/error.hpp>
#include <casimir/medium.hpp>

using namespace casimir;

namespace {

cplx lorentz(cplx w) { return 1.0 + 0.64 / (1.0 - w * w - I * 0.1 * w); }

Medium lorentz_table(int points = 1201) {
  std::vector<PermittivitySample> s;
  for (int i = 0; i < points; ++i) {
    const double w = 1e-3 * std::pow(1e6, static_cast<double>(i) / (points - 1));
    s.push_back({w, lorentz(w)});
  }
  return Medium::tabulated(s);
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Medium, VacuumAndConstant) {
  const Medium v = Medium::vacuum();
  EXPECT_EQ(v.permittivity(cplx{3.0, 1.0}), cplx(1.0));
  EXPECT_TRUE(v.lossless());
  const Medium c = Medium::constant(4.0, 2.0);
  EXPECT_EQ(c.refractive_index(1.0), cplx(2.0));
  EXPECT_EQ(c.wave_number(3.0), cplx(3.0));
  EXPECT_EQ(c.permeability(1.0), cplx(1.0));
  EXPECT_THROW(Medium::constant(0.5), DomainError);
  EXPECT_THROW(Medium::vacuum(0.0), DomainError);
}

TEST(Medium, TabulatedReproducesNodesAndStaysInRange) {
  const Medium m = lorentz_table();
  for (const auto& s : m.samples()) {
    EXPECT_NEAR(std::abs(m.permittivity(s.omega) - s.epsilon), 0.0, 1e-12 * std::abs(s.epsilon));
  }
  EXPECT_FALSE(m.lossless());
  // interpolation between nodes is close to the model
  for (double w : {0.0123, 0.5, 0.97, 1.03, 7.7}) {
    EXPECT_LT(std::abs(m.permittivity(w) - lorentz(w)) / std::abs(lorentz(w)), 1e-3);
  }
  EXPECT_EQ(m.permittivity(-0.5), std::conj(m.permittivity(0.5)));
}

TEST(Medium, WaveNumberInUpperHalfPlane) {
  const Medium m = lorentz_table(300);
  for (double w = 0.01; w < 100.0; w *= 1.3) {
    EXPECT_GE(m.wave_number(w).imag(), 0.0);
  }
}

TEST(Medium, ImaginaryAxisFromKramersKronig) {
  const Medium m = lorentz_table();
  double previous = std::numeric_limits<double>::infinity();
  for (double xi : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
    const cplx e = m.permittivity(cplx{0.0, xi});
    const double exact = 1.0 + 0.64 / (1.0 + xi * xi + 0.1 * xi);
    EXPECT_EQ(e.imag(), 0.0);
    EXPECT_GE(e.real(), 1.0);
    EXPECT_LT(e.real(), previous);
    EXPECT_NEAR((e.real() - 1.0) / (exact - 1.0), 1.0, 2e-3) << xi;
    previous = e.real();
  }
}

TEST(Medium, TabulatedErrors) {
  std::vector<PermittivitySample> ok = {{1.0, 2.0}, {2.0, 2.0}, {3.0, 2.0}, {4.0, 2.0}};
  EXPECT_NO_THROW(Medium::tabulated(ok));
  auto few = ok;
  few.pop_back();
  EXPECT_THROW(Medium::tabulated(few), DomainError);
  auto unsorted = ok;
  std::swap(unsorted[1], unsorted[2]);
  EXPECT_THROW(Medium::tabulated(unsorted), DomainError);
  auto active = ok;
  active[2].epsilon = cplx{2.0, -0.1};
  EXPECT_THROW(Medium::tabulated(active), DomainError);
  auto zero = ok;
  zero[0].omega = 0.0;
  EXPECT_THROW(Medium::tabulated(zero), DomainError);

  const Medium m = Medium::tabulated(ok);
  EXPECT_THROW(m.permittivity(0.5), DomainError);
  EXPECT_THROW(m.permittivity(5.0), DomainError);
  EXPECT_THROW(m.permittivity(0.0), DomainError);
  EXPECT_THROW(m.permittivity(cplx{1.0, 1.0}), UnsupportedModelError);
}

TEST(Medium, TableFile) {
  const auto path = temp_file("casimir_medium_ok.txt",
                              "# omega re im\n1 2 0\n2 2.5 0.1  # comment\n\n3 2.4 0\n4 2.2 0\n");
  const Medium m = Medium::from_table_file(path, 10.0, 3.0);
  ASSERT_EQ(m.samples().size(), 4u);
  EXPECT_EQ(m.samples()[1].omega, 20.0);
  EXPECT_EQ(m.samples()[1].epsilon, cplx(2.5, 0.1));
  EXPECT_EQ(m.light_speed(), 3.0);

  const auto bad = temp_file("casimir_medium_bad.txt", "1 2 0\n2 2.5\n3 2 0\n4 2 0\n");
  try {
    Medium::from_table_file(bad);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(Medium::from_table_file("/nonexistent/table.txt"), Error);
}

TEST(Medium, RepositoryDataFile) {
  const Medium m = Medium::from_table_file(CASIMIR_TEST_DATA_DIR "/lorentz_medium.txt");
  EXPECT_EQ(m.samples().size(), 1201u);
  EXPECT_LT(std::abs(m.permittivity(1.0) - lorentz(1.0)), 1e-9);
}
