#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "thintree/kernels.hpp"
#include "thintree/util.hpp"

using namespace thintree;

namespace {

std::vector<double> randomVec(Rng& rng, size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.gauss() * 3.0;
  return v;
}

}  // namespace

TEST_CASE("scalar and dispatched add/sub agree exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 1 + rng.below(67);
    auto x = randomVec(rng, n);
    auto y = randomVec(rng, n);
    auto y1 = y, y2 = y;
    kern::scalar::add_inplace(y1.data(), x.data(), n);
    kern::add_inplace(y2.data(), x.data(), n);
    CHECK(y1 == y2);  // element-wise ops: bitwise identical
    y1 = y;
    y2 = y;
    kern::scalar::sub_inplace(y1.data(), x.data(), n);
    kern::sub_inplace(y2.data(), x.data(), n);
    CHECK(y1 == y2);
  }
}

TEST_CASE("avx2 variants match scalar when available") {
  if (!kern::avx2::available()) return;
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 1 + rng.below(129);
    auto x = randomVec(rng, n);
    auto y = randomVec(rng, n);
    auto y1 = y, y2 = y;
    kern::scalar::add_inplace(y1.data(), x.data(), n);
    kern::avx2::add_inplace(y2.data(), x.data(), n);
    CHECK(y1 == y2);
    y1 = y;
    y2 = y;
    kern::scalar::axpy(y1.data(), 1.5, x.data(), n);
    kern::avx2::axpy(y2.data(), 1.5, x.data(), n);
    for (size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-14));
    double d1 = kern::scalar::dot(x.data(), y.data(), n);
    double d2 = kern::avx2::dot(x.data(), y.data(), n);
    double scale = std::max(1.0, std::abs(d1));
    CHECK(std::abs(d1 - d2) <= 1e-12 * scale);
  }
}

TEST_CASE("dispatch reports a backend") {
  std::string b = kern::active_backend();
  CHECK((b == "avx2" || b == "scalar"));
}
