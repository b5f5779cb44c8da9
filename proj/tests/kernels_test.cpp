// Every SIMD kernel table must agree with the scalar reference bit for bit.

#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

#include "ccl/kernels.hpp"

namespace ccl::kernels {
namespace {

using Vec = std::array<Exponent, kLanes>;

Vec random_vec(std::mt19937_64& rng, unsigned max_exp, std::size_t nvars) {
  std::uniform_int_distribution<unsigned> d(0, max_exp);
  Vec v{};
  for (std::size_t i = 0; i < nvars; ++i) v[i] = static_cast<Exponent>(d(rng));
  return v;
}

class KernelEquivalence : public ::testing::TestWithParam<const KernelTable*> {};

TEST_P(KernelEquivalence, MonomialKernelsMatchScalar) {
  const KernelTable& ref = scalar_kernels();
  const KernelTable& simd = *GetParam();
  std::mt19937_64 rng(20240611);
  for (int iter = 0; iter < 20000; ++iter) {
    std::size_t nvars = 1 + rng() % kLanes;
    unsigned max_exp = (iter % 4 == 0) ? 0xFFFF : (iter % 4 == 1 ? 3 : 40);
    Vec a = random_vec(rng, max_exp, nvars);
    Vec b = (iter % 7 == 0) ? a : random_vec(rng, max_exp, nvars);

    Vec o1{}, o2{};
    bool ok1 = ref.mul(a.data(), b.data(), o1.data());
    bool ok2 = simd.mul(a.data(), b.data(), o2.data());
    ASSERT_EQ(ok1, ok2);
    if (ok1) {
      ASSERT_EQ(o1, o2);
    }

    ASSERT_EQ(ref.divides(a.data(), b.data()), simd.divides(a.data(), b.data()));
    ASSERT_EQ(ref.coprime(a.data(), b.data()), simd.coprime(a.data(), b.data()));

    ref.lcm(a.data(), b.data(), o1.data());
    simd.lcm(a.data(), b.data(), o2.data());
    ASSERT_EQ(o1, o2);

    if (ref.divides(b.data(), a.data())) {
      ref.quotient(a.data(), b.data(), o1.data());
      simd.quotient(a.data(), b.data(), o2.data());
      ASSERT_EQ(o1, o2);
    }

    std::size_t begin = rng() % (nvars + 1);
    std::size_t end = begin + rng() % (nvars + 1 - begin);
    ASSERT_EQ(ref.degree(a.data(), begin, end), simd.degree(a.data(), begin, end));
    ASSERT_EQ(ref.compare_grevlex(a.data(), b.data(), begin, end),
              simd.compare_grevlex(a.data(), b.data(), begin, end));
    ASSERT_EQ(ref.compare_grevlex(a.data(), b.data(), 0, nvars),
              simd.compare_grevlex(a.data(), b.data(), 0, nvars));
    ASSERT_EQ(ref.compare_lex(a.data(), b.data()), simd.compare_lex(a.data(), b.data()));
  }
}

TEST_P(KernelEquivalence, FindDivisorMatchesScalar) {
  const KernelTable& ref = scalar_kernels();
  const KernelTable& simd = *GetParam();
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    std::size_t count = rng() % 9;
    std::vector<Exponent> table;
    for (std::size_t k = 0; k < count; ++k) {
      Vec v = random_vec(rng, 4, 5);
      table.insert(table.end(), v.begin(), v.end());
    }
    Vec m = random_vec(rng, 6, 5);
    ASSERT_EQ(ref.find_divisor(table.data(), count, m.data()),
              simd.find_divisor(table.data(), count, m.data()));
  }
}

TEST_P(KernelEquivalence, AxpyModMatchesScalar) {
  const KernelTable& ref = scalar_kernels();
  const KernelTable& simd = *GetParam();
  std::mt19937_64 rng(99);
  const std::uint32_t primes[] = {2, 3, 5, 7, 101, 32749, 65521, 2147483647u};
  for (std::uint32_t p : primes) {
    for (int iter = 0; iter < 200; ++iter) {
      std::size_t n = rng() % 40;
      std::vector<std::uint32_t> dst(n), src(n);
      for (auto& v : dst) v = static_cast<std::uint32_t>(rng() % p);
      for (auto& v : src) v = static_cast<std::uint32_t>(rng() % p);
      std::uint32_t s = static_cast<std::uint32_t>(rng() % p);
      if (iter == 0) s = p - 1;
      auto d1 = dst, d2 = dst;
      ref.axpy_mod(d1.data(), src.data(), s, p, n);
      simd.axpy_mod(d2.data(), src.data(), s, p, n);
      ASSERT_EQ(d1, d2) << "p=" << p;
    }
  }
}

std::string table_name(const ::testing::TestParamInfo<const KernelTable*>& info) {
  return info.param->name;
}

INSTANTIATE_TEST_SUITE_P(AllTables, KernelEquivalence,
                         ::testing::ValuesIn(available_kernels()), table_name);

TEST(KernelDispatch, SelectByName) {
  const KernelTable* before = &active();
  EXPECT_TRUE(select_kernels("scalar"));
  EXPECT_STREQ(active().name, "scalar");
  EXPECT_FALSE(select_kernels("sse9"));
  EXPECT_STREQ(active().name, "scalar");
  EXPECT_TRUE(select_kernels(before->name));
}

TEST(ScalarKernels, OverflowDetected) {
  Vec a{}, b{}, out{};
  a[3] = 0xFFFF;
  b[3] = 1;
  EXPECT_FALSE(scalar_kernels().mul(a.data(), b.data(), out.data()));
}

TEST(ScalarKernels, GrevlexBreaksTiesOnLastVariable) {
  // x*y vs x*w in x > y > z > w: x*w has a w, so it is smaller.
  Vec xy{}, xw{};
  xy[0] = xy[1] = 1;
  xw[0] = xw[3] = 1;
  EXPECT_EQ(scalar_kernels().compare_grevlex(xy.data(), xw.data(), 0, 4), 1);
  EXPECT_EQ(scalar_kernels().compare_lex(xy.data(), xw.data()), 1);
}

}  // namespace
}  // namespace ccl::kernels
