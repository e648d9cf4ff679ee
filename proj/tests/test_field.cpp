#include "lattes/field.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace lattes;

namespace {

// All prime powers q <= bound with their (p, k).
std::vector<std::pair<std::uint64_t, unsigned>> small_fields(std::uint64_t bound) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (auto p : primes_up_to(bound)) {
    std::uint64_t q = p;
    for (unsigned k = 1; q <= bound; ++k, q *= p) out.emplace_back(p, k);
  }
  return out;
}

// Oracle: a monic polynomial of degree 2 or 3 over F_p is irreducible iff it
// has no root in F_p.
bool has_root(const std::vector<std::uint64_t>& m, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = (acc * x + m[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Field, PrimeFieldHasNoModulus) {
  Field f = make_field(5, 1);
  EXPECT_EQ(f.order(), 5u);
  EXPECT_EQ(f.degree(), 1u);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint64_t>{0, 1}));
}

TEST(Field, F9UsesXSquaredPlusOne) {
  Field f = make_field(3, 2);
  EXPECT_EQ(f.order(), 9u);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint64_t>{1, 0, 1}));
}

TEST(Field, RejectsCompositeAndOversize) {
  EXPECT_THROW(make_field(4, 1), DomainError);
  EXPECT_THROW(make_field(1, 1), DomainError);
  EXPECT_THROW(make_field(3, 0), DomainError);
  EXPECT_THROW(make_field(3, 30), DomainError);
  EXPECT_THROW(make_field(7, 3, 100), DomainError);
  EXPECT_NO_THROW(make_field(7, 2, 100));
}

TEST(Field, ModulusIsLeastIrreducibleForSmallDegrees) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (unsigned k : {2u, 3u}) {
      Field f = make_field(p, k);
      // brute-force scan in the same order: lower coefficients as a base-p
      // number with c_{k-1} most significant
      std::vector<std::uint64_t> expected;
      for (std::uint64_t t = 0; t < ipow(p, k); ++t) {
        std::vector<std::uint64_t> m(k + 1, 0);
        std::uint64_t v = t;
        for (unsigned i = 0; i < k; ++i) {
          m[i] = v % p;
          v /= p;
        }
        m[k] = 1;
        if (!has_root(m, p)) {
          expected = m;
          break;
        }
      }
      EXPECT_EQ(f.modulus(), expected) << "p=" << p << " k=" << k;
    }
  }
}

TEST(Field, InvertExamples) {
  Field f5 = make_field(5, 1);
  EXPECT_EQ(f5.from_int(2).inverse(), f5.from_int(3));
  for (auto [p, k] : small_fields(50)) {
    Field f = make_field(p, k);
    EXPECT_EQ(f.one().inverse(), f.one());
  }
  Field f7 = make_field(7, 1);
  EXPECT_THROW(f7.zero().inverse(), DomainError);
}

TEST(Field, SqrtExamples) {
  Field f5 = make_field(5, 1);
  EXPECT_EQ(f5.from_int(4).sqrt(), f5.from_int(2));
  EXPECT_FALSE(f5.from_int(2).sqrt().has_value());
  EXPECT_EQ(f5.zero().sqrt(), f5.zero());
}

TEST(Field, FrobeniusExamples) {
  Field f9 = make_field(3, 2);
  for (std::uint64_t i = 0; i < 9; ++i) EXPECT_EQ(f9.from_index(i).frobenius(2), f9.from_index(i));
  Field f5 = make_field(5, 1);
  EXPECT_EQ(f5.from_int(2).frobenius(1), f5.from_int(2));
  FieldElement g = f9.generator();
  EXPECT_EQ(g.frobenius(1), g * g * g);
  EXPECT_NE(g.frobenius(1), g);
  EXPECT_EQ(g.frobenius(-1), g.frobenius(1));
}

TEST(Field, ExhaustiveInverseAndFermatUpTo1000) {
  for (auto [p, k] : small_fields(1000)) {
    Field f = make_field(p, k);
    for (std::uint64_t i = 0; i < f.order(); ++i) {
      FieldElement a = f.from_index(i);
      ASSERT_EQ(a.pow(f.order()), a) << "q=" << f.order();
      if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), f.one()) << "q=" << f.order() << " a=" << i;
    }
  }
}

TEST(Field, SqrtMatchesSquaringTableUpTo1000) {
  for (auto [p, k] : small_fields(1000)) {
    Field f = make_field(p, k);
    std::map<std::uint64_t, std::set<std::uint64_t>> roots;
    for (std::uint64_t i = 0; i < f.order(); ++i) {
      FieldElement a = f.from_index(i);
      roots[(a * a).index()].insert(i);
    }
    for (std::uint64_t i = 0; i < f.order(); ++i) {
      auto r = f.from_index(i).sqrt();
      auto it = roots.find(i);
      if (it == roots.end()) {
        ASSERT_FALSE(r.has_value()) << "q=" << f.order() << " a=" << i;
      } else {
        ASSERT_TRUE(r.has_value()) << "q=" << f.order() << " a=" << i;
        ASSERT_EQ(r->index(), *it->second.begin()) << "least root, q=" << f.order();
        ASSERT_EQ(f.from_index(i).is_square(), true);
      }
    }
  }
}

TEST(Field, AxiomsExhaustiveSmallRandomLarge) {
  for (auto [p, k] : small_fields(27)) {
    Field f = make_field(p, k);
    std::uint64_t q = f.order();
    for (std::uint64_t i = 0; i < q; ++i)
      for (std::uint64_t j = 0; j < q; ++j)
        for (std::uint64_t l = 0; l < q; ++l) {
          FieldElement a = f.from_index(i), b = f.from_index(j), c = f.from_index(l);
          ASSERT_EQ((a * b) * c, a * (b * c));
          ASSERT_EQ((a + b) + c, a + (b + c));
          ASSERT_EQ(a * (b + c), a * b + a * c);
        }
  }
  std::mt19937_64 rng(7);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 7}, {5, 4}, {13, 4}, {101, 2}, {7, 9}, {1000003, 1}, {1048573, 2}}) {
    Field f = make_field(p, k);
    for (int t = 0; t < 500; ++t) {
      FieldElement a = f.from_index(rng() % f.order()), b = f.from_index(rng() % f.order()),
                   c = f.from_index(rng() % f.order());
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a - b + b, a);
      if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), f.one());
      auto s = (a * a).sqrt();
      ASSERT_TRUE(s.has_value());
      ASSERT_TRUE(*s == a || *s == -a);
    }
  }
}

TEST(Field, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(11);
  for (auto [p, a, b] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{3, 2, 4}, {5, 2, 4}, {7, 1, 2}, {3, 2, 6}, {3, 3, 6}}) {
    Field small = make_field(p, a), big = make_field(p, b);
    FieldEmbedding e(small, big);
    for (int t = 0; t < 200; ++t) {
      FieldElement x = small.from_index(rng() % small.order()), y = small.from_index(rng() % small.order());
      ASSERT_EQ(e(x * y), e(x) * e(y));
      ASSERT_EQ(e(x + y), e(x) + e(y));
    }
    EXPECT_EQ(e(small.one()), big.one());
  }
  EXPECT_THROW(FieldEmbedding(make_field(3, 2), make_field(3, 3)), DomainError);
}
