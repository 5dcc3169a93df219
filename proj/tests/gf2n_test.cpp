#include "qdwf/gf2n.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace qdwf;

namespace {

// Independent oracle: exhaustive search for the unique element f with
// Tr(e_i * f) = delta_ij for each j.
std::vector<FieldElement> dual_basis_by_search(const Field& f) {
  std::vector<FieldElement> dual;
  for (int j = 0; j < f.degree(); ++j) {
    int found = 0;
    FieldElement candidate;
    for (unsigned v = 0; v < f.size(); ++v) {
      bool ok = true;
      for (int i = 0; i < f.degree(); ++i) {
        const int expect = (i == j) ? 1 : 0;
        if (f.trace(f.mul(f.basis()[static_cast<unsigned>(i)], FieldElement(v))) != expect) ok = false;
      }
      if (ok) {
        ++found;
        candidate = FieldElement(v);
      }
    }
    EXPECT_EQ(found, 1) << "dual element " << j << " is not unique";
    dual.push_back(candidate);
  }
  return dual;
}

}  // namespace

TEST(FieldTest, AdditionIsXor) {
  EXPECT_EQ(Field::add(FieldElement(1), FieldElement(1)), FieldElement(0));
  EXPECT_EQ(Field::add(FieldElement(2), FieldElement(3)), FieldElement(1));
  EXPECT_EQ(Field::add(FieldElement(5), FieldElement(5)), FieldElement(0));
  EXPECT_EQ(Field::add(FieldElement(0), FieldElement(7)), FieldElement(7));
}

TEST(FieldTest, MultiplicationFixtures) {
  const Field f2 = Field::standard(2);
  EXPECT_EQ(f2.mul(FieldElement(2), FieldElement(2)), FieldElement(3));  // x*x = x+1 mod x^2+x+1
  const Field f3 = Field::standard(3);
  EXPECT_EQ(f3.mul(FieldElement(2), FieldElement(4)), FieldElement(3));  // x*x^2 = x+1 mod x^3+x+1
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    for (unsigned a = 0; a < f.size(); ++a) {
      EXPECT_EQ(f.mul(FieldElement(a), FieldElement(1)), FieldElement(a));
      EXPECT_EQ(f.mul(FieldElement(a), FieldElement(0)), FieldElement(0));
    }
  }
}

TEST(FieldTest, Inverse) {
  EXPECT_EQ(Field::standard(1).inv(FieldElement(1)), FieldElement(1));
  EXPECT_EQ(Field::standard(2).inv(FieldElement(2)), FieldElement(3));
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    EXPECT_EQ(f.inv(FieldElement(1)), FieldElement(1));
    for (unsigned a = 1; a < f.size(); ++a) {
      EXPECT_EQ(f.mul(FieldElement(a), f.inv(FieldElement(a))), FieldElement(1));
    }
    EXPECT_THROW(f.inv(FieldElement(0)), std::domain_error);
  }
}

TEST(FieldTest, Trace) {
  EXPECT_EQ(Field::standard(1).trace(FieldElement(1)), 1);
  EXPECT_EQ(Field::standard(2).trace(FieldElement(2)), 1);  // x + x^2 = 1 mod x^2+x+1
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    EXPECT_EQ(f.trace(FieldElement(0)), 0);
    for (unsigned a = 0; a < f.size(); ++a) {
      const int t = f.trace(FieldElement(a));
      EXPECT_TRUE(t == 0 || t == 1);
      for (unsigned b = 0; b < f.size(); ++b) {
        EXPECT_EQ(f.trace(Field::add(FieldElement(a), FieldElement(b))),
                  t ^ f.trace(FieldElement(b)));
      }
    }
  }
}

TEST(FieldTest, FieldAxiomsExhaustive) {
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    for (unsigned a = 0; a < f.size(); ++a) {
      for (unsigned b = 0; b < f.size(); ++b) {
        const FieldElement ea(a), eb(b);
        EXPECT_EQ(f.mul(ea, eb), f.mul(eb, ea));
        for (unsigned c = 0; c < f.size(); ++c) {
          const FieldElement ec(c);
          EXPECT_EQ(f.mul(f.mul(ea, eb), ec), f.mul(ea, f.mul(eb, ec)));
          EXPECT_EQ(f.mul(ea, Field::add(eb, ec)), Field::add(f.mul(ea, eb), f.mul(ea, ec)));
        }
      }
    }
  }
}

TEST(FieldTest, DualBasisFixtures) {
  // GF(2): the basis {1} is self-dual.
  const Field f1 = Field::standard(1);
  ASSERT_EQ(f1.dual_basis().size(), 1u);
  EXPECT_EQ(f1.dual_basis()[0], FieldElement(1));

  // GF(4), basis {1, x}: exhaustive search over the 16 candidate pairs gives
  // the unique dual {x+1, 1}.
  const Field f2 = Field::standard(2);
  ASSERT_EQ(f2.dual_basis().size(), 2u);
  EXPECT_EQ(f2.dual_basis()[0], FieldElement(3));
  EXPECT_EQ(f2.dual_basis()[1], FieldElement(1));

  // GF(8), polynomial basis: search over GF(8)^3 gives {1, x^2, x}.
  const Field f3 = Field::standard(3);
  ASSERT_EQ(f3.dual_basis().size(), 3u);
  EXPECT_EQ(f3.dual_basis()[0], FieldElement(1));
  EXPECT_EQ(f3.dual_basis()[1], FieldElement(4));
  EXPECT_EQ(f3.dual_basis()[2], FieldElement(2));
}

TEST(FieldTest, DualBasisMatchesExhaustiveSearch) {
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    const auto oracle = dual_basis_by_search(f);
    ASSERT_EQ(f.dual_basis().size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      EXPECT_EQ(f.dual_basis()[i], oracle[i]) << "n=" << n << " i=" << i;
    }
  }
}

TEST(FieldTest, DualOfDualIsOriginal) {
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    std::vector<FieldElement> dual(f.dual_basis().begin(), f.dual_basis().end());
    const auto dual2 = f.compute_dual(dual);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(dual2[static_cast<unsigned>(i)], f.basis()[static_cast<unsigned>(i)]);
    }
  }
}

TEST(FieldTest, CoordsRoundTrip) {
  for (int n = 1; n <= 4; ++n) {
    const Field f = Field::standard(n);
    for (unsigned a = 0; a < f.size(); ++a) {
      const auto c = f.coords(FieldElement(a));
      FieldElement rebuilt(0);
      for (int i = 0; i < n; ++i) {
        if (c[static_cast<unsigned>(i)]) rebuilt = Field::add(rebuilt, f.basis()[static_cast<unsigned>(i)]);
      }
      EXPECT_EQ(rebuilt, FieldElement(a));
      const auto d = f.dual_coords(FieldElement(a));
      FieldElement rebuilt_dual(0);
      for (int i = 0; i < n; ++i) {
        if (d[static_cast<unsigned>(i)]) {
          rebuilt_dual = Field::add(rebuilt_dual, f.dual_basis()[static_cast<unsigned>(i)]);
        }
      }
      EXPECT_EQ(rebuilt_dual, FieldElement(a));
    }
  }
}

TEST(FieldTest, RejectsBadConstruction) {
  EXPECT_THROW(Field::standard(0), std::invalid_argument);
  EXPECT_THROW(Field::standard(5), std::invalid_argument);
  EXPECT_THROW(Field(2, 0b110), std::invalid_argument);   // x^2+x = x(x+1)
  EXPECT_THROW(Field(3, 0b1001), std::invalid_argument);  // x^3+1 = (x+1)(x^2+x+1)
  EXPECT_THROW(Field(2, 0b1011), std::invalid_argument);  // degree mismatch
  EXPECT_THROW(Field::standard(2).element(4), std::invalid_argument);
}

TEST(FieldTest, RejectsDependentBasis) {
  const Field f = Field::standard(2);
  const std::vector<FieldElement> dependent{FieldElement(3), FieldElement(3)};
  EXPECT_THROW(f.compute_dual(dependent), std::invalid_argument);
  const std::vector<FieldElement> with_zero{FieldElement(0), FieldElement(1)};
  EXPECT_THROW(f.compute_dual(with_zero), std::invalid_argument);
  const std::vector<FieldElement> wrong_size{FieldElement(1)};
  EXPECT_THROW(f.compute_dual(wrong_size), std::invalid_argument);
}
