#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdwf {

/// An element of GF(2^n). `bits` holds the coefficients of the element in the
/// polynomial basis, least-significant bit = coefficient of 1.
struct FieldElement {
  std::uint8_t bits = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(unsigned v) : bits(static_cast<std::uint8_t>(v)) {}

  constexpr unsigned value() const { return bits; }
  constexpr bool is_zero() const { return bits == 0; }

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

namespace gf2n_detail {

inline int poly_degree(unsigned p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

// Carry-less product of two binary polynomials.
inline unsigned poly_mul(unsigned a, unsigned b) {
  unsigned r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

// Remainder of a modulo m over F_2.
inline unsigned poly_mod(unsigned a, unsigned m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) {
    a ^= m << (d - dm);
  }
  return a;
}

inline bool poly_irreducible(unsigned m) {
  const int n = poly_degree(m);
  if (n < 1) return false;
  for (int d = 1; d < n; ++d) {
    for (unsigned q = 1u << d; q < (2u << d); ++q) {
      if (poly_mod(m, q) == 0) return false;
    }
  }
  return true;
}

}  // namespace gf2n_detail

/// GF(2^n) for n in {1,2,3,4}, with a fixed irreducible modulus, a basis
/// {e_1..e_n} and its trace-dual {f_1..f_n} (Tr(e_i f_j) = delta_ij).
class Field {
 public:
  static constexpr int kMaxDegree = 4;

  /// The pinned modulus for each degree: x, x^2+x+1, x^3+x+1, x^4+x+1.
  static unsigned standard_modulus(int n) {
    switch (n) {
      case 1: return 0b10u;
      case 2: return 0b111u;
      case 3: return 0b1011u;
      case 4: return 0b10011u;
      default: throw std::invalid_argument("Field: degree must be in [1,4], got " + std::to_string(n));
    }
  }

  /// Field with the pinned modulus and the polynomial basis {1, x, x^2, ...}.
  static Field standard(int n) { return Field(n, standard_modulus(n)); }

  Field(int n, unsigned modulus) : n_(n), modulus_(modulus) {
    if (n < 1 || n > kMaxDegree) {
      throw std::invalid_argument("Field: degree must be in [1,4], got " + std::to_string(n));
    }
    if (gf2n_detail::poly_degree(modulus) != n) {
      throw std::invalid_argument("Field: modulus degree does not match n");
    }
    if (!gf2n_detail::poly_irreducible(modulus)) {
      throw std::invalid_argument("Field: modulus is reducible over F_2");
    }
    basis_.reserve(n_);
    for (int i = 0; i < n_; ++i) basis_.push_back(FieldElement(1u << i));
    dual_ = compute_dual(basis_);
  }

  int degree() const { return n_; }
  unsigned size() const { return 1u << n_; }  // N = 2^n
  unsigned modulus() const { return modulus_; }

  FieldElement element(unsigned bits) const {
    if (bits >= size()) {
      throw std::invalid_argument("Field: element " + std::to_string(bits) + " out of range for GF(2^" +
                                  std::to_string(n_) + ")");
    }
    return FieldElement(bits);
  }

  static FieldElement add(FieldElement a, FieldElement b) { return FieldElement(a.bits ^ b.bits); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    return FieldElement(gf2n_detail::poly_mod(gf2n_detail::poly_mul(a.bits, b.bits), modulus_));
  }

  /// Multiplicative inverse, via a^(2^n - 2). Throws on a = 0.
  FieldElement inv(FieldElement a) const {
    if (a.is_zero()) throw std::domain_error("Field: zero has no multiplicative inverse");
    FieldElement r(1);
    for (unsigned k = size() - 2; k > 0; --k) r = mul(r, a);
    return r;
  }

  /// Tr(a) = a + a^2 + ... + a^(2^(n-1)), always 0 or 1.
  int trace(FieldElement a) const {
    FieldElement s = a;
    FieldElement t = a;
    for (int i = 1; i < n_; ++i) {
      s = mul(s, s);
      t = add(t, s);
    }
    return static_cast<int>(t.bits);
  }

  std::span<const FieldElement> basis() const { return basis_; }
  std::span<const FieldElement> dual_basis() const { return dual_; }

  /// Coefficients a_i of a = sum_i a_i e_i, obtained as Tr(a * f_i).
  std::vector<int> coords(FieldElement a) const {
    std::vector<int> c(n_);
    for (int i = 0; i < n_; ++i) c[i] = trace(mul(a, dual_[i]));
    return c;
  }

  /// Coefficients b_i of a = sum_i b_i f_i, obtained as Tr(a * e_i).
  std::vector<int> dual_coords(FieldElement a) const {
    std::vector<int> c(n_);
    for (int i = 0; i < n_; ++i) c[i] = trace(mul(a, basis_[i]));
    return c;
  }

  /// Trace-dual {f_j} of an arbitrary basis: Tr(e_i f_j) = delta_ij.
  /// Throws std::invalid_argument if the input vectors are linearly dependent.
  std::vector<FieldElement> compute_dual(std::span<const FieldElement> basis) const {
    if (static_cast<int>(basis.size()) != n_) {
      throw std::invalid_argument("Field: basis must have exactly n elements");
    }
    // Solve M f = u_j over F_2, where M[i][k] = Tr(e_i x^k). Rows are
    // augmented with the identity; Gauss-Jordan yields M^-1 whose column j
    // is the polynomial-coordinate vector of f_j.
    std::vector<unsigned> rows(n_);
    for (int i = 0; i < n_; ++i) {
      unsigned row = 0;
      for (int k = 0; k < n_; ++k) {
        if (trace(mul(basis[i], FieldElement(1u << k)))) row |= 1u << k;
      }
      rows[i] = row | (1u << (n_ + i));
    }
    for (int col = 0; col < n_; ++col) {
      int pivot = -1;
      for (int r = col; r < n_; ++r) {
        if (rows[r] & (1u << col)) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) throw std::invalid_argument("Field: basis vectors are linearly dependent");
      std::swap(rows[col], rows[pivot]);
      for (int r = 0; r < n_; ++r) {
        if (r != col && (rows[r] & (1u << col))) rows[r] ^= rows[col];
      }
    }
    std::vector<FieldElement> dual(n_);
    for (int j = 0; j < n_; ++j) {
      unsigned bits = 0;
      for (int k = 0; k < n_; ++k) {
        if (rows[k] & (1u << (n_ + j))) bits |= 1u << k;
      }
      dual[j] = FieldElement(bits);
    }
    return dual;
  }

 private:
  int n_;
  unsigned modulus_;
  std::vector<FieldElement> basis_;
  std::vector<FieldElement> dual_;
};

}  // namespace qdwf
