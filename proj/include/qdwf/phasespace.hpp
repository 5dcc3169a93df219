#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdwf/gf2n.hpp"

namespace qdwf {

struct PhasePoint {
  FieldElement q;  // horizontal coordinate
  FieldElement p;  // vertical coordinate

  friend constexpr bool operator==(PhasePoint, PhasePoint) = default;
};

using Translation = std::pair<FieldElement, FieldElement>;

/// A line a*q + b*p = c with (a,b) != (0,0); holds its N points.
struct Line {
  FieldElement a, b, c;
  int striation = 0;
  std::vector<PhasePoint> points;

  bool contains(PhasePoint pt) const {
    for (const auto& x : points) {
      if (x == pt) return true;
    }
    return false;
  }
};

/// A maximal set of N parallel lines. Lines are indexed by the integer
/// encoding of their intercept c.
struct Striation {
  int index = 0;
  Translation direction;  // d such that the invariant translations are t*d, t != 0
  std::vector<Line> lines;
};

/// The N x N discrete phase space over GF(2^n) and its N+1 striations.
///
/// Striation order: 0 = vertical lines (q = c), 1 = horizontal lines (p = c),
/// 2..N = lines p = s*q + c with slope s = index - 1.
class PhaseSpace {
 public:
  explicit PhaseSpace(Field field) : field_(std::move(field)), N_(field_.size()) {
    points_.reserve(N_ * N_);
    for (unsigned q = 0; q < N_; ++q) {
      for (unsigned p = 0; p < N_; ++p) {
        points_.push_back({FieldElement(q), FieldElement(p)});
      }
    }
    striations_.reserve(N_ + 1);
    for (unsigned s = 0; s <= N_; ++s) striations_.push_back(make_striation(static_cast<int>(s)));
  }

  static PhaseSpace standard(int n) { return PhaseSpace(Field::standard(n)); }

  const Field& field() const { return field_; }
  unsigned dim() const { return N_; }
  unsigned num_points() const { return N_ * N_; }
  unsigned num_striations() const { return N_ + 1; }

  const std::vector<PhasePoint>& points() const { return points_; }
  const std::vector<Striation>& striations() const { return striations_; }

  const Striation& striation(int index) const {
    if (index < 0 || index > static_cast<int>(N_)) {
      throw std::invalid_argument("PhaseSpace: striation index " + std::to_string(index) + " out of range");
    }
    return striations_[static_cast<unsigned>(index)];
  }

  int point_index(PhasePoint pt) const { return static_cast<int>(pt.q.value() * N_ + pt.p.value()); }

  PhasePoint point_at(int index) const {
    return {FieldElement(static_cast<unsigned>(index) / N_), FieldElement(static_cast<unsigned>(index) % N_)};
  }

  static PhasePoint translate(PhasePoint pt, FieldElement alpha, FieldElement beta) {
    return {Field::add(pt.q, alpha), Field::add(pt.p, beta)};
  }

  /// Intercept of the striation's line through pt.
  FieldElement line_intercept(int striation_index, PhasePoint pt) const {
    if (striation_index == 0) return pt.q;
    if (striation_index == 1) return pt.p;
    const FieldElement s(static_cast<unsigned>(striation_index - 1));
    return Field::add(field_.mul(s, pt.q), pt.p);
  }

  const Line& line_through(int striation_index, PhasePoint pt) const {
    return striation(striation_index).lines[line_intercept(striation_index, pt).value()];
  }

  /// The N-1 nonzero translations that map every line of the striation to
  /// itself: the nonzero field multiples of its direction vector, ordered by
  /// the integer encoding of the multiplier.
  std::vector<Translation> invariant_translations(int striation_index) const {
    const auto& d = striation(striation_index).direction;
    std::vector<Translation> out;
    out.reserve(N_ - 1);
    for (unsigned t = 1; t < N_; ++t) {
      const FieldElement m(t);
      out.push_back({field_.mul(m, d.first), field_.mul(m, d.second)});
    }
    return out;
  }

  /// Canonical translation mapping the intercept-0 line of the striation to
  /// the intercept-c line: (c, 0) for the vertical striation, (0, c) otherwise.
  Translation canonical_translation(int striation_index, FieldElement c) const {
    if (striation_index == 0) return {c, FieldElement(0)};
    striation(striation_index);  // range check
    return {FieldElement(0), c};
  }

 private:
  Striation make_striation(int index) const {
    Striation s;
    s.index = index;
    FieldElement a, b;
    if (index == 0) {
      a = FieldElement(1);
      b = FieldElement(0);
      s.direction = {FieldElement(0), FieldElement(1)};
    } else if (index == 1) {
      a = FieldElement(0);
      b = FieldElement(1);
      s.direction = {FieldElement(1), FieldElement(0)};
    } else {
      a = FieldElement(static_cast<unsigned>(index - 1));  // slope s: s*q + p = c
      b = FieldElement(1);
      s.direction = {FieldElement(1), a};
    }
    s.lines.reserve(N_);
    for (unsigned c = 0; c < N_; ++c) {
      Line line;
      line.a = a;
      line.b = b;
      line.c = FieldElement(c);
      line.striation = index;
      line.points.reserve(N_);
      if (index == 0) {
        for (unsigned p = 0; p < N_; ++p) line.points.push_back({FieldElement(c), FieldElement(p)});
      } else if (index == 1) {
        for (unsigned q = 0; q < N_; ++q) line.points.push_back({FieldElement(q), FieldElement(c)});
      } else {
        for (unsigned q = 0; q < N_; ++q) {
          const FieldElement qe(q);
          line.points.push_back({qe, Field::add(field_.mul(a, qe), FieldElement(c))});
        }
      }
      s.lines.push_back(std::move(line));
    }
    return s;
  }

  Field field_;
  unsigned N_;
  std::vector<PhasePoint> points_;
  std::vector<Striation> striations_;
};

/// A quantum net: one field-element offset per striation. The offset of
/// striation i selects which MUB vector is attached to its intercept-0 line;
/// all other lines follow by translation covariance.
struct QuantumNet {
  std::vector<FieldElement> offsets;  // size N+1

  static QuantumNet canonical(const PhaseSpace& space) {
    return QuantumNet{std::vector<FieldElement>(space.num_striations(), FieldElement(0))};
  }

  friend bool operator==(const QuantumNet&, const QuantumNet&) = default;
};

/// N^(N+1). Exceeds 64 bits at n = 4, where nets are addressed by explicit
/// offsets instead of an index.
inline std::uint64_t net_count(int n) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("net_count: index arithmetic supported for n in [1,3] only");
  }
  const unsigned N = 1u << n;
  std::uint64_t count = 1;
  for (unsigned i = 0; i <= N; ++i) count *= N;
  return count;
}

/// Mixed-radix decoding, striation 0 = least significant digit. Index 0 is the
/// all-zero-offset canonical net.
inline QuantumNet net_from_index(const PhaseSpace& space, std::uint64_t index) {
  const int n = space.field().degree();
  if (index >= net_count(n)) {
    throw std::invalid_argument("net_from_index: index " + std::to_string(index) + " out of range");
  }
  const unsigned N = space.dim();
  QuantumNet net;
  net.offsets.reserve(N + 1);
  for (unsigned i = 0; i <= N; ++i) {
    net.offsets.push_back(FieldElement(static_cast<unsigned>(index % N)));
    index /= N;
  }
  return net;
}

inline std::uint64_t net_index(const PhaseSpace& space, const QuantumNet& net) {
  const unsigned N = space.dim();
  if (net.offsets.size() != N + 1) throw std::invalid_argument("net_index: offset count does not match N+1");
  net_count(space.field().degree());  // range guard
  std::uint64_t index = 0;
  for (auto it = net.offsets.rbegin(); it != net.offsets.rend(); ++it) {
    index = index * N + it->value();
  }
  return index;
}

/// All N^(N+1) nets in increasing index order. Guarded to n <= 2; the count
/// exceeds 10^6 from n = 3 on.
inline std::vector<QuantumNet> enumerate_nets(const PhaseSpace& space) {
  const int n = space.field().degree();
  if (n > 2) {
    throw std::invalid_argument("enumerate_nets: exhaustive enumeration is limited to n <= 2");
  }
  const std::uint64_t count = net_count(n);
  std::vector<QuantumNet> nets;
  nets.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) nets.push_back(net_from_index(space, k));
  return nets;
}

}  // namespace qdwf
