#pragma once

#include <cstddef>
#include <vector>

#include "pisot/interval.hpp"
#include "pisot/polynomial.hpp"

namespace pisot {

/// Certified rectangular enclosure of one complex root (or embedded value).
struct ComplexEnclosure {
  Interval real_part;
  Interval imag_part;
  Precision precision_bits = 0;

  ComplexInterval box() const { return {real_part, imag_part}; }
};

/// Position of a root relative to the unit circle, when certified.
enum class CircleSide { Inside, Outside, Unknown };

/// Certified isolation of all roots of a squarefree rational polynomial.
///
/// Each root is held as a disk (center, radius) that provably contains exactly
/// one root. Real roots have real centers and are confirmed by a Sturm count on
/// the real diameter; non-real roots come in conjugate pairs and only the
/// representative with positive imaginary part is stored. Representatives are
/// ordered: real roots ascending, then complex roots by (real, imaginary) part.
///
/// Refinement intersects each new enclosure with the previous one, so boxes
/// handed out earlier stay valid. Not thread-safe; see NumberField.
class RootIsolation {
 public:
  RootIsolation(RationalPoly p, Precision prec);

  const RationalPoly& polynomial() const { return poly_; }
  int degree() const { return poly_.degree(); }
  std::size_t real_count() const { return real_count_; }
  std::size_t complex_pair_count() const { return roots_.size() - real_count_; }
  /// r1 + r2 stored representatives.
  std::size_t size() const { return roots_.size(); }
  bool is_real(std::size_t i) const { return i < real_count_; }

  /// Shrinks root i until radius <= 2^-prec * max(1, |center|).
  void refine(std::size_t i, Precision prec);
  void refine_all(Precision prec);

  /// Rectangular enclosure of the representative root i at its current accuracy.
  ComplexEnclosure enclosure(std::size_t i) const;
  /// Achieved relative precision of root i in bits.
  Precision precision(std::size_t i) const { return roots_[i].precision; }

  /// Certified position with respect to |z| = 1 at the current accuracy.
  CircleSide circle_side(std::size_t i) const;

 private:
  struct Disk {
    Interval re;      // point
    Interval im;      // point (exactly zero for real roots)
    Interval radius;  // point, upper bound
    ComplexEnclosure box;
    Precision precision = 0;
  };

  void isolate(Precision prec);
  bool certify(std::vector<ComplexInterval>& centers, Precision work);
  void order_roots();
  Interval radius_at(const Interval& re, const Interval& im, Precision work) const;
  Precision achieved_precision(const Disk& d) const;
  bool separated_from_others(std::size_t i, const ComplexInterval& c, const Interval& rho) const;

  RationalPoly poly_;
  RationalPoly derivative_;
  std::vector<Disk> roots_;
  std::size_t real_count_ = 0;
};

}  // namespace pisot
