#pragma once

// Catalog of test functions used by the experiments. Each entry carries a
// polynomial growth exponent p (|phi(x)| <= C(1 + |x|^p)) and a convexity
// tag that the G-normal oracles rely on.

#include <string>
#include <string_view>
#include <vector>

namespace gexlab {

enum class PhiKind {
  Abs,
  Square,
  Cube,
  Quartic,
  NegSquare,
  NegAbs,
  AbsPow,     // |x|^r
  Ramp,       // max(x - a, 0)
  Clamp,      // min(max(x, a), b)
  Indicator,  // 1 on [a, b]
};

enum class Convexity { Convex, Concave, Neither };

std::string_view toString(Convexity c) noexcept;

class PhiSpec {
 public:
  static PhiSpec abs() { return PhiSpec(PhiKind::Abs); }
  static PhiSpec square() { return PhiSpec(PhiKind::Square); }
  static PhiSpec cube() { return PhiSpec(PhiKind::Cube); }
  static PhiSpec quartic() { return PhiSpec(PhiKind::Quartic); }
  static PhiSpec negSquare() { return PhiSpec(PhiKind::NegSquare); }
  static PhiSpec negAbs() { return PhiSpec(PhiKind::NegAbs); }
  static PhiSpec absPow(double r);
  static PhiSpec ramp(double a);
  static PhiSpec clamp(double a, double b);
  static PhiSpec indicator(double a, double b);

  /// Parses "NAME" or "NAME:ARG[,ARG]" (e.g. "abspow:2.5", "clamp:-1,1").
  /// Throws ConfigurationError on unknown names or bad arguments.
  static PhiSpec parse(std::string_view text);

  /// One representative of every catalog entry.
  static std::vector<PhiSpec> catalog();

  double operator()(double x) const noexcept;

  PhiKind kind() const noexcept { return kind_; }
  double growthExponent() const noexcept;
  Convexity convexity() const noexcept;
  bool bounded() const noexcept;
  /// Largest |x| at which the function has a kink or jump (0 if none).
  double featureRadius() const noexcept;
  /// Canonical text form accepted by parse().
  std::string name() const;

  friend bool operator==(const PhiSpec&, const PhiSpec&) = default;

 private:
  explicit PhiSpec(PhiKind kind, double a = 0.0, double b = 0.0)
      : kind_(kind), a_(a), b_(b) {}

  PhiKind kind_;
  double a_;
  double b_;
};

}  // namespace gexlab
