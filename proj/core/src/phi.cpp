#include "gexlab/phi.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "gexlab/errors.hpp"
#include "gexlab/format.hpp"

namespace gexlab {

namespace {

double parseNumber(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigurationError("invalid numeric argument '" + std::string(text) +
                             "' for phi '" + std::string(context) + "'");
  }
  return value;
}

std::vector<double> parseArguments(std::string_view args,
                                   std::string_view context) {
  std::vector<double> values;
  while (!args.empty()) {
    const auto comma = args.find(',');
    values.push_back(parseNumber(args.substr(0, comma), context));
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return values;
}

}  // namespace

std::string_view toString(Convexity c) noexcept {
  switch (c) {
    case Convexity::Convex:
      return "convex";
    case Convexity::Concave:
      return "concave";
    case Convexity::Neither:
      break;
  }
  return "neither";
}

PhiSpec PhiSpec::absPow(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ConfigurationError("abspow exponent must be positive, got " +
                             formatShort(r));
  }
  return PhiSpec(PhiKind::AbsPow, r);
}

PhiSpec PhiSpec::ramp(double a) {
  if (!std::isfinite(a)) throw ConfigurationError("ramp kink must be finite");
  return PhiSpec(PhiKind::Ramp, a);
}

PhiSpec PhiSpec::clamp(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigurationError("clamp needs finite bounds a < b");
  }
  return PhiSpec(PhiKind::Clamp, a, b);
}

PhiSpec PhiSpec::indicator(double a, double b) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigurationError("indicator needs finite bounds a <= b");
  }
  return PhiSpec(PhiKind::Indicator, a, b);
}

PhiSpec PhiSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::vector<double> args =
      colon == std::string_view::npos ? std::vector<double>{}
                                      : parseArguments(text.substr(colon + 1), text);
  auto expectArgs = [&](std::size_t count) {
    if (args.size() != count) {
      throw ConfigurationError("phi '" + std::string(head) + "' takes " +
                               std::to_string(count) + " argument(s), got " +
                               std::to_string(args.size()));
    }
  };
  if (head == "abs") return expectArgs(0), abs();
  if (head == "square") return expectArgs(0), square();
  if (head == "cube") return expectArgs(0), cube();
  if (head == "quartic") return expectArgs(0), quartic();
  if (head == "negsquare") return expectArgs(0), negSquare();
  if (head == "negabs") return expectArgs(0), negAbs();
  if (head == "abspow") return expectArgs(1), absPow(args[0]);
  if (head == "ramp") {
    if (args.empty()) return ramp(0.0);
    return expectArgs(1), ramp(args[0]);
  }
  if (head == "clamp") {
    if (args.empty()) return clamp(-1.0, 1.0);
    return expectArgs(2), clamp(args[0], args[1]);
  }
  if (head == "indicator") {
    if (args.empty()) return indicator(0.0, 1.0);
    return expectArgs(2), indicator(args[0], args[1]);
  }
  throw ConfigurationError("unknown phi '" + std::string(text) + "'");
}

std::vector<PhiSpec> PhiSpec::catalog() {
  return {abs(),        square(),      cube(),         quartic(),
          negSquare(),  negAbs(),      absPow(2.5),    ramp(0.5),
          clamp(-1, 1), indicator(0, 1)};
}

double PhiSpec::operator()(double x) const noexcept {
  switch (kind_) {
    case PhiKind::Abs:
      return std::abs(x);
    case PhiKind::Square:
      return x * x;
    case PhiKind::Cube:
      return x * x * x;
    case PhiKind::Quartic:
      return (x * x) * (x * x);
    case PhiKind::NegSquare:
      return -(x * x);
    case PhiKind::NegAbs:
      return -std::abs(x);
    case PhiKind::AbsPow:
      return std::pow(std::abs(x), a_);
    case PhiKind::Ramp:
      return std::max(x - a_, 0.0);
    case PhiKind::Clamp:
      return std::min(std::max(x, a_), b_);
    case PhiKind::Indicator:
      return (x >= a_ && x <= b_) ? 1.0 : 0.0;
  }
  return 0.0;
}

double PhiSpec::growthExponent() const noexcept {
  switch (kind_) {
    case PhiKind::Abs:
    case PhiKind::NegAbs:
    case PhiKind::Ramp:
      return 1.0;
    case PhiKind::Square:
    case PhiKind::NegSquare:
      return 2.0;
    case PhiKind::Cube:
      return 3.0;
    case PhiKind::Quartic:
      return 4.0;
    case PhiKind::AbsPow:
      return a_;
    case PhiKind::Clamp:
    case PhiKind::Indicator:
      return 0.0;
  }
  return 0.0;
}

Convexity PhiSpec::convexity() const noexcept {
  switch (kind_) {
    case PhiKind::Abs:
    case PhiKind::Square:
    case PhiKind::Quartic:
    case PhiKind::Ramp:
      return Convexity::Convex;
    case PhiKind::AbsPow:
      return a_ >= 1.0 ? Convexity::Convex : Convexity::Neither;
    case PhiKind::NegSquare:
    case PhiKind::NegAbs:
      return Convexity::Concave;
    case PhiKind::Cube:
    case PhiKind::Clamp:
    case PhiKind::Indicator:
      break;
  }
  return Convexity::Neither;
}

bool PhiSpec::bounded() const noexcept {
  return kind_ == PhiKind::Clamp || kind_ == PhiKind::Indicator;
}

double PhiSpec::featureRadius() const noexcept {
  switch (kind_) {
    case PhiKind::Ramp:
      return std::abs(a_);
    case PhiKind::Clamp:
    case PhiKind::Indicator:
      return std::max(std::abs(a_), std::abs(b_));
    default:
      return 0.0;
  }
}

std::string PhiSpec::name() const {
  switch (kind_) {
    case PhiKind::Abs:
      return "abs";
    case PhiKind::Square:
      return "square";
    case PhiKind::Cube:
      return "cube";
    case PhiKind::Quartic:
      return "quartic";
    case PhiKind::NegSquare:
      return "negsquare";
    case PhiKind::NegAbs:
      return "negabs";
    case PhiKind::AbsPow:
      return "abspow:" + formatShort(a_);
    case PhiKind::Ramp:
      return "ramp:" + formatShort(a_);
    case PhiKind::Clamp:
      return "clamp:" + formatShort(a_) + "," + formatShort(b_);
    case PhiKind::Indicator:
      return "indicator:" + formatShort(a_) + "," + formatShort(b_);
  }
  return "unknown";
}

}  // namespace gexlab
