#include "shapecur/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace shapecur {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> uniform_params(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n);
  return t;
}

void require_points(std::size_t n) {
  if (n < 3) throw InvalidCurve("a closed curve needs at least 3 points");
}

double signed_power(double v, double p) {
  return std::copysign(std::pow(std::abs(v), p), v);
}

}  // namespace

std::size_t SampledCurve::segment_count() const {
  if (points.size() < 2) return 0;
  return closed ? points.size() : points.size() - 1;
}

void SampledCurve::validate() const {
  if (params.size() != points.size()) throw InvalidCurve("params and points differ in length");
  if (closed && points.size() < 3) throw InvalidCurve("a closed curve needs at least 3 points");
  if (!closed && points.size() < 2) throw InvalidCurve("an open curve needs at least 2 points");
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if (!(params[i] < params[i + 1])) {
      std::ostringstream os;
      os << "parameters not strictly increasing at index " << i + 1;
      throw InvalidCurve(os.str());
    }
  }
  if (!params.empty() && (params.front() < 0.0 || params.back() > 1.0 ||
                          (closed && params.back() >= 1.0))) {
    throw InvalidCurve("parameters outside [0,1)");
  }
  for (std::size_t i = 0; i < segment_count(); ++i) {
    if ((segment_end(i) - segment_start(i)).norm() == 0.0) {
      std::ostringstream os;
      os << "zero-length segment at index " << i;
      throw InvalidCurve(os.str());
    }
  }
}

std::complex<double> evaluate_fourier(const FourierCoeffs& coeffs, double t) {
  std::complex<double> z{0.0, 0.0};
  for (const auto& [k, zk] : coeffs) {
    const double a = kTwoPi * k * t;
    z += zk * std::complex<double>(std::cos(a), std::sin(a));
  }
  return z;
}

SampledCurve fourier_shape(const FourierCoeffs& coeffs, std::size_t n) {
  require_points(n);
  SampledCurve c;
  c.params = uniform_params(n);
  c.points.reserve(n);
  for (double t : c.params) {
    const auto z = evaluate_fourier(coeffs, t);
    c.points.emplace_back(z.real(), z.imag());
  }
  return c;
}

FourierCoeffs random_smooth_coeffs(std::uint64_t seed, int max_k) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FourierCoeffs c;
  c[0] = 0.0;
  c[1] = 0.5;
  c[-1] = 0.0;
  for (int k = 2; k <= max_k; ++k) {
    // E|z_k|^2 = sd^2, split evenly between the real and imaginary parts
    const double sd = 1.0 / ((1.0 + std::pow(std::abs(k), 3)) * std::numbers::sqrt2);
    const double re = sd * normal(rng);
    const double im = sd * normal(rng);
    c[k] = {re, im};
  }
  return c;
}

FourierCoeffs random_full_coeffs(std::uint64_t seed, int max_k) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FourierCoeffs c;
  for (int k = -max_k; k <= max_k; ++k) {
    if (k == 1) {
      c[k] = 0.5;
      continue;
    }
    const double sd = 0.1 / (1.0 + std::pow(std::abs(k), 3));
    const double re = sd * normal(rng);
    const double im = sd * normal(rng);
    c[k] = {re, im};
  }
  return c;
}

FourierCoeffs rough_coeffs(std::uint64_t seed, double decay, int max_k, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  FourierCoeffs c;
  c[1] = 0.5;
  for (int k = 2; k <= max_k; ++k) {
    for (int sign : {1, -1}) {
      const double mag = scale * std::pow(static_cast<double>(k), -decay);
      c[sign * k] = std::polar(mag, phase(rng));
    }
  }
  return c;
}

Vec2 supercircle_point(double r_exp, double t) {
  const double theta = kTwoPi * t;
  const double p = 2.0 / r_exp;
  return {0.5 * signed_power(std::cos(theta), p), 0.5 * signed_power(std::sin(theta), p)};
}

SampledCurve supercircle(double r_exp, std::size_t n) {
  if (!(r_exp > 0.0)) throw InvalidCurve("supercircle exponent must be positive");
  require_points(n);
  SampledCurve c;
  c.params = uniform_params(n);
  c.points.reserve(n);
  for (double t : c.params) c.points.push_back(supercircle_point(r_exp, t));
  return c;
}

SampledCurve wiggly_circle(double eps, int omega, std::size_t n) {
  if (eps < 0.0 || eps >= 1.0) throw InvalidCurve("wiggle amplitude must lie in [0,1)");
  if (omega < 0) throw InvalidCurve("wiggle frequency must be nonnegative");
  require_points(n);
  SampledCurve c;
  c.params = uniform_params(n);
  c.points.reserve(n);
  for (double t : c.params) {
    const double theta = kTwoPi * t;
    const double r = 0.5 * (1.0 + eps * std::cos(omega * theta));
    c.points.emplace_back(r * std::cos(theta), r * std::sin(theta));
  }
  return c;
}

SampledCurve circle(std::size_t n, double radius, Vec2 center) {
  require_points(n);
  SampledCurve c;
  c.params = uniform_params(n);
  c.points.reserve(n);
  for (double t : c.params) {
    const double theta = kTwoPi * t;
    c.points.emplace_back(center.x() + radius * std::cos(theta),
                          center.y() + radius * std::sin(theta));
  }
  return c;
}

SampledCurve bowtie(std::size_t n) {
  require_points(n);
  SampledCurve c;
  c.params = uniform_params(n);
  c.points.reserve(n);
  for (double t : c.params) {
    c.points.emplace_back(0.25 * std::sin(2.0 * kTwoPi * t), 0.5 * std::sin(kTwoPi * t));
  }
  return c;
}

SampledCurve retraced_segment(std::size_t n) {
  require_points(n);
  SampledCurve c;
  c.params = uniform_params(n);
  c.points.reserve(n);
  // mirror-symmetric evaluation so the two passes cancel bitwise
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = std::min(i, n - i);
    c.points.emplace_back(std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n)), 0.0);
  }
  return c;
}

SampledCurve add_noise(const SampledCurve& curve, double eps, std::uint64_t seed,
                       bool fix_endpoints) {
  if (eps < 0.0) throw InvalidCurve("noise level must be nonnegative");
  SampledCurve out = curve;
  if (eps == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, eps);
  const std::size_t n = out.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (fix_endpoints && (i == 0 || i + 1 == n)) continue;
    const double dx = normal(rng);
    const double dy = normal(rng);
    out.points[i] += Vec2(dx, dy);
  }
  return out;
}

SampledCurve reparameterize(const SampledCurve& curve, double sigma_t, std::uint64_t seed) {
  if (sigma_t < 0.0) throw InvalidCurve("reparameterization spread must be nonnegative");
  if (sigma_t == 0.0) return curve;
  if (!curve.closed) throw InvalidCurve("reparameterization is defined for closed curves");
  const std::size_t n = curve.size();
  // cumulative arclength at each vertex, plus the total
  std::vector<double> s(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i + 1] = s[i] + (curve.segment_end(i) - curve.segment_start(i)).norm();
  }
  const double total = s[n];

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma_t * total);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = std::fmod(s[i] + normal(rng), total);
    if (v < 0.0) v += total;
    u[i] = v;
  }
  std::sort(u.begin(), u.end());

  SampledCurve out;
  out.closed = true;
  std::size_t seg = 0;
  for (double v : u) {
    while (seg + 1 < n && s[seg + 1] <= v) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double lambda = len > 0.0 ? (v - s[seg]) / len : 0.0;
    const Vec2 p = (1.0 - lambda) * curve.segment_start(seg) + lambda * curve.segment_end(seg);
    const double t = v / total;
    if (!out.points.empty() && ((p - out.points.back()).norm() <= 1e-12 * total || t <= out.params.back())) {
      continue;
    }
    out.points.push_back(p);
    out.params.push_back(t);
  }
  while (out.points.size() > 1 && (out.points.back() - out.points.front()).norm() <= 1e-12 * total) {
    out.points.pop_back();
    out.params.pop_back();
  }
  return out;
}

SampledCurve segment_line(std::size_t n) {
  if (n < 2) throw InvalidCurve("a segment needs at least 2 points");
  SampledCurve c;
  c.closed = false;
  c.params.resize(n);
  c.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    c.params[i] = t;
    c.points[i] = Vec2(t, 0.0);
  }
  return c;
}

double polyline_length(const SampledCurve& curve) {
  double len = 0.0;
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    len += (curve.segment_end(i) - curve.segment_start(i)).norm();
  }
  return len;
}

double signed_area(const SampledCurve& curve) {
  double a = 0.0;
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const Vec2 p = curve.segment_start(i);
    const Vec2 q = curve.segment_end(i);
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

SampledCurve reverse_orientation(const SampledCurve& curve) {
  SampledCurve out;
  out.closed = curve.closed;
  const std::size_t n = curve.size();
  out.points.resize(n);
  out.params.resize(n);
  if (curve.closed) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (n - i) % n;
      out.points[i] = curve.points[j];
      out.params[i] = i == 0 ? curve.params[0] : 1.0 - curve.params[j];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out.points[i] = curve.points[n - 1 - i];
      out.params[i] = 1.0 - curve.params[n - 1 - i];
    }
  }
  return out;
}

SampledCurve translate(const SampledCurve& curve, const Vec2& offset) {
  SampledCurve out = curve;
  for (auto& p : out.points) p += offset;
  return out;
}

}  // namespace shapecur
