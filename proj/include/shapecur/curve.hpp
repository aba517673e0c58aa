#pragma once

#include "shapecur/core.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace shapecur {

/// A sampled planar curve: a polyline through `points`, with the segment
/// from the last point back to the first present when `closed`.
///
/// Closed curves carry parameters in [0,1); open curves in [0,1].
struct SampledCurve {
  std::vector<double> params;
  std::vector<Vec2> points;
  bool closed = true;

  std::size_t size() const { return points.size(); }
  /// Number of polyline segments (n for closed curves, n-1 for open).
  std::size_t segment_count() const;
  Vec2 segment_start(std::size_t i) const { return points[i]; }
  Vec2 segment_end(std::size_t i) const { return points[(i + 1) % points.size()]; }

  /// Throws InvalidCurve if the invariants do not hold: parameters strictly
  /// increasing, at least 3 points when closed (2 when open), no zero-length
  /// segment.
  void validate() const;
};

/// Fourier coefficients z_k of z(t) = sum_k z_k exp(2 pi i k t).
using FourierCoeffs = std::map<int, std::complex<double>>;

std::complex<double> evaluate_fourier(const FourierCoeffs& coeffs, double t);

/// Samples the Fourier curve at t_i = i/n. Throws InvalidCurve for n < 3.
/// The result is not validated: an empty coefficient set yields a degenerate
/// curve that downstream immersion checks reject.
SampledCurve fourier_shape(const FourierCoeffs& coeffs, std::size_t n);

/// Random smooth shape: z_1 = 0.5, z_0 = z_{-1} = 0, and for 2 <= k <= max_k
/// independent complex normals with standard deviation 1/(1+|k|^3), i.e.
/// E|z_k|^2 = 1/(1+|k|^3)^2.
FourierCoeffs random_smooth_coeffs(std::uint64_t seed, int max_k = 6);

/// 13 nonzero coefficients k = -6..6 (z_1 = 0.5 fixed, the others complex
/// normals with standard deviation 0.1/(1+|k|^3)), used for the quadrature
/// convergence study.
FourierCoeffs random_full_coeffs(std::uint64_t seed, int max_k = 6);

/// Rough shape with coefficients of magnitude ~ scale * |k|^-decay for
/// 2 <= |k| <= max_k on top of a circle of radius 0.5.
FourierCoeffs rough_coeffs(std::uint64_t seed, double decay, int max_k, double scale);

/// |x|^r + |y|^r = (1/2)^r via the signed-power trigonometric form,
/// counterclockwise from (0.5, 0).
SampledCurve supercircle(double r_exp, std::size_t n);
Vec2 supercircle_point(double r_exp, double t);

/// Circle of radius 0.5 whose radius is scaled by 1 + eps cos(omega theta).
SampledCurve wiggly_circle(double eps, int omega, std::size_t n);

/// Circle of radius `radius` about `center`, counterclockwise from angle 0.
SampledCurve circle(std::size_t n, double radius = 0.5, Vec2 center = Vec2::Zero());

/// Figure-eight used as the bowtie: (0.25 sin 4 pi t, 0.5 sin 2 pi t).
SampledCurve bowtie(std::size_t n);

/// Retraced segment (cos 2 pi t, 0).
SampledCurve retraced_segment(std::size_t n);

/// Adds i.i.d. N(0, eps^2) noise to both coordinates of every point
/// (except the first and last when fix_endpoints). Deterministic in seed.
SampledCurve add_noise(const SampledCurve& curve, double eps, std::uint64_t seed,
                       bool fix_endpoints = false);

/// Jittered resampling of the polyline: the normalized arclength position
/// of every point is perturbed by N(0, sigma_t^2), wrapped, re-sorted and
/// re-evaluated on the original polyline. sigma_t = 0 returns the input.
SampledCurve reparameterize(const SampledCurve& curve, double sigma_t, std::uint64_t seed);

/// n equally spaced points from (0,0) to (1,0), open.
SampledCurve segment_line(std::size_t n);

double polyline_length(const SampledCurve& curve);

/// Shoelace signed area; positive for counterclockwise closed curves.
double signed_area(const SampledCurve& curve);

/// Traverses the curve backwards. Closed curves keep their first point.
SampledCurve reverse_orientation(const SampledCurve& curve);

/// Rigid translation of every point.
SampledCurve translate(const SampledCurve& curve, const Vec2& offset);

}  // namespace shapecur
