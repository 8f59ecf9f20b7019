#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dke/errors.hpp"

namespace dke {

/// A finite metric measure space: n points, a symmetric distance matrix and a
/// strictly positive mass per point.
struct MetricMeasureSpace {
    Eigen::MatrixXd dist;     // n x n, zero diagonal, symmetric, triangle inequality
    Eigen::VectorXd measure;  // n, strictly positive
    std::string label;

    int n() const { return static_cast<int>(measure.size()); }
    double vol() const { return measure.sum(); }
    double diam() const { return dist.size() == 0 ? 0.0 : dist.maxCoeff(); }
};

/// Parameters (a, b) with threshold r such that every closed ball satisfies
/// vol B(x, s) >= a * s^b for s <= r.
struct AbStandardness {
    double a;
    double b;
    double r;
};

enum class MetricMode { Geodesic, Chordal };

enum class TriangleCheck {
    Auto,    // checked for n <= 2000, skipped beyond (the check is O(n^3))
    Always,
    Skip,
};

/// Validates all space invariants. Triangle violations are reported when they
/// exceed 1e-9 * diam. Returns an empty report iff the space is valid.
ValidationReport validate_metric(const MetricMeasureSpace& mms,
                                 TriangleCheck triangle = TriangleCheck::Auto);

/// Builds a validated space; throws validation_error listing every violated
/// invariant with the offending indices.
MetricMeasureSpace make_mms(const Eigen::MatrixXd& dist, const Eigen::VectorXd& measure,
                            std::string label = {},
                            TriangleCheck triangle = TriangleCheck::Auto);

/// n i.i.d. uniform points on the unit d-sphere (dim = 2 or 3), distances
/// geodesic (arccos of the dot product) or chordal, uniform measure of total mass 1.
MetricMeasureSpace sample_sphere(int n, int dim, MetricMode mode, std::uint64_t seed);

/// n points sampled uniformly w.r.t. surface area on the torus with major
/// radius R and minor radius r embedded in R^3; chordal (Euclidean) metric,
/// uniform measure of total mass 1.
MetricMeasureSpace sample_torus(int n, double R, double r, std::uint64_t seed);

/// n i.i.d. uniform points on the lens space L(p, q) with spherical geometry.
/// Points live on the unit sphere of C^2; the quotient distance minimizes the
/// S^3 geodesic distance over the p rotations (z1, z2) -> (zeta z1, zeta^q z2),
/// zeta = exp(2 pi i / p). Uniform measure of total mass 1. Requires gcd(p,q)=1.
MetricMeasureSpace sample_lens(int n, int p, int q, std::uint64_t seed);

/// The raw point stream behind the sphere and lens samplers: n rows of unit
/// vectors in R^{d+1}, i.i.d. uniform. sample_sphere(n, d, ., seed) and, for
/// d = 3, sample_lens(n, p, q, seed) consume exactly this stream.
Eigen::MatrixXd sample_unit_sphere_points(int n, int d, std::uint64_t seed);

/// Quotient distance on L(p, q) between two unit vectors of R^4 viewed as
/// points of C^2: min over the p group rotations of the S^3 geodesic distance.
double lens_quotient_distance(const Eigen::Vector4d& x, const Eigen::Vector4d& y, int p, int q);

/// Estimates ball-growth parameters from the minimum ball mass
/// v(s) = min_x vol B(x, s) at the given sorted radii: the exponent b comes
/// from a log-log least-squares fit of v against s, and the prefactor a is the
/// largest value for which a * s^b <= vol B(x, s) is guaranteed for all
/// s <= r = max radii (using that v is nondecreasing and every ball contains
/// its own center). The returned triple therefore always satisfies the
/// ball-growth hypothesis of the analytic bound evaluators.
AbStandardness estimate_ab(const MetricMeasureSpace& mms, const std::vector<double>& radii);

}  // namespace dke
