#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kicked_top/types.hpp"

namespace kicked_top
{

/// Point (X, Y, Z) = <J/j> on the unit sphere.
class SpherePoint
{
public:
	SpherePoint(double x, double y, double z);

	/// Point at polar angle theta from +Z and azimuth phi.
	static SpherePoint from_angles(double theta, double phi);

	[[nodiscard]] double x() const { return v_.x(); }
	[[nodiscard]] double y() const { return v_.y(); }
	[[nodiscard]] double z() const { return v_.z(); }
	[[nodiscard]] const Eigen::Vector3d& vec() const { return v_; }
	[[nodiscard]] double norm_defect() const { return std::abs(v_.squaredNorm() - 1.0); }

	/// theta in [0, pi], phi in [0, 2 pi).
	[[nodiscard]] double theta() const;
	[[nodiscard]] double phi() const;

private:
	struct Unchecked {};
	SpherePoint(const Eigen::Vector3d& v, Unchecked) : v_{v} {}
	friend struct ClassicalMapAccess;

	Eigen::Vector3d v_;
};

struct StepResult
{
	SpherePoint point;
	bool renormalized = false;
};

/// One application of the classical kicked-top map. Renormalizes only if |r|^2 drifts past 1e-12.
[[nodiscard]] StepResult classical_step(const SpherePoint& p, double k, double alpha);

struct Trajectory
{
	std::vector<SpherePoint> points; ///< n successive images (the start point excluded)
	int renormalizations = 0;
};

[[nodiscard]] Trajectory trajectory(const SpherePoint& p0, double k, double alpha, int n);

/// n_init seeded uniform starts on the sphere (uniform phi, uniform cos theta), each iterated n_iter
/// times; trajectories are concatenated in start order.
[[nodiscard]] std::vector<SpherePoint> phase_portrait(double k, double alpha, int n_init, int n_iter,
	std::uint64_t seed);

/// Start point i of a portrait: drawn from the stream keyed by seed xor i.
[[nodiscard]] SpherePoint portrait_start(std::uint64_t seed, std::uint64_t index);

} // namespace kicked_top
