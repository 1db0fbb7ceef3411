#include "kicked_top/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kicked_top/rng.hpp"
#include "kicked_top/types.hpp"

namespace kicked_top
{

struct ClassicalMapAccess
{
	static SpherePoint make(const Eigen::Vector3d& v) { return SpherePoint(v, SpherePoint::Unchecked{}); }
};

SpherePoint::SpherePoint(double x, double y, double z) : v_{x, y, z}
{
	if(!v_.allFinite() || norm_defect() > kStructureTol) {
		throw ContractError("SpherePoint: |r|^2 must equal 1 to 1e-12");
	}
}

SpherePoint SpherePoint::from_angles(double theta, double phi)
{
	const double s = std::sin(theta);
	Eigen::Vector3d v(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
	v.normalize();
	return ClassicalMapAccess::make(v);
}

double SpherePoint::theta() const
{
	return std::acos(std::clamp(v_.z(), -1.0, 1.0));
}

double SpherePoint::phi() const
{
	double p = std::atan2(v_.y(), v_.x());
	if(p < 0.0) p += 2.0 * std::numbers::pi;
	if(p >= 2.0 * std::numbers::pi) p = 0.0;
	return p;
}

StepResult classical_step(const SpherePoint& p, double k, double alpha)
{
	const double ca = std::cos(alpha), sa = std::sin(alpha);
	const double x = p.x(), y = p.y(), z = p.z();
	const double rotated_x = x * ca + z * sa;
	const double rotated_z = z * ca - x * sa;
	const double phase = k * rotated_z;
	const double cp = std::cos(phase), sp = std::sin(phase);

	Eigen::Vector3d v(rotated_x * cp - y * sp, rotated_x * sp + y * cp, rotated_z);
	bool renormalized = false;
	if(std::abs(v.squaredNorm() - 1.0) > kStructureTol) {
		v.normalize();
		renormalized = true;
	}
	return {ClassicalMapAccess::make(v), renormalized};
}

Trajectory trajectory(const SpherePoint& p0, double k, double alpha, int n)
{
	if(n < 1) {
		throw ContractError("trajectory: n must be >= 1");
	}
	Trajectory t;
	t.points.reserve(n);
	SpherePoint cur = p0;
	for(int i = 0; i < n; ++i) {
		StepResult r = classical_step(cur, k, alpha);
		if(r.renormalized) ++t.renormalizations;
		if(r.point.norm_defect() > 1e-9) {
			throw NumericalError("trajectory: norm drift exceeds 1e-9 at step " + std::to_string(i + 1));
		}
		cur = r.point;
		t.points.push_back(cur);
	}
	return t;
}

SpherePoint portrait_start(std::uint64_t seed, std::uint64_t index)
{
	CounterRng rng(stream_key(seed, index));
	const double phi = 2.0 * std::numbers::pi * rng.next_uniform();
	const double cos_theta = 2.0 * rng.next_uniform() - 1.0;
	return SpherePoint::from_angles(std::acos(cos_theta), phi);
}

std::vector<SpherePoint> phase_portrait(double k, double alpha, int n_init, int n_iter, std::uint64_t seed)
{
	if(n_init < 1 || n_iter < 1) {
		throw ContractError("phase_portrait: n_init and n_iter must be >= 1");
	}
	std::vector<SpherePoint> out;
	out.reserve(std::size_t(n_init) * std::size_t(n_iter));
	for(int i = 0; i < n_init; ++i) {
		auto t = trajectory(portrait_start(seed, std::uint64_t(i)), k, alpha, n_iter);
		out.insert(out.end(), t.points.begin(), t.points.end());
	}
	return out;
}

} // namespace kicked_top
