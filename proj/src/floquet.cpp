#include "kicked_top/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "kicked_top/spinops.hpp"

namespace kicked_top
{

namespace
{

// m^2/(2j) = (2m)^2 / (4 * 2j), one rounding
double torsion_weight(const Spin& spin, int n)
{
	const int tm = spin.twice_m(n);
	return double(tm * tm) / double(4 * spin.twice_j());
}

constexpr double kDriftLimit = 1e-9;

void check_drift(const ComplexMatrix& u, int step)
{
	const double defect = unitarity_defect(u);
	if(defect > kDriftLimit) {
		throw NumericalError("floquet_power: unitarity drift " + std::to_string(defect) + " exceeds 1e-9 at step "
			+ std::to_string(step));
	}
}

} // namespace

StateVector torsion_phases(const Spin& spin, double k)
{
	StateVector diag(spin.dim());
	for(int n = 0; n < spin.dim(); ++n) {
		diag(n) = std::polar(1.0, -k * torsion_weight(spin, n));
	}
	return diag;
}

ComplexMatrix precession(const Spin& spin, double alpha)
{
	return expm_unitary(jy_matrix(spin), alpha);
}

ComplexMatrix build_floquet(const Spin& spin, double k, const ComplexMatrix& rotation)
{
	if(rotation.rows() != spin.dim() || rotation.cols() != spin.dim()) {
		throw ContractError("build_floquet: rotation dimension does not match spin");
	}
	return torsion_phases(spin, k).asDiagonal() * rotation;
}

ComplexMatrix build_floquet(const FloquetParams& p)
{
	if(!std::isfinite(p.k) || !std::isfinite(p.alpha)) {
		throw ContractError("build_floquet: k and alpha must be finite");
	}
	ComplexMatrix u = build_floquet(p.spin, p.k, precession(p.spin, p.alpha));
	if(unitarity_defect(u) > kStructureTol) {
		throw NumericalError("build_floquet: result not unitary to 1e-12");
	}
	return u;
}

ComplexMatrix floquet_power(const ComplexMatrix& u, int m)
{
	if(m < 0) {
		throw ContractError("floquet_power: m must be >= 0");
	}
	ComplexMatrix acc = ComplexMatrix::Identity(u.rows(), u.cols());
	for(int step = 1; step <= m; ++step) {
		acc = u * acc;
		if(step % 100 == 0) {
			check_drift(acc, step);
		}
	}
	if(m % 100 != 0) {
		check_drift(acc, m);
	}
	return acc;
}

double kappa_period(const Spin& spin)
{
	// 4 pi j = 2 pi (2j); 2 pi j = pi (2j)
	const double tj = spin.twice_j();
	return spin.is_integer() ? 2.0 * std::numbers::pi * tj : std::numbers::pi * tj;
}

std::optional<Complex> prefactor_scalar(const Spin& spin, double kappa)
{
	if(!(kappa >= 0.0) || !std::isfinite(kappa)) {
		throw ContractError("prefactor_scalar: kappa must be finite and >= 0");
	}
	const StateVector diag = torsion_phases(spin, kappa);
	// the phase argument grows like kappa * j / 2, so the agreement bound scales with it
	const double scale = std::max(1.0, kappa * spin.j() / (2.0 * std::numbers::pi));
	const Complex z = diag(0);
	for(int n = 1; n < diag.size(); ++n) {
		if(std::abs(diag(n) - z) > kStructureTol * scale) {
			return std::nullopt;
		}
	}
	return z;
}

QuasiEnergySpectrum quasienergies(const ComplexMatrix& u, PhaseBranch branch)
{
	const Eigen::ComplexEigenSolver<ComplexMatrix> es(u, false);
	if(es.info() != Eigen::Success) {
		throw NumericalError("quasienergies: eigensolver failed");
	}
	QuasiEnergySpectrum spec;
	spec.branch = branch;
	spec.phases.reserve(u.rows());
	for(const Complex& lambda : es.eigenvalues()) {
		double phase = std::arg(lambda);
		if(branch == PhaseBranch::HalfTurn) {
			if(phase > std::numbers::pi / 2) {
				phase -= std::numbers::pi;
			} else if(phase <= -std::numbers::pi / 2) {
				phase += std::numbers::pi;
			}
		} else if(phase == -std::numbers::pi) {
			phase = std::numbers::pi;
		}
		spec.phases.push_back(phase);
	}
	std::sort(spec.phases.begin(), spec.phases.end());
	return spec;
}

} // namespace kicked_top
