#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "kicked_top/types.hpp"

// Angular momentum algebra in the |j,m> basis, m = j, j-1, ..., -j (index n = j - m).

namespace kicked_top
{

template <typename Real = double>
[[nodiscard]] CMatrix<Real> jz_matrix(const Spin& spin)
{
	CMatrix<Real> jz = CMatrix<Real>::Zero(spin.dim(), spin.dim());
	for(int n = 0; n < spin.dim(); ++n) {
		jz(n, n) = Real(spin.twice_m(n)) / Real(2);
	}
	return jz;
}

/// J_+ and J_-; <j,m+1|J_+|j,m> = sqrt(j(j+1) - m(m+1)).
template <typename Real = double>
[[nodiscard]] std::pair<CMatrix<Real>, CMatrix<Real>> jpm_matrices(const Spin& spin)
{
	const int d = spin.dim();
	CMatrix<Real> jp = CMatrix<Real>::Zero(d, d);
	// (j - m)(j + m + 1) in units of 1/4 keeps the radicand exact
	for(int n = 1; n < d; ++n) {
		const int tm = spin.twice_m(n);
		const int tj = spin.twice_j();
		const Real radicand = Real((tj - tm) * (tj + tm + 2)) / Real(4);
		jp(n - 1, n) = std::sqrt(radicand);
	}
	CMatrix<Real> jm = jp.adjoint();
	return {std::move(jp), std::move(jm)};
}

template <typename Real = double>
[[nodiscard]] CMatrix<Real> jx_matrix(const Spin& spin)
{
	auto [jp, jm] = jpm_matrices<Real>(spin);
	return (jp + jm) / Real(2);
}

template <typename Real = double>
[[nodiscard]] CMatrix<Real> jy_matrix(const Spin& spin)
{
	auto [jp, jm] = jpm_matrices<Real>(spin);
	return (jp - jm) / std::complex<Real>(0, 2);
}

template <typename Real = double>
struct AngularMomentum
{
	CMatrix<Real> jx, jy, jz;

	explicit AngularMomentum(const Spin& spin)
		: jx{jx_matrix<Real>(spin)}, jy{jy_matrix<Real>(spin)}, jz{jz_matrix<Real>(spin)}
	{
	}
};

/// Spin-coherent state e^{beta J_-}/(1+|beta|^2)^j |j,j>, beta = e^{i phi} tan(theta/2).
///
/// Amplitude on |j, j-n> is sqrt(C(2j,n)) cos(theta/2)^{2j-n} sin(theta/2)^n e^{i n phi}; it is
/// evaluated in log space so large 2j does not overflow, and theta = pi puts all weight on |j,-j>.
template <typename Real = double>
[[nodiscard]] CVector<Real> coherent_state(const Spin& spin, const CoherentAngles& angles)
{
	const Real theta = angles.theta;
	const Real phi = angles.phi;
	if(!(theta >= Real(0) && theta <= std::numbers::pi_v<Real>)) {
		throw ContractError("coherent_state: theta must lie in [0, pi], got " + std::to_string(theta));
	}
	if(!std::isfinite(phi)) {
		throw ContractError("coherent_state: phi must be finite");
	}
	const int tj = spin.twice_j();
	const Real c = std::cos(theta / 2);
	const Real s = std::sin(theta / 2);
	const Real log_c = std::log(std::abs(c));
	const Real log_s = std::log(std::abs(s));
	const Real lg_tj = std::lgamma(Real(tj + 1));

	CVector<Real> psi(spin.dim());
	for(int n = 0; n <= tj; ++n) {
		const int pc = tj - n;
		if((pc > 0 && c == Real(0)) || (n > 0 && s == Real(0))) {
			psi(n) = 0;
			continue;
		}
		Real log_amp = (lg_tj - std::lgamma(Real(n + 1)) - std::lgamma(Real(pc + 1))) / 2;
		if(pc > 0) log_amp += pc * log_c;
		if(n > 0) log_amp += n * log_s;
		psi(n) = std::polar(std::exp(log_amp), n * phi);
	}
	psi /= psi.norm();
	return psi;
}

/// exp(-i t H) for Hermitian H via its eigendecomposition.
template <typename Derived>
[[nodiscard]] CMatrix<typename Derived::RealScalar> expm_unitary(const Eigen::MatrixBase<Derived>& h,
	typename Derived::RealScalar t)
{
	using Real = typename Derived::RealScalar;
	using Plain = CMatrix<Real>;
	const Plain hc = h.template cast<std::complex<Real>>();
	if(hc.rows() != hc.cols()) {
		throw ContractError("expm_unitary: matrix must be square");
	}
	const Real defect = hermiticity_defect(hc);
	if(defect > Real(kStructureTol)) {
		throw ContractError("expm_unitary: input must be Hermitian to 1e-12, defect " + std::to_string(defect));
	}
	const Eigen::SelfAdjointEigenSolver<Plain> es(hc);
	if(es.info() != Eigen::Success) {
		throw NumericalError("expm_unitary: Hermitian eigensolver failed");
	}
	const auto phases = (std::complex<Real>(0, -t) * es.eigenvalues().template cast<std::complex<Real>>())
		.array().exp().matrix();
	return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Real symmetric (G + G^T)/2, G with iid standard-normal entries drawn row-major from CounterRng(seed).
/// Diagonal variance 1, off-diagonal variance 1/2.
[[nodiscard]] ComplexMatrix goe_sample(int dim, std::uint64_t seed);

/// Expectation vector (<J_x>, <J_y>, <J_z>).
[[nodiscard]] Eigen::Vector3d spin_expectation(const AngularMomentum<double>& ops, const StateVector& psi);

} // namespace kicked_top
