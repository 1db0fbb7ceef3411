#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kicked_top
{

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = CMatrix<double>;
using StateVector = CVector<double>;

/// A caller broke a documented precondition (non-Hermitian input, bad partition, ...).
class ContractError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/// Shifted samples of a grid do not land on grid points.
class AlignmentError : public ContractError
{
public:
	using ContractError::ContractError;
};

/// Roundoff exceeded the bound an operation promises (unitarity drift, norm drift, ...).
class NumericalError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// A sweep or run configuration is inconsistent with the chosen measure.
class SpecError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/// Angular momentum quantum number, stored exactly as 2j.
class Spin
{
public:
	explicit Spin(int twice_j) : twice_j_{twice_j}
	{
		if(twice_j < 1) {
			throw ContractError("Spin: 2j must be >= 1, got " + std::to_string(twice_j));
		}
	}

	[[nodiscard]] int twice_j() const { return twice_j_; }
	[[nodiscard]] int dim() const { return twice_j_ + 1; }
	[[nodiscard]] double j() const { return 0.5 * twice_j_; }
	[[nodiscard]] bool is_integer() const { return twice_j_ % 2 == 0; }

	/// 2m for basis index n, in the fixed descending order m = j, j-1, ..., -j.
	[[nodiscard]] int twice_m(int n) const { return twice_j_ - 2 * n; }
	[[nodiscard]] double m(int n) const { return 0.5 * twice_m(n); }

	friend bool operator==(const Spin&, const Spin&) = default;

private:
	int twice_j_;
};

struct CoherentAngles
{
	double theta = 0.0;
	double phi = 0.0;
};

template <typename Derived>
[[nodiscard]] typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& h)
{
	return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
[[nodiscard]] typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u)
{
	using Plain = typename Derived::PlainObject;
	return (u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

inline constexpr double kStructureTol = 1e-12;

} // namespace kicked_top
