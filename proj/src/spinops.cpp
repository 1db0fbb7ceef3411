#include "kicked_top/spinops.hpp"

#include "kicked_top/rng.hpp"

namespace kicked_top
{

ComplexMatrix goe_sample(int dim, std::uint64_t seed)
{
	if(dim < 2) {
		throw ContractError("goe_sample: dim must be >= 2");
	}
	CounterRng rng(seed);
	Eigen::MatrixXd g(dim, dim);
	for(int r = 0; r < dim; ++r) {
		for(int c = 0; c < dim; ++c) {
			g(r, c) = rng.next_normal();
		}
	}
	const Eigen::MatrixXd a = (g + g.transpose()) / 2.0;
	return a.cast<Complex>();
}

Eigen::Vector3d spin_expectation(const AngularMomentum<double>& ops, const StateVector& psi)
{
	return {psi.dot(ops.jx * psi).real(), psi.dot(ops.jy * psi).real(), psi.dot(ops.jz * psi).real()};
}

} // namespace kicked_top
