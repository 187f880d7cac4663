#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pn/calculus.hpp"
#include "pn/tensor.hpp"

namespace pn::oracle {

/// Central-difference step and the acceptance tolerance for the deviation
/// between exact and floating-point evaluation.
inline constexpr double kStep = 1e-4;
inline constexpr double kTolerance = 1e-6;

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using MatrixFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Floating-point views of symbolic data.
ScalarFn lift(const Poly& f);
VectorFn lift(const VectorField& X);
VectorFn lift(const OneForm& a);
MatrixFn lift(const EndoField& N);
/// Full antisymmetric matrix of a bivector.
MatrixFn lift(const Bivector& P);

/// d f / d x_i by central differences at step kStep.
double partial_diff(const ScalarFn& f, const Eigen::VectorXd& p, int i);
/// J(i, j) = d F_i / d x_j.
Eigen::MatrixXd jacobian(const VectorFn& F, const Eigen::VectorXd& p, int dim);

// Numeric re-computations of the tensor operations. Derivatives are always
// central differences; linear algebra is dense double arithmetic, so these
// share no code with the symbolic implementations they check.
VectorFn num_lie_bracket(VectorFn X, VectorFn Y);
VectorFn num_sharp(MatrixFn P, VectorFn a);
VectorFn num_endo_dual(MatrixFn N, VectorFn a);
VectorFn num_d(ScalarFn f);
VectorFn num_lie_derivative_oneform(VectorFn X, VectorFn b);
ScalarFn num_bivector_apply(MatrixFn P, VectorFn a, VectorFn b);
VectorFn num_form_bracket(MatrixFn P, VectorFn a, VectorFn b);
VectorFn num_magri_morosi(MatrixFn P, MatrixFn N, VectorFn a, VectorFn b);
ScalarFn num_poisson_bracket(MatrixFn P, ScalarFn f, ScalarFn g);
ScalarFn num_jacobiator(MatrixFn P, ScalarFn f, ScalarFn g, ScalarFn h);
VectorFn num_deformed_bracket(MatrixFn N, VectorFn X, VectorFn Y);
/// tau(d_i, d_j) as a function of the point.
VectorFn num_torsion_pair(MatrixFn N, int i, int j, int dim);
/// [P,P]^{ijk} as a scalar function.
ScalarFn num_schouten_component(MatrixFn P, int i, int j, int k, int dim);

/// One operation instance: an exact evaluator (symbolic result evaluated at
/// a rational point, flattened to components) and an independent numeric
/// evaluator of the same components.
struct OracleCase {
  std::string name;
  int dim = 0;
  std::function<std::vector<Rational>(const std::vector<Rational>&)> exact;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> approx;
};

/// Maximum deviation over `trials` random rational points in [-1, 1]^dim
/// with denominators at most 64. The deviation of a component pair (e, a)
/// is |e - a| / max(1, |e|, |a|): relative above magnitude one, absolute
/// below, so exact zeros are comparable. Deterministic for a fixed seed.
double max_relative_deviation(const OracleCase& c, int trials, std::uint64_t seed);

/// Random instances of every operation family over the given chart.
/// Deterministic for a fixed seed.
std::vector<OracleCase> oracle_battery(const ChartPtr& space, std::uint64_t seed);

}  // namespace pn::oracle
