#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace pdc {

/// Number of monomials of total degree 1..n in d variables:
/// (n+d)!/(n! d!) - 1 (the constant term is excluded).
int basis_size(int n, int d);

/// Minimum bond count for the order-n reproduction constraints to be
/// solvable; equals basis_size(n, d).
int unisolvency_bound(int n, int d);

/// Exponent multi-indices in basis order. Degree-major; within a degree the
/// pure powers come first (coordinate order), then the mixed exponents in
/// descending lexicographic order. For d=3, n=2 this reproduces
/// [x, y, z, x^2, y^2, z^2, xy, xz, yz].
std::vector<std::array<int, 3>> basis_exponents(int n, int d);

/// Evaluate the monomial vector Q(xi); xi.size() selects d (2 or 3).
Eigen::VectorXd monomial_basis_eval(const Eigen::VectorXd& xi, int n);

/// size x d selector: column j is the unit vector picking the row of the
/// degree-1 monomial xi_j.
Eigen::MatrixXd gradient_selector(int n, int d);

}  // namespace pdc
