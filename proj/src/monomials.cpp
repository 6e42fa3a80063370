#include "pdc/monomials.hpp"

#include "pdc/errors.hpp"

#include <algorithm>

namespace pdc {

namespace {

void check_args(int n, int d) {
  if (n < 1 || n > 3) throw InvalidArgument("monomial order must be in {1,2,3}");
  if (d != 2 && d != 3) throw InvalidArgument("dimension must be 2 or 3");
}

}  // namespace

int basis_size(int n, int d) {
  check_args(n, d);
  int num = 1, den = 1;
  for (int k = 1; k <= d; ++k) {
    num *= n + k;
    den *= k;
  }
  return num / den - 1;
}

int unisolvency_bound(int n, int d) { return basis_size(n, d); }

std::vector<std::array<int, 3>> basis_exponents(int n, int d) {
  check_args(n, d);
  std::vector<std::array<int, 3>> out;
  for (int deg = 1; deg <= n; ++deg) {
    // pure powers in coordinate order
    for (int j = 0; j < d; ++j) {
      std::array<int, 3> e{0, 0, 0};
      e[j] = deg;
      out.push_back(e);
    }
    // remaining exponent tuples, descending lexicographic
    std::vector<std::array<int, 3>> mixed;
    for (int i = deg; i >= 0; --i) {
      for (int j = deg - i; j >= 0; --j) {
        const int k = deg - i - j;
        if (d == 2 && k != 0) continue;
        if (i == deg || j == deg || k == deg) continue;  // pure, already listed
        mixed.push_back({i, j, k});
      }
    }
    out.insert(out.end(), mixed.begin(), mixed.end());
  }
  return out;
}

Eigen::VectorXd monomial_basis_eval(const Eigen::VectorXd& xi, int n) {
  const int d = static_cast<int>(xi.size());
  const auto exps = basis_exponents(n, d);
  Eigen::VectorXd q(static_cast<Eigen::Index>(exps.size()));
  for (std::size_t r = 0; r < exps.size(); ++r) {
    double v = 1.0;
    for (int j = 0; j < d; ++j)
      for (int p = 0; p < exps[r][j]; ++p) v *= xi[j];
    q[static_cast<Eigen::Index>(r)] = v;
  }
  return q;
}

Eigen::MatrixXd gradient_selector(int n, int d) {
  const int m = basis_size(n, d);
  Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(m, d);
  // the degree-1 monomials occupy the first d rows in coordinate order
  for (int j = 0; j < d; ++j) sel(j, j) = 1.0;
  return sel;
}

}  // namespace pdc
