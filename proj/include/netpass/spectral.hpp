#pragma once

#include <Eigen/Dense>

#include "netpass/graph.hpp"

namespace netpass {

/// Eigenstructure of sym(L_o) = (L_o + L_o^T)/2 together with the kernel
/// comparison between L_o and L_o^T. feedback_passive answers whether
/// y^T L_o y >= -tol for all unit y, i.e. whether the feedback path of the
/// directed interconnection is passive under static unit-gain controllers.
struct SymLoAnalysis {
  Eigen::MatrixXd sym_Lo;
  Eigen::VectorXd eigenvalues;  // nondecreasing
  double min_eigenvalue = 0.0;
  Eigen::VectorXd min_eigenvector;  // unit norm
  Eigen::MatrixXd kernel_Lo;        // orthonormal columns
  Eigen::MatrixXd kernel_LoT;       // orthonormal columns
  bool kernels_equal = false;
  bool feedback_passive = false;
  double tol_used = 0.0;  // absolute tolerance after scaling
};

struct Proposition1Verdict {
  bool applicable = false;  // requires a globally reachable node
  bool holds = false;       // min eigenvalue of sym(L_o) <= +tol
  double min_eigenvalue = 0.0;
};

struct Proposition23Verdict {
  bool applicable = false;
  bool kernels_equal = false;
  bool has_zero_eigenvalue = false;
  bool balanced = false;
  bool consistent = false;  // the three booleans agree
};

/// tol_eig is a relative tolerance, scaled internally by
/// max(1, largest |eigenvalue| of sym(L_o)).
SymLoAnalysis analyze_sym_Lo(const IncidenceSet& inc, double tol_eig = 1e-10);

Proposition1Verdict check_proposition1(const Digraph& g);
Proposition23Verdict check_proposition2_3(const Digraph& g);

/// Orthonormal kernel basis by SVD with a relative singular value threshold.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& A, double rel_tol = 1e-10);

/// True if the column spans coincide (dimensions equal and each basis maps
/// into the other's span within tol).
bool same_span(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
               double tol = 1e-8);

}  // namespace netpass
