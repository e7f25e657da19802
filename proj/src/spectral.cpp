#include "netpass/spectral.hpp"

#include <stdexcept>

namespace netpass {

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& A, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(svd.matrixV().cols() - rank);
}

bool same_span(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double tol) {
  if (A.cols() != B.cols()) return false;
  if (A.cols() == 0) return true;
  // Both bases have orthonormal columns; compare via projection residuals.
  const Eigen::MatrixXd ra = B - A * (A.transpose() * B);
  const Eigen::MatrixXd rb = A - B * (B.transpose() * A);
  return ra.norm() <= tol && rb.norm() <= tol;
}

SymLoAnalysis analyze_sym_Lo(const IncidenceSet& inc, double tol_eig) {
  if (tol_eig <= 0) {
    throw std::invalid_argument("analyze_sym_Lo: tol_eig must be positive");
  }
  const Eigen::MatrixXd Lo = inc.L_o_d();
  SymLoAnalysis a;
  a.sym_Lo = 0.5 * (Lo + Lo.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.sym_Lo);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error(
        "analyze_sym_Lo: eigensolver failed; ||sym(L_o)|| = " +
        std::to_string(a.sym_Lo.norm()));
  }
  a.eigenvalues = es.eigenvalues();  // ascending
  a.min_eigenvalue = a.eigenvalues(0);
  a.min_eigenvector = es.eigenvectors().col(0);

  const double scale =
      a.eigenvalues.size() > 0 ? a.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  a.tol_used = tol_eig * std::max(1.0, scale);
  a.feedback_passive = a.min_eigenvalue >= -a.tol_used;

  a.kernel_Lo = kernel_basis(Lo);
  a.kernel_LoT = kernel_basis(Lo.transpose());
  a.kernels_equal = same_span(a.kernel_Lo, a.kernel_LoT);
  return a;
}

Proposition1Verdict check_proposition1(const Digraph& g) {
  Proposition1Verdict v;
  v.applicable = !globally_reachable_nodes(g).empty();
  const auto a = analyze_sym_Lo(build_incidence(g));
  v.min_eigenvalue = a.min_eigenvalue;
  if (v.applicable) {
    v.holds = a.min_eigenvalue <= a.tol_used;
  }
  return v;
}

Proposition23Verdict check_proposition2_3(const Digraph& g) {
  Proposition23Verdict v;
  v.applicable = !globally_reachable_nodes(g).empty();
  const IncidenceSet inc = build_incidence(g);
  const auto a = analyze_sym_Lo(inc);
  v.kernels_equal = a.kernels_equal;
  v.has_zero_eigenvalue = a.eigenvalues.cwiseAbs().minCoeff() <= a.tol_used;
  v.balanced = is_balanced(inc);
  v.consistent = (v.kernels_equal == v.has_zero_eigenvalue) &&
                 (v.has_zero_eigenvalue == v.balanced);
  return v;
}

}  // namespace netpass
