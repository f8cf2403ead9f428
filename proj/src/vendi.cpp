#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "divkit/baselines.hpp"
#include "divkit/parallel.hpp"

namespace divkit {

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("eigenvalues need a square matrix");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> view(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                        static_cast<Eigen::Index>(m.cols()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(view, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double exp_entropy(std::span<const double> eigenvalues) {
  double entropy = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -1e-8) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "kernel matrix is not positive semi-definite: eigenvalue " << lambda
          << " of K/n is below -1e-8";
      throw NumericalError(msg.str());
    }
    if (lambda <= 0.0) continue;
    entropy -= lambda * std::log(lambda);
  }
  return std::exp(entropy);
}

DiversityReport vendi_score(const EmbeddingMatrix& h, const VendiParams& params) {
  params.kernel.validate();
  const bool inner = params.kernel.kind == KernelKind::kInnerProduct;
  const bool fast = params.fast_gram_path.value_or(inner && h.n() > h.d());
  if (fast && !inner) throw ParameterError("the Gram fast path applies only to the inner-product kernel");

  DiversityReport report;
  report.method = "vendi";
  report.n = h.n();
  report.params["kernel"] = std::string(to_string(params.kernel.kind));
  report.params["fast_gram_path"] = fast;
  if (!inner) report.params["gamma"] = params.kernel.resolved_gamma(h.d());
  if (params.kernel.kind == KernelKind::kPolynomial) {
    report.params["degree"] = std::int64_t{params.kernel.degree};
    report.params["coef0"] = params.kernel.coef0;
  }
  if (!params.kernel.psd_declared()) {
    report.warnings.push_back("kernel is not declared PSD; its spectrum is checked instead");
  }

  const double inv_n = 1.0 / static_cast<double>(h.n());
  double& sim_ms = report.timings_ms[stage::kSimilarity];
  double& sum_ms = report.timings_ms[stage::kSummarization];
  Matrix scaled = timed(sim_ms, [&] {
    Matrix m = fast ? gram_dual(h) : compute_kernel(h, params.kernel).values();
    for (double& v : m.data()) v *= inv_n;
    return m;
  });
  // The fast route drops n - d zero eigenvalues; they add nothing to the entropy.
  report.score = timed(sum_ms, [&] { return exp_entropy(symmetric_eigenvalues(scaled)); });
  return report;
}

}  // namespace divkit
