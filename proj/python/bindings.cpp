#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "divkit/baselines.hpp"
#include "divkit/dcscore.hpp"
#include "divkit/parallel.hpp"
#include "divkit/stats.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace divkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

EmbeddingMatrix to_embeddings(const Array& a) {
  if (a.ndim() != 2) throw InputError("embeddings must be a 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0)), d = static_cast<std::size_t>(a.shape(1));
  return EmbeddingMatrix(Matrix(n, d, std::vector<double>(a.data(), a.data() + n * d)));
}

Array to_array(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

KernelSpec kernel_spec(const std::string& kernel, std::optional<double> gamma, int degree, double coef0) {
  KernelSpec spec{parse_kernel_kind(kernel), gamma};
  spec.degree = degree;
  spec.coef0 = coef0;
  return spec;
}

DCScoreParams dc_params(double tau, const std::string& kernel, std::optional<double> gamma, int degree,
                        double coef0) {
  DCScoreParams p;
  p.tau = tau;
  p.kernel = kernel_spec(kernel, gamma, degree, coef0);
  return p;
}

}  // namespace

PYBIND11_MODULE(_divkit, m) {
  m.doc() = "Dataset diversity metrics";

  auto base = py::register_exception<Error>(m, "DivkitError", PyExc_ValueError);
  auto input = py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<FormatError>(m, "FormatError", input);
  py::register_exception<UndefinedCorrelation>(m, "UndefinedCorrelation", input);
  py::register_exception<ParameterError>(m, "ParameterError", base);
  py::register_exception<NumericalError>(m, "NumericalError", base);

  py::class_<BatchScore>(m, "BatchScore")
      .def_readonly("batch", &BatchScore::batch)
      .def_readonly("n", &BatchScore::n)
      .def_readonly("score", &BatchScore::score);

  py::class_<DiversityReport>(m, "DiversityReport")
      .def_readonly("method", &DiversityReport::method)
      .def_readonly("n", &DiversityReport::n)
      .def_readonly("params", &DiversityReport::params)
      .def_readonly("score", &DiversityReport::score)
      .def_readonly("batch_scores", &DiversityReport::batch_scores)
      .def_readonly("timings_ms", &DiversityReport::timings_ms)
      .def_readonly("warnings", &DiversityReport::warnings)
      .def("__float__", [](const DiversityReport& r) { return r.score; })
      .def("__repr__", [](const DiversityReport& r) {
        return "<DiversityReport " + r.method + " n=" + std::to_string(r.n) + " score=" + std::to_string(r.score) + ">";
      });

  m.def("set_num_threads", &set_num_threads, "n"_a, "Worker threads for row-parallel stages (0 = hardware).");
  m.def("num_threads", &num_threads);

  m.def(
      "dcscore",
      [](const Array& h, double tau, const std::string& kernel, std::optional<double> gamma, int degree,
         double coef0) { return dcscore(to_embeddings(h), dc_params(tau, kernel, gamma, degree, coef0)); },
      "embeddings"_a, "tau"_a = 1.0, "kernel"_a = "inner", "gamma"_a = py::none(), "degree"_a = 3,
      "coef0"_a = 1.0, "Trace of the row softmax of the kernel matrix.");

  m.def(
      "dcscore_batched",
      [](const Array& h, const std::vector<std::string>& batches, double tau, const std::string& kernel,
         std::optional<double> gamma, int degree, double coef0) {
        DCScoreParams p = dc_params(tau, kernel, gamma, degree, coef0);
        p.protocol = Protocol::kBatched;
        return dcscore_batched(to_embeddings(h), batches, p);
      },
      "embeddings"_a, "batches"_a, "tau"_a = 1.0, "kernel"_a = "inner", "gamma"_a = py::none(),
      "degree"_a = 3, "coef0"_a = 1.0, "Unweighted mean of DCScore over rows grouped by batch tag.");

  m.def(
      "vendi_score",
      [](const Array& h, const std::string& kernel, std::optional<double> gamma, int degree, double coef0,
         std::optional<bool> fast_gram_path) {
        VendiParams p;
        p.kernel = kernel_spec(kernel, gamma, degree, coef0);
        p.fast_gram_path = fast_gram_path;
        return vendi_score(to_embeddings(h), p);
      },
      "embeddings"_a, "kernel"_a = "inner", "gamma"_a = py::none(), "degree"_a = 3, "coef0"_a = 1.0,
      "fast_gram_path"_a = py::none());

  m.def(
      "kmeans_inertia",
      [](const Array& h, std::size_t k, int max_iters, std::uint64_t seed, int n_init) {
        return kmeans_inertia(to_embeddings(h), {k, max_iters, seed, n_init});
      },
      "embeddings"_a, "k"_a = 10, "max_iters"_a = 100, "seed"_a = 0, "n_init"_a = 4);

  m.def(
      "distinct_n",
      [](const std::vector<std::string>& texts, int n) {
        std::vector<Record> records;
        for (const std::string& t : texts) records.push_back({std::to_string(records.size()), t, {}, {}});
        return distinct_n(Corpus(std::move(records)), n);
      },
      "texts"_a, "n"_a = 5);

  m.def(
      "spearman_rho",
      [](const std::vector<double>& x, const std::vector<double>& y) { return spearman_rho(x, y).rho; },
      "x"_a, "y"_a);

  m.def(
      "generate_synthetic",
      [](std::optional<std::vector<double>> levels, std::size_t samples, std::size_t clusters, std::size_t dim,
         std::uint64_t seed) {
        SyntheticSpec spec = SyntheticSpec::standard();
        if (levels) spec.levels = *levels;
        spec.samples_per_level = samples;
        spec.clusters = clusters;
        spec.dim = dim;
        spec.seed = seed;
        py::list out;
        for (const SyntheticLevel& level : generate_synthetic(spec)) {
          out.append(py::make_tuple(level.sigma, to_array(level.embeddings.values())));
        }
        return out;
      },
      "levels"_a = py::none(), "samples"_a = 100, "clusters"_a = 5, "dim"_a = 64, "seed"_a = 7,
      "List of (sigma, embeddings) pairs.");

  m.def(
      "correlate",
      [](const std::string& method, std::optional<std::vector<double>> levels, std::uint64_t seed, double tau,
         const std::string& kernel) {
        SyntheticSpec spec = SyntheticSpec::standard();
        if (levels) spec.levels = *levels;
        spec.seed = seed;
        MethodParams params;
        params.dcscore.tau = tau;
        params.dcscore.kernel = kernel_spec(kernel, std::nullopt, 3, 1.0);
        params.vendi.kernel = params.dcscore.kernel;
        const SweepCorrelation sweep = correlate_metric(spec, parse_method(method), params);
        return py::dict("rho"_a = sweep.correlation.rho, "sigmas"_a = sweep.sigmas, "scores"_a = sweep.scores);
      },
      "method"_a = "dcscore", "levels"_a = py::none(), "seed"_a = 7, "tau"_a = 1.0, "kernel"_a = "inner");
}
