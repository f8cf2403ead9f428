#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "divkit/dcscore.hpp"
#include "divkit/embed.hpp"
#include "divkit/harness.hpp"
#include "divkit/parallel.hpp"
#include "divkit/report_json.hpp"
#include "divkit/stats.hpp"

namespace divkit::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  // shared
  std::string method = "dcscore";
  std::string kernel;
  std::optional<double> gamma;
  int degree = 3;
  double coef0 = 1.0;
  double tau = 1.0;
  std::string protocol = "overall";
  int ngram = 5;
  std::size_t k = 10;
  int n_init = 4;
  int max_iters = 100;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string output;
  bool pretty = false;

  // score
  std::string input;
  std::string format;
  std::string embed = "auto";
  std::size_t embed_dim = 256;
  int embed_order = 3;
  std::optional<std::size_t> max_tokens;
  bool normalize = false;

  // synth / correlate
  std::vector<double> levels;
  std::size_t samples = 100;
  std::size_t clusters = 5;
  std::size_t synth_dim = 64;
  std::string out_dir;
  std::string synth_format = "f32-binary";

  // bench
  std::vector<std::size_t> sizes;
  std::size_t bench_dim = 64;
  int repeats = 5;
  std::vector<std::string> methods;
};

void add_threads(CLI::App* app, Options& o) {
  app->add_option("--threads", o.threads, "Worker threads for row-parallel stages")
      ->envname("DIVKIT_THREADS")
      ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* app, Options& o) {
  app->add_option("--output,-o", o.output, "Write the JSON result here instead of stdout");
  app->add_flag("--pretty", o.pretty, "Indent JSON and print human-readable tables to stderr");
}

void add_metric_flags(CLI::App* app, Options& o) {
  app->add_option("--method", o.method, "dcscore | vendi | distinct-n | kmeans");
  app->add_option("--kernel", o.kernel, "inner | rbf | laplacian | poly");
  app->add_option("--gamma", o.gamma, "Kernel scale (default 1/d)");
  app->add_option("--degree", o.degree, "Polynomial kernel degree");
  app->add_option("--coef0", o.coef0, "Polynomial kernel offset");
  app->add_option("--tau", o.tau, "DCScore softmax temperature");
  app->add_option("--k", o.k, "K-means cluster count");
  app->add_option("--n-init", o.n_init, "K-means restarts");
  app->add_option("--max-iters", o.max_iters, "K-means iteration cap");
  app->add_option("--seed", o.seed, "Seed for all randomness");
}

void add_synthetic_flags(CLI::App* app, Options& o) {
  app->add_option("--levels", o.levels, "Dispersion levels, ascending (default 0.20..1.20 step 0.05)")
      ->delimiter(',');
  app->add_option("--samples", o.samples, "Samples per level");
  app->add_option("--clusters", o.clusters, "Anchor clusters per level");
  app->add_option("--dim", o.synth_dim, "Embedding dimension");
}

KernelSpec kernel_spec(const Options& o, KernelKind fallback) {
  KernelSpec spec;
  spec.kind = o.kernel.empty() ? fallback : parse_kernel_kind(o.kernel);
  spec.gamma = o.gamma;
  spec.degree = o.degree;
  spec.coef0 = o.coef0;
  spec.validate();
  return spec;
}

MethodParams method_params(const Options& o) {
  MethodParams p;
  p.dcscore.tau = o.tau;
  p.dcscore.kernel = kernel_spec(o, KernelKind::kInnerProduct);
  p.dcscore.protocol = parse_protocol(o.protocol);
  p.dcscore.validate();
  p.vendi.kernel = p.dcscore.kernel;
  p.kmeans.k = o.k;
  p.kmeans.n_init = o.n_init;
  p.kmeans.max_iters = o.max_iters;
  if (o.seed) p.kmeans.seed = *o.seed;
  p.ngram = o.ngram;
  return p;
}

SyntheticSpec synthetic_spec(const Options& o) {
  SyntheticSpec spec = SyntheticSpec::standard();
  if (!o.levels.empty()) spec.levels = o.levels;
  spec.samples_per_level = o.samples;
  spec.clusters = o.clusters;
  spec.dim = o.synth_dim;
  if (o.seed) spec.seed = *o.seed;
  return spec;
}

void emit(const json& doc, const Options& o, std::ostream& out) {
  const std::string text = doc.dump(o.pretty ? 2 : -1) + "\n";
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot open " + o.output + " for writing");
  file << text;
  if (!file) throw InputError("error writing " + o.output);
}

json cmd_score(const Options& o) {
  if (o.input.empty()) throw ParameterError("score needs --input");
  if (!fs::exists(o.input)) throw InputError("input file not found: " + o.input);

  const Method method = parse_method(o.method);
  const MethodParams params = method_params(o);
  const FileFormat format = o.format.empty() ? format_from_extension(o.input) : parse_file_format(o.format);
  const bool batched = params.dcscore.protocol == Protocol::kBatched;
  if (batched && method != Method::kDCScore) {
    throw ParameterError("the batched protocol is available for --method dcscore only");
  }

  if (format != FileFormat::kJsonl) {
    if (method == Method::kDistinctN) throw InputError("distinct-n needs a jsonl corpus with text");
    if (batched) throw InputError("the batched protocol needs a jsonl corpus with batch tags");
    double load_ms = 0.0;
    const EmbeddingMatrix h = timed(load_ms, [&] { return load_embeddings(o.input, format); });
    DiversityReport report = score_embeddings(h, method, params);
    report.timings_ms[stage::kRepresentation] = load_ms;
    return to_json(report);
  }

  double load_ms = 0.0;
  const Corpus corpus = timed(load_ms, [&] { return load_corpus(o.input); });
  if (method == Method::kDistinctN) {
    DiversityReport report = distinct_n(corpus, params.ngram);
    report.timings_ms[stage::kRepresentation] += load_ms;
    return to_json(report);
  }

  EmbedderSpec embedder;
  if (o.embed == "file" || (o.embed == "auto" && corpus.all_have_embedding())) {
    embedder = EmbedderSpec::external(o.normalize);
  } else if (o.embed == "hashed-ngram" || o.embed == "auto") {
    embedder = EmbedderSpec::hashed(o.embed_order, o.embed_dim);
    embedder.max_tokens = o.max_tokens;
  } else {
    throw ParameterError("unknown --embed \"" + o.embed + "\"");
  }

  DiversityReport report;
  if (batched) {
    report = dcscore_batched(corpus, embedder, params.dcscore);
    report.timings_ms[stage::kRepresentation] += load_ms;
  } else {
    double embed_ms = load_ms;
    const Embedding emb = timed(embed_ms, [&] { return embed_corpus(corpus, embedder); });
    report = score_embeddings(emb.matrix, method, params);
    report.timings_ms[stage::kRepresentation] = embed_ms;
    for (std::size_t row : emb.zero_rows) {
      report.warnings.push_back("record \"" + corpus[row].id + "\" produced an all-zero embedding");
    }
  }
  report.params["embed"] = std::string(embedder.kind == EmbedderKind::kHashedNgram ? "hashed-ngram" : "file");
  if (embedder.kind == EmbedderKind::kHashedNgram) {
    report.params["embed_dim"] = static_cast<std::int64_t>(embedder.dim);
    report.params["embed_order"] = std::int64_t{embedder.ngram_order};
  }
  return to_json(report);
}

json cmd_synth(const Options& o) {
  if (o.out_dir.empty()) throw ParameterError("synth needs --out-dir");
  const SyntheticSpec spec = synthetic_spec(o);
  const FileFormat format = parse_file_format(o.synth_format);
  const std::vector<SyntheticLevel> levels = generate_synthetic(spec);

  fs::create_directories(o.out_dir);
  const char* ext = format == FileFormat::kCsv ? ".csv" : format == FileFormat::kJsonl ? ".jsonl" : ".dvk";
  json files = json::array();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::ostringstream name;
    name << "level_" << std::setw(2) << std::setfill('0') << i;
    const std::string tag = name.str();
    const fs::path path = fs::path(o.out_dir) / (tag + ext);
    write_embeddings(path, levels[i].embeddings, format, tag);
    files.push_back({{"sigma", levels[i].sigma},
                     {"path", path.filename().string()},
                     {"n", levels[i].embeddings.n()},
                     {"d", levels[i].embeddings.d()}});
  }
  return {{"spec", to_json(spec)}, {"format", std::string(to_string(format))}, {"files", std::move(files)}};
}

json cmd_correlate(const Options& o) {
  const Method method = parse_method(o.method);
  const MethodParams params = method_params(o);
  const SyntheticSpec spec = synthetic_spec(o);
  const SweepCorrelation sweep = correlate_metric(spec, method, params);

  json doc = to_json(sweep);
  doc["method"] = std::string(to_string(method));
  json p{{"seed", spec.seed}};
  if (method == Method::kDCScore) {
    p["tau"] = params.dcscore.tau;
    p["kernel"] = to_json(params.dcscore.kernel, spec.dim);
  } else if (method == Method::kVendi) {
    p["kernel"] = to_json(params.vendi.kernel, spec.dim);
  } else if (method == Method::kKMeans) {
    p["k"] = params.kmeans.k;
    p["n_init"] = params.kmeans.n_init;
  }
  doc["params"] = std::move(p);
  doc["spec"] = to_json(spec);
  return doc;
}

json cmd_bench(const Options& o, std::ostream& err) {
  BenchPlan plan;
  if (!o.sizes.empty()) plan.sizes = o.sizes;
  plan.dim = o.bench_dim;
  plan.kernel = kernel_spec(o, plan.kernel.kind);
  if (!o.methods.empty()) {
    plan.methods.clear();
    for (const std::string& m : o.methods) plan.methods.push_back(parse_method(m));
  }
  plan.repeats = o.repeats;
  if (o.seed) plan.seed = *o.seed;
  plan.threads = o.threads;

  const BenchReport report = run_bench(plan);
  if (o.pretty) err << format_bench_table(report);
  return to_json(report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"divkit: dataset diversity metrics", "divkit"};
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Score one dataset and print a JSON report");
  score->add_option("input,--input,-i", o.input, "jsonl corpus, csv or f32-binary embeddings");
  score->add_option("--format", o.format, "jsonl | csv | f32-binary (default: by extension)");
  score->add_option("--protocol", o.protocol, "overall | batched");
  score->add_option("--ngram", o.ngram, "distinct-n order");
  score->add_option("--embed", o.embed, "auto | hashed-ngram | file");
  score->add_option("--dim", o.embed_dim, "Hashed embedder dimension (power of two)");
  score->add_option("--embed-order", o.embed_order, "Hashed embedder word n-gram order");
  score->add_option("--max-tokens", o.max_tokens, "Truncate texts to this many tokens before embedding");
  score->add_flag("--normalize", o.normalize, "L2-normalize supplied embeddings");
  add_metric_flags(score, o);
  add_threads(score, o);
  add_output(score, o);

  auto* synth = app.add_subcommand("synth", "Write a dispersion-controlled synthetic sweep");
  add_synthetic_flags(synth, o);
  synth->add_option("--seed", o.seed, "Generator seed");
  synth->add_option("--out-dir", o.out_dir, "Directory for the per-level embedding files");
  synth->add_option("--format", o.synth_format, "f32-binary | csv | jsonl");
  add_threads(synth, o);
  add_output(synth, o);

  auto* correlate = app.add_subcommand("correlate", "Spearman rho between dispersion and a metric");
  add_synthetic_flags(correlate, o);
  add_metric_flags(correlate, o);
  add_threads(correlate, o);
  add_output(correlate, o);

  auto* bench = app.add_subcommand("bench", "Time the similarity and summarization stages");
  bench->add_option("--sizes", o.sizes, "Ascending sample sizes (default 512,1024,2048,4096)")->delimiter(',');
  bench->add_option("--dim", o.bench_dim, "Embedding dimension");
  bench->add_option("--repeats", o.repeats, "Timed repeats per point (>= 3)");
  bench->add_option("--method", o.methods, "Methods to time (repeatable; default all three)")->delimiter(',');
  bench->add_option("--kernel", o.kernel, "inner | rbf | laplacian | poly (default rbf)");
  bench->add_option("--gamma", o.gamma, "Kernel scale (default 1/d)");
  bench->add_option("--degree", o.degree, "Polynomial kernel degree");
  bench->add_option("--coef0", o.coef0, "Polynomial kernel offset");
  bench->add_option("--seed", o.seed, "Input seed");
  add_threads(bench, o);
  add_output(bench, o);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "divkit: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    set_num_threads(o.threads);
    json doc;
    if (score->parsed()) {
      doc = cmd_score(o);
    } else if (synth->parsed()) {
      doc = cmd_synth(o);
    } else if (correlate->parsed()) {
      doc = cmd_correlate(o);
    } else {
      doc = cmd_bench(o, err);
    }
    emit(doc, o, out);
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "divkit: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "divkit: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "divkit: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace divkit::cli
