#include "mca/cli.hpp"

#include <algorithm>
#include <fstream>

#include "CLI11.hpp"
#include "mca/csv.hpp"
#include "mca/errors.hpp"
#include "mca/kernels.hpp"
#include "mca/kmeans.hpp"
#include "mca/mca.hpp"
#include "mca/modularity.hpp"
#include "mca/pca.hpp"
#include "mca/report.hpp"

namespace mca {

namespace {

struct CliOptions {
  std::string input;
  std::string delimiter = ",";
  std::string orientation = "rows";
  long long label_col = -1;  // <0: unset
  bool header = false;
  std::size_t components = 1;
  double rank_tol = 1e-10;
  double sep_tol = 1e-8;
  bool normalize_rows = false;
  std::string emit_embedding;
  long long kmeans_k = -1;  // <0: unset
  std::uint64_t seed = 0;
  std::string output;
};

void add_dataset_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--input", o.input, "Input CSV path")->required();
  cmd->add_option("--delimiter", o.delimiter, "Field delimiter, single character (default ',')");
  cmd->add_option("--orientation", o.orientation,
                  "Whether file rows or columns are data points (default rows)")
      ->check(CLI::IsMember({"rows", "cols"}));
  cmd->add_option("--label-col", o.label_col,
                  "0-based file column holding labels; excluded from the numeric matrix");
  cmd->add_flag("--header", o.header, "Skip the first non-blank line");
  cmd->add_option("--rank-tol", o.rank_tol, "Relative singular-value cutoff (default 1e-10)");
  cmd->add_option("--sep-tol", o.sep_tol,
                  "Eigenvalue separation tolerance relative to alpha_1 (default 1e-8)");
  cmd->add_flag("--normalize-rows", o.normalize_rows,
                "check/fit: scale attribute rows to unit 2-norm; pca: standardize rows");
  cmd->add_option("--output", o.output, "Write the JSON report to this path instead of stdout");
}

void add_model_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--components", o.components, "Number of components to fit (default 1)");
  cmd->add_option("--emit-embedding", o.emit_embedding,
                  "Write the component embedding as CSV to this path");
  cmd->add_option("--kmeans", o.kmeans_k, "Run k-means with this many clusters on the embedding");
  cmd->add_option("--seed", o.seed, "Seed for k-means initialization (default 0)");
}

DatasetSpec dataset_spec(const CliOptions& o) {
  if (o.delimiter.size() != 1) raise(errc::invalid_flag, "--delimiter must be a single character");
  DatasetSpec spec;
  spec.path = o.input;
  spec.delimiter = o.delimiter[0];
  spec.orientation =
      o.orientation == "cols" ? Orientation::cols_are_points : Orientation::rows_are_points;
  if (o.label_col >= 0) spec.label_column = static_cast<std::size_t>(o.label_col);
  spec.header = o.header;
  return spec;
}

Json parameters_json(const CliOptions& o, bool model_options) {
  Json j;
  j["input"] = o.input;
  j["delimiter"] = o.delimiter;
  j["orientation"] = o.orientation;
  j["label_col"] = o.label_col >= 0 ? Json(o.label_col) : Json(nullptr);
  j["header"] = o.header;
  j["rank_tol"] = o.rank_tol;
  j["sep_tol"] = o.sep_tol;
  j["normalize_rows"] = o.normalize_rows;
  if (model_options) {
    j["components"] = o.components;
    j["emit_embedding"] = o.emit_embedding.empty() ? Json(nullptr) : Json(o.emit_embedding);
    j["kmeans"] = o.kmeans_k >= 0 ? Json(o.kmeans_k) : Json(nullptr);
    j["seed"] = o.seed;
  }
  j["output"] = o.output.empty() ? Json(nullptr) : Json(o.output);
  return j;
}

Json dataset_json(const std::string& path, std::size_t p, std::size_t n, std::size_t k,
                  double two_m) {
  return Json{{"path", path}, {"p", p}, {"n", n}, {"k", k}, {"two_m", two_m}};
}

Json base_report(const char* command, const CliOptions& o, bool model_options) {
  Json j;
  j["schema_version"] = 1;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["generated_at"] = iso8601_utc_now();
  j["command"] = command;
  j["parameters"] = parameters_json(o, model_options);
  return j;
}

Json matrix_rows_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> gram_warnings(const Matrix& x, double min_degree) {
  std::vector<std::string> warnings;
  if (min_degree < 0.0) {
    warnings.push_back("negative node degrees present: Gram matrix has negative entries");
    return warnings;
  }
  const bool negative_data =
      std::any_of(x.data(), x.data() + x.size(), [](double v) { return v < 0.0; });
  if (negative_data)
    warnings.push_back("data has negative entries: Gram similarities may be negative");
  return warnings;
}

void emit_report(const Json& report, const CliOptions& o, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) raise(errc::invalid_argument, "cannot open for writing: " + o.output);
    f << text;
  }
}

Vector matrix_row(const Matrix& m, std::size_t i) {
  Vector row(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
  return row;
}

void attach_kmeans(Json& report, Json& labels, const Matrix& embedding, const CliOptions& o) {
  if (o.kmeans_k < 0) return;
  if (o.kmeans_k < 1 || static_cast<std::size_t>(o.kmeans_k) > embedding.cols())
    raise(errc::invalid_flag, "--kmeans must lie in [1, n]");
  const KMeansResult km = kmeans(embedding, static_cast<std::size_t>(o.kmeans_k), o.seed);
  labels["kmeans"] = km.labels;
  report["kmeans"] = Json{{"k", o.kmeans_k},
                          {"seed", o.seed},
                          {"iterations", km.iterations},
                          {"inertia", km.inertia},
                          {"note", "generic clustering plumbing; the method itself prescribes "
                                   "only sign-based bipartition"}};
}

void attach_embedding(Json& report, const Matrix& embedding, const CliOptions& o) {
  if (o.emit_embedding.empty()) return;
  write_embedding_csv(o.emit_embedding, embedding);
  report["embedding_csv"] = o.emit_embedding;
  report["embedding"] = matrix_rows_json(embedding);
}

int cmd_check(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const Dataset ds = load_dataset(dataset_spec(o));
  const Matrix x = o.normalize_rows ? normalize_rows(ds.x) : ds.x;
  const AssumptionAudit audit = audit_assumptions(x, o.rank_tol, o.sep_tol);

  Json report = base_report("check", o, false);
  report["dataset"] = dataset_json(o.input, x.rows(), x.cols(), audit.report.k, audit.two_m);
  report["alpha"] = audit.alpha;
  report["beta"] = audit.beta;
  report["assumptions"] = to_json(audit.report);
  report["warnings"] = gram_warnings(x, audit.min_degree);
  emit_report(report, o, out);

  if (audit.degenerate) {
    err << "degenerate data: total similarity mass 2m is not positive\n";
    return 4;
  }
  if (!audit.report.passed) {
    err << "assumption audit failed with " << audit.report.violations.size() << " violation(s)\n";
    return 3;
  }
  return 0;
}

int cmd_fit(const CliOptions& o, std::ostream& out, std::ostream& err) {
  if (o.components < 1) raise(errc::invalid_flag, "--components must be >= 1");
  const Dataset ds = load_dataset(dataset_spec(o));
  const Matrix x = o.normalize_rows ? normalize_rows(ds.x) : ds.x;
  const AssumptionAudit audit = audit_assumptions(x, o.rank_tol, o.sep_tol);

  Json report = base_report("fit", o, true);
  report["dataset"] = dataset_json(o.input, x.rows(), x.cols(), audit.report.k, audit.two_m);
  report["alpha"] = audit.alpha;
  report["beta"] = audit.beta;
  report["assumptions"] = to_json(audit.report);
  report["warnings"] = gram_warnings(x, audit.min_degree);

  // On any gate failure the check-style report is still emitted.
  if (audit.degenerate) {
    emit_report(report, o, out);
    err << "degenerate data: total similarity mass 2m is not positive\n";
    return 4;
  }
  if (!audit.report.passed) {
    emit_report(report, o, out);
    err << "assumption audit failed with " << audit.report.violations.size()
        << " violation(s); fit refused\n";
    return 3;
  }
  if (audit.report.k < 2) {
    emit_report(report, o, out);
    err << "data has rank < 2: no modularity components exist\n";
    return 3;
  }
  if (o.components > audit.report.k - 1) {
    err << "--components " << o.components << " exceeds k-1 = " << (audit.report.k - 1) << "\n";
    return 1;
  }

  FitOptions fit_options;
  fit_options.num_components = o.components;
  fit_options.rank_tol = o.rank_tol;
  fit_options.sep_tol = o.sep_tol;
  const McaModel model = fit(x, fit_options);

  Json components = Json::array();
  for (const auto& c : model.components) {
    components.push_back(Json{{"index", c.index},
                              {"beta", c.beta},
                              {"modularity_q", modularity_score(x, model.stats, c.b)}});
  }
  report["components"] = std::move(components);

  Json labels;
  labels["sign_b1"] = partition_by_sign(model.components.front().b);
  const Matrix embedding = embed(model, x, o.components);
  attach_kmeans(report, labels, embedding, o);
  if (!ds.labels.empty()) labels["file"] = ds.labels;
  report["labels"] = std::move(labels);
  attach_embedding(report, embedding, o);
  emit_report(report, o, out);
  return 0;
}

int cmd_pca(const CliOptions& o, std::ostream& out, std::ostream& err) {
  (void)err;
  if (o.components < 1) raise(errc::invalid_flag, "--components must be >= 1");
  const Dataset ds = load_dataset(dataset_spec(o));
  const std::size_t p = ds.x.rows();
  const std::size_t n = ds.x.cols();
  if (n >= 2 && o.components > std::min(p, n - 1))
    raise(errc::invalid_flag, "--components exceeds min(p, n-1)");

  PcaOptions pca_options;
  pca_options.num_components = o.components;
  pca_options.standardize_rows = o.normalize_rows;
  const PcaModel model = pca_fit(ds.x, pca_options);  // TooFewPoints surfaces as exit 4
  const Matrix scores = pca_embed(model, ds.x, o.components);

  // Sparsity bookkeeping: exact zeros before vs after centering.
  Matrix xw = ds.x;
  if (!model.row_scale.empty())
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < p; ++i) xw(i, j) *= model.row_scale[i];
  std::size_t zeros_before = 0;
  std::size_t zeros_after = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < p; ++i) {
      if (xw(i, j) == 0.0) ++zeros_before;
      if (xw(i, j) - model.mean[i] == 0.0) ++zeros_after;
    }
  }

  std::size_t effective_rank = 0;
  for (double v : model.variances)
    if (v > 0.0) ++effective_rank;

  // Similarity mass recorded for comparison with the fit report; PCA does not
  // depend on it, so degeneracy is not an error here.
  Vector row_sums(p, 0.0);
  for (std::size_t j = 0; j < n; ++j) kernels::axpy(1.0, ds.x.col(j), row_sums);
  const Vector d = matvec_t(ds.x, row_sums);
  double two_m = 0.0;
  for (double v : d) two_m += v;

  Json report = base_report("pca", o, true);
  report["dataset"] = dataset_json(o.input, p, n, effective_rank, two_m);
  report["alpha"] = Json(nullptr);
  report["beta"] = Json(nullptr);
  report["assumptions"] = Json(nullptr);
  report["pca"] = Json{{"centered", true},
                       {"standardized", o.normalize_rows},
                       {"variances", model.variances},
                       {"zero_variance", model.zero_variance},
                       {"zeros_before_centering", zeros_before},
                       {"zeros_after_centering", zeros_after}};

  Json components = Json::array();
  for (std::size_t i = 0; i < model.variances.size(); ++i)
    components.push_back(Json{{"index", i + 1}, {"variance", model.variances[i]}});
  report["components"] = std::move(components);

  std::vector<std::string> warnings;
  if (model.zero_variance)
    warnings.push_back("zero-variance advisory: some requested directions carry no variance");
  report["warnings"] = warnings;

  Json labels;
  const Vector first_scores = matrix_row(scores, 0);
  labels["sign_pc1"] = partition_by_sign(first_scores);
  attach_kmeans(report, labels, scores, o);
  if (!ds.labels.empty()) labels["file"] = ds.labels;
  report["labels"] = std::move(labels);
  attach_embedding(report, scores, o);
  emit_report(report, o, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back(kToolName);
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions check_opts, fit_opts, pca_opts;
  CLI::App app{"Modularity component analysis of uncentered data"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CLI::App* check_cmd =
      app.add_subcommand("check", "Audit the eigenvalue-separation assumptions of a dataset");
  add_dataset_options(check_cmd, check_opts);
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit modularity components, label and embed the data");
  add_dataset_options(fit_cmd, fit_opts);
  add_model_options(fit_cmd, fit_opts);
  CLI::App* pca_cmd = app.add_subcommand("pca", "Centered-data PCA baseline");
  add_dataset_options(pca_cmd, pca_opts);
  add_model_options(pca_cmd, pca_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check_opts, out, err);
    if (fit_cmd->parsed()) return cmd_fit(fit_opts, out, err);
    return cmd_pca(pca_opts, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case errc::parse_error:
        return 2;
      case errc::separation_violated:
      case errc::rank_too_small:
        return 3;
      case errc::degenerate_graph:
      case errc::all_zero_matrix:
      case errc::too_few_points:
        return 4;
      default:
        return 1;
    }
  }
}

}  // namespace mca
