#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdm/hdm.hpp"

namespace {

using namespace hdm;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string format = "csv";
  bool quiet = false;
};

std::string provenance(const std::string& command, const Globals& g, const std::string& extra = "") {
  std::string out = "#provenance,tool=hdm " + std::string(kVersion) + ",command=" + command +
                    ",seed=" + std::to_string(g.seed);
  if (!extra.empty()) out += "," + extra;
  return out + "\n";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw DataError("cannot write '" + path + "'");
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

// HGF by default; `.csv` files are read as 0/1 incidence matrices.
Hypergraph load_hypergraph(const std::string& path) {
  if (std::filesystem::path(path).extension() == ".csv") {
    try {
      return parse_incidence_csv(read_file(path));
    } catch (const ParseError& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  return load_hgf(path);
}

Method require_method(const std::string& s) {
  const auto m = parse_method(s);
  if (!m) throw DataError("unknown method '" + s + "' (expected clique, star or tensor)");
  return *m;
}

std::string default_label(const std::string& path) {
  const std::string stem = std::filesystem::path(path).stem().string();
  return stem.substr(0, stem.find('_'));
}

// key/value output in csv ("key,value") or text ("key: value") form.
class Table {
 public:
  explicit Table(const std::string& format) : csv_(format == "csv") {}
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ += csv_ ? "," : (i == 1 ? ": " : " ");
      out_ += cells[i];
    }
    out_ += '\n';
  }
  const std::string& str() const { return out_; }

 private:
  bool csv_;
  std::string out_;
};

int run(int argc, char** argv) {
  CLI::App app{"Hypergraph dissimilarity measures", "hdm"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed for randomized commands")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "suppress diagnostics on stderr");
  app.set_version_flag("--version", std::string(kVersion));

  std::string out_path;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic k-uniform hypergraph (HGF)");
  std::string gen_model;
  std::size_t gen_n = 0, gen_m = 0, gen_k = 3, gen_d = 0;
  double gen_mu = 0.5, gen_p = 0.1;
  gen->add_option("model", gen_model, "erh, sfh or wsh")->required()->check(CLI::IsMember({"erh", "sfh", "wsh"}));
  gen->add_option("--n", gen_n, "vertices")->required();
  gen->add_option("--m", gen_m, "edges (erh, sfh; wsh sizes its lattice to m when --d is absent)");
  gen->add_option("--k", gen_k, "edge cardinality")->capture_default_str();
  gen->add_option("--mu", gen_mu, "SFH exponent parameter in (0,1)")->capture_default_str();
  gen->add_option("--p-rewire,--p", gen_p, "WSH rewiring probability")->capture_default_str();
  gen->add_option("--d", gen_d, "WSH lattice degree (multiple of k)");
  gen->add_option("-o,--output", out_path, "output file (default stdout)");

  // null
  auto* null = app.add_subcommand("null", "sample a null-model hypergraph similar to a reference (HGF)");
  std::string null_ref, null_model_name;
  null->add_option("ref", null_ref, "reference hypergraph")->required();
  null->add_option("--model", null_model_name, "er, cl or cl-uniform (default: cl-uniform for uniform inputs, else cl)")
      ->check(CLI::IsMember({"er", "cl", "cl-uniform"}));
  null->add_option("-o,--output", out_path, "output file (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "degree histogram, path length and clustering");
  std::string stats_file;
  stats->add_option("file", stats_file, "hypergraph")->required();

  // ingest-ts
  auto* ingest = app.add_subcommand("ingest-ts", "build a 3-uniform hypergraph from time series by multi-correlation");
  std::string ingest_file;
  double threshold = kDefaultMulticorrelationThreshold;
  ingest->add_option("file", ingest_file, "time-series CSV (rows = samples)")->required();
  ingest->add_option("--threshold", threshold, "keep triples with rho > threshold")->capture_default_str();
  ingest->add_option("-o,--output", out_path, "output file (default stdout)");

  // shared measure flags
  std::string measure_name = "hamming", method_name = "clique";
  double lp = 2.0;
  auto add_measure_flags = [&](CLI::App* sub) {
    sub->add_option("--measure", measure_name, "measure token")->capture_default_str();
    sub->add_option("--method", method_name, "clique, star or tensor")
        ->check(CLI::IsMember({"clique", "star", "tensor"}))
        ->capture_default_str();
    sub->add_option("--lp", lp, "exponent of the spectral l_p distances")->capture_default_str();
  };
  auto make = [&] {
    Measure m;
    try {
      m = make_measure(measure_name, require_method(method_name));
    } catch (const DataError& e) {
      throw CLI::ValidationError("--measure", e.what());
    }
    m.gdm.p = lp;
    m.dhdm.p = lp;
    m.dhdm.h_eigen.seed = g.seed;
    return m;
  };

  // compare
  auto* compare = app.add_subcommand("compare", "dissimilarity between two hypergraphs");
  std::string cmp_a, cmp_b;
  compare->add_option("a", cmp_a)->required();
  compare->add_option("b", cmp_b)->required();
  add_measure_flags(compare);

  // matrix
  auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix (CSV)");
  std::vector<std::string> matrix_files;
  std::string matrix_labels;
  matrix->add_option("files", matrix_files, "hypergraphs")->required();
  matrix->add_option("--labels", matrix_labels, "comma-separated class labels (default: file stem up to the first '_')");
  matrix->add_option("-o,--output", out_path, "output file (default stdout)");
  add_measure_flags(matrix);

  // roc
  auto* roc = app.add_subcommand("roc", "pair-level ROC curve and AUC of a distance matrix");
  std::string roc_matrix;
  roc->add_option("--matrix", roc_matrix, "distance matrix CSV")->required();
  roc->add_option("-o,--output", out_path, "output file (default stdout)");

  // permtest
  auto* perm = app.add_subcommand("permtest", "permutation test of d(A,B) against nulls fitted to A");
  std::string perm_a, perm_b, perm_null;
  std::size_t perm_samples = 200;
  double perm_alpha = 0.05;
  perm->add_option("a", perm_a)->required();
  perm->add_option("b", perm_b)->required();
  perm->add_option("--null", perm_null, "er, cl or cl-uniform (default: cl-uniform for uniform inputs, else cl)")
      ->check(CLI::IsMember({"er", "cl", "cl-uniform"}));
  perm->add_option("--samples", perm_samples, "null samples")->capture_default_str();
  perm->add_option("--alpha", perm_alpha, "significance level")->capture_default_str();
  add_measure_flags(perm);

  // spectra
  auto* spectra = app.add_subcommand("spectra", "spectral summary (CSV)");
  std::string spectra_file, spectra_kind = "hosvd", spectra_expansion = "clique";
  std::size_t h_starts = HEigenConfig{}.random_starts;
  spectra->add_option("file", spectra_file)->required();
  spectra->add_option("--kind", spectra_kind, "laplacian-eigs, hosvd or h-eigs")
      ->check(CLI::IsMember({"laplacian-eigs", "hosvd", "h-eigs"}))
      ->capture_default_str();
  spectra->add_option("--expansion", spectra_expansion, "expansion for laplacian-eigs")
      ->check(CLI::IsMember({"clique", "star"}))
      ->capture_default_str();
  spectra->add_option("--starts", h_starts, "random starts of the H-eigen solver")->capture_default_str();

  // centrality
  auto* cent = app.add_subcommand("centrality", "node and edge centralities (CSV)");
  std::string cent_file, cent_family = "log-exp";
  double cent_p = 2.0;
  cent->add_option("file", cent_file)->required();
  cent->add_option("--family", cent_family, "linear, log-exp or lp")
      ->check(CLI::IsMember({"linear", "log-exp", "lp"}))
      ->capture_default_str();
  cent->add_option("--p", cent_p, "exponent of the lp family")->capture_default_str();

  // tensor
  auto* tensor = app.add_subcommand("tensor", "canonical nonzeros of the adjacency or Laplacian tensor");
  std::string tensor_file, tensor_which = "adjacency";
  std::size_t tensor_order = 0;
  tensor->add_option("file", tensor_file)->required();
  tensor->add_option("--which", tensor_which)->check(CLI::IsMember({"adjacency", "laplacian"}))->capture_default_str();
  tensor->add_option("--order", tensor_order, "tensor order (default: max edge cardinality)");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "adjacency matrix of an expansion (CSV)");
  std::string expand_file, expand_how = "clique";
  expand_cmd->add_option("file", expand_file)->required();
  expand_cmd->add_option("--method", expand_how)->check(CLI::IsMember({"clique", "star"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto note = [&](const std::string& msg) {
    if (!g.quiet) std::cerr << msg << '\n';
  };

  if (*gen) {
    Hypergraph h;
    if (gen_model == "erh") {
      if (!gen->count("--m")) throw CLI::RequiredError("--m");
      h = gen_erh(gen_n, gen_m, gen_k, g.seed);
    } else if (gen_model == "sfh") {
      if (!gen->count("--m")) throw CLI::RequiredError("--m");
      h = gen_sfh(gen_n, gen_m, gen_k, gen_mu, g.seed);
    } else {
      if (!gen->count("--d") && !gen->count("--m")) throw CLI::RequiredError("--d or --m");
      const WshLattice L = gen->count("--d") ? wsh_lattice(gen_n, gen_d, gen_k)
                                             : wsh_lattice_for_edges(gen_n, gen_m, gen_k);
      h = gen_wsh(L, gen_p, g.seed);
    }
    emit(provenance("gen " + gen_model, g) + write_hgf(h), out_path);
  } else if (*null) {
    const Hypergraph ref = load_hypergraph(null_ref);
    const NullModel model = null_model_name.empty() ? default_null_model(ref) : *parse_null_model(null_model_name);
    const Hypergraph h = sample_null(model, ref, g.seed);
    emit(provenance("null", g, "model=" + std::string(to_string(model))) + write_hgf(h), out_path);
  } else if (*stats) {
    const HyperStats s = hyper_stats(load_hypergraph(stats_file));
    Table t(g.format);
    t.row({"n", std::to_string(s.n)});
    t.row({"m", std::to_string(s.m)});
    t.row({"k_max", std::to_string(s.k_max)});
    t.row({"avg_path_length", format_real(s.avg_path_length)});
    t.row({"connected", s.connected ? "true" : "false"});
    t.row({"unreachable_fraction", format_real(s.unreachable_fraction)});
    t.row({"mean_clustering", format_real(s.mean_clustering)});
    for (const auto& [d, count] : s.degree_histogram) {
      t.row({"degree_count", std::to_string(d), std::to_string(count)});
    }
    for (std::size_t v = 0; v < s.clustering.size(); ++v) {
      t.row({"clustering", std::to_string(v), format_real(s.clustering[v])});
    }
    emit((g.format == "csv" ? provenance("stats", g) : std::string()) + t.str(), "");
  } else if (*ingest) {
    const auto ts = parse_timeseries_csv(read_file(ingest_file));
    const Hypergraph h = timeseries_to_hypergraph(ts, threshold);
    note("ingest-ts: " + std::to_string(h.num_edges()) + " triples above " + format_real(threshold));
    emit(provenance("ingest-ts", g, "threshold=" + format_real(threshold)) + write_hgf(h), out_path);
  } else if (*compare) {
    const Measure m = make();
    const double d = distance(m, load_hypergraph(cmp_a), load_hypergraph(cmp_b));
    emit(format_real(d) + "\n", "");
  } else if (*matrix) {
    const Measure m = make();
    std::vector<Hypergraph> items;
    std::vector<std::string> labels;
    for (const auto& f : matrix_files) {
      items.push_back(load_hypergraph(f));
      labels.push_back(default_label(f));
    }
    if (!matrix_labels.empty()) {
      labels.clear();
      for (auto l : detail::split(matrix_labels, ',')) labels.emplace_back(detail::trim(l));
      if (labels.size() != items.size()) throw DataError("--labels needs one label per file");
    }
    const DistanceMatrix D = distance_matrix(items, m, labels, g.threads);
    emit(provenance("matrix", g, "measure=" + m.name()) + write_distance_csv(D), out_path);
  } else if (*roc) {
    const DistanceMatrix D = parse_distance_csv(read_file(roc_matrix));
    const RocResult r = roc_auc(D);
    note("auc " + format_real(r.auc));
    emit(provenance("roc", g, D.measure.empty() ? "" : "measure=" + D.measure) + write_roc_csv(r), out_path);
  } else if (*perm) {
    const Measure m = make();
    const Hypergraph a = load_hypergraph(perm_a);
    const Hypergraph b = load_hypergraph(perm_b);
    const NullModel model = perm_null.empty() ? default_null_model(a) : *parse_null_model(perm_null);
    const PermTestResult r = permutation_test(a, b, m, model, perm_samples, perm_alpha, g.seed, g.threads);
    Table t(g.format);
    t.row({"observed", format_real(r.observed)});
    t.row({"p_value", format_real(r.p_value)});
    t.row({"alpha", format_real(r.alpha)});
    t.row({"decision", r.reject ? "reject" : "accept"});
    for (std::size_t i = 0; i < r.nulls.size(); ++i) t.row({"null", std::to_string(i), format_real(r.nulls[i])});
    const std::string head = g.format == "csv"
                                 ? provenance("permtest", g, "measure=" + m.name() + ",null=" +
                                                                 std::string(to_string(model)) +
                                                                 ",samples=" + std::to_string(perm_samples))
                                 : std::string();
    emit(head + t.str(), "");
  } else if (*spectra) {
    const Hypergraph h = load_hypergraph(spectra_file);
    SpectralSummary s;
    if (spectra_kind == "laplacian-eigs") {
      const ExpandedGraph G = expand(h, spectra_expansion == "star" ? Expansion::star : Expansion::clique);
      s.kind = SpectrumKind::laplacian_eigen;
      const Eigen::VectorXd ev = detail::laplacian_spectrum(G.laplacian);
      s.values.assign(ev.data(), ev.data() + ev.size());
    } else if (spectra_kind == "hosvd") {
      s = hosvd_singular_values(laplacian_tensor(h));
    } else {
      HEigenConfig cfg;
      cfg.seed = g.seed;
      cfg.random_starts = h_starts;
      s = h_eigenvalues_desk(laplacian_tensor(h), cfg);
    }
    std::string out = provenance("spectra", g, "kind=" + spectra_kind);
    out += s.kind == SpectrumKind::h_eigen ? "index,value,residual\n" : "index,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out += std::to_string(i) + "," + format_real(s.values[i]);
      if (s.kind == SpectrumKind::h_eigen) out += "," + format_real(s.residuals[i]);
      out += "\n";
    }
    emit(out, "");
  } else if (*cent) {
    CentralityConfig cfg;
    cfg.family = *parse_centrality_family(cent_family);
    cfg.p = cent_p;
    const CentralityResult r = nsm_centrality(load_hypergraph(cent_file), cfg);
    if (!r.converged) throw NumericalError("centrality did not converge in " + std::to_string(cfg.max_iter) + " iterations");
    std::string out = provenance("centrality", g, "family=" + cent_family + ",iterations=" + std::to_string(r.iterations));
    out += "kind,index,value\n";
    for (Eigen::Index i = 0; i < r.node.size(); ++i) out += "node," + std::to_string(i) + "," + format_real(r.node(i)) + "\n";
    for (Eigen::Index i = 0; i < r.edge.size(); ++i) out += "edge," + std::to_string(i) + "," + format_real(r.edge(i)) + "\n";
    emit(out, "");
  } else if (*tensor) {
    const Hypergraph h = load_hypergraph(tensor_file);
    const SymTensor T = tensor_which == "laplacian" ? laplacian_tensor(h, tensor_order) : adjacency_tensor(h, tensor_order);
    std::string out = provenance("tensor", g, "which=" + tensor_which + ",order=" + std::to_string(T.order()));
    out += "index,value,multiplicity\n";
    for (const auto& [idx, v] : T.entries()) {
      std::string key;
      for (std::size_t i = 0; i < idx.size(); ++i) key += (i ? " " : "") + std::to_string(idx[i]);
      out += key + "," + format_real(v) + "," + format_real(index_multiplicity(idx)) + "\n";
    }
    emit(out, "");
  } else if (*expand_cmd) {
    const ExpandedGraph G = expand(load_hypergraph(expand_file), expand_how == "star" ? Expansion::star : Expansion::clique);
    std::string out = provenance("expand", g, "method=" + expand_how);
    for (Eigen::Index i = 0; i < G.adjacency.rows(); ++i) {
      for (Eigen::Index j = 0; j < G.adjacency.cols(); ++j) out += (j ? "," : "") + format_real(G.adjacency(i, j));
      out += "\n";
    }
    emit(out, "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const hdm::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const hdm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
