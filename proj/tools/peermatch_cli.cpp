// Command-line front end: similarity matrices, ranked recommendations,
// metric reports, synthetic populations and the multi-seed benchmark.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <atomic>
#include <mutex>
#include <thread>

#include "peermatch/peermatch.hpp"

namespace fs = std::filesystem;
using namespace peermatch;

namespace {

struct Inputs {
  std::string profiles_path, prefs_path, taxonomy_path, locations_path;
};

struct Loaded {
  std::vector<LearnerProfile> profiles;
  std::vector<Preference> preferences;
  Taxonomy taxonomy;
  LocationTable locations;
};

void add_data_options(CLI::App* cmd, Inputs& in, bool with_population) {
  if (with_population) {
    cmd->add_option("--profiles", in.profiles_path, "learner profile CSV")->required();
    cmd->add_option("--prefs", in.prefs_path, "learner preference CSV")->required();
  }
  cmd->add_option("--taxonomy", in.taxonomy_path, "concept hierarchy edge list")->required();
  cmd->add_option("--locations", in.locations_path, "city,country,timezone table")->required();
}

Loaded load_inputs(const Inputs& in) {
  Loaded out;
  out.taxonomy = Taxonomy::load_file(in.taxonomy_path);
  out.locations = LocationTable::load_file(in.locations_path);
  if (!in.profiles_path.empty()) out.profiles = parse_profiles_file(in.profiles_path);
  if (!in.prefs_path.empty()) out.preferences = parse_preferences_file(in.prefs_path);
  return out;
}

std::string ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParseError("cannot create output directory: " + dir);
  return dir;
}

void warn_unknown_cities(const SimilarityMatrix& m) {
  if (m.unknown_city_lookups() > 0)
    std::cerr << "warning: " << m.unknown_city_lookups()
              << " location lookups hit cities missing from the table\n";
}

std::string display(double v) { return detail::format_fixed(detail::round_half_up(v, 2), 2); }

void print_report_table(const std::vector<EvalReport>& reports) {
  std::cout << "model,K,precision,recall,dcg,dcg_star,ndcg\n";
  for (const auto& r : reports) {
    std::cout << r.model << ',' << r.k << ',' << display(r.precision) << ',' << display(r.recall)
              << ',' << display(r.dcg) << ',' << display(r.dcg_star) << ',' << display(r.ndcg)
              << '\n';
  }
}

void write_reports(const std::string& out_dir, const std::vector<EvalReport>& reports,
                   const std::string& stem) {
  write_report_csv_file(out_dir + "/" + stem + ".csv", reports);
  write_report_json_file(out_dir + "/" + stem + ".json", reports);
}

int run_matrix(const Inputs& in, const std::string& out_dir) {
  Loaded data = load_inputs(in);
  ScoringContext ctx{data.taxonomy, data.locations};
  SimilarityMatrix m = build_similarity_matrix(data.profiles, data.preferences, ctx);
  warn_unknown_cities(m);
  if (m.size() < 2) std::cerr << "warning: similarity matrix has no entries\n";
  if (out_dir.empty()) {
    write_matrix_csv(std::cout, m);
  } else {
    std::string path = ensure_out_dir(out_dir) + "/matrix.csv";
    write_matrix_csv_file(path, m);
    std::cout << "wrote " << path << '\n';
  }
  return 0;
}

int run_recommend(const Inputs& in, const std::vector<int>& ks, bool baseline,
                  const std::string& out_dir) {
  Loaded data = load_inputs(in);
  ScoringContext ctx{data.taxonomy, data.locations};
  SimilarityMatrix m = build_similarity_matrix(data.profiles, data.preferences, ctx);
  warn_unknown_cities(m);
  auto profile_index = index_profiles(data.profiles);
  auto pref_index = index_preferences(data.preferences);
  for (int k : ks) {
    RecommendationSet recs = baseline
                                 ? baseline_recommend(m, profile_index, pref_index, k, ctx)
                                 : reciprocal_recommend(m, profile_index, pref_index, k, ctx);
    if (out_dir.empty()) {
      write_recommendations_csv(std::cout, recs);
    } else {
      std::string dir = ensure_out_dir(out_dir);
      std::string stem = dir + "/recommendations_k" + std::to_string(k);
      write_recommendations_csv_file(stem + ".csv", recs);
      write_recommendations_json_file(stem + ".json", recs);
      std::cout << "wrote " << stem << ".csv and " << stem << ".json\n";
    }
  }
  return 0;
}

int run_evaluate(const Inputs& in, const std::vector<int>& ks, bool baseline_only,
                 const std::string& recs_path, int recs_k, const std::string& out_dir) {
  std::vector<EvalReport> reports;
  if (!recs_path.empty()) {
    std::optional<int> k;
    if (recs_k > 0) k = recs_k;
    RecommendationSet recs = read_recommendations_csv_file(recs_path, k);
    reports.push_back(evaluate(recs, "supplied"));
  } else {
    if (in.profiles_path.empty() || in.prefs_path.empty())
      throw ParseError("evaluate needs --profiles/--prefs (or --recs)");
    if (ks.empty()) throw ParseError("evaluate needs at least one --k");
    Loaded data = load_inputs(in);
    ScoringContext ctx{data.taxonomy, data.locations};
    SimilarityMatrix m = build_similarity_matrix(data.profiles, data.preferences, ctx);
    warn_unknown_cities(m);
    auto profile_index = index_profiles(data.profiles);
    auto pref_index = index_preferences(data.preferences);
    for (int k : ks) {
      if (!baseline_only)
        reports.push_back(
            evaluate(reciprocal_recommend(m, profile_index, pref_index, k, ctx), "reciprocal"));
      reports.push_back(
          evaluate(baseline_recommend(m, profile_index, pref_index, k, ctx), "baseline"));
    }
  }
  print_report_table(reports);
  if (!out_dir.empty()) write_reports(ensure_out_dir(out_dir), reports, "report");
  return 0;
}

int run_generate(const std::string& config_path, const Inputs& in,
                 const std::vector<std::uint64_t>& seeds, const std::string& out_dir) {
  GenConfig config;
  if (!config_path.empty()) config.load_file(config_path);
  Loaded data = load_inputs(in);
  config.use_cities(data.locations);
  config.use_interests(data.taxonomy);
  std::vector<std::uint64_t> run_seeds = seeds.empty() ? std::vector<std::uint64_t>{config.seed}
                                                       : seeds;
  std::string dir = ensure_out_dir(out_dir.empty() ? "." : out_dir);
  for (std::uint64_t seed : run_seeds) {
    GenConfig c = config;
    c.seed = seed;
    GeneratedData generated = generate(c);
    std::string profiles_path = dir + "/profiles_" + std::to_string(seed) + ".csv";
    std::string prefs_path = dir + "/preferences_" + std::to_string(seed) + ".csv";
    auto pout = detail::open_output(profiles_path);
    serialize_profiles(pout, generated.profiles);
    auto qout = detail::open_output(prefs_path);
    serialize_preferences(qout, generated.preferences);
    std::cout << "wrote " << profiles_path << " and " << prefs_path << " ("
              << generated.profiles.size() << " learners)\n";
  }
  return 0;
}

struct BenchCell {
  std::uint64_t seed = 0;
  EvalReport report;
};

int run_bench(const std::string& config_path, const Inputs& in,
              std::vector<std::uint64_t> seeds, std::vector<int> ks, const std::string& out_dir) {
  GenConfig config;
  if (!config_path.empty()) config.load_file(config_path);
  Loaded data = load_inputs(in);
  config.use_cities(data.locations);
  config.use_interests(data.taxonomy);
  if (seeds.empty()) seeds = {1, 2, 3, 4, 5};
  if (ks.empty()) ks = {5, 10, 15, 20};
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  ScoringContext ctx{data.taxonomy, data.locations};

  // One matrix per seed, shared across every K and both models; seeds fan
  // out across workers.
  std::vector<BenchCell> cells;
  std::mutex cells_mutex;
  std::vector<std::string> failures;
  auto run_seed = [&](std::uint64_t seed) {
    try {
      GenConfig c = config;
      c.seed = seed;
      GeneratedData generated = generate(c);
      SimilarityMatrix m = build_similarity_matrix(generated.profiles, generated.preferences, ctx);
      auto profile_index = index_profiles(generated.profiles);
      auto pref_index = index_preferences(generated.preferences);
      std::vector<BenchCell> local;
      for (int k : ks) {
        local.push_back(
            {seed, evaluate(reciprocal_recommend(m, profile_index, pref_index, k, ctx),
                            "reciprocal")});
        local.push_back(
            {seed, evaluate(baseline_recommend(m, profile_index, pref_index, k, ctx),
                            "baseline")});
      }
      std::lock_guard<std::mutex> lock(cells_mutex);
      for (auto& cell : local) cells.push_back(std::move(cell));
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(cells_mutex);
      failures.push_back("seed " + std::to_string(seed) + ": " + e.what());
    }
  };
  unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                        static_cast<unsigned>(seeds.size()));
  if (workers <= 1 || seeds.size() == 1) {
    for (std::uint64_t seed : seeds) run_seed(seed);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= seeds.size()) break;
          run_seed(seeds[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  if (!failures.empty()) {
    std::sort(failures.begin(), failures.end());
    throw ScoringError("bench failed: " + failures.front());
  }

  // Aggregate means per (K, model); reciprocal row first within each K.
  std::vector<EvalReport> aggregated;
  for (int k : ks) {
    for (const char* model : {"reciprocal", "baseline"}) {
      EvalReport mean;
      mean.model = model;
      mean.k = k;
      std::size_t n = 0;
      for (const auto& cell : cells) {
        if (cell.report.k != k || cell.report.model != model) continue;
        mean.m = cell.report.m;
        mean.precision += cell.report.precision;
        mean.recall += cell.report.recall;
        mean.dcg += cell.report.dcg;
        mean.dcg_star += cell.report.dcg_star;
        mean.ndcg += cell.report.ndcg;
        ++n;
      }
      mean.precision /= n;
      mean.recall /= n;
      mean.dcg /= n;
      mean.dcg_star /= n;
      mean.ndcg /= n;
      aggregated.push_back(std::move(mean));
    }
  }
  print_report_table(aggregated);
  if (!out_dir.empty()) write_reports(ensure_out_dir(out_dir), aggregated, "bench");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reciprocal learner matching engine"};
  app.require_subcommand(1);

  Inputs in;
  std::vector<int> ks;
  std::vector<std::uint64_t> seeds;
  std::string out_dir, recs_path, config_path;
  bool no_reciprocal = false;
  int recs_k = 0;

  CLI::App* matrix = app.add_subcommand("matrix", "write the pairwise distance matrix");
  add_data_options(matrix, in, true);
  matrix->add_option("--out", out_dir, "output directory");

  CLI::App* recommend = app.add_subcommand("recommend", "write ranked top-K lists");
  add_data_options(recommend, in, true);
  recommend->add_option("--k", ks, "list length (repeatable)")
      ->required()
      ->check(CLI::PositiveNumber);
  recommend->add_flag("--no-reciprocal", no_reciprocal, "rank by one-directional distance");
  recommend->add_option("--out", out_dir, "output directory");

  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score recommendation lists");
  evaluate_cmd->add_option("--profiles", in.profiles_path, "learner profile CSV");
  evaluate_cmd->add_option("--prefs", in.prefs_path, "learner preference CSV");
  evaluate_cmd->add_option("--taxonomy", in.taxonomy_path, "concept hierarchy edge list");
  evaluate_cmd->add_option("--locations", in.locations_path, "city,country,timezone table");
  evaluate_cmd->add_option("--k", ks, "list length (repeatable)")->check(CLI::PositiveNumber);
  evaluate_cmd->add_flag("--no-reciprocal", no_reciprocal, "evaluate the baseline model only");
  evaluate_cmd->add_option("--recs", recs_path, "evaluate pre-built lists from this CSV");
  evaluate_cmd->add_option("--recs-k", recs_k, "K for --recs (default: longest list)")
      ->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* generate_cmd = app.add_subcommand("generate", "write a synthetic population");
  add_data_options(generate_cmd, in, false);
  generate_cmd->add_option("--config", config_path, "key = value generator config");
  generate_cmd->add_option("--seed", seeds, "generator seed (repeatable)");
  generate_cmd->add_option("--out", out_dir, "output directory (default .)");

  CLI::App* bench = app.add_subcommand("bench", "average both models over seeds and K");
  add_data_options(bench, in, false);
  bench->add_option("--config", config_path, "key = value generator config");
  bench->add_option("--seed", seeds, "seeds (repeatable; default 1..5)");
  bench->add_option("--k", ks, "list lengths (repeatable; default 5 10 15 20)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (matrix->parsed()) return run_matrix(in, out_dir);
    if (recommend->parsed()) return run_recommend(in, ks, no_reciprocal, out_dir);
    if (evaluate_cmd->parsed())
      return run_evaluate(in, ks, no_reciprocal, recs_path, recs_k, out_dir);
    if (generate_cmd->parsed()) return run_generate(config_path, in, seeds, out_dir);
    if (bench->parsed()) return run_bench(config_path, in, seeds, ks, out_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ScoringError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
