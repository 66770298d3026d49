// Copyright 2026 The posbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "posbias/corpus.h"
#include "posbias/duplication.h"
#include "posbias/error.h"
#include "posbias/metrics.h"
#include "posbias/stats.h"
#include "posbias/tagger/model.h"
#include "posbias/tagger/synth.h"
#include "posbias/tagger/train.h"
#include "posbias/transforms.h"
#include "posbias/version.h"

namespace posbias::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view CommandName(Command c) {
  switch (c) {
    case Command::kStats:
      return "stats";
    case Command::kDuplicate:
      return "duplicate";
    case Command::kPerturb:
      return "perturb";
    case Command::kTrain:
      return "train";
    case Command::kEvaluate:
      return "evaluate";
    case Command::kReport:
      return "report";
    case Command::kSynth:
      return "synth";
  }
  return "?";
}

void ConfigureLogging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_st("posbias");
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("POSBIAS_LOG"))
    logger->set_level(spdlog::level::from_str(env));
  spdlog::set_default_logger(logger);
}

std::ofstream OpenOut(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  return f;
}

std::ifstream OpenIn(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  return f;
}

void Close(std::ofstream& f, const fs::path& path) {
  f.close();
  if (!f) throw Error("failed writing " + path.string());
}

bool MatchesFormat(const fs::path& p, Format format) {
  const std::string name = p.filename().string();
  if (name.empty() || name.front() == '.') return false;
  switch (format) {
    case Format::kConllu:
      return p.extension() == ".conllu";
    case Format::kJsonl:
      return p.extension() == ".jsonl";
    case Format::kConll2003:
      return p.extension() != ".md" && p.extension() != ".json";
  }
  return false;
}

Split GuessSplit(const fs::path& p) {
  const std::string name = p.filename().string();
  if (name.find("train") != std::string::npos) return Split::kTrain;
  if (name.find("dev") != std::string::npos ||
      name.find("valid") != std::string::npos ||
      name.find("testa") != std::string::npos)
    return Split::kDev;
  return Split::kTest;
}

Dataset LoadFile(const fs::path& path, Format format, const std::string& name) {
  std::ifstream in = OpenIn(path);
  const DatasetMeta meta{name, GuessSplit(path)};
  try {
    switch (format) {
      case Format::kConll2003:
        return ParseConll2003(in, meta);
      case Format::kConllu:
        return ParseConllu(in, meta);
      case Format::kJsonl:
        return DeserializeDataset(in, meta);
    }
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  throw InvalidArgument("unknown format");
}

// A file, or every matching file of a directory merged in name order.
Dataset LoadDataset(const fs::path& path, Format format,
                    const std::optional<std::string>& name) {
  fs::path clean = path;
  if (!clean.has_filename()) clean = clean.parent_path();
  const std::string label =
      name.value_or(fs::is_directory(clean) ? clean.filename().string()
                                            : clean.stem().string());
  if (!fs::exists(clean)) throw InvalidArgument("no such path: " + path.string());
  if (!fs::is_directory(clean)) return LoadFile(clean, format, label);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(clean))
    if (entry.is_regular_file() && MatchesFormat(entry.path(), format))
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw InvalidArgument("no matching files in " + clean.string());
  std::vector<Dataset> parts;
  for (const fs::path& f : files) {
    spdlog::info("reading {}", f.string());
    parts.push_back(LoadFile(f, format, label));
  }
  return UnionOf(parts, label);
}

Dataset LoadSingle(const RunConfig& c) {
  if (c.inputs.size() != 1)
    throw InvalidArgument("expected exactly one input");
  Dataset ds = LoadDataset(c.inputs.front(), c.format, c.name);
  if (c.quantile_subset) ds = QuantileSubset(ds);
  return ds;
}

Task InferTask(const EvalSet& es) {
  for (const DuplicatedSequence& s : es.sequences)
    for (const Token& t : s.tokens)
      if (!t.is_special && !IsBioLabel(t.label)) return Task::kPosFlat;
  return Task::kNerBio;
}

// --- stats -----------------------------------------------------------------

int RunStats(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw InvalidArgument("no input corpora");
  // Parse everything first so a bad input leaves no partial artifacts.
  std::vector<Dataset> datasets;
  for (const fs::path& input : c.inputs)
    datasets.push_back(LoadDataset(
        input, c.format, c.inputs.size() == 1 ? c.name : std::nullopt));
  const fs::path summary_path = c.out / "summary.csv";
  const fs::path hist_path = c.out / "histograms.csv";
  std::ofstream summary = OpenOut(summary_path);
  std::ofstream hist = OpenOut(hist_path);
  WriteSummaryCsvHeader(summary);
  WriteSummaryCsvHeader(out);
  WriteHistogramCsvHeader(hist);
  for (const Dataset& ds : datasets) {
    const LengthSummary s = ComputeLengthSummary(ds);
    WriteSummaryCsvRow(summary, ds.name(), s);
    WriteSummaryCsvRow(out, ds.name(), s);
    const Histogram lengths = LengthHistogram(ds);
    WriteHistogramCsvRows(hist, ds.name() + ":length", "", lengths);
    std::vector<std::string> labels = PositionLabels(ds);
    if (c.label) labels = {*c.label};
    for (const std::string& label : labels) {
      const ClassPositionDistribution d = ComputeClassPositions(ds, label);
      WriteHistogramCsvRows(hist, ds.name() + ":position", d.label,
                            d.histogram);
    }
    if (c.svg) {
      const fs::path svg_path = c.out / (ds.name() + "_lengths.svg");
      std::ofstream svg = OpenOut(svg_path);
      WriteHistogramSvg(svg, ds.name() + " sentence lengths", lengths);
      Close(svg, svg_path);
    }
  }
  Close(summary, summary_path);
  Close(hist, hist_path);
  return 0;
}

// --- duplicate -------------------------------------------------------------

int RunDuplicate(const RunConfig& c, std::ostream& out) {
  if (c.ks.empty()) throw InvalidArgument("--k or --k-range is required");
  const Dataset ds = LoadSingle(c);
  for (int k : c.ks) {
    const EvalSet es = BuildEvalSet(ds, k, c.max_len);
    const fs::path path = c.out / ("eval_k" + std::to_string(k) + ".jsonl");
    std::ofstream f = OpenOut(path);
    WriteEvalSet(es, f);
    Close(f, path);
    out << path.string() << ": " << es.sequences.size() << " sequences, "
        << es.dropped << " dropped\n";
    if (es.dropped > 0)
      spdlog::warn("k={}: {} sentences exceed {} positions", k, es.dropped,
                   c.max_len);
  }
  return 0;
}

// --- perturb ---------------------------------------------------------------

bool LooksLikeBatchFile(const fs::path& path) {
  std::ifstream in = OpenIn(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    return j.is_object() && j.contains("batch");
  }
  return false;
}

int RunPerturb(const RunConfig& c, std::ostream& out) {
  if (c.inputs.size() != 1) throw InvalidArgument("expected exactly one input");
  const tagger::Transform transform = tagger::ParseTransform(c.transform);
  std::vector<EncodedBatch> batches;
  const fs::path& input = c.inputs.front();
  if (!fs::is_directory(input) && c.format == Format::kJsonl &&
      LooksLikeBatchFile(input)) {
    std::ifstream in = OpenIn(input);
    batches = ReadBatches(in);
  } else {
    batches = EncodeBatches(LoadSingle(c), c.batch_size, c.max_len, c.seed);
  }

  RppOptions rpp;
  rpp.lower_bound = c.rpp_lower_bound;
  std::vector<EncodedBatch> result;
  std::vector<std::vector<RppDraw>> draws;
  std::vector<CpPlan> plans;
  for (const EncodedBatch& b : batches) {
    switch (transform) {
      case tagger::Transform::kNone:
        result.push_back(b);
        break;
      case tagger::Transform::kRpp: {
        RppResult r = RppShift(b, b.seed, rpp);
        result.push_back(std::move(r.batch));
        draws.push_back(std::move(r.draws));
        break;
      }
      case tagger::Transform::kCp: {
        CpResult r = CpPerturb(b, b.seed);
        result.push_back(std::move(r.batch));
        plans.push_back(std::move(r.plan));
        break;
      }
    }
  }

  const fs::path path = c.out / "perturbed.jsonl";
  std::ofstream f = OpenOut(path);
  WriteBatches(result, f);
  Close(f, path);
  if (c.audit) {
    std::ofstream a = OpenOut(*c.audit);
    if (transform == tagger::Transform::kRpp) WriteRppAudit(draws, a);
    if (transform == tagger::Transform::kCp) WriteCpAudit(plans, a);
    if (transform == tagger::Transform::kNone) a << "[]\n";
    Close(a, *c.audit);
  }
  out << path.string() << ": " << result.size() << " batches\n";
  return 0;
}

// --- train -----------------------------------------------------------------

int RunTrain(const RunConfig& c, std::ostream& out) {
  const Dataset ds = LoadSingle(c);
  tagger::TrainOptions options;
  options.transform = tagger::ParseTransform(c.transform);
  options.rpp.lower_bound = c.rpp_lower_bound;

  json audit = json::array();
  for (std::uint64_t seed : c.seeds) {
    tagger::ModelConfig mc;
    mc.d_model = c.d_model;
    mc.max_positions = static_cast<int>(c.max_len);
    mc.use_attention = c.use_attention;
    mc.local_attention = c.local_attention;
    mc.learning_rate = c.learning_rate;
    mc.epochs = c.epochs;
    mc.seed = seed;
    mc.batch_size = static_cast<int>(c.batch_size);
    spdlog::info("training {} seed {} on {} sentences", c.transform, seed,
                 ds.size());
    const tagger::TrainResult r = tagger::Train(mc, ds, options);

    const std::string stem = c.transform + "_" + std::to_string(seed);
    const fs::path model_path = c.out / ("model_" + stem + ".json");
    std::ofstream m = OpenOut(model_path);
    tagger::SaveModel(r.model, m);
    Close(m, model_path);

    const fs::path loss_path = c.out / ("loss_" + stem + ".csv");
    std::ofstream l = OpenOut(loss_path);
    l << "step,loss\n" << std::setprecision(17);
    for (std::size_t i = 0; i < r.loss_trace.size(); ++i)
      l << i << ',' << r.loss_trace[i] << '\n';
    Close(l, loss_path);

    if (c.audit) {
      const std::size_t max_l = ds.MaxLength();
      std::size_t lo = 1, hi = c.max_len > max_l ? c.max_len - max_l : 0;
      std::size_t covered = 0;
      for (std::size_t p = lo; p <= hi; ++p)
        if (r.position_counts[p] > 0) ++covered;
      audit.push_back(
          {{"transform", c.transform},
           {"seed", seed},
           {"position_counts", r.position_counts},
           {"coverage_range", {lo, hi}},
           {"coverage", hi >= lo ? static_cast<double>(covered) /
                                       static_cast<double>(hi - lo + 1)
                                 : 0.0}});
    }
    out << model_path.string() << ": loss " << r.initial_loss << " -> "
        << (r.loss_trace.empty() ? r.initial_loss : r.loss_trace.back())
        << '\n';
  }
  if (c.audit) {
    std::ofstream a = OpenOut(*c.audit);
    a << audit.dump() << '\n';
    Close(a, *c.audit);
  }
  return 0;
}

// --- evaluate --------------------------------------------------------------

int RunEvaluate(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw InvalidArgument("no eval sets");
  if (c.models.empty() == c.predictions.empty())
    throw InvalidArgument("give either --model or --predictions");
  if (!c.predictions.empty() && c.predictions.size() != c.inputs.size())
    throw InvalidArgument("--predictions must pair one-to-one with eval sets");

  std::vector<EvalSet> sets;
  for (const fs::path& p : c.inputs) {
    std::ifstream in = OpenIn(p);
    sets.push_back(ReadEvalSet(in));
  }
  const std::set<int> k_filter(c.ks.begin(), c.ks.end());
  auto wanted = [&](const EvalSet& es, int alpha) {
    return es.k >= alpha && (k_filter.empty() || k_filter.count(es.k) > 0);
  };

  ScoreOptions options;
  options.label = c.label;
  // Samples per alpha with the k each came from.
  std::map<int, std::vector<Scores>> samples;
  std::map<int, std::vector<int>> sample_ks;
  auto score = [&](const EvalSet& es,
                   const std::vector<std::vector<std::string>>& preds) {
    const Task task = InferTask(es);
    for (int alpha : c.alphas) {
      if (!wanted(es, alpha)) continue;
      samples[alpha].push_back(WindowedScores(es, preds, alpha, task, options));
      sample_ks[alpha].push_back(es.k);
    }
  };

  if (!c.predictions.empty()) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::ifstream in = OpenIn(c.predictions[i]);
      score(sets[i], AlignPredictions(sets[i], ReadPredictions(in)));
    }
  } else {
    for (const fs::path& mp : c.models) {
      std::ifstream in = OpenIn(mp);
      const tagger::Model model = tagger::LoadModel(in);
      for (const EvalSet& es : sets) score(es, tagger::PredictEvalSet(model, es));
    }
  }

  const fs::path path = c.out / "report.csv";
  std::ofstream f = OpenOut(path);
  WriteReportCsvHeader(f);
  WriteReportCsvHeader(out);
  for (int alpha : c.alphas) {
    if (samples[alpha].empty()) {
      spdlog::warn("alpha={}: no eval set with k >= alpha", alpha);
      continue;
    }
    const WindowedReport r =
        AggregateSamples(alpha, samples[alpha], sample_ks[alpha]);
    WriteReportCsvRow(f, r);
    WriteReportCsvRow(out, r);
  }
  Close(f, path);
  return 0;
}

// --- report ----------------------------------------------------------------

struct ReportRow {
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
};

std::map<int, ReportRow> ReadReport(const fs::path& path) {
  std::ifstream in = OpenIn(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("alpha,mean_f1,std_f1", 0) != 0)
    throw ParseError(path.string() + ": not a windowed report", 1);
  std::map<int, ReportRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string alpha, f1, sd;
    std::getline(cells, alpha, ',');
    std::getline(cells, f1, ',');
    std::getline(cells, sd, ',');
    try {
      rows[std::stoi(alpha)] = {std::stod(f1), std::stod(sd)};
    } catch (const std::exception&) {
      throw ParseError(path.string() + ": malformed row", n);
    }
  }
  return rows;
}

int RunReport(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw InvalidArgument("no reports");
  std::vector<std::pair<std::string, std::map<int, ReportRow>>> regimes;
  for (const fs::path& input : c.inputs) {
    // "name=path" or a path whose parent directory names the regime.
    const std::string s = input.string();
    const auto eq = s.find('=');
    const fs::path path = eq == std::string::npos ? input : fs::path(s.substr(eq + 1));
    std::string name = eq == std::string::npos
                           ? path.parent_path().filename().string()
                           : s.substr(0, eq);
    if (name.empty()) name = path.stem().string();
    regimes.emplace_back(name, ReadReport(path));
  }

  const fs::path path = c.out / "comparison.csv";
  std::ofstream f = OpenOut(path);
  auto write = [&](std::ostream& o) {
    o << "regime";
    for (int a : c.alphas) o << ",f1_" << a << ",std_" << a;
    o << ",gap_" << c.alphas.front() << '_' << c.alphas.back() << '\n';
    for (const auto& [name, rows] : regimes) {
      o << name;
      for (int a : c.alphas) {
        const auto it = rows.find(a);
        if (it == rows.end())
          o << ",,";
        else
          o << ',' << it->second.mean_f1 << ',' << it->second.std_f1;
      }
      const auto lo = rows.find(c.alphas.front());
      const auto hi = rows.find(c.alphas.back());
      o << ',';
      if (lo != rows.end() && hi != rows.end())
        o << lo->second.mean_f1 - hi->second.mean_f1;
      o << '\n';
    }
  };
  write(f);
  write(out);
  Close(f, path);
  return 0;
}

// --- synth -----------------------------------------------------------------

int RunSynth(const RunConfig& c, std::ostream& out) {
  tagger::SynthConfig sc;
  sc.n_train = c.n_train;
  sc.n_test = c.n_test;
  sc.position_skew = c.position_skew;
  sc.topic_share = c.topic_share;
  sc.seed = c.seed;
  const auto [train, test] = tagger::GenerateSyntheticCorpus(sc);
  for (const Dataset* ds : {&train, &test}) {
    const fs::path path =
        c.out / (std::string(SplitName(ds->split())) + ".jsonl");
    std::ofstream f = OpenOut(path);
    SerializeDataset(*ds, f);
    Close(f, path);
    out << path.string() << ": " << ds->size() << " sentences\n";
  }
  return 0;
}

std::vector<int> ParseKRange(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("--k-range", "expected A..B");
  int a = 0, b = 0;
  try {
    a = std::stoi(text.substr(0, dots));
    b = std::stoi(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--k-range", "expected integers A..B");
  }
  if (a < 1 || b < a)
    throw CLI::ValidationError("--k-range", "need 1 <= A <= B");
  std::vector<int> ks;
  for (int k = a; k <= b; ++k) ks.push_back(k);
  return ks;
}

}  // namespace

int Run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  ConfigureLogging();
  try {
    for (int k : c.ks)
      if (k < 1) throw InvalidArgument("k must be >= 1");
    for (int a : c.alphas)
      if (a < 1) throw InvalidArgument("alpha must be >= 1");
    if (!c.ks.empty() && c.command == Command::kEvaluate &&
        *std::max_element(c.alphas.begin(), c.alphas.end()) >
            *std::max_element(c.ks.begin(), c.ks.end()))
      throw InvalidArgument("alpha exceeds the largest k");
    if (c.alphas.empty()) throw InvalidArgument("no alpha values");
    switch (c.command) {
      case Command::kStats:
        return RunStats(c, out);
      case Command::kDuplicate:
        return RunDuplicate(c, out);
      case Command::kPerturb:
        return RunPerturb(c, out);
      case Command::kTrain:
        return RunTrain(c, out);
      case Command::kEvaluate:
        return RunEvaluate(c, out);
      case Command::kReport:
        return RunReport(c, out);
      case Command::kSynth:
        return RunSynth(c, out);
    }
  } catch (const std::exception& e) {
    err << CommandName(c.command) << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Position bias toolkit for sequence labeling", "posbias"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig c;
  std::vector<std::string> inputs;
  std::string format = "jsonl";
  std::optional<int> single_k;
  std::string k_range;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string audit;
  std::vector<std::string> models, predictions;
  bool no_attention = false;

  const std::map<std::string, Format> formats = {
      {"conll2003", Format::kConll2003},
      {"conllu", Format::kConllu},
      {"jsonl", Format::kJsonl}};

  auto common = [&](CLI::App* sub, bool corpus) {
    sub->add_option("--out", out_dir, "Output directory");
    if (corpus) {
      sub->add_option("--format", format, "Input format")
          ->check(CLI::IsMember({"conll2003", "conllu", "jsonl"}));
      sub->add_option("--name", c.name, "Dataset name for reports");
      sub->add_flag("--dstar", c.quantile_subset,
                    "Keep sentences within the Q1..Q3 length band");
    }
  };

  CLI::App* stats = app.add_subcommand("stats", "Sentence length statistics");
  stats->add_option("inputs", inputs, "Corpus files or directories")->required();
  stats->add_option("--label", c.label, "Only this class for position plots");
  stats->add_flag("--svg", c.svg, "Also write SVG histograms");
  common(stats, true);

  CLI::App* dup = app.add_subcommand("duplicate", "Build duplicated eval sets");
  dup->add_option("inputs", inputs, "Test corpus")->required();
  dup->add_option("--k", single_k, "Duplication factor");
  dup->add_option("--k-range", k_range, "Range of k, A..B");
  dup->add_option("--max-len", c.max_len, "Position capacity M");
  common(dup, true);

  CLI::App* perturb = app.add_subcommand("perturb", "Apply RPP or CP to batches");
  perturb->add_option("inputs", inputs, "Batch JSONL or corpus")->required();
  perturb->add_option("--transform", c.transform)
      ->check(CLI::IsMember({"none", "rpp", "cp"}));
  perturb->add_option("--rpp-lower-bound", c.rpp_lower_bound);
  perturb->add_option("--seed", seed, "Seed when encoding a raw corpus");
  perturb->add_option("--max-len", c.max_len);
  perturb->add_option("--batch-size", c.batch_size);
  perturb->add_option("--audit", audit, "Write the transform audit here");
  common(perturb, true);

  CLI::App* train = app.add_subcommand("train", "Train toy taggers");
  train->add_option("inputs", inputs, "Training corpus")->required();
  train->add_option("--transform", c.transform)
      ->check(CLI::IsMember({"none", "rpp", "cp"}));
  train->add_option("--rpp-lower-bound", c.rpp_lower_bound);
  train->add_option("--seeds", c.seeds)->delimiter(',');
  train->add_option("--max-len", c.max_len);
  train->add_option("--batch-size", c.batch_size);
  train->add_option("--d-model", c.d_model);
  train->add_option("--lr", c.learning_rate);
  train->add_option("--epochs", c.epochs);
  train->add_flag("--no-attention", no_attention);
  train->add_flag("--local-attention", c.local_attention,
                  "Attend within [SEP]-delimited segments only");
  train->add_option("--audit", audit, "Write position coverage here");
  common(train, true);

  CLI::App* eval = app.add_subcommand("evaluate", "Windowed F1 over copies");
  eval->add_option("inputs", inputs, "Eval set JSONL files")->required();
  eval->add_option("--model", models, "Checkpoints (one per seed)");
  eval->add_option("--predictions", predictions,
                   "Prediction JSONL, paired with the eval sets");
  eval->add_option("--alpha", c.alphas)->delimiter(',');
  eval->add_option("--k", single_k, "Only this k");
  eval->add_option("--k-range", k_range, "Only k in A..B");
  eval->add_option("--label", c.label, "Score a single class");
  common(eval, false);

  CLI::App* report = app.add_subcommand("report", "Compare regimes");
  report->add_option("inputs", inputs, "name=report.csv entries")->required();
  report->add_option("--alpha", c.alphas)->delimiter(',');
  common(report, false);

  CLI::App* synth = app.add_subcommand("synth", "Generate the synthetic corpus");
  synth->add_option("--seed", seed);
  synth->add_option("--n-train", c.n_train);
  synth->add_option("--n-test", c.n_test);
  synth->add_option("--position-skew", c.position_skew);
  synth->add_option("--topic-share", c.topic_share);
  common(synth, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::map<CLI::App*, Command> commands = {
      {stats, Command::kStats},     {dup, Command::kDuplicate},
      {perturb, Command::kPerturb}, {train, Command::kTrain},
      {eval, Command::kEvaluate},   {report, Command::kReport},
      {synth, Command::kSynth}};
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) c.command = cmd;

  try {
    if (single_k && !k_range.empty())
      throw CLI::ValidationError("--k", "give --k or --k-range, not both");
    if (single_k) c.ks = {*single_k};
    if (!k_range.empty()) c.ks = ParseKRange(k_range);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  c.format = formats.at(format);
  for (const std::string& s : inputs) c.inputs.emplace_back(s);
  for (const std::string& s : models) c.models.emplace_back(s);
  for (const std::string& s : predictions) c.predictions.emplace_back(s);
  if (seed) c.seed = *seed;
  c.out = out_dir;
  if (!audit.empty()) c.audit = fs::path(audit);
  c.use_attention = !no_attention;
  return Run(c, out, err);
}

}  // namespace posbias::cli
