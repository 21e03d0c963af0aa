// Copyright 2026 The nereval Authors.
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

// nereval: NER evaluation with a mismatch taxonomy and learning-based
// F-scores.
//
//   nereval eval GOLD PRED [--format iob|standoff] [--out report.json]
//   nereval build-clsdata TRAIN --out pairs.jsonl
//   nereval train-cls pairs.jsonl --out model.bin
//   nereval refine LEDGER (--model M | --external-decisions R) --out report.json
//   nereval judge LEDGER JUDGEMENTS [--decisions D] --out report.json
//   nereval perturb GOLD --out-prefix PREFIX
//
// Exit codes: 0 success, 1 usage error, 2 parse error, 3 alignment error,
// 4 Type-5 records without a decision or judgement.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nereval/cls_data.h"
#include "nereval/corpus.h"
#include "nereval/entity_classifier.h"
#include "nereval/errors.h"
#include "nereval/judgement.h"
#include "nereval/metrics.h"
#include "nereval/report.h"
#include "nereval/span_matcher.h"
#include "nereval/synth_perturb.h"

namespace {

using nereval::InputFile;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitAlignment = 3;
constexpr int kExitCoverage = 4;

class UsageError : public nereval::Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
  if (!out) throw UsageError("failed writing " + path);
}

InputFile Load(const std::string &role, const std::string &path) {
  return {role, path, ReadFile(path)};
}

struct CorpusOptions {
  std::string format = "iob";
  std::string scheme = "iob2";
};

void AddCorpusOptions(CLI::App *cmd, CorpusOptions *options) {
  cmd->add_option("--format", options->format, "Input format")
      ->check(CLI::IsMember({"iob", "standoff"}));
  cmd->add_option("--scheme", options->scheme, "IOB tagging scheme")
      ->check(CLI::IsMember({"iob2", "iob1"}));
}

nereval::Corpus ReadCorpus(const InputFile &file, const CorpusOptions &options,
                           nereval::Source source) {
  if (options.format == "standoff") return nereval::ParseStandoff(file.content);
  std::vector<nereval::Diagnostic> warnings;
  auto corpus = nereval::ParseIob(
      file.content,
      options.scheme == "iob1" ? nereval::TagScheme::kIob1 : nereval::TagScheme::kIob2,
      source, &warnings);
  for (const auto &w : warnings) {
    std::cerr << "warning: " << file.path << ":" << w.line << ": " << w.message
              << "\n";
  }
  return corpus;
}

struct OutputOptions {
  std::string out;
  std::string render = "none";
};

void AddOutputOptions(CLI::App *cmd, OutputOptions *options) {
  cmd->add_option("--out", options->out,
                  "Report path (JSON); stdout when omitted");
  cmd->add_option("--render", options->render, "Summary rendering on stdout")
      ->check(CLI::IsMember({"none", "markdown"}));
}

void EmitReport(const nlohmann::ordered_json &report, const OutputOptions &options) {
  const std::string json = report.dump(2) + "\n";
  if (options.out.empty()) {
    std::cout << json;
    std::cerr << nereval::RenderHeadline(report);
    return;
  }
  WriteFile(options.out, json);
  if (options.render == "markdown") {
    std::cout << nereval::RenderMarkdown(report);
  } else {
    std::cout << nereval::RenderHeadline(report);
  }
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string ledger;
  CorpusOptions corpus;
  OutputOptions output;
};

int RunEval(const EvalArgs &args) {
  InputFile gold_file = Load("gold", args.gold);
  InputFile pred_file = Load("predicted", args.pred);
  const auto gold = ReadCorpus(gold_file, args.corpus, nereval::Source::kGold);
  const auto pred = ReadCorpus(pred_file, args.corpus, nereval::Source::kPredicted);
  const auto paired = nereval::PairCorpora(gold, pred);
  const auto match = nereval::ClassifyCorpus(paired);
  if (!args.ledger.empty()) WriteFile(args.ledger, nereval::WriteLedger(match));

  nereval::RunReportRequest request;
  request.command = "eval";
  request.inputs = {std::move(gold_file), std::move(pred_file)};
  request.match = &match;
  EmitReport(nereval::BuildRunReport(request), args.output);
  return 0;
}

// --- build-clsdata ----------------------------------------------------------

struct BuildArgs {
  std::string train;
  std::string out;
  std::string stopwords;
  std::string chunks;
  uint64_t seed = 0;
  int max_chunk_tokens = 6;
  CorpusOptions corpus;
};

int RunBuildClsData(const BuildArgs &args) {
  const auto corpus =
      ReadCorpus(Load("train", args.train), args.corpus, nereval::Source::kGold);
  if (corpus.NumGold() == 0) {
    throw nereval::ParseError("training corpus " + args.train +
                              " has no gold entities");
  }
  nereval::BuilderConfig config;
  config.seed = args.seed;
  config.max_chunk_tokens = args.max_chunk_tokens;
  if (!args.stopwords.empty()) {
    config.stopwords.clear();
    for (const auto &chunk : nereval::ParseChunkFile(ReadFile(args.stopwords))) {
      std::string word = chunk.text;
      for (char &c : word) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
      config.stopwords.insert(word);
    }
  }
  std::vector<nereval::ChunkCandidate> external;
  if (!args.chunks.empty()) external = nereval::ParseChunkFile(ReadFile(args.chunks));
  std::vector<std::string> warnings;
  const auto pairs = nereval::BuildTrainingSet(
      corpus, config, args.chunks.empty() ? nullptr : &external, &warnings);
  for (const auto &w : warnings) std::cerr << "warning: " << w << "\n";
  WriteFile(args.out, nereval::WriteTrainingPairs(pairs));

  int64_t other = 0;
  for (const auto &p : pairs) other += p.label == nereval::kOtherLabel;
  std::cout << "pairs " << pairs.size() - other << ", other " << other
            << " (cap " << nereval::OtherClassCap(pairs) << ")\n";
  return 0;
}

// --- train-cls --------------------------------------------------------------

struct TrainArgs {
  std::string pairs;
  std::string out;
  nereval::TrainConfig config;
  int bucket_bits = 20;
};

int RunTrainCls(TrainArgs args) {
  const auto pairs = nereval::ParseTrainingPairs(ReadFile(args.pairs));
  args.config.buckets = uint64_t{1} << args.bucket_bits;
  const auto model = nereval::Train(pairs, args.config);
  WriteFile(args.out, model.Serialize());
  std::cout << "labels " << model.labels().size() << ", training accuracy "
            << nereval::FormatPercent(nereval::Accuracy(model, pairs)) << "%\n";
  return 0;
}

// --- refine -----------------------------------------------------------------

struct RefineArgs {
  std::string ledger;
  std::string model;
  std::string external;
  std::string write_request;
  std::string decisions_out;
  OutputOptions output;
};

int RunRefine(const RefineArgs &args) {
  InputFile ledger_file = Load("ledger", args.ledger);
  const auto match = nereval::ParseLedger(ledger_file.content);
  if (!args.write_request.empty()) {
    WriteFile(args.write_request, nereval::WriteClassifierRequest(match));
    if (args.model.empty() && args.external.empty()) return 0;
  }
  if (args.model.empty() == args.external.empty()) {
    throw UsageError("refine needs exactly one of --model and --external-decisions");
  }
  nereval::RunReportRequest request;
  request.command = "refine";
  nereval::DecisionMap decisions;
  if (!args.model.empty()) {
    InputFile model_file = Load("model", args.model);
    const auto model = nereval::ClassifierModel::Deserialize(model_file.content);
    decisions = nereval::DecideType5(model, match);
    request.decision_source = "model";
    request.inputs = {std::move(ledger_file), std::move(model_file)};
  } else {
    InputFile response = Load("external_decisions", args.external);
    decisions = nereval::ParseClassifierResponse(response.content, match);
    request.decision_source = "external";
    request.inputs = {std::move(ledger_file), std::move(response)};
  }
  if (!args.decisions_out.empty()) {
    WriteFile(args.decisions_out, nereval::WriteDecisions(decisions));
  }
  request.match = &match;
  request.decisions = &decisions;
  EmitReport(nereval::BuildRunReport(request), args.output);
  return 0;
}

// --- judge ------------------------------------------------------------------

struct JudgeArgs {
  std::string ledger;
  std::string judgements;
  std::string decisions;
  std::string profile;
  OutputOptions output;
};

int RunJudge(const JudgeArgs &args) {
  InputFile ledger_file = Load("ledger", args.ledger);
  InputFile judgement_file = Load("judgements", args.judgements);
  const auto match = nereval::ParseLedger(ledger_file.content);
  const auto judgements = nereval::LoadJudgements(judgement_file.content, match);
  if (judgements.records.empty()) {
    throw nereval::ParseError("judgement file " + args.judgements + " is empty");
  }

  nereval::RunReportRequest request;
  request.command = "judge";
  request.inputs = {std::move(ledger_file), std::move(judgement_file)};
  nereval::DecisionMap decisions;
  if (!args.decisions.empty()) {
    InputFile decision_file = Load("decisions", args.decisions);
    decisions = nereval::ParseDecisions(decision_file.content);
    request.inputs.push_back(std::move(decision_file));
    request.decisions = &decisions;
    request.decision_source = "decisions_file";
  }
  request.match = &match;
  request.judgements = &judgements;
  if (args.profile == "strict") request.profiles = {nereval::UserProfile::kStrictUser};
  if (args.profile == "forgiving") {
    request.profiles = {nereval::UserProfile::kForgivingUser};
  }
  EmitReport(nereval::BuildRunReport(request), args.output);
  return 0;
}

// --- perturb ----------------------------------------------------------------

struct PerturbArgs {
  std::string gold;
  std::string out_prefix;
  CorpusOptions corpus;
  nereval::PerturbationPlan plan;
};

int RunPerturb(const PerturbArgs &args) {
  const auto gold =
      ReadCorpus(Load("gold", args.gold), args.corpus, nereval::Source::kGold);
  const auto result = nereval::Perturb(gold, args.plan);
  WriteFile(args.out_prefix + ".standoff.jsonl", nereval::WriteStandoff(result.corpus));
  WriteFile(args.out_prefix + ".expected.jsonl",
            nereval::WriteLedger(result.expected.report));
  const auto &a = result.expected.applied;
  std::cout << "extended " << a.extended << ", shrunk " << a.shrunk << ", split "
            << a.split << ", relabeled " << a.relabeled << ", dropped "
            << a.dropped << ", inserted " << a.inserted << ", skipped "
            << a.skipped << ", untouched " << a.untouched << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Entity-level NER evaluation with mismatch types"};
  app.set_version_flag("--version", std::string(nereval::kToolVersion));
  app.require_subcommand(1);

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "Classify mismatches and score");
  eval_cmd->add_option("gold", eval.gold, "Gold annotations")->required();
  eval_cmd->add_option("pred", eval.pred, "Predicted annotations")->required();
  eval_cmd->add_option("--ledger", eval.ledger, "Write the mismatch ledger here");
  AddCorpusOptions(eval_cmd, &eval.corpus);
  AddOutputOptions(eval_cmd, &eval.output);

  BuildArgs build;
  auto *build_cmd =
      app.add_subcommand("build-clsdata", "Build entity-classifier training pairs");
  build_cmd->add_option("train", build.train, "NER training corpus")->required();
  build_cmd->add_option("--out", build.out, "Training-pairs file")->required();
  build_cmd->add_option("--seed", build.seed, "Sampling seed");
  build_cmd->add_option("--max-chunk-tokens", build.max_chunk_tokens)
      ->check(CLI::PositiveNumber);
  build_cmd->add_option("--stopwords", build.stopwords, "Stopword list, one per line");
  build_cmd->add_option("--chunks", build.chunks,
                        "Precomputed chunks, one per line (replaces the built-in chunker)");
  AddCorpusOptions(build_cmd, &build.corpus);

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train-cls", "Train the entity classifier");
  train_cmd->add_option("pairs", train.pairs, "Training-pairs file")->required();
  train_cmd->add_option("--out", train.out, "Model file")->required();
  train_cmd->add_option("--epochs", train.config.epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train.config.learning_rate)->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.config.seed);
  train_cmd->add_option("--bucket-bits", train.bucket_bits, "log2 of the hash table size")
      ->check(CLI::Range(1, 30));

  RefineArgs refine;
  auto *refine_cmd =
      app.add_subcommand("refine", "Accept or reject Type-5 mismatches");
  refine_cmd->add_option("ledger", refine.ledger, "Mismatch ledger")->required();
  refine_cmd->add_option("--model", refine.model, "Classifier model file");
  refine_cmd->add_option("--external-decisions", refine.external,
                         "External classifier response file");
  refine_cmd->add_option("--write-request", refine.write_request,
                         "Write the external classifier request here");
  refine_cmd->add_option("--decisions-out", refine.decisions_out,
                         "Write the decision file here");
  AddOutputOptions(refine_cmd, &refine.output);

  JudgeArgs judge;
  auto *judge_cmd = app.add_subcommand("judge", "Compare metrics with expert judgements");
  judge_cmd->add_option("ledger", judge.ledger, "Mismatch ledger")->required();
  judge_cmd->add_option("judgements", judge.judgements, "Judgement file")->required();
  judge_cmd->add_option("--decisions", judge.decisions, "Decision file from refine");
  judge_cmd->add_option("--profile", judge.profile, "Report only this user profile")
      ->check(CLI::IsMember({"strict", "forgiving"}));
  AddOutputOptions(judge_cmd, &judge.output);

  PerturbArgs perturb;
  auto &plan = perturb.plan;
  auto *perturb_cmd =
      app.add_subcommand("perturb", "Synthesize predictions with a known ledger");
  perturb_cmd->add_option("gold", perturb.gold, "Gold annotations")->required();
  perturb_cmd->add_option("--out-prefix", perturb.out_prefix)->required();
  perturb_cmd->add_option("--seed", plan.seed);
  const auto rate = CLI::Range(0.0, 1.0);
  perturb_cmd->add_option("--extend", plan.extend_rate)->check(rate);
  perturb_cmd->add_option("--shrink", plan.shrink_rate)->check(rate);
  perturb_cmd->add_option("--split", plan.split_rate)->check(rate);
  perturb_cmd->add_option("--relabel", plan.relabel_rate)->check(rate);
  perturb_cmd->add_option("--drop", plan.drop_rate)->check(rate);
  perturb_cmd->add_option("--insert", plan.insert_rate)->check(rate);
  perturb_cmd->add_option("--max-extend", plan.max_extend)->check(CLI::PositiveNumber);
  perturb_cmd->add_option("--max-shrink", plan.max_shrink)->check(CLI::PositiveNumber);
  AddCorpusOptions(perturb_cmd, &perturb.corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval_cmd) return RunEval(eval);
    if (*build_cmd) return RunBuildClsData(build);
    if (*train_cmd) return RunTrainCls(train);
    if (*refine_cmd) return RunRefine(refine);
    if (*judge_cmd) return RunJudge(judge);
    if (*perturb_cmd) return RunPerturb(perturb);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nereval::ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nereval::AlignmentError &e) {
    std::cerr << "alignment error: " << e.what() << "\n";
    return kExitAlignment;
  } catch (const nereval::CoverageError &e) {
    std::cerr << "coverage error: " << e.what() << "\n";
    return kExitCoverage;
  } catch (const nereval::ContractError &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitUsage;
}
