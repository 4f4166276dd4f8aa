/* Copyright 2026 The skiptree Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "skiptree/cli.h"

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skiptree/evaltasks.h"
#include "skiptree/formats.h"
#include "skiptree/parallel.h"
#include "skiptree/scorer.h"
#include "skiptree/skipgen.h"
#include "skiptree/statement.h"
#include "skiptree/typecheck.h"

namespace skiptree {
namespace {

// Raised for bad flags or inputs the user can fix; maps to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string quote(const std::string& v) {
  if (!v.empty() && v.find_first_of(" \t\"=") == std::string::npos) return v;
  return json(v).dump();
}

// `level key=value ...` on stderr.
void log(std::string_view level,
         std::initializer_list<std::pair<std::string, std::string>> fields) {
  std::ostringstream line;
  line << level;
  for (const auto& [k, v] : fields) line << ' ' << k << '=' << quote(v);
  std::cerr << line.str() << '\n';
}

std::string str(std::size_t n) { return std::to_string(n); }

void write_json_file(const std::string& path, const json& j) {
  AtomicFile f(path);
  f.stream() << j.dump(2) << '\n';
  f.commit();
}

// Every output file gets a sibling `<path>.manifest.json`. The worker count
// is left out on purpose: it does not affect any output byte.
void write_manifest(const std::string& primary_output,
                    const std::string& subcommand, const json& config,
                    std::optional<std::uint64_t> seed,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    const json& counts) {
  json m{{"format_version", kFormatVersion},
         {"tool", "skiptree"},
         {"version", kToolVersion},
         {"subcommand", subcommand},
         {"config", config},
         {"seed", seed ? json(*seed) : json(nullptr)},
         {"inputs", inputs},
         {"outputs", outputs},
         {"counts", counts}};
  write_json_file(primary_output + ".manifest.json", m);
}

Split parse_split_flag(const std::string& s) {
  const auto split = parse_split(s);
  if (!split) throw InputError("unknown split: " + s);
  return *split;
}

std::vector<CorpusRecord> load_corpus(const std::string& path,
                                      Split plain_split) {
  CorpusOptions opts;
  opts.plain_text_split = plain_split;
  std::vector<CorpusRecord> records;
  try {
    records = read_corpus_file(path, opts);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  for (const CorpusRecord& rec : records) {
    if (!rec.statement) {
      log("warn", {{"event", "bad_record"},
                   {"record", str(rec.index)},
                   {"id", rec.source_id},
                   {"error", rec.error}});
    }
  }
  return records;
}

// Per-record verdicts: type errors checked in parallel, then constructor
// arities checked in file order so the first occurrence wins.
std::vector<std::string> check_records(const std::vector<CorpusRecord>& records,
                                       std::size_t workers) {
  std::vector<std::string> errors(records.size());
  parallel_for(records.size(), workers, [&](std::size_t i) {
    const CorpusRecord& rec = records[i];
    if (!rec.statement) {
      errors[i] = rec.error;
      return;
    }
    if (auto err = check_statement(*rec.statement)) errors[i] = err->what();
  });
  ArityTable arities;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!errors[i].empty()) continue;
    try {
      arities.observe_term(parse_term(records[i].statement->body));
    } catch (const TypeError& e) {
      errors[i] = e.what();
    }
  }
  return errors;
}

// gen -------------------------------------------------------------------

struct GenFlags {
  std::string mode = "skip-tree-weighted";
  std::size_t k = 2;
  std::size_t n = 100;
  std::size_t max_in = 1024;
  std::size_t max_out = 512;
  std::uint64_t seed = 0;
  std::string in, out, stats, tsv;
  std::string plain_split = "train";
  std::size_t workers = 1;
};

void run_gen(const GenFlags& f) {
  const auto mode = parse_gen_mode(f.mode);
  if (!mode) throw InputError("unknown mode: " + f.mode);
  GenConfig cfg;
  cfg.mode = *mode;
  cfg.mask_count = f.k;
  cfg.samples_per_statement = f.n;
  cfg.max_input_tokens = f.max_in;
  cfg.max_output_tokens = f.max_out;
  cfg.seed = f.seed;

  const auto records = load_corpus(f.in, parse_split_flag(f.plain_split));
  AtomicFile out(f.out);
  std::optional<AtomicFile> tsv;
  if (!f.tsv.empty()) tsv.emplace(f.tsv);
  const DatasetStats stats = generate(
      records, cfg,
      [&](const MaskedExample& ex) {
        out.stream() << to_json(ex).dump() << '\n';
        if (tsv) tsv->stream() << to_tsv(ex) << '\n';
      },
      f.workers);
  if (stats.statements_used == 0) {
    log("warn", {{"event", "no_training_statements"}, {"in", f.in}});
  }

  std::vector<std::string> outputs{f.out};
  if (!f.stats.empty()) outputs.push_back(f.stats);
  if (tsv) outputs.push_back(f.tsv);
  out.commit();
  if (tsv) tsv->commit();
  const json stats_json = to_json(stats, to_string(cfg.mode));
  if (!f.stats.empty()) write_json_file(f.stats, stats_json);

  json config{{"mode", f.mode},
              {"k", f.k},
              {"n", f.n},
              {"max_in", f.max_in},
              {"max_out", f.max_out},
              {"plain_split", f.plain_split}};
  json counts = stats_json;
  counts.erase("format_version");
  counts.erase("dataset");
  counts["records"] = records.size();
  write_manifest(f.out, "gen", config, f.seed, {f.in}, outputs, counts);
  log("info", {{"event", "gen_done"},
               {"examples", str(stats.example_count)},
               {"statements", str(stats.statements_used)}});
}

// eval-extract -----------------------------------------------------------

struct ExtractFlags {
  std::string task;
  std::string in, out;
  std::uint64_t seed = 0;
  std::size_t sites = 1;
  bool allow_split = false;
  std::size_t workers = 1;
};

void run_extract(const ExtractFlags& f) {
  const auto kind = parse_task_kind(f.task);
  if (!kind) throw InputError("unknown task: " + f.task);

  std::vector<EvalTask> tasks;
  std::size_t skipped_split = 0, skipped_type = 0, skipped_empty = 0;
  std::size_t records_read = 0;
  if (*kind == TaskKind::kFreeForm) {
    tasks.push_back(free_form_prompt());
  } else {
    if (f.in.empty()) throw InputError("--in is required for --task " + f.task);
    const auto records = load_corpus(f.in, Split::kValid);
    records_read = records.size();
    const auto errors = check_records(records, f.workers);
    std::vector<const Statement*> chosen(records.size(), nullptr);
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!records[i].statement) continue;
      const Statement& s = *records[i].statement;
      if (s.split != Split::kValid && !f.allow_split) {
        ++skipped_split;
        continue;
      }
      if (!errors[i].empty()) {
        ++skipped_type;
        log("warn", {{"event", "ill_typed"},
                     {"id", s.source_id},
                     {"error", errors[i]}});
        continue;
      }
      chosen[i] = &s;
    }
    std::vector<std::vector<EvalTask>> per(records.size());
    parallel_for(records.size(), f.workers, [&](std::size_t i) {
      if (!chosen[i]) return;
      const Statement& s = *chosen[i];
      switch (*kind) {
        case TaskKind::kTypeInference:
        case TaskKind::kHardTypeInference: {
          Rng rng = Rng::stream(f.seed, records[i].index);
          const TypeVariant v = *kind == TaskKind::kTypeInference
                                    ? TypeVariant::kEasy
                                    : TypeVariant::kHard;
          try {
            per[i] = extract_type_inference(s, v, f.sites, rng);
          } catch (const NoCandidatesError&) {
          }
          std::sort(per[i].begin(), per[i].end(),
                    [](const EvalTask& a, const EvalTask& b) {
                      return a.site_path < b.site_path;
                    });
          break;
        }
        case TaskKind::kAssumptions:
          per[i] = extract_assumptions(s);
          break;
        case TaskKind::kEqualities:
          per[i] = extract_equalities(s);
          break;
        case TaskKind::kFreeForm:
          break;
      }
    });
    for (std::size_t i = 0; i < per.size(); ++i) {
      if (chosen[i] && per[i].empty()) ++skipped_empty;
      for (EvalTask& t : per[i]) tasks.push_back(std::move(t));
    }
    if (skipped_split > 0) {
      log("info", {{"event", "split_filtered"},
                   {"skipped", str(skipped_split)},
                   {"hint", "pass --allow-split to use train/test statements"}});
    }
  }
  if (tasks.empty()) {
    log("warn", {{"event", "no_tasks"}, {"task", f.task}});
  }

  AtomicFile out(f.out);
  for (const EvalTask& t : tasks) out.stream() << to_json(t).dump() << '\n';
  out.commit();
  json config{{"task", f.task},
              {"sites_per_statement", f.sites},
              {"allow_split", f.allow_split}};
  json counts{{"records", records_read},
              {"tasks", tasks.size()},
              {"skipped_split", skipped_split},
              {"skipped_ill_typed", skipped_type},
              {"statements_without_sites", skipped_empty}};
  std::vector<std::string> inputs;
  if (!f.in.empty()) inputs.push_back(f.in);
  write_manifest(f.out, "eval-extract", config, f.seed, inputs, {f.out},
                 counts);
  log("info", {{"event", "extract_done"}, {"tasks", str(tasks.size())}});
}

// score ------------------------------------------------------------------

struct ScoreFlags {
  std::string tasks, beams, index, report, verdicts;
  std::size_t workers = 1;
};

void run_score(const ScoreFlags& f) {
  std::vector<EvalTask> tasks;
  std::vector<BeamRecord> beams;
  try {
    for (const json& j : read_json_lines(f.tasks)) tasks.push_back(task_from_json(j));
    for (const json& j : read_json_lines(f.beams)) beams.push_back(beam_from_json(j));
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
  std::optional<CorpusIndex> index;
  if (!f.index.empty()) {
    try {
      index = CorpusIndex::load(f.index);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  const auto reports =
      score(tasks, beams, index ? &*index : nullptr, f.workers);

  json rep{{"format_version", kFormatVersion},
           {"reports", json::array()},
           {"provable", nullptr}};
  for (const ScoreReport& r : reports) rep["reports"].push_back(to_json(r));
  write_json_file(f.report, rep);
  std::vector<std::string> outputs{f.report};
  if (!f.verdicts.empty()) {
    AtomicFile v(f.verdicts);
    for (const ScoreReport& r : reports) {
      for (const Verdict& row : r.rows) v.stream() << to_json(row).dump() << '\n';
    }
    v.commit();
    outputs.push_back(f.verdicts);
  }
  std::vector<std::string> inputs{f.tasks, f.beams};
  if (!f.index.empty()) inputs.push_back(f.index);
  write_manifest(f.report, "score", json::object(), std::nullopt, inputs,
                 outputs, {{"tasks", tasks.size()}, {"beam_records", beams.size()}});
  log("info", {{"event", "score_done"}, {"tasks", str(tasks.size())}});
}

// stats, typecheck, index -------------------------------------------------

void run_stats(const std::string& in, const std::string& out) {
  DatasetStats stats;
  try {
    stats = stats_from_examples(read_json_lines(in));
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
  const json j = to_json(stats, "");
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  write_json_file(out, j);
  write_manifest(out, "stats", json::object(), std::nullopt, {in}, {out},
                 {{"examples", stats.example_count}});
}

void run_typecheck(const std::string& in, const std::string& out,
                   const std::string& plain_split, std::size_t workers) {
  const auto records = load_corpus(in, parse_split_flag(plain_split));
  const auto errors = check_records(records, workers);
  AtomicFile f(out);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    json v{{"format_version", kFormatVersion},
           {"id", records[i].source_id},
           {"ok", errors[i].empty()}};
    if (errors[i].empty()) {
      ++ok;
    } else {
      v["error"] = errors[i];
    }
    f.stream() << v.dump() << '\n';
  }
  f.commit();
  write_manifest(out, "typecheck", {{"plain_split", plain_split}}, std::nullopt,
                 {in}, {out},
                 {{"records", records.size()}, {"ok", ok},
                  {"failed", records.size() - ok}});
  log("info", {{"event", "typecheck_done"},
               {"ok", str(ok)},
               {"failed", str(records.size() - ok)}});
}

void run_index(const std::string& in, const std::string& out,
               const std::string& granularity, const std::string& plain_split) {
  NoveltyGranularity g;
  if (granularity == "statements") {
    g = NoveltyGranularity::kStatements;
  } else if (granularity == "subexpressions") {
    g = NoveltyGranularity::kSubexpressions;
  } else {
    throw InputError("unknown granularity: " + granularity);
  }
  const auto records = load_corpus(in, parse_split_flag(plain_split));
  const CorpusIndex index = CorpusIndex::build(records, g);
  AtomicFile f(out);
  index.save(f.stream());
  f.commit();
  write_manifest(out, "index",
                 {{"granularity", granularity}, {"plain_split", plain_split}},
                 std::nullopt, {in}, {out},
                 {{"statements", index.statement_count()},
                  {"subtrees", index.subtree_count()}});
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Corpus toolkit for skip-tree training data and evaluation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate a skip-tree or skip-sequence dataset");
  g->add_option("--mode", gen.mode,
                "skip-tree-weighted | skip-tree-uniform | skip-seq-short | "
                "skip-seq-medium | skip-seq-long")
      ->capture_default_str();
  g->add_option("--k", gen.k, "Masks per example")->capture_default_str();
  g->add_option("--n", gen.n, "Examples per statement")->capture_default_str();
  g->add_option("--max-in", gen.max_in, "Input token limit")->capture_default_str();
  g->add_option("--max-out", gen.max_out, "Target token limit")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--in", gen.in, "Corpus file")->required();
  g->add_option("--out", gen.out, "Dataset JSONL")->required();
  g->add_option("--stats", gen.stats, "Stats JSON");
  g->add_option("--tsv", gen.tsv, "Also write input<TAB>target lines");
  g->add_option("--plain-split", gen.plain_split,
                "Split for plain-text corpus lines")->capture_default_str();
  g->add_option("--workers", gen.workers)->capture_default_str();

  ExtractFlags ex;
  auto* e = app.add_subcommand("eval-extract", "Extract evaluation tasks");
  e->add_option("--task", ex.task,
                "type | type-hard | assumptions | equalities | freeform")
      ->required();
  e->add_option("--in", ex.in, "Corpus file");
  e->add_option("--out", ex.out, "Task JSONL")->required();
  e->add_option("--seed", ex.seed)->capture_default_str();
  e->add_option("--sites-per-statement", ex.sites,
                "Type inference sites drawn per statement")->capture_default_str();
  e->add_flag("--allow-split", ex.allow_split,
              "Also use train and test statements");
  e->add_option("--workers", ex.workers)->capture_default_str();

  ScoreFlags sc;
  auto* s = app.add_subcommand("score", "Score beam predictions");
  s->add_option("--tasks", sc.tasks)->required();
  s->add_option("--beams", sc.beams)->required();
  s->add_option("--index", sc.index, "Corpus index for novelty");
  s->add_option("--report", sc.report)->required();
  s->add_option("--verdicts", sc.verdicts);
  s->add_option("--workers", sc.workers)->capture_default_str();

  std::string st_in, st_out;
  auto* st = app.add_subcommand("stats", "Summarize a dataset file");
  st->add_option("--in", st_in)->required();
  st->add_option("--out", st_out);

  std::string tc_in, tc_out, tc_split = "train";
  std::size_t tc_workers = 1;
  auto* tc = app.add_subcommand("typecheck", "Typecheck every corpus statement");
  tc->add_option("--in", tc_in)->required();
  tc->add_option("--out", tc_out)->required();
  tc->add_option("--plain-split", tc_split)->capture_default_str();
  tc->add_option("--workers", tc_workers)->capture_default_str();

  std::string ix_in, ix_out, ix_gran = "subexpressions", ix_split = "train";
  auto* ix = app.add_subcommand("index", "Build a novelty index from training statements");
  ix->add_option("--in", ix_in)->required();
  ix->add_option("--out", ix_out)->required();
  ix->add_option("--granularity", ix_gran, "statements | subexpressions")
      ->capture_default_str();
  ix->add_option("--plain-split", ix_split)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*g) run_gen(gen);
    else if (*e) run_extract(ex);
    else if (*s) run_score(sc);
    else if (*st) run_stats(st_in, st_out);
    else if (*tc) run_typecheck(tc_in, tc_out, tc_split, tc_workers);
    else if (*ix) run_index(ix_in, ix_out, ix_gran, ix_split);
    return kExitOk;
  } catch (const AlignmentError& err) {
    log("error", {{"event", "alignment"}, {"error", err.what()}});
    return kExitInputError;
  } catch (const std::invalid_argument& err) {
    log("error", {{"event", "input"}, {"error", err.what()}});
    return kExitInputError;
  } catch (const ParseError& err) {
    log("error", {{"event", "parse"}, {"error", err.what()}});
    return kExitInputError;
  } catch (const std::exception& err) {
    log("error", {{"event", "internal"}, {"error", err.what()}});
    return kExitInternalError;
  }
}

}  // namespace skiptree
