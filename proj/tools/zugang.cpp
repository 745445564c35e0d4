// zugang: extract access requirements from German training advertisements.
//
//   zugang ingest  -c data/zugang.conf
//   zugang expand  -c data/zugang.conf [--out variants.jsonl]
//   zugang extract -c data/zugang.conf [--format jsonl|html|text] [--jobs N] [--out F] [input]
//   zugang eval    -p predictions.jsonl -g gold.jsonl [--name NAME] [--json]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zugang/cli.hpp"

namespace {

using namespace zugang;

int with_output(const std::string& path, auto&& fn) {
  if (path.empty() || path == "-") return fn(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return cli::kExitData;
  }
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-based detection of access requirements in German training advertisements"};
  app.require_subcommand(1);

  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "engine config file")->required()->check(CLI::ExistingFile);
  };

  auto* ingest = app.add_subcommand("ingest", "load and validate gazetteers, lexicon and rules");
  add_config(ingest);

  std::string out_path;
  auto* expand = app.add_subcommand("expand", "dump all label variants as JSON lines");
  add_config(expand);
  expand->add_option("-o,--out", out_path, "output file (default stdout)");

  std::string input = "-";
  std::string format = "jsonl";
  std::string doc_id;
  unsigned jobs = 1;
  auto* extract = app.add_subcommand("extract", "extract requirements from documents");
  add_config(extract);
  extract->add_option("input", input, "input file, '-' for stdin");
  extract->add_option("-f,--format", format, "input format")->check(CLI::IsMember({"html", "text", "jsonl"}));
  extract->add_option("--doc-id", doc_id, "document id for html/text input (default: file stem)");
  extract->add_option("-j,--jobs", jobs, "documents processed concurrently")->check(CLI::PositiveNumber);
  extract->add_option("-o,--out", out_path, "output file (default stdout)");

  std::string predictions, gold, name = "dataset";
  std::vector<std::string> datasets;
  bool json = false;
  auto* eval = app.add_subcommand("eval", "score predictions against gold labels");
  eval->add_option("-p,--predictions", predictions, "predictions (extract output)");
  eval->add_option("-g,--gold", gold, "gold standard JSON lines");
  eval->add_option("-n,--name", name, "data set name for the report");
  eval->add_option("-d,--dataset", datasets, "additional data set as NAME=PREDICTIONS:GOLD");
  eval->add_flag("--json", json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  if (*eval) {
    std::vector<cli::EvalInput> inputs;
    if (!predictions.empty() || !gold.empty()) {
      if (predictions.empty() || gold.empty()) {
        std::cerr << "error: --predictions and --gold go together\n";
        return cli::kExitUsage;
      }
      inputs.push_back({name, predictions, gold});
    }
    for (const auto& d : datasets) {
      auto eq = d.find('=');
      auto colon = d.find(':', eq == std::string::npos ? 0 : eq);
      if (eq == std::string::npos || colon == std::string::npos) {
        std::cerr << "error: --dataset expects NAME=PREDICTIONS:GOLD, got '" << d << "'\n";
        return cli::kExitUsage;
      }
      inputs.push_back({d.substr(0, eq), d.substr(eq + 1, colon - eq - 1), d.substr(colon + 1)});
    }
    if (inputs.empty()) {
      std::cerr << "error: nothing to evaluate\n";
      return cli::kExitUsage;
    }
    return cli::cmd_eval(inputs, json, std::cout, std::cerr);
  }

  EngineConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitData;
  }

  if (*ingest) return cli::cmd_ingest(cfg, std::cout, std::cerr);
  if (*expand) {
    return with_output(out_path, [&](std::ostream& out) { return cli::cmd_expand(cfg, out, std::cerr); });
  }

  Engine engine;
  try {
    engine = Engine::load(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitData;
  }
  cli::ExtractOptions opt;
  opt.format = format == "html" ? cli::ExtractInput::html
               : format == "text" ? cli::ExtractInput::text
                                  : cli::ExtractInput::jsonl;
  opt.jobs = jobs;
  opt.doc_id = !doc_id.empty() ? doc_id
               : input == "-"  ? std::string("stdin")
                               : std::filesystem::path(input).stem().string();

  std::ifstream file;
  std::istream* in = &std::cin;
  if (input != "-") {
    file.open(input, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot read '" << input << "'\n";
      return cli::kExitData;
    }
    in = &file;
  }
  return with_output(out_path, [&](std::ostream& out) {
    return cli::cmd_extract(engine, cfg, *in, opt, out, std::cerr);
  });
}
