#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "isoprofile/cli.hpp"

int main(int argc, char** argv) {
  using isoprofile::JobConfig;
  using isoprofile::OutputFormat;

  CLI::App app{"Chain isoperimetric profiles of groups of type F_q"};
  app.require_subcommand(1, 1);
  JobConfig config;
  std::string cache;
  bool no_cache = false;
  std::optional<std::size_t> radius;
  const std::map<std::string, OutputFormat> formats{
      {"human", OutputFormat::kHuman},
      {"json", OutputFormat::kJson},
      {"csv", OutputFormat::kCsv}};

  const auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", config.input, "skeleton JSON file");
    if (needs_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("--format", config.format, "json, csv or human")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->option_text("human|json|csv");
    sub->add_option("--cache", cache,
                    "cache file (default $ISOPROFILE_CACHE_DIR/cache.json)");
    sub->add_flag("--no-cache", no_cache, "neither read nor write the cache");
    sub->add_option("--min-n", config.min_n, "smallest volume reported");
    sub->add_option("--max-n", config.max_n, "largest volume");
    sub->add_option("--max-fill-volume", config.budget.max_fill_volume,
                    "give up on fillings larger than this");
    sub->add_option("--max-nodes", config.budget.max_nodes,
                    "search node cap");
    sub->add_option("--oracle-radius", radius, "length radius of a bfs oracle");
    sub->add_option("--workers", config.budget.workers, "worker threads");
  };

  auto* validate = app.add_subcommand("validate", "check that the skeleton is a chain complex");
  common(validate, true);
  auto* enumerate = app.add_subcommand(
      "enumerate", "connected chains up to translation, by norm");
  common(enumerate, true);
  enumerate->add_option("--dim", config.dim, "chain dimension (default q-1)");
  enumerate->add_flag("--cycles", config.cycles_only, "only cycles");
  auto* fv = app.add_subcommand("fv", "filling volume of one cycle");
  common(fv, true);
  fv->add_option("--cycle", config.cycle, "chain literal, e.g. \"(e, e_a) - (b, e_a)\"")
      ->required();
  common(app.add_subcommand("psi", "largest filling volume of connected cycles"), true);
  common(app.add_subcommand("phi", "chain isoperimetric profile"), true);
  common(app.add_subcommand("finite-profile", "profile of a finite group"), true);
  auto* chain2 = app.add_subcommand("chain2-bound", "bound from a Dehn function table");
  common(chain2, false);
  chain2->add_option("--delta", config.delta, "CSV n,value")
      ->required()
      ->check(CLI::ExistingFile);
  auto* disk = app.add_subcommand("disk-bound", "bound for surfaces with several boundary circles");
  common(disk, false);
  disk->add_option("--delta", config.delta, "CSV n,value")
      ->required()
      ->check(CLI::ExistingFile);
  disk->add_option("--circles", config.circles, "number of boundary circles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : isoprofile::exit_code(isoprofile::ErrorKind::kInput);
  }
  config.command = app.get_subcommands().front()->get_name();
  config.oracle_radius = radius;
  if (!cache.empty()) config.cache_path = cache;
  config.use_cache = !no_cache;
  return isoprofile::run(config, std::cout, std::cerr);
}
