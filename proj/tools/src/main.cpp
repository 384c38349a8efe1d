#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

using namespace coarsecat;
using namespace coarsecat::cli;

std::size_t max_carrier_from_env() {
  const char* env = std::getenv("COARSECAT_MAX_CARRIER");
  if (env == nullptr || *env == '\0') return kDefaultMaxCarrier;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string_view(env).size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw InvalidArgument("COARSECAT_MAX_CARRIER must be a natural number");
}

std::string read_input(const std::string& path, const std::string& fixture) {
  if (!fixture.empty()) {
    auto text = fixture_text(fixture);
    if (!text) throw InvalidArgument("unknown fixture \"" + fixture + "\" (expected exa_N or ex_PO)");
    return std::string(*text);
  }
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open \"" + path + "\"");
    buf << in.rdbuf();
  }
  return buf.str();
}

int emit(const Report& r) {
  std::cout << r.body.dump(2) << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized bornological coarse spaces: constructions and predicates"};
  std::string command;
  std::string input;
  std::string fixture;
  Flags flags;

  std::string commands;
  for (const auto& c : command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + commands)->required();
  app.add_option("-i,--input", input, "Input document (default: standard input)");
  app.add_option("--fixture", fixture, "Use a bundled document instead of the input")
      ->check(CLI::IsMember({"exa_N", "ex_PO"}));
  app.add_option("--test-cap", flags.test_cap, "Largest test object size for the oracle");
  app.add_option("--search-cap", flags.search_cap, "Largest carrier for map searches");
  app.add_option("--seed", flags.seed, "Seed for randomized test sampling");
  app.add_option("--mutations", flags.mutations, "Mutated candidates checked by the oracle command");
  app.add_option("--space", flags.spaces, "Space name (repeatable)")->delimiter(',');
  app.add_option("--map", flags.maps, "Map name (repeatable)")->delimiter(',');
  app.add_option("--diagram", flags.diagram, "Diagram name");
  app.add_option("--side", flags.side, "limit or colimit")->check(CLI::IsMember({"limit", "colimit"}));
  app.add_option("--subset,--y", flags.y, "Points of the subset (or the first half of a cover)")
      ->delimiter(',');
  app.add_option("--z", flags.z, "Points of the second half of a cover")->delimiter(',');
  app.add_flag("--exhaustive", flags.exhaustive, "Quantify over all invariant entourages");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit(error_report(command, InvalidArgument(e.what())));
  }

  try {
    const std::size_t max_carrier = max_carrier_from_env();
    const Document doc = parse(read_input(input, fixture), max_carrier);
    return emit(run(command, doc, flags));
  } catch (const std::exception& e) {
    return emit(error_report(command, e));
  }
}
