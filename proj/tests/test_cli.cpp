#include <doctest.h>

#include <clocale>
#include <string>

#include "lmgsim/cli/commands.hpp"
#include "lmgsim/cli/config.hpp"
#include "lmgsim/cli/format.hpp"
#include "lmgsim/error.hpp"

using namespace lmgsim;
using namespace lmgsim::cli;
using nlohmann::ordered_json;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(ordered_json::parse(text));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool names_field(const std::string& text, const std::string& field) {
  return config_error(text).find("'" + field + "'") != std::string::npos;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-5.0) == "-5");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1e-20) == "9.9999999999999995e-21");
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("csv writer") {
  CsvWriter csv({"a", "b"});
  csv.row().cell(1).cell(0.5);
  csv.row().cell(std::string("x")).cell(2.0);
  CHECK(csv.str() == "a,b\n1,0.5\nx,2\n");
  CsvWriter bad({"a", "b"});
  bad.row().cell(1);
  CHECK_THROWS_AS(bad.str(), Error);
}

TEST_CASE("coupling grid") {
  const auto cfg = parse_config(ordered_json::parse(R"({"command":"spectrum","n":3,"j":{"min":-1,"max":1,"steps":5}})"));
  const auto js = cfg.j.values();
  REQUIRE(js.size() == 5);
  CHECK(js[0] == -1.0);
  CHECK(js[2] == doctest::Approx(0.0));
  CHECK(js[4] == 1.0);
  CHECK(cfg.output == "spectrum");
  CHECK(cfg.delta == 1.0);
}

TEST_CASE("validation errors name the field") {
  CHECK(names_field(R"({"command":"spectrum","n":3,"j":{"min":0,"max":1,"steps":2},"extra":1})", "extra"));
  CHECK(names_field(R"({"command":"spectrum","n":3,"j":0.5})", "j"));
  CHECK(names_field(R"({"command":"spectrum","n":"3","j":{"min":0,"max":1,"steps":2}})", "n"));
  CHECK(names_field(R"({"command":"spectrum","n":3,"j":{"min":0,"max":1,"steps":0}})", "j.steps"));
  CHECK(names_field(R"({"command":"flip","n":3})", "command"));
  CHECK(names_field(R"({"command":"ground-scan","n":4,"j":{"min":0,"max":1,"steps":2},"targets":["ENT3"]})",
                    "targets[0]"));
  CHECK(names_field(R"({"command":"evolve","n":3,"j":0.5,"targets":["GHZ"],"time":{"t_max":1,"steps":2}})",
                    "initial_state"));
  CHECK(names_field(R"({"command":"evolve","n":3,"j":0.5,"initial_state":"SEP","targets":["NOPE"],"time":{"t_max":1,"steps":2}})",
                    "targets[0]"));
  CHECK(names_field(R"({"command":"evolve","n":3,"j":0.5,"initial_state":"SEP","pairs":[[1,1]],"time":{"t_max":1,"steps":2}})",
                    "pairs[0]"));
  CHECK(names_field(R"({"command":"max-fidelity","n":3,"j":{"min":0,"max":1,"steps":2},"initial_state":"SEP","targets":["GHZ","W"],"time":{"t_max":1,"steps":2}})",
                    "targets"));
  CHECK(names_field(R"({"command":"disorder","n":3,"j":-1})", "disorder"));
  CHECK(names_field(R"({"command":"disorder","n":3,"j":-1,"disorder":{"family":"gauss","realizations":2}})",
                    "disorder.family"));
  CHECK(names_field(R"({"command":"disorder","n":3,"j":-1,"disorder":{"family":"uniform","realizations":2,"bad":0}})",
                    "disorder.bad"));
  CHECK(names_field(R"({"command":"ground-scan","n":3,"j":{"min":0,"max":1,"steps":2},"perturbation":{"qubit":5,"g":0.1}})",
                    "perturbation.qubit"));
  CHECK(names_field(R"({"command":"spectrum","n":[3,4],"j":{"min":0,"max":1,"steps":2}})", "n"));
  CHECK(names_field(R"({"command":"spectrum","n":3,"j":{"min":0,"max":1,"steps":2},"seed":-1})", "seed"));
}

TEST_CASE("subcommand must agree with the file") {
  const auto doc = ordered_json::parse(R"({"command":"spectrum","n":3,"j":{"min":0,"max":1,"steps":2}})");
  CHECK_THROWS_AS(parse_config(doc, Command::Evolve), Error);
  CHECK(parse_config(doc, Command::Spectrum).command == Command::Spectrum);
  auto bare = doc;
  bare.erase("command");
  CHECK(parse_config(bare, Command::Spectrum).command == Command::Spectrum);
  CHECK_THROWS_AS(parse_config(bare), Error);
}

TEST_CASE("rendering is deterministic across runs and thread counts") {
  const char* configs[] = {
      R"({"command":"ground-scan","n":3,"j":{"min":-5,"max":5,"steps":7},"perturbation":{"qubit":1,"g":0.01}})",
      R"({"command":"spectrum","n":4,"j":{"min":-2,"max":2,"steps":5}})",
      R"({"command":"entanglement-scan","n":[3,4],"j":{"min":-2,"max":2,"steps":5}})",
      R"({"command":"evolve","n":3,"j":0.5,"initial_state":"SEP","targets":["GHZ","W"],"pairs":[[1,2]],"blocks":[[1]],"time":{"t_max":10,"steps":50}})",
      R"({"command":"max-fidelity","n":3,"j":{"min":0.4,"max":0.6,"steps":3},"initial_state":"SEP","targets":["GHZ"],"time":{"t_max":30,"steps":300}})",
      R"({"command":"disorder","n":4,"j":-1,"seed":9,"disorder":{"family":"sk","realizations":6,"per_realization":true}})",
  };
  for (const char* text : configs) {
    const auto cfg = parse_config(ordered_json::parse(text));
    const auto a = render(cfg, 1);
    const auto b = render(cfg, 1);
    const auto c = render(cfg, 3);
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].suffix == c[i].suffix);
      CHECK(a[i].content == b[i].content);
      CHECK(a[i].content == c[i].content);
    }
  }
}

TEST_CASE("ground-scan uncoupled row") {
  const auto cfg = parse_config(ordered_json::parse(R"({"command":"ground-scan","n":3,"j":{"min":-1,"max":1,"steps":3}})"));
  const auto files = render(cfg);
  REQUIRE(files.size() == 1);
  const std::string& csv = files[0].content;
  CHECK(csv.rfind("J,fid_SEP,fid_GHZ,fid_ENT3,ground_multiplicity\n", 0) == 0);
  CHECK(csv.find("\n0,1,") != std::string::npos);
}

TEST_CASE("thread default") {
  CHECK(default_threads() >= 1);
}
