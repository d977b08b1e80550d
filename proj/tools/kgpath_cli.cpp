// Copyright 2026 The kgpath Authors.
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

// kgpath command line. Every config key is also a flag: search_depth is
// --search-depth. Flags override the --config file, which overrides the
// defaults. Failures print {"error": {...}} on stderr and exit nonzero.

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgpath/kgpath.h"

namespace {

constexpr int kUsageExit = 64;

struct Command {
  const char* name;
  const char* description;
};

constexpr Command kCommands[] = {
    {"extract", "extract reasoning paths for train and test candidates"},
    {"train", "train the projection head on extracted paths"},
    {"evaluate", "rank test candidates and write MRR / Hit@1"},
    {"explain", "cluster and project paths of test queries"},
    {"metrics", "write support / coverage / confidence of test paths"},
};

int report(const std::string& status, int code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"status", status}, {"code", code}, {"message", message}};
  std::cerr << j.dump() << std::endl;
  return code;
}

int report(kgp_status s) {
  return report(kgp_status_name(s), static_cast<int>(s), kgp_last_error());
}

std::string flag_name(std::string key) {
  for (char& ch : key) {
    if (ch == '_') ch = '-';
  }
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgpath: path-based knowledge graph reasoning"};
  app.set_version_flag("--version", std::string(kgp_version()));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>> flags;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
    sub->add_option("--config", config_path, "key = value config file");
    for (size_t i = 0; i < kgp_config_key_count(); ++i) {
      const std::string key = kgp_config_key_name(i);
      CLI::Option* opt =
          sub->add_option(flag_name(key), values[key], kgp_config_key_help(i));
      flags[sub].emplace_back(key, opt);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", kUsageExit, e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  kgp_config* cfg = nullptr;
  if (kgp_status s = kgp_config_create(&cfg); s != KGP_OK) return report(s);
  int rc = 0;
  kgp_status s = KGP_OK;
  if (!config_path.empty()) s = kgp_config_load_file(cfg, config_path.c_str());
  for (const auto& [key, opt] : flags[sub]) {
    if (s != KGP_OK) break;
    if (opt->count() > 0) s = kgp_config_set(cfg, key.c_str(), values[key].c_str());
  }
  if (s == KGP_OK) s = kgp_run_command(cfg, sub->get_name().c_str());
  if (s != KGP_OK) rc = report(s);
  kgp_config_free(cfg);
  return rc;
}
