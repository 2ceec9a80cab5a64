#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcayley/qcayley.h"

namespace {

int report(qcg_status st) {
  const std::string msg = qcg_last_error();
  std::cerr << "qcayley: " << (msg.empty() ? std::string(qcg_status_name(st)) : msg) << "\n";
  return qcg_status_exit_class(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graphs of free quantum groups: tables, graphs and oracle checks"};
  app.set_version_flag("--version", std::string(qcg_version()));

  std::string command;
  std::string config_path;
  std::optional<int> radius, kmax;
  std::optional<std::string> tol, format;
  std::string out_path;

  app.add_option("command", command, "tree | dims | norms | kinf | verify | ao")
      ->required()
      ->check(CLI::IsMember({"tree", "dims", "norms", "kinf", "verify", "ao"}));
  app.add_option("config", config_path, "JSON config file");
  app.add_option("--radius", radius, "tree radius");
  app.add_option("--kmax", kmax, "largest dimension index");
  app.add_option("--tol", tol, "product tolerance");
  app.add_option("--format", format, "json | csv | dot");
  app.add_option("--out", out_path, "write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  qcg_config* cfg = nullptr;
  qcg_status st = config_path.empty() ? qcg_config_parse("{}", &cfg) : qcg_config_load(config_path.c_str(), &cfg);
  if (st != QCG_OK) return report(st);

  auto set = [&](const char* key, const std::string& value) {
    if (st == QCG_OK) st = qcg_config_set(cfg, key, value.c_str());
  };
  if (radius) set("radius", std::to_string(*radius));
  if (kmax) set("kmax", std::to_string(*kmax));
  if (tol) set("tol", *tol);
  if (format) set("format", *format);
  if (st != QCG_OK) {
    qcg_config_free(cfg);
    return report(st);
  }

  char* text = nullptr;
  size_t len = 0;
  int exit_code = 0;
  st = qcg_run(cfg, command.c_str(), &text, &len, &exit_code);
  qcg_config_free(cfg);
  if (st != QCG_OK) return report(st);

  if (out_path.empty()) {
    std::fwrite(text, 1, len, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out.write(text, static_cast<std::streamsize>(len));
    if (!out) {
      qcg_free_string(text);
      std::cerr << "qcayley: cannot write " << out_path << "\n";
      return 2;
    }
  }
  qcg_free_string(text);
  return exit_code;
}
