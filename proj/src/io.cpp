#include "flab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "flab/constants.hpp"

namespace flab::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    if (out.count(key))
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void require_keys(const std::map<std::string, std::string>& cfg,
                  const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : cfg) {
    bool ok = false;
    for (const std::string& a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

long get_long(const std::map<std::string, std::string>& cfg,
              const std::string& key, long fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  try {
    size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not an integer");
  }
}

double get_double(const std::map<std::string, std::string>& cfg,
                  const std::string& key, double fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not a number");
  }
}

std::string get_string(const std::map<std::string, std::string>& cfg,
                       const std::string& key, const std::string& fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

std::vector<int> get_int_list(const std::map<std::string, std::string>& cfg,
                              const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return {};
  std::vector<int> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoi(trim(item), &pos));
    } catch (const std::exception&) {
      throw std::invalid_argument("config: key '" + key +
                                  "' is not a comma-separated integer list");
    }
  }
  if (out.empty())
    throw std::invalid_argument("config: key '" + key + "' is empty");
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open '" + path + "'");
  out << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
}

std::string write_plot_script(const std::string& out_dir,
                              const std::string& csv_name,
                              const std::string& x_col,
                              const std::vector<std::string>& y_cols) {
  std::string stem = csv_name;
  const auto dot = stem.rfind('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  const std::string name = "plot_" + stem + ".py";
  std::ofstream out(out_dir + "/" + name, std::ios::binary);
  if (!out) throw std::runtime_error("plot script: cannot open output");
  out << "#!/usr/bin/env python3\n"
      << "\"\"\"Plot " << csv_name << " (generated next to the data).\"\"\"\n"
      << "import csv\n"
      << "import os\n\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "here = os.path.dirname(os.path.abspath(__file__))\n"
      << "with open(os.path.join(here, \"" << csv_name << "\")) as f:\n"
      << "    rows = list(csv.DictReader(f))\n"
      << "x = [float(r[\"" << x_col << "\"]) for r in rows]\n";
  for (const std::string& y : y_cols)
    out << "plt.plot(x, [float(r[\"" << y << "\"]) for r in rows], "
        << "marker=\"o\", label=\"" << y << "\")\n";
  out << "plt.xlabel(\"" << x_col << "\")\n"
      << "plt.yscale(\"log\")\n"
      << "plt.legend()\n"
      << "plt.savefig(os.path.join(here, \"" << stem << ".png\"), dpi=150)\n";
  return name;
}

std::string scenario_hash(const std::map<std::string, std::string>& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : cfg) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::map<std::string, std::string>& cfg,
                    std::uint64_t seed, const std::vector<std::string>& files) {
  nlohmann::ordered_json j;
  j["version"] = "1.0.0";
  j["command"] = command;
  j["scenario_hash"] = scenario_hash(cfg);
  j["seed"] = seed;
  nlohmann::ordered_json c;
  c["geo_tol"] = constants::geo_tol;
  c["k_cover"] = constants::k_cover;
  c["k_cover_dilate"] = constants::k_cover_dilate;
  c["k_cover_spacing"] = constants::k_cover_spacing;
  c["k_flip"] = constants::k_flip;
  c["k_dual"] = constants::k_dual;
  c["k_cone"] = constants::k_cone;
  c["k_gen"] = constants::k_gen;
  c["k_polylog"] = constants::k_polylog;
  c["k_dec"] = constants::k_dec;
  c["k_l9"] = constants::k_l9;
  c["k_w"] = constants::k_w;
  c["incomparability"] = constants::incomparability;
  c["ex1_incomparability"] = constants::ex1_incomparability;
  c["c_ex1"] = constants::c_ex1;
  c["k_window"] = constants::k_window;
  c["a_cal"] = constants::a_cal;
  j["constants"] = c;
  j["config"] = cfg;
  j["files"] = files;
  std::ofstream out(out_dir + "/manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("manifest: cannot open output");
  out << j.dump(2) << "\n";
}

}  // namespace flab::io
