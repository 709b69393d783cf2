#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace flab::io {

// Flat key=value config text ('#' starts a comment, blank lines ignored).
// Duplicate keys are errors.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Rejects any key outside `allowed`, naming the offending key.
void require_keys(const std::map<std::string, std::string>& cfg,
                  const std::vector<std::string>& allowed);

// Typed accessors; missing keys fall back to the default, malformed values
// are errors naming the key.
long get_long(const std::map<std::string, std::string>& cfg,
              const std::string& key, long fallback);
double get_double(const std::map<std::string, std::string>& cfg,
                  const std::string& key, double fallback);
std::string get_string(const std::map<std::string, std::string>& cfg,
                       const std::string& key, const std::string& fallback);
// Comma-separated integer list, e.g. "6,7,8".
std::vector<int> get_int_list(const std::map<std::string, std::string>& cfg,
                              const std::string& key);

// 17-significant-digit decimal rendering used by every CSV column.
std::string fmt(double x);

// Writes header + rows with LF line endings.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

// Emits `plot_<stem>.py` next to the CSV: a matplotlib script plotting the
// named y columns against x_col.  Returns the script file name.
std::string write_plot_script(const std::string& out_dir,
                              const std::string& csv_name,
                              const std::string& x_col,
                              const std::vector<std::string>& y_cols);

// FNV-1a of the canonicalized (sorted key=value) config; hex string.
std::string scenario_hash(const std::map<std::string, std::string>& cfg);

// manifest.json: tool version, command, scenario hash, seed, a snapshot of
// the frozen constants, and the list of emitted files.
void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::map<std::string, std::string>& cfg,
                    std::uint64_t seed, const std::vector<std::string>& files);

}  // namespace flab::io
