#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gg::textio {

// Doubles are written with 12 significant digits in all text artifacts.
std::string format_double(double v);

std::vector<std::string> split(const std::string& line, char sep);
std::string trim(const std::string& s);

double parse_double(const std::string& s, const std::string& context);
long parse_long(const std::string& s, const std::string& context);

std::vector<std::string> read_lines(const std::string& path);

// Writes to <path>.tmp then renames, so partially written files never
// appear under the final name.
void write_file_atomic(const std::string& path, const std::string& content);

bool file_exists(const std::string& path);
void ensure_parent_dir(const std::string& path);
void ensure_dir(const std::string& path);

// key=value lines, '#' starts a comment. Used by train configs and
// checkpoint manifests.
std::map<std::string, std::string> parse_kv_lines(const std::vector<std::string>& lines,
                                                  const std::string& context);

}  // namespace gg::textio
