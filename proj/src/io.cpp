#include "dgswp/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dgswp/ot1d.hpp"

namespace dgswp {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return from_lines(lines);
}

Config Config::from_lines(const std::vector<std::string>& lines) {
  Config cfg;
  Index lineno = 0;
  for (const auto& raw : lines) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value, got '" + line + "'");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw std::runtime_error("config: empty key");
  values_[key] = value;
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("--set expects key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  const std::string v = it == values_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

Scalar Config::get_scalar(const std::string& key, Scalar fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    resolved_[key] = format_scalar(fallback);
    return fallback;
  }
  resolved_[key] = it->second;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' is not a number: " + it->second);
  }
}

Index Config::get_index(const std::string& key, Index fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    resolved_[key] = std::to_string(fallback);
    return fallback;
  }
  resolved_[key] = it->second;
  try {
    return static_cast<Index>(std::stoll(it->second));
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' is not an integer: " + it->second);
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    resolved_[key] = fallback ? "true" : "false";
    return fallback;
  }
  resolved_[key] = it->second;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw std::runtime_error("config: key '" + key + "' is not a boolean: " + it->second);
}

std::vector<Index> Config::get_index_list(const std::string& key,
                                          const std::vector<Index>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    std::string s;
    for (const auto v : fallback) s += (s.empty() ? "" : ",") + std::to_string(v);
    resolved_[key] = s;
    return fallback;
  }
  resolved_[key] = it->second;
  std::vector<Index> out;
  std::stringstream ss(it->second);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(static_cast<Index>(std::stoll(trim(cell))));
  return out;
}

std::vector<Scalar> Config::get_scalar_list(const std::string& key,
                                            const std::vector<Scalar>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    std::string s;
    for (const auto v : fallback) s += (s.empty() ? "" : ",") + format_scalar(v);
    resolved_[key] = s;
    return fallback;
  }
  resolved_[key] = it->second;
  std::vector<Scalar> out;
  std::stringstream ss(it->second);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(trim(cell)));
  return out;
}

std::map<std::string, std::string> Config::resolved() const {
  auto merged = resolved_;
  for (const auto& [k, v] : values_) merged[k] = v;
  return merged;
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (resolved_.count(k) == 0) out.push_back(k);
  return out;
}

std::string format_scalar(Scalar v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void save_table_csv(const std::string& path, const std::vector<std::string>& header,
                    const Mat& rows) {
  if (header.size() != static_cast<std::size_t>(rows.cols()))
    throw std::invalid_argument("save_table_csv: header/column mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  for (std::size_t k = 0; k < header.size(); ++k)
    out << header[k] << (k + 1 < header.size() ? "," : "\n");
  for (Index i = 0; i < rows.rows(); ++i)
    for (Index j = 0; j < rows.cols(); ++j)
      out << format_scalar(rows(i, j)) << (j + 1 < rows.cols() ? "," : "\n");
}

void save_plan_csv(const std::string& path, const std::vector<PlanSegment>& segments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "i,j,mass\n";
  for (const auto& s : segments)
    out << s.i << ',' << s.j << ',' << format_scalar(s.mass) << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << content;
}

void ensure_directory(const std::string& path) {
  std::filesystem::create_directories(path);
}

}  // namespace dgswp
