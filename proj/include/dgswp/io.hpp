#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dgswp/types.hpp"

namespace dgswp {

/// Flat key-value experiment configuration with dotted keys
/// (e.g. stein.epsilon=0.05). Values stay strings until read; typed getters
/// record every key they resolve so the manifest can echo the full
/// effective configuration, defaults included.
class Config {
 public:
  Config() = default;

  /// Parse `key=value` lines; '#' starts a comment, blank lines ignored.
  static Config from_file(const std::string& path);
  static Config from_lines(const std::vector<std::string>& lines);

  void set(const std::string& key, const std::string& value);
  /// Apply a `key=value` override (the --set flag).
  void apply_override(const std::string& assignment);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  Scalar get_scalar(const std::string& key, Scalar fallback) const;
  Index get_index(const std::string& key, Index fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<Index> get_index_list(const std::string& key,
                                    const std::vector<Index>& fallback) const;
  std::vector<Scalar> get_scalar_list(const std::string& key,
                                      const std::vector<Scalar>& fallback) const;

  /// Keys explicitly set plus every default touched by a getter.
  std::map<std::string, std::string> resolved() const;
  /// Keys set but never read; surfaced as configuration errors.
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

std::string format_scalar(Scalar v);

/// FNV-1a 64-bit over bytes; used for input/config fingerprints in
/// manifests.
std::uint64_t fnv1a64(const std::string& bytes);

/// Write a numeric table with a header row; cells are %.17g so reruns are
/// bit-identical.
void save_table_csv(const std::string& path, const std::vector<std::string>& header,
                    const Mat& rows);

void save_plan_csv(const std::string& path, const std::vector<struct PlanSegment>& segments);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

}  // namespace dgswp
