#pragma once

// Artifact plumbing shared by the CLI: 17-digit number formatting, CSV with a
// JSON header line, and atomic file replacement.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace conevortex::io {

inline constexpr const char* kVersion = "1.0.0";

/// %.17g; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const nlohmann::json& header, const std::vector<std::string>& columns);

  CsvWriter& cell(double v);
  CsvWriter& cell(long v);
  CsvWriter& cell(const std::string& v);
  void end_row();

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  bool fresh_ = true;
};

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Pretty JSON with a trailing newline; doubles round-trip exactly.
std::string json_text(const nlohmann::json& doc);

}  // namespace conevortex::io
