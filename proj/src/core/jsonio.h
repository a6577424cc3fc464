#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/common.h"

namespace wrsg {

/// Render a double with 17 significant digits ("%.17g", C locale).  This is
/// the value serialization contract for every file the toolkit writes:
/// strtod of the result recovers the exact bit pattern, so re-serialization
/// round-trips byte-for-byte.
std::string g17(double v);

/// Minimal order-preserving JSON emitter.  Parsing goes through
/// nlohmann::json; emission deliberately does not, so field order and number
/// formatting stay pinned and output is reproducible byte-for-byte.
class JsonWriter {
public:
  JsonWriter& obj_begin();
  JsonWriter& obj_end();
  JsonWriter& arr_begin();
  JsonWriter& arr_end();
  JsonWriter& key(const char* k);
  JsonWriter& num(double v);
  JsonWriter& integer(long long v);
  JsonWriter& str(const std::string& s);
  JsonWriter& boolean(bool v);
  JsonWriter& null();

  const std::string& text() const { return out_; }

private:
  void sep();
  std::string out_;
  // true while the next emitted item needs a ',' before it
  std::vector<bool> need_comma_;
  bool pending_key_ = false;
};

/// FNV-1a 64-bit digest of a byte string; used to fingerprint model files.
std::uint64_t fnv1a64(const std::string& bytes);

/// Lower-case 16-hex-digit rendering of a 64-bit digest.
std::string hex64(std::uint64_t v);

/// Read a whole file; raises `io_error` when unreadable.
std::string read_file(const std::string& path);

/// Split file content into lines (final newline optional, '\n' separators).
std::vector<std::string> split_lines(const std::string& content);

/// Write a file atomically (temp file + rename) under a single writer;
/// raises `io_error` on failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Parse one JSON line; parse failures raise an Error with the given id.
nlohmann::json parse_json_line(const std::string& line, const char* err_id);

} // namespace wrsg
