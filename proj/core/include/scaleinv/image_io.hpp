#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "scaleinv/image.hpp"

namespace scaleinv {

enum class IoErrc {
  FileNotFound,
  UnsupportedFormat,
  MalformedHeader,
  MaxvalTooLarge,
  TruncatedData,
  InvalidData,
  WriteFailed,
};

class IoError : public std::runtime_error {
 public:
  IoError(IoErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  IoErrc code() const noexcept { return code_; }

 private:
  IoErrc code_;
};

enum class MapFormat { Pfm, Csv };

/// Reads a binary (P5) or ASCII (P2) PGM with maxval <= 255. Samples are the
/// raw integer levels, not rescaled.
GrayImage load_pgm(const std::filesystem::path& path);

/// Writes a canonical P5 file ("P5\n<w> <h>\n255\n" + bytes). Samples are
/// rounded to the nearest level and clamped to [0, 255].
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// PFM is single precision: samples are rounded to float on write. CSV writes
/// the shortest decimal that reads back to the same double, one text line per
/// image row, so it round-trips exactly.
void save_map(const ScalarMap& map, const std::filesystem::path& path, MapFormat format);

/// The exact bytes save_map would write.
std::string encode_map(const ScalarMap& map, MapFormat format);

/// Writes through a sibling ".partial" file and a rename, so a failure never
/// leaves a truncated file at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

ScalarMap load_pfm(const std::filesystem::path& path);
ScalarMap load_csv_map(const std::filesystem::path& path);

/// Picks the format from the file extension (".pfm" or ".csv").
MapFormat map_format_for(const std::filesystem::path& path);

}  // namespace scaleinv
