#include "scaleinv/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <system_error>

namespace scaleinv {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError(IoErrc::FileNotFound, "cannot open '" + path.string() + "': no such file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoErrc::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoErrc::WriteFailed, "cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError(IoErrc::WriteFailed, "short write to '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(IoErrc::WriteFailed, "cannot write '" + path.string() + "'");
  }
}

namespace {

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class HeaderReader {
 public:
  explicit HeaderReader(const std::string& data) : data_(data) {}

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::optional<long> next_uint() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (pos_ == start || pos_ - start > 9) return std::nullopt;
    long v = 0;
    std::from_chars(data_.data() + start, data_.data() + pos_, v);
    return v;
  }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
};

long header_field(HeaderReader& r, const char* name, const std::filesystem::path& path) {
  auto v = r.next_uint();
  if (!v) {
    throw IoError(IoErrc::MalformedHeader,
                  "malformed PGM header in '" + path.string() + "': bad " + name);
  }
  return *v;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_finite(const ScalarMap& map) {
  for (double v : map.samples()) {
    if (!std::isfinite(v)) throw IoError(IoErrc::InvalidData, "refusing to write a non-finite sample");
  }
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() < 2 || data[0] != 'P') {
    throw IoError(IoErrc::UnsupportedFormat, "unsupported format in '" + path.string() + "': not a netpbm file");
  }
  const char kind = data[1];
  if (kind != '2' && kind != '5') {
    throw IoError(IoErrc::UnsupportedFormat, "unsupported format P" + std::string(1, kind) + " in '" +
                                                 path.string() + "': only P2 and P5 are read");
  }

  HeaderReader r(data);
  r.advance(2);
  const long width = header_field(r, "width", path);
  const long height = header_field(r, "height", path);
  const long maxval = header_field(r, "maxval", path);
  if (width <= 0 || height <= 0) {
    throw IoError(IoErrc::MalformedHeader, "malformed PGM header in '" + path.string() + "': zero size");
  }
  if (maxval <= 0) {
    throw IoError(IoErrc::MalformedHeader, "malformed PGM header in '" + path.string() + "': maxval 0");
  }
  if (maxval > 255) {
    throw IoError(IoErrc::MaxvalTooLarge, "maxval " + std::to_string(maxval) + " in '" +
                                              path.string() + "' exceeds 255 (16-bit PGM is not supported)");
  }

  const auto w = static_cast<std::size_t>(width);
  const auto h = static_cast<std::size_t>(height);
  std::vector<double> samples(w * h);

  if (kind == '5') {
    // Exactly one whitespace byte separates maxval from the raster.
    if (r.pos() >= data.size() || !std::isspace(static_cast<unsigned char>(data[r.pos()]))) {
      throw IoError(IoErrc::MalformedHeader, "malformed PGM header in '" + path.string() + "'");
    }
    const std::size_t start = r.pos() + 1;
    if (data.size() - start < w * h) {
      throw IoError(IoErrc::TruncatedData, "truncated raster in '" + path.string() + "': expected " +
                                               std::to_string(w * h) + " bytes");
    }
    for (std::size_t i = 0; i < w * h; ++i) {
      const auto v = static_cast<unsigned char>(data[start + i]);
      if (v > maxval) {
        throw IoError(IoErrc::InvalidData, "sample exceeds maxval in '" + path.string() + "'");
      }
      samples[i] = v;
    }
  } else {
    for (std::size_t i = 0; i < w * h; ++i) {
      auto v = r.next_uint();
      if (!v) {
        throw IoError(IoErrc::TruncatedData, "truncated or non-numeric ASCII raster in '" +
                                                 path.string() + "' at sample " + std::to_string(i));
      }
      if (*v > maxval) {
        throw IoError(IoErrc::InvalidData, "sample exceeds maxval in '" + path.string() + "'");
      }
      samples[i] = static_cast<double>(*v);
    }
  }
  return GrayImage(w, h, std::move(samples));
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::string bytes = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  bytes.reserve(bytes.size() + img.size());
  for (double v : img.samples()) {
    bytes.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L))));
  }
  write_file_atomic(path, bytes);
}

void save_map(const ScalarMap& map, const std::filesystem::path& path, MapFormat format) {
  std::string bytes;
  try {
    bytes = encode_map(map, format);
  } catch (const IoError& e) {
    throw IoError(e.code(), std::string(e.what()) + " ('" + path.string() + "')");
  }
  write_file_atomic(path, bytes);
}

std::string encode_map(const ScalarMap& map, MapFormat format) {
  require_finite(map);
  std::string bytes;
  if (format == MapFormat::Pfm) {
    for (double v : map.samples()) {
      if (std::fabs(v) > std::numeric_limits<float>::max()) {
        throw IoError(IoErrc::InvalidData, "sample outside single-precision range for PFM");
      }
    }
    bytes = "Pf\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n-1.0\n";
    const std::size_t header = bytes.size();
    bytes.resize(header + map.size() * 4);
    char* out = bytes.data() + header;
    // PFM stores the bottom row first.
    for (std::size_t r = map.height(); r-- > 0;) {
      for (double v : map.row(r)) {
        auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        if constexpr (std::endian::native == std::endian::big) {
          bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) | (bits >> 24);
        }
        std::memcpy(out, &bits, 4);
        out += 4;
      }
    }
  } else {
    for (std::size_t r = 0; r < map.height(); ++r) {
      const auto row = map.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) bytes.push_back(',');
        bytes += format_double(row[c]);
      }
      bytes.push_back('\n');
    }
  }
  return bytes;
}

ScalarMap load_pfm(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() < 2 || data[0] != 'P' || data[1] != 'f') {
    throw IoError(IoErrc::UnsupportedFormat, "'" + path.string() + "' is not a grayscale PFM");
  }
  std::istringstream hdr(data.substr(2, 128));
  long w = 0, h = 0;
  double scale = 0.0;
  if (!(hdr >> w >> h >> scale) || w <= 0 || h <= 0 || scale == 0.0) {
    throw IoError(IoErrc::MalformedHeader, "malformed PFM header in '" + path.string() + "'");
  }
  // The raster starts after the single whitespace byte that ends the scale line.
  const auto consumed = static_cast<std::size_t>(hdr.tellg());
  const std::size_t start = 2 + consumed + 1;
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (start > data.size() || data.size() - start < n * 4) {
    throw IoError(IoErrc::TruncatedData, "truncated PFM raster in '" + path.string() + "'");
  }
  const bool little = scale < 0.0;
  const bool swap = little != (std::endian::native == std::endian::little);
  std::vector<double> samples(n);
  const char* in = data.data() + start;
  for (std::size_t r = static_cast<std::size_t>(h); r-- > 0;) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(w); ++c) {
      std::uint32_t bits;
      std::memcpy(&bits, in, 4);
      in += 4;
      if (swap) {
        bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) | (bits >> 24);
      }
      samples[r * static_cast<std::size_t>(w) + c] = std::bit_cast<float>(bits);
    }
  }
  try {
    return ScalarMap(static_cast<std::size_t>(w), static_cast<std::size_t>(h), std::move(samples));
  } catch (const std::invalid_argument&) {
    throw IoError(IoErrc::InvalidData, "non-finite sample in '" + path.string() + "'");
  }
}

ScalarMap load_csv_map(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  std::vector<double> samples;
  std::size_t width = 0, height = 0;
  std::istringstream lines(data);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t count = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      double v = 0.0;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) {
        throw IoError(IoErrc::InvalidData, "bad number in '" + path.string() + "' line " +
                                               std::to_string(height + 1));
      }
      samples.push_back(v);
      ++count;
      p = res.ptr;
      if (p == end) break;
      if (*p != ',') {
        throw IoError(IoErrc::InvalidData, "bad separator in '" + path.string() + "'");
      }
      ++p;
    }
    if (height == 0) width = count;
    if (count != width) {
      throw IoError(IoErrc::InvalidData, "ragged rows in '" + path.string() + "'");
    }
    ++height;
  }
  if (height == 0) throw IoError(IoErrc::InvalidData, "empty map file '" + path.string() + "'");
  try {
    return ScalarMap(width, height, std::move(samples));
  } catch (const std::invalid_argument&) {
    throw IoError(IoErrc::InvalidData, "non-finite sample in '" + path.string() + "'");
  }
}

MapFormat map_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".pfm") return MapFormat::Pfm;
  if (ext == ".csv") return MapFormat::Csv;
  throw std::invalid_argument("cannot infer map format from '" + path.string() +
                              "' (expected .pfm or .csv)");
}

}  // namespace scaleinv
