#include "seamcut/imagery.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace seamcut {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::CorruptData: return "CorruptData";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidImage: return "InvalidImage";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::NoInstanceAtPoint: return "NoInstanceAtPoint";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MalformedModel: return "MalformedModel";
    case ErrorKind::TooManyAmbiguous: return "TooManyAmbiguous";
    case ErrorKind::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidImage,
                "image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// RgbImage / InstanceMask

RgbImage::RgbImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  for (double v : fill) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::InvalidImage, "fill value outside [0,1]");
  }
  data_.resize(pixel_count() * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill[0];
    data_[i + 1] = fill[1];
    data_[i + 2] = fill[2];
  }
}

RgbImage::RgbImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != pixel_count() * 3) {
    throw Error(ErrorKind::InvalidImage, "channel buffer has " + std::to_string(data_.size()) +
                                             " values, expected " + std::to_string(pixel_count() * 3));
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::InvalidImage, "channel value outside [0,1]");
  }
}

void RgbImage::set(int x, int y, const Rgb& v) noexcept {
  const std::size_t i = offset(x, y);
  for (int c = 0; c < 3; ++c) {
    // NaN maps to 0.
    data_[i + c] = v[c] > 0.0 ? std::min(v[c], 1.0) : 0.0;
  }
}

InstanceMask::InstanceMask(int width, int height, std::uint32_t fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  ids_.assign(static_cast<std::size_t>(width) * height, fill);
}

InstanceMask::InstanceMask(int width, int height, std::vector<std::uint32_t> ids)
    : width_(width), height_(height), ids_(std::move(ids)) {
  check_dimensions(width, height);
  if (ids_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorKind::InvalidImage, "id buffer size does not match mask dimensions");
  }
}

std::uint8_t quantize_channel(double v) noexcept {
  const double scaled = std::floor(v * 255.0 + 0.5);
  if (!(scaled > 0.0)) return 0;
  if (scaled >= 255.0) return 255;
  return static_cast<std::uint8_t>(scaled);
}

ImageFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") ? ImageFormat::Ppm : ImageFormat::Png;
}

// ---------------------------------------------------------------------------
// Raw file access

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

// ---------------------------------------------------------------------------
// PNG via libpng

enum class PngLayout { Rgb8, Gray8or16 };

struct PngPixels {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> bytes;  // tightly packed rows, big-endian samples for 16-bit
};

struct PngContext {
  std::span<const std::uint8_t> input;
  std::size_t cursor = 0;
  std::vector<std::uint8_t>* output = nullptr;
  char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp msg) {
  auto* ctx = static_cast<PngContext*>(png_get_error_ptr(png));
  std::snprintf(ctx->message, sizeof(ctx->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

void png_read_from_memory(png_structp png, png_bytep out, png_size_t length) {
  auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
  if (ctx->cursor + length > ctx->input.size()) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, ctx->input.data() + ctx->cursor, length);
  ctx->cursor += length;
}

void png_write_to_memory(png_structp png, png_bytep data, png_size_t length) {
  auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
  ctx->output->insert(ctx->output->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

enum class DecodeStatus { Ok, Unsupported, Corrupt };

// Objects touched after setjmp live in the caller's frame.
DecodeStatus decode_png(PngContext& ctx, PngLayout layout, PngPixels& out,
                        std::vector<png_bytep>& rows, std::string& detail) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx, png_error_handler,
                                           png_warning_handler);
  if (png == nullptr) return DecodeStatus::Corrupt;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return DecodeStatus::Corrupt;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    detail = ctx.message;
    return DecodeStatus::Corrupt;
  }
  png_set_read_fn(png, &ctx, png_read_from_memory);
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  bool accepted = false;
  if (layout == PngLayout::Rgb8) {
    accepted = color_type == PNG_COLOR_TYPE_RGB && bit_depth == 8;
    detail = "expected 8-bit RGB PNG";
  } else {
    accepted = color_type == PNG_COLOR_TYPE_GRAY && (bit_depth == 8 || bit_depth == 16);
    detail = "expected 8- or 16-bit grayscale PNG";
  }
  if (!accepted) {
    png_destroy_read_struct(&png, &info, nullptr);
    detail += " (color type " + std::to_string(color_type) + ", bit depth " +
              std::to_string(bit_depth) + ")";
    return DecodeStatus::Unsupported;
  }

  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  out.width = png_get_image_width(png, info);
  out.height = png_get_image_height(png, info);
  out.bit_depth = bit_depth;
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  out.bytes.resize(rowbytes * out.height);
  rows.resize(out.height);
  for (std::uint32_t y = 0; y < out.height; ++y) rows[y] = out.bytes.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return DecodeStatus::Ok;
}

PngPixels read_png(std::span<const std::uint8_t> bytes, PngLayout layout) {
  PngContext ctx;
  ctx.input = bytes;
  PngPixels out;
  std::vector<png_bytep> rows;
  std::string detail;
  switch (decode_png(ctx, layout, out, rows, detail)) {
    case DecodeStatus::Ok: break;
    case DecodeStatus::Unsupported: throw Error(ErrorKind::UnsupportedFormat, detail);
    case DecodeStatus::Corrupt: throw Error(ErrorKind::CorruptData, "PNG decode failed: " + detail);
  }
  if (out.width > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
      out.height > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorKind::UnsupportedFormat, "PNG dimensions too large");
  }
  return out;
}

DecodeStatus encode_png(PngContext& ctx, std::span<const std::uint8_t> pixels, int width,
                        int height, int color_type, int bit_depth,
                        std::vector<png_const_bytep>& rows) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx, png_error_handler,
                                            png_warning_handler);
  if (png == nullptr) return DecodeStatus::Corrupt;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return DecodeStatus::Corrupt;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return DecodeStatus::Corrupt;
  }
  png_set_write_fn(png, &ctx, png_write_to_memory, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  const std::size_t rowbytes = static_cast<std::size_t>(width) * channels * (bit_depth / 8);
  rows.resize(height);
  for (int y = 0; y < height; ++y) rows[y] = pixels.data() + y * rowbytes;
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return DecodeStatus::Ok;
}

std::vector<std::uint8_t> write_png(std::span<const std::uint8_t> pixels, int width, int height,
                                    int color_type, int bit_depth) {
  std::vector<std::uint8_t> encoded;
  PngContext ctx;
  ctx.output = &encoded;
  std::vector<png_const_bytep> rows;
  if (encode_png(ctx, pixels, width, height, color_type, bit_depth, rows) != DecodeStatus::Ok) {
    throw Error(ErrorKind::IoError, std::string("PNG encode failed: ") + ctx.message);
  }
  return encoded;
}

// ---------------------------------------------------------------------------
// Binary PNM (P5 / P6)

struct PnmHeader {
  char kind = 0;  // '5' or '6'
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::size_t data_offset = 0;
};

PnmHeader parse_pnm_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorKind::UnsupportedFormat, "not a PNG or binary PNM file");
  }
  PnmHeader h;
  h.kind = static_cast<char>(bytes[1]);
  if (h.kind < '1' || h.kind > '7') throw Error(ErrorKind::UnsupportedFormat, "unknown PNM magic");

  std::size_t pos = 2;
  auto next_int = [&](const char* field) -> long {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw Error(ErrorKind::CorruptData, std::string("PNM header: missing ") + field);
    }
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > (1L << 30)) throw Error(ErrorKind::CorruptData, std::string("PNM header: ") + field + " too large");
      ++pos;
    }
    return value;
  };

  // Parse the header even for unsupported variants so truncation is reported consistently.
  h.width = static_cast<int>(next_int("width"));
  h.height = static_cast<int>(next_int("height"));
  if (h.kind == '5' || h.kind == '6') h.maxval = static_cast<int>(next_int("maxval"));
  if (h.width < 1 || h.height < 1) throw Error(ErrorKind::CorruptData, "PNM header: zero dimension");
  if (h.kind == '5' || h.kind == '6') {
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
      throw Error(ErrorKind::CorruptData, "PNM header: missing separator before raster");
    }
    ++pos;
  }
  h.data_offset = pos;
  return h;
}

std::vector<std::uint8_t> pnm_bytes(char kind, int width, int height, int maxval,
                                    std::span<const std::uint8_t> raster) {
  const std::string header = std::string("P") + kind + "\n" + std::to_string(width) + " " +
                             std::to_string(height) + "\n" + std::to_string(maxval) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), raster.begin(), raster.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public I/O

RgbImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  std::vector<std::uint8_t> raster;
  int width = 0;
  int height = 0;
  if (is_png(bytes)) {
    PngPixels px = read_png(bytes, PngLayout::Rgb8);
    width = static_cast<int>(px.width);
    height = static_cast<int>(px.height);
    raster = std::move(px.bytes);
  } else {
    const PnmHeader h = parse_pnm_header(bytes);
    if (h.kind != '6') throw Error(ErrorKind::UnsupportedFormat, "expected binary PPM (P6)");
    if (h.maxval != 255) throw Error(ErrorKind::UnsupportedFormat, "PPM maxval must be 255");
    const std::size_t need = static_cast<std::size_t>(h.width) * h.height * 3;
    if (bytes.size() - h.data_offset < need) throw Error(ErrorKind::CorruptData, "PPM raster truncated");
    width = h.width;
    height = h.height;
    raster.assign(bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset),
                  bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset + need));
  }
  std::vector<double> data(raster.size());
  std::transform(raster.begin(), raster.end(), data.begin(),
                 [](std::uint8_t c) { return static_cast<double>(c) / 255.0; });
  return RgbImage(width, height, std::move(data));
}

void save_image(const RgbImage& img, const std::filesystem::path& path, ImageFormat format) {
  std::vector<std::uint8_t> raster(img.data().size());
  std::transform(img.data().begin(), img.data().end(), raster.begin(), quantize_channel);
  if (format == ImageFormat::Png) {
    write_file(path, write_png(raster, img.width(), img.height(), PNG_COLOR_TYPE_RGB, 8));
  } else {
    write_file(path, pnm_bytes('6', img.width(), img.height(), 255, raster));
  }
}

InstanceMask load_mask(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (is_png(bytes)) {
    const PngPixels px = read_png(bytes, PngLayout::Gray8or16);
    const int width = static_cast<int>(px.width);
    const int height = static_cast<int>(px.height);
    std::vector<std::uint32_t> ids(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ids[i] = px.bit_depth == 16 ? (std::uint32_t{px.bytes[2 * i]} << 8) | px.bytes[2 * i + 1]
                                  : px.bytes[i];
    }
    return InstanceMask(width, height, std::move(ids));
  }
  const PnmHeader h = parse_pnm_header(bytes);
  if (h.kind != '5') throw Error(ErrorKind::UnsupportedFormat, "expected binary PGM (P5)");
  if (h.maxval < 1 || h.maxval > 65535) throw Error(ErrorKind::UnsupportedFormat, "PGM maxval out of range");
  const std::size_t sample = h.maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(h.width) * h.height;
  if (bytes.size() - h.data_offset < count * sample) throw Error(ErrorKind::CorruptData, "PGM raster truncated");
  std::vector<std::uint32_t> ids(count);
  const std::uint8_t* raster = bytes.data() + h.data_offset;
  for (std::size_t i = 0; i < count; ++i) {
    ids[i] = sample == 2 ? (std::uint32_t{raster[2 * i]} << 8) | raster[2 * i + 1] : raster[i];
  }
  return InstanceMask(h.width, h.height, std::move(ids));
}

void save_mask(const InstanceMask& mask, const std::filesystem::path& path, ImageFormat format) {
  const auto ids = mask.ids();
  const std::uint32_t max_id = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end());
  if (max_id > 65535) throw Error(ErrorKind::IoError, "instance id exceeds 16-bit range");
  const bool wide = max_id > 255;
  std::vector<std::uint8_t> raster;
  raster.reserve(ids.size() * (wide ? 2 : 1));
  for (std::uint32_t id : ids) {
    if (wide) raster.push_back(static_cast<std::uint8_t>(id >> 8));
    raster.push_back(static_cast<std::uint8_t>(id & 0xFF));
  }
  if (format == ImageFormat::Png) {
    write_file(path, write_png(raster, mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, wide ? 16 : 8));
  } else {
    write_file(path, pnm_bytes('5', mask.width(), mask.height(), wide ? 65535 : 255, raster));
  }
}

void save_gray8(std::span<const std::uint8_t> pixels, int width, int height,
                const std::filesystem::path& path, ImageFormat format) {
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorKind::DimensionMismatch, "gray buffer size does not match dimensions");
  }
  if (format == ImageFormat::Png) {
    write_file(path, write_png(pixels, width, height, PNG_COLOR_TYPE_GRAY, 8));
  } else {
    write_file(path, pnm_bytes('5', width, height, 255, pixels));
  }
}

}  // namespace seamcut
