/*
 * Copyright 2026 The hdrelight Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hdrelight/hdr_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace hdrelight {

LdrImage::LdrImage(int w, int h, int c, std::uint8_t fill) : width(w), height(h), channels(c) {
  if (w < 1 || h < 1) throw Error(ErrorCode::kInvalidInput, "LDR dimensions must be positive");
  if (c != 1 && c != 3 && c != 4) throw Error(ErrorCode::kInvalidInput, "LDR channels must be 1, 3 or 4");
  codes.assign(static_cast<std::size_t>(w) * h * c, fill);
}

}  // namespace hdrelight

namespace hdrelight::io {
namespace {

constexpr int kMaxDimension = 1 << 16;

// Byte cursor that reports failures with the offset they occurred at.
class Reader {
 public:
  explicit Reader(ByteView bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  std::uint8_t peek(std::size_t ahead = 0) const { return bytes_[pos_ + ahead]; }

  std::uint8_t byte() {
    need(1);
    return bytes_[pos_++];
  }

  ByteView take(std::size_t n) {
    need(n);
    ByteView out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  void need(std::size_t n) const {
    if (remaining() < n) {
      throw ParseError(ErrorCode::kTruncated, bytes_.size(), "unexpected end of data");
    }
  }

  // Reads through the next '\n'; the newline is consumed but not returned.
  std::optional<std::string> line() {
    const auto begin = bytes_.begin() + static_cast<std::ptrdiff_t>(pos_);
    const auto nl = std::find(begin, bytes_.end(), std::uint8_t{'\n'});
    if (nl == bytes_.end()) return std::nullopt;
    std::string s(begin, nl);
    pos_ = static_cast<std::size_t>(nl - bytes_.begin()) + 1;
    return s;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      const std::uint8_t c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  // Unsigned decimal token as used by netpbm headers.
  int header_int() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long long v = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      v = v * 10 + (peek() - '0');
      if (v > (1LL << 31)) throw ParseError(ErrorCode::kMalformedHeader, start, "header value too large");
      ++pos_;
    }
    if (pos_ == start) {
      if (at_end()) throw ParseError(ErrorCode::kTruncated, bytes_.size(), "header ended early");
      throw ParseError(ErrorCode::kMalformedHeader, start, "expected integer in header");
    }
    return static_cast<int>(v);
  }

 private:
  ByteView bytes_;
  std::size_t pos_ = 0;
};

void check_dims(int w, int h, std::size_t offset) {
  if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension) {
    throw ParseError(ErrorCode::kMalformedHeader, offset, "image dimensions out of range");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

bool parse_positive(const std::string& s, int& out) {
  if (s.empty() || s.size() > 9) return false;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return v > 0;
}

// --- netpbm ------------------------------------------------------------------

struct PnmHeader {
  char kind = 0;  // '5', '6' or '7'
  int width = 0;
  int height = 0;
  int depth = 0;
  int maxval = 0;
};

PnmHeader read_pnm_header(Reader& r) {
  if (r.remaining() < 2 || r.peek() != 'P') {
    throw ParseError(ErrorCode::kBadSignature, 0, "not a netpbm raster");
  }
  r.byte();
  const char kind = static_cast<char>(r.byte());
  PnmHeader h;
  h.kind = kind;
  if (kind == '5' || kind == '6') {
    const std::size_t at = r.pos();
    h.width = r.header_int();
    h.height = r.header_int();
    h.maxval = r.header_int();
    h.depth = kind == '5' ? 1 : 3;
    check_dims(h.width, h.height, at);
    // Exactly one whitespace byte separates the header from the payload.
    const std::size_t sep = r.pos();
    const std::uint8_t c = r.byte();
    if (c != ' ' && c != '\n' && c != '\t' && c != '\r') {
      throw ParseError(ErrorCode::kMalformedHeader, sep, "missing separator after header");
    }
  } else if (kind == '7') {
    std::optional<std::string> first = r.line();
    if (!first) throw ParseError(ErrorCode::kTruncated, r.pos(), "header ended early");
    bool done = false;
    std::string tupltype;
    while (!done) {
      const std::size_t at = r.pos();
      std::optional<std::string> l = r.line();
      if (!l) throw ParseError(ErrorCode::kTruncated, r.pos(), "PAM header missing ENDHDR");
      const auto tok = split_ws(*l);
      if (tok.empty() || tok[0][0] == '#') continue;
      int v = 0;
      if (tok[0] == "ENDHDR") {
        done = true;
      } else if (tok[0] == "TUPLTYPE") {
        tupltype = tok.size() > 1 ? tok[1] : "";
      } else if (tok.size() == 2 && parse_positive(tok[1], v)) {
        if (tok[0] == "WIDTH") h.width = v;
        else if (tok[0] == "HEIGHT") h.height = v;
        else if (tok[0] == "DEPTH") h.depth = v;
        else if (tok[0] == "MAXVAL") h.maxval = v;
        else throw ParseError(ErrorCode::kMalformedHeader, at, "unknown PAM header field");
      } else {
        throw ParseError(ErrorCode::kMalformedHeader, at, "malformed PAM header line");
      }
    }
    check_dims(h.width, h.height, 0);
  } else {
    throw ParseError(ErrorCode::kBadSignature, 0, "unsupported netpbm variant");
  }
  if (h.maxval < 1 || h.maxval > 65535) {
    throw ParseError(ErrorCode::kMalformedHeader, 0, "maxval out of range");
  }
  return h;
}

void put_string(Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

// --- PFM ---------------------------------------------------------------------

struct FloatRaster {
  int width = 0;
  int height = 0;
  std::vector<float> rgb;  // top row first
};

FloatRaster read_pfm_raw(ByteView bytes) {
  Reader r(bytes);
  if (r.remaining() < 2 || r.peek() != 'P' || (r.peek(1) != 'F' && r.peek(1) != 'f')) {
    throw ParseError(ErrorCode::kBadSignature, 0, "not a portable float map");
  }
  if (r.peek(1) == 'f') {
    throw ParseError(ErrorCode::kUnsupportedFormat, 1, "grayscale float maps are not supported");
  }
  r.byte();
  r.byte();
  const std::size_t dims_at = r.pos();
  const int w = r.header_int();
  const int h = r.header_int();
  check_dims(w, h, dims_at);

  r.skip_space_and_comments();
  const std::size_t scale_at = r.pos();
  std::string token;
  while (!r.at_end() && !std::isspace(r.peek())) token.push_back(static_cast<char>(r.byte()));
  if (token.empty()) throw ParseError(ErrorCode::kTruncated, bytes.size(), "float map scale missing");
  double scale = 0.0;
  try {
    std::size_t used = 0;
    scale = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError(ErrorCode::kMalformedHeader, scale_at, "float map scale is not a number");
  }
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw ParseError(ErrorCode::kMalformedHeader, scale_at, "float map scale must be non-zero");
  }
  r.byte();  // single whitespace before data
  const bool little = scale < 0.0;

  FloatRaster out{w, h, std::vector<float>(static_cast<std::size_t>(w) * h * 3)};
  ByteView payload = r.take(out.rgb.size() * 4);
  for (int row = 0; row < h; ++row) {
    const int dst_row = h - 1 - row;  // stored bottom-up
    for (int i = 0; i < w * 3; ++i) {
      const std::size_t src = (static_cast<std::size_t>(row) * w * 3 + i) * 4;
      std::uint32_t bits = 0;
      for (int k = 0; k < 4; ++k) {
        const std::uint32_t b = payload[src + static_cast<std::size_t>(little ? k : 3 - k)];
        bits |= b << (8 * k);
      }
      out.rgb[static_cast<std::size_t>(dst_row) * w * 3 + i] = std::bit_cast<float>(bits);
    }
  }
  return out;
}

Bytes write_pfm_raw(int w, int h, const std::vector<float>& rgb) {
  Bytes out;
  put_string(out, "PF\n" + std::to_string(w) + " " + std::to_string(h) + "\n-1.0\n");
  out.reserve(out.size() + rgb.size() * 4);
  for (int row = h - 1; row >= 0; --row) {
    for (int i = 0; i < w * 3; ++i) {
      const auto bits = std::bit_cast<std::uint32_t>(rgb[static_cast<std::size_t>(row) * w * 3 + i]);
      for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
    }
  }
  return out;
}

// --- Radiance RLE ------------------------------------------------------------

constexpr int kMinRun = 4;
constexpr int kMaxRun = 127;
constexpr int kMaxLiteral = 128;

void rle_encode_channel(const std::uint8_t* data, int w, Bytes& out) {
  int x = 0;
  while (x < w) {
    // Locate the next run worth encoding.
    int run_start = x;
    int run_len = 0;
    while (run_start < w) {
      run_len = 1;
      while (run_start + run_len < w && run_len < kMaxRun && data[run_start + run_len] == data[run_start]) {
        ++run_len;
      }
      if (run_len >= kMinRun) break;
      run_start += run_len;
      run_len = 0;
    }
    while (x < run_start) {
      const int n = std::min(kMaxLiteral, run_start - x);
      out.push_back(static_cast<std::uint8_t>(n));
      out.insert(out.end(), data + x, data + x + n);
      x += n;
    }
    if (run_len >= kMinRun) {
      out.push_back(static_cast<std::uint8_t>(128 + run_len));
      out.push_back(data[run_start]);
      x += run_len;
    }
  }
}

void rle_decode_scanline(Reader& r, int w, std::vector<std::uint8_t>& rgbe) {
  for (int ch = 0; ch < 4; ++ch) {
    int x = 0;
    while (x < w) {
      const std::size_t at = r.pos();
      int count = r.byte();
      if (count > 128) {
        count -= 128;
        if (x + count > w) throw ParseError(ErrorCode::kMalformedHeader, at, "RLE run overflows scanline");
        const std::uint8_t v = r.byte();
        for (int i = 0; i < count; ++i) rgbe[static_cast<std::size_t>(x + i) * 4 + ch] = v;
      } else {
        if (count == 0 || x + count > w) {
          throw ParseError(ErrorCode::kMalformedHeader, at, "RLE literal overflows scanline");
        }
        ByteView lit = r.take(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) rgbe[static_cast<std::size_t>(x + i) * 4 + ch] = lit[static_cast<std::size_t>(i)];
      }
      x += count;
    }
  }
}

}  // namespace

// --- RGBE --------------------------------------------------------------------

std::array<std::uint8_t, 4> rgbe_encode(const Rgb& p) {
  const double v = std::max({static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)});
  if (!(v >= 1e-32)) return {0, 0, 0, 0};
  int e = 0;
  const double m = std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
  if (std::nearbyint(m * 256.0) >= 256.0) ++e;
  if (e + 128 > 255) return {255, 255, 255, 255};
  if (e + 128 < 1) return {0, 0, 0, 0};
  const double scale = std::ldexp(256.0, -e);
  auto code = [&](float c) {
    return static_cast<std::uint8_t>(std::clamp(std::nearbyint(static_cast<double>(c) * scale), 0.0, 255.0));
  };
  return {code(p.r), code(p.g), code(p.b), static_cast<std::uint8_t>(e + 128)};
}

Rgb rgbe_decode(const std::array<std::uint8_t, 4>& rgbe) {
  if (rgbe[3] == 0) return {};
  const double f = std::ldexp(1.0, static_cast<int>(rgbe[3]) - 128 - 8);
  return {static_cast<float>(rgbe[0] * f), static_cast<float>(rgbe[1] * f), static_cast<float>(rgbe[2] * f)};
}

HdrImage read_radiance_hdr(ByteView bytes) {
  Reader r(bytes);
  std::optional<std::string> sig = r.line();
  if (!sig || !(sig->starts_with("#?RADIANCE") || sig->starts_with("#?RGBE"))) {
    throw ParseError(ErrorCode::kBadSignature, 0, "missing #?RADIANCE signature");
  }
  for (;;) {
    const std::size_t at = r.pos();
    std::optional<std::string> l = r.line();
    if (!l) throw ParseError(ErrorCode::kTruncated, bytes.size(), "header not terminated by blank line");
    if (!l->empty() && l->back() == '\r') l->pop_back();
    if (l->empty()) break;
    if (l->starts_with("FORMAT=") && *l != "FORMAT=32-bit_rle_rgbe") {
      throw ParseError(ErrorCode::kUnsupportedFormat, at, "unsupported pixel format " + l->substr(7));
    }
  }

  const std::size_t res_at = r.pos();
  std::optional<std::string> res = r.line();
  if (!res) throw ParseError(ErrorCode::kTruncated, bytes.size(), "resolution line missing");
  const auto tok = split_ws(*res);
  int h = 0;
  int w = 0;
  auto is_axis = [](const std::string& s) {
    return s.size() == 2 && (s[0] == '+' || s[0] == '-') && (s[1] == 'X' || s[1] == 'Y');
  };
  if (tok.size() != 4 || !is_axis(tok[0]) || !is_axis(tok[2]) || !parse_positive(tok[1], h) ||
      !parse_positive(tok[3], w)) {
    throw ParseError(ErrorCode::kMalformedHeader, res_at, "malformed resolution line");
  }
  if (tok[0] != "-Y" || tok[2] != "+X") {
    throw ParseError(ErrorCode::kUnsupportedOrientation, res_at, "only -Y h +X w is supported");
  }
  check_dims(w, h, res_at);

  HdrImage img(w, h);
  std::vector<std::uint8_t> rgbe(static_cast<std::size_t>(w) * 4);
  for (int y = 0; y < h; ++y) {
    const bool rle = w >= 8 && w <= 32767 && r.remaining() >= 4 && r.peek() == 2 && r.peek(1) == 2 &&
                     (r.peek(2) & 0x80) == 0;
    if (rle) {
      const std::size_t at = r.pos();
      r.take(2);
      const int line_w = (r.byte() << 8) | r.byte();
      if (line_w != w) throw ParseError(ErrorCode::kMalformedHeader, at, "RLE scanline width mismatch");
      rle_decode_scanline(r, w, rgbe);
    } else {
      ByteView flat = r.take(rgbe.size());
      std::copy(flat.begin(), flat.end(), rgbe.begin());
    }
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(x) * 4;
      img.at(x, y) = rgbe_decode({rgbe[i], rgbe[i + 1], rgbe[i + 2], rgbe[i + 3]});
    }
  }
  return img;
}

Bytes write_radiance_hdr(const HdrImage& img) {
  validate_hdr(img);
  const int w = img.width();
  const int h = img.height();
  Bytes out;
  put_string(out, "#?RADIANCE\n# written by hdrelight\nFORMAT=32-bit_rle_rgbe\n\n");
  put_string(out, "-Y " + std::to_string(h) + " +X " + std::to_string(w) + "\n");

  const bool rle = w >= 8 && w <= 32767;
  std::vector<std::uint8_t> planes(static_cast<std::size_t>(w) * 4);
  for (int y = 0; y < h; ++y) {
    if (!rle) {
      for (int x = 0; x < w; ++x) {
        const auto e = rgbe_encode(img.at(x, y));
        out.insert(out.end(), e.begin(), e.end());
      }
      continue;
    }
    for (int x = 0; x < w; ++x) {
      const auto e = rgbe_encode(img.at(x, y));
      for (int ch = 0; ch < 4; ++ch) planes[static_cast<std::size_t>(ch) * w + x] = e[static_cast<std::size_t>(ch)];
    }
    out.push_back(2);
    out.push_back(2);
    out.push_back(static_cast<std::uint8_t>(w >> 8));
    out.push_back(static_cast<std::uint8_t>(w & 0xff));
    for (int ch = 0; ch < 4; ++ch) rle_encode_channel(planes.data() + static_cast<std::size_t>(ch) * w, w, out);
  }
  return out;
}

// --- LDR ---------------------------------------------------------------------

LdrImage read_ldr(ByteView bytes) {
  Reader r(bytes);
  const PnmHeader h = read_pnm_header(r);
  if (h.maxval != 255) {
    throw ParseError(ErrorCode::kUnsupportedFormat, 0, "8-bit rasters require maxval 255");
  }
  if (h.depth != 1 && h.depth != 3 && h.depth != 4) {
    throw ParseError(ErrorCode::kUnsupportedFormat, 0, "raster depth must be 1, 3 or 4");
  }
  LdrImage img(h.width, h.height, h.depth);
  ByteView payload = r.take(img.codes.size());
  std::copy(payload.begin(), payload.end(), img.codes.begin());
  return img;
}

Bytes write_ldr(const LdrImage& img) {
  const std::size_t expected = static_cast<std::size_t>(img.width) * img.height * img.channels;
  if (img.width < 1 || img.height < 1 || img.codes.size() != expected) {
    throw Error(ErrorCode::kInvalidInput, "LDR image buffer does not match its dimensions");
  }
  Bytes out;
  const std::string dims = std::to_string(img.width) + " " + std::to_string(img.height);
  switch (img.channels) {
    case 1:
      put_string(out, "P5\n" + dims + "\n255\n");
      break;
    case 3:
      put_string(out, "P6\n" + dims + "\n255\n");
      break;
    case 4:
      put_string(out, "P7\nWIDTH " + std::to_string(img.width) + "\nHEIGHT " + std::to_string(img.height) +
                          "\nDEPTH 4\nMAXVAL 255\nTUPLTYPE RGB_ALPHA\nENDHDR\n");
      break;
    default:
      throw Error(ErrorCode::kInvalidInput, "LDR channels must be 1, 3 or 4");
  }
  out.insert(out.end(), img.codes.begin(), img.codes.end());
  return out;
}

LdrImage to_ldr(const pq::QuantizedHdrImage& q) {
  LdrImage img(q.width(), q.height(), 3);
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::copy(q[i].begin(), q[i].end(), img.codes.begin() + static_cast<std::ptrdiff_t>(i * 3));
  }
  return img;
}

pq::QuantizedHdrImage to_quantized(const LdrImage& img) {
  if (img.channels != 3) throw Error(ErrorCode::kInvalidInput, "quantized HDR images are 3-channel");
  pq::QuantizedHdrImage q(img.width, img.height);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = {img.codes[i * 3], img.codes[i * 3 + 1], img.codes[i * 3 + 2]};
  }
  return q;
}

AlphaMask mask_from_ldr(const LdrImage& img) {
  if (img.channels != 1 && img.channels != 4) {
    throw Error(ErrorCode::kInvalidInput, "masks are gray or RGBA rasters");
  }
  AlphaMask m(img.width, img.height);
  const int c = img.channels - 1;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) m.at(x, y) = static_cast<float>(img.at(x, y, c)) / 255.0f;
  }
  return m;
}

LdrImage mask_to_ldr(const AlphaMask& mask) {
  LdrImage img(mask.width(), mask.height(), 1);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    img.codes[i] = static_cast<std::uint8_t>(std::nearbyint(std::clamp(mask[i], 0.0f, 1.0f) * 255.0f));
  }
  return img;
}

// --- Normals -----------------------------------------------------------------

namespace {

constexpr double kUnitTolerance = 1e-2;

void store_normal(NormalMap& out, int x, int y, double nx, double ny, double nz) {
  const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!std::isfinite(n) || std::abs(n - 1.0) >= kUnitTolerance) {
    out.invalidate(x, y);
    return;
  }
  out.set(x, y, {static_cast<float>(nx / n), static_cast<float>(ny / n), static_cast<float>(nz / n)});
}

}  // namespace

NormalMap read_normal_map(ByteView bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == 'F' || bytes[1] == 'f')) {
    const FloatRaster raw = read_pfm_raw(bytes);
    NormalMap out(raw.width, raw.height);
    for (int y = 0; y < raw.height; ++y) {
      for (int x = 0; x < raw.width; ++x) {
        const float* v = raw.rgb.data() + (static_cast<std::size_t>(y) * raw.width + x) * 3;
        store_normal(out, x, y, v[0], v[1], v[2]);
      }
    }
    return out;
  }

  Reader r(bytes);
  const PnmHeader h = read_pnm_header(r);
  if (h.kind != '6' || h.maxval != 65535) {
    throw ParseError(ErrorCode::kUnsupportedFormat, 0, "normal maps must be PFM or 16-bit P6");
  }
  NormalMap out(h.width, h.height);
  ByteView payload = r.take(static_cast<std::size_t>(h.width) * h.height * 6);
  auto component = [&](std::size_t i) {
    const unsigned v = (static_cast<unsigned>(payload[i * 2]) << 8) | payload[i * 2 + 1];
    return static_cast<double>(v) / 65535.0 * 2.0 - 1.0;
  };
  for (int y = 0; y < h.height; ++y) {
    for (int x = 0; x < h.width; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * h.width + x) * 3;
      store_normal(out, x, y, component(i), component(i + 1), component(i + 2));
    }
  }
  return out;
}

Bytes write_normal_map_pfm(const NormalMap& normals) {
  std::vector<float> rgb;
  rgb.reserve(normals.normals.size() * 3);
  for (std::size_t i = 0; i < normals.normals.size(); ++i) {
    const Vec3f n = normals.valid[i] ? normals.normals[i] : Vec3f{};
    rgb.insert(rgb.end(), {n.x, n.y, n.z});
  }
  return write_pfm_raw(normals.width(), normals.height(), rgb);
}

Bytes write_normal_map_u16(const NormalMap& normals) {
  Bytes out;
  put_string(out, "P6\n" + std::to_string(normals.width()) + " " + std::to_string(normals.height()) + "\n65535\n");
  out.reserve(out.size() + normals.normals.size() * 6);
  for (std::size_t i = 0; i < normals.normals.size(); ++i) {
    const Vec3f n = normals.valid[i] ? normals.normals[i] : Vec3f{};
    for (float c : {n.x, n.y, n.z}) {
      const double code = std::nearbyint((std::clamp(static_cast<double>(c), -1.0, 1.0) + 1.0) * 0.5 * 65535.0);
      const auto v = static_cast<std::uint16_t>(code);
      out.push_back(static_cast<std::uint8_t>(v >> 8));
      out.push_back(static_cast<std::uint8_t>(v & 0xff));
    }
  }
  return out;
}

Bytes write_pfm(const HdrImage& img) {
  std::vector<float> rgb;
  rgb.reserve(img.size() * 3);
  for (const Rgb& p : img.data()) rgb.insert(rgb.end(), {p.r, p.g, p.b});
  return write_pfm_raw(img.width(), img.height(), rgb);
}

HdrImage read_pfm(ByteView bytes) {
  const FloatRaster raw = read_pfm_raw(bytes);
  HdrImage img(raw.width, raw.height);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const float* v = raw.rgb.data() + i * 3;
    for (int k = 0; k < 3; ++k) {
      if (!std::isfinite(v[k]) || v[k] < 0.0f) {
        throw Error(ErrorCode::kInvalidInput, "float map holds negative or non-finite radiance");
      }
    }
    img[i] = {v[0], v[1], v[2]};
  }
  return img;
}

// --- Files -------------------------------------------------------------------

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path.string());
  return data;
}

void write_file(const std::filesystem::path& path, ByteView bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace hdrelight::io
