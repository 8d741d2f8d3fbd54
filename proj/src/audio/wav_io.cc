/*
Copyright 2026 The Clarity Bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "clarity/audio/wav_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "clarity/common/error.h"

namespace clarity {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t ReadU16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

SampleBuffer DecodeWav(const std::vector<uint8_t>& bytes,
                       std::optional<double> required_rate) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file");
  }
  uint16_t format = 0;
  uint16_t num_channels = 0;
  uint32_t rate = 0;
  uint16_t bits = 0;
  const uint8_t* data = nullptr;
  size_t data_size = 0;
  bool have_fmt = false;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    const uint32_t size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size()) {
      // Tolerate a truncated data chunk, reject anything else.
      if (std::memcmp(chunk, "data", 4) != 0) {
        throw FormatError("chunk extends past end of file");
      }
    }
    const size_t available = std::min<size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) throw FormatError("fmt chunk too short");
      format = ReadU16(chunk + 8);
      num_channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      if (format == kFormatExtensible) {
        if (available < 40) throw FormatError("extensible fmt chunk too short");
        format = ReadU16(chunk + 8 + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = available;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw FormatError("missing fmt chunk");
  if (data == nullptr) throw FormatError("missing data chunk");
  if (num_channels == 0) throw FormatError("zero channels");
  if (rate == 0) throw FormatError("zero sample rate");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw FormatError("unsupported codec: format " + std::to_string(format) +
                      ", " + std::to_string(bits) +
                      " bits (need PCM16 or float32)");
  }
  if (required_rate && static_cast<double>(rate) != *required_rate) {
    throw RateMismatchError("file rate " + std::to_string(rate) +
                            " Hz differs from pipeline rate " +
                            std::to_string(*required_rate) + " Hz");
  }

  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * num_channels;
  const size_t num_frames = data_size / frame_bytes;
  SampleBuffer buffer(num_channels, num_frames, static_cast<double>(rate));
  for (size_t f = 0; f < num_frames; ++f) {
    for (size_t c = 0; c < num_channels; ++c) {
      const uint8_t* p = data + f * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        const auto v = static_cast<int16_t>(ReadU16(p));
        buffer[c][f] = static_cast<double>(v) / 32768.0;
      } else {
        buffer[c][f] = static_cast<double>(std::bit_cast<float>(ReadU32(p)));
      }
    }
  }
  return buffer;
}

SampleBuffer ReadWav(const std::filesystem::path& path,
                     std::optional<double> required_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes, required_rate);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const RateMismatchError& e) {
    throw RateMismatchError(path.string() + ": " + e.what());
  }
}

std::vector<uint8_t> EncodeWav(const SampleBuffer& buffer,
                               WavEncoding encoding) {
  const uint16_t num_channels = static_cast<uint16_t>(buffer.num_channels());
  const uint32_t rate = static_cast<uint32_t>(std::lround(buffer.rate()));
  const uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const uint16_t block_align = static_cast<uint16_t>(num_channels * bits / 8);
  const uint32_t data_size =
      static_cast<uint32_t>(buffer.num_frames() * block_align);

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  PutU16(out, num_channels);
  PutU32(out, rate);
  PutU32(out, rate * block_align);
  PutU16(out, block_align);
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, data_size);
  for (size_t f = 0; f < buffer.num_frames(); ++f) {
    for (size_t c = 0; c < buffer.num_channels(); ++c) {
      const double v = buffer[c][f];
      if (encoding == WavEncoding::kPcm16) {
        const double scaled = std::clamp(std::round(v * 32768.0), -32768.0,
                                         32767.0);
        PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
      } else {
        PutU32(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
      }
    }
  }
  return out;
}

void WriteWav(const std::filesystem::path& path, const SampleBuffer& buffer,
              WavEncoding encoding) {
  const std::vector<uint8_t> bytes = EncodeWav(buffer, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace clarity
