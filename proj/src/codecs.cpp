// Copyright 2026 The Narcissus Audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "narcissus/codecs.hpp"

#include <zlib.h>

namespace narcissus {

std::string codec_name(Codec codec) {
  switch (codec) {
    case Codec::kDeflate:
      return "deflate";
    case Codec::kRle:
      return "rle";
  }
  return "unknown";
}

namespace {

Bytes deflate_compress(ByteView data) {
  uLongf bound = compressBound(static_cast<uLong>(data.size()));
  Bytes out(bound, '\0');
  int rc = compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                     reinterpret_cast<const Bytef*>(data.data()),
                     static_cast<uLong>(data.size()), Z_BEST_COMPRESSION);
  if (rc != Z_OK) throw CodecError("deflate: compression failed");
  out.resize(bound);
  return out;
}

Bytes deflate_decompress(ByteView data, size_t max_out) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw CodecError("deflate: inflateInit failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());

  Bytes out;
  uint8_t chunk[16384];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = chunk;
    zs.avail_out = sizeof(chunk);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw CodecError("deflate: malformed stream");
    }
    out.append(reinterpret_cast<char*>(chunk), sizeof(chunk) - zs.avail_out);
    if (out.size() > max_out) {
      inflateEnd(&zs);
      throw CodecError("deflate: output exceeds limit");
    }
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw CodecError("deflate: truncated stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

Bytes rle_compress(ByteView data) {
  Bytes out;
  size_t i = 0;
  while (i < data.size()) {
    size_t run = 1;
    while (i + run < data.size() && data[i + run] == data[i] && run < 255) {
      ++run;
    }
    out.push_back(static_cast<char>(run));
    out.push_back(data[i]);
    i += run;
  }
  return out;
}

Bytes rle_decompress(ByteView data, size_t max_out) {
  if (data.size() % 2 != 0) throw CodecError("rle: odd-length stream");
  Bytes out;
  for (size_t i = 0; i < data.size(); i += 2) {
    auto count = static_cast<uint8_t>(data[i]);
    if (count == 0) throw CodecError("rle: zero run length");
    if (out.size() + count > max_out) {
      throw CodecError("rle: output exceeds limit");
    }
    out.append(count, data[i + 1]);
  }
  return out;
}

}  // namespace

Bytes codec_compress(Codec codec, ByteView data) {
  switch (codec) {
    case Codec::kDeflate:
      return deflate_compress(data);
    case Codec::kRle:
      return rle_compress(data);
  }
  throw CodecError("unknown codec");
}

Bytes codec_decompress(Codec codec, ByteView data, size_t max_out) {
  switch (codec) {
    case Codec::kDeflate:
      return deflate_decompress(data, max_out);
    case Codec::kRle:
      return rle_decompress(data, max_out);
  }
  throw CodecError("unknown codec");
}

}  // namespace narcissus
