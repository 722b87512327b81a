#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace arl {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

/// 32-byte hash output. Equality is byte equality; ordering is lexicographic.
struct Digest {
    std::array<uint8_t, 32> bytes{};

    static constexpr size_t size = 32;

    const uint8_t* data() const { return bytes.data(); }
    uint8_t* data() { return bytes.data(); }
    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }

    auto operator<=>(const Digest&) const = default;
};

std::string to_hex(ByteView data);
Bytes from_hex(const std::string& hex);  // throws Error(parse_error) on bad input

inline std::string to_hex(const Digest& d) { return to_hex(d.view()); }
Digest digest_from_hex(const std::string& hex);

/// Big-endian 8-byte encoding used for every integer that enters a hash or a
/// wire message.
inline std::array<uint8_t, 8> be64(uint64_t v) {
    std::array<uint8_t, 8> out;
    for (int i = 7; i >= 0; --i) {
        out[static_cast<size_t>(i)] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

inline uint64_t read_be64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

inline std::array<uint8_t, 4> be32(uint32_t v) {
    return {static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
            static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
}

inline uint32_t read_be32(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

inline void append(Bytes& out, ByteView data) {
    out.insert(out.end(), data.data(), data.data() + data.size());
}

/// Appends a u32-BE length prefix followed by the field bytes. All wire
/// messages and registry encodings use this framing.
inline void append_field(Bytes& out, ByteView field) {
    auto len = be32(static_cast<uint32_t>(field.size()));
    append(out, ByteView(len.data(), len.size()));
    append(out, field);
}

/// True if `needle` occurs as a contiguous byte substring of `hay`.
bool contains_bytes(ByteView hay, ByteView needle);

}  // namespace arl
