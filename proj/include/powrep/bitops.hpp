#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace powrep {

/// Word-packed bit vector helpers. All offsets are bit indices; vectors
/// must be sized to hold the touched range (callers allocate
/// (nbits + 63) / 64 words).

inline size_t words_for(size_t nbits) { return (nbits + 63) / 64; }

inline bool get_bit(const std::vector<uint64_t>& v, size_t i) {
    return (v[i >> 6] >> (i & 63)) & 1;
}

inline void set_bit(std::vector<uint64_t>& v, size_t i) {
    v[i >> 6] |= uint64_t(1) << (i & 63);
}

/// dst[dst_off .. dst_off+len) |= src[src_off .. src_off+len).
/// Ranges may not alias within the same vector unless dst_off == src_off.
void or_bit_range(std::vector<uint64_t>& dst, size_t dst_off,
                  const std::vector<uint64_t>& src, size_t src_off, size_t len);

/// dst |= src shifted left by `shift`, both treated as nbits-wide; bits
/// shifted past nbits fall off.
void or_shifted(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                size_t shift, size_t nbits);

/// dst |= src rotated left by `shift` within an nbits-wide ring.
void or_rotated(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                uint64_t shift, uint64_t nbits);

size_t popcount_range(const std::vector<uint64_t>& v, size_t lo, size_t len);

}  // namespace powrep
