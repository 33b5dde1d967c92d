#include "powrep/bitops.hpp"

#include <bit>

namespace powrep {

namespace {

// 64 bits of src starting at bit offset `off` (reads at most two words;
// out-of-range bits are zero).
inline uint64_t read_word_at(const std::vector<uint64_t>& src, size_t off, size_t total_bits) {
    size_t w = off >> 6, r = off & 63;
    uint64_t lo = w < src.size() ? src[w] : 0;
    uint64_t hi = (r && w + 1 < src.size()) ? src[w + 1] : 0;
    uint64_t out = r ? (lo >> r) | (hi << (64 - r)) : lo;
    if (total_bits < off + 64) {
        size_t keep = total_bits > off ? total_bits - off : 0;
        out = keep ? (out & (keep >= 64 ? ~uint64_t(0) : ((uint64_t(1) << keep) - 1))) : 0;
    }
    return out;
}

}  // namespace

void or_bit_range(std::vector<uint64_t>& dst, size_t dst_off,
                  const std::vector<uint64_t>& src, size_t src_off, size_t len) {
    size_t done = 0;
    size_t src_bits = src_off + len;
    while (done < len) {
        size_t pos = dst_off + done;
        size_t w = pos >> 6, r = pos & 63;
        size_t chunk = std::min<size_t>(64 - r, len - done);
        uint64_t bits = read_word_at(src, src_off + done, src_bits);
        bits &= chunk >= 64 ? ~uint64_t(0) : ((uint64_t(1) << chunk) - 1);
        dst[w] |= bits << r;
        done += chunk;
    }
}

void or_shifted(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                size_t shift, size_t nbits) {
    if (shift >= nbits) return;
    or_bit_range(dst, shift, src, 0, nbits - shift);
}

void or_rotated(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                uint64_t shift, uint64_t nbits) {
    shift %= nbits;
    if (shift == 0) {
        or_bit_range(dst, 0, src, 0, nbits);
        return;
    }
    or_bit_range(dst, shift, src, 0, nbits - shift);
    or_bit_range(dst, 0, src, nbits - shift, shift);
}

size_t popcount_range(const std::vector<uint64_t>& v, size_t lo, size_t len) {
    size_t count = 0, done = 0;
    while (done < len) {
        uint64_t bits = read_word_at(v, lo + done, lo + len);
        count += std::popcount(bits);
        done += 64;
    }
    return count;
}

}  // namespace powrep
