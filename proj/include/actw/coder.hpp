#ifndef ACTW_CODER_HPP
#define ACTW_CODER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "actw/errors.hpp"

namespace actw {

/* Binary arithmetic coder driven by an external per-bit probability.

   Integer range coder with 64-bit unsigned registers and byte-wise
   renormalisation. The renormalised working window of `range` spans bits
   0..55, one byte below the register width, so carries out of an interval
   add land in bit 56 of `low` and are resolved through a pending-byte run
   counter; the output never needs rewriting. The first emitted byte is a
   filler that the decoder discards, and the flush tail is the 7 remaining
   window bytes, which keeps the total framing at 64 bits.

   Probabilities are quantised to 30-bit fixed point with identical
   floor-based rounding on both sides, so the interval split point is a pure
   function of the quantised value and floating point never reaches the
   bitstream. */

inline constexpr int kProbBits = 30;
inline constexpr uint32_t kProbScale = 1u << kProbBits;
inline constexpr double kMinProb = 1.0 / double(kProbScale);
inline constexpr double kMaxProb = 1.0 - kMinProb;

inline constexpr int kWindowBits = 56;
inline constexpr uint64_t kWindowMask = (1ull << kWindowBits) - 1;
// Renormalise while the top window byte of `range` is zero.
inline constexpr uint64_t kRangeFloor = (1ull << (kWindowBits - 8)) - 1;

// Fixed-point image of p1, clamped to [1, 2^30 - 1].
inline uint32_t quantize_prob(double p1) {
    if (!(p1 >= kMinProb && p1 <= kMaxProb))
        throw ParamError("bit probability outside [2^-30, 1 - 2^-30]");
    uint32_t q = uint32_t(p1 * double(kProbScale));
    if (q < 1) q = 1;
    if (q > kProbScale - 1) q = kProbScale - 1;
    return q;
}

namespace detail {
inline uint64_t split_point(uint64_t range, uint32_t p1q) {
    uint64_t mid = uint64_t((unsigned __int128)(range)*p1q >> kProbBits);
    if (mid == 0) mid = 1;
    if (mid >= range) mid = range - 1;
    return mid;
}
}  // namespace detail

class RangeEncoder {
  public:
    explicit RangeEncoder(std::vector<uint8_t>& out) : m_out(&out) {}

    // Narrow the interval by the quantised probability that the bit is 1.
    void encode_bit(bool one, double p1) { encode_bit_q(one, quantize_prob(p1)); }

    void encode_bit_q(bool one, uint32_t p1q) {
        if (p1q < 1 || p1q > kProbScale - 1)
            throw ParamError("quantised probability outside [1, 2^30 - 1]");
        if (m_flushed) throw Error("encode_bit after flush");
        const uint64_t mid = detail::split_point(m_range, p1q);
        if (one) {
            m_range = mid;
        } else {
            m_low += mid;
            m_range -= mid;
        }
        while (m_range <= kRangeFloor) {
            shift_out();
            m_range <<= 8;
        }
    }

    // Emit the pending run plus the remaining window bytes of `low`; after
    // this every coded bit is resolvable. Calling flush twice is an error.
    void flush() {
        if (m_flushed) throw Error("flush called twice");
        m_flushed = true;
        const uint64_t lo = m_low & kWindowMask;
        const uint32_t carry = uint32_t(m_low >> kWindowBits);
        m_out->push_back(uint8_t(m_pending_first + carry));
        while (--m_pending_len) m_out->push_back(uint8_t(0xFFu + carry));
        for (int shift = kWindowBits - 8; shift >= 0; shift -= 8)
            m_out->push_back(uint8_t(lo >> shift));
    }

    bool flushed() const { return m_flushed; }

  private:
    void shift_out() {
        const uint64_t lo = m_low & kWindowMask;
        const uint32_t carry = uint32_t(m_low >> kWindowBits);
        if (lo < (0xFFull << (kWindowBits - 8)) || carry != 0) {
            m_out->push_back(uint8_t(m_pending_first + carry));
            while (--m_pending_len) m_out->push_back(uint8_t(0xFFu + carry));
            m_pending_first = uint8_t(lo >> (kWindowBits - 8));
        }
        ++m_pending_len;
        m_low = (lo << 8) & kWindowMask;
    }

    std::vector<uint8_t>* m_out;
    uint64_t m_low = 0;
    uint64_t m_range = kWindowMask;
    uint32_t m_pending_len = 1;
    uint8_t m_pending_first = 0;
    bool m_flushed = false;
};

class RangeDecoder {
  public:
    // Consumes the filler byte plus the window bytes up front.
    explicit RangeDecoder(std::span<const uint8_t> in) : m_in(in) {
        for (int i = 0; i < kWindowBits / 8 + 1; ++i)
            m_code = ((m_code << 8) | next_byte()) & kWindowMask;
    }

    bool decode_bit(double p1) { return decode_bit_q(quantize_prob(p1)); }

    bool decode_bit_q(uint32_t p1q) {
        if (p1q < 1 || p1q > kProbScale - 1)
            throw ParamError("quantised probability outside [1, 2^30 - 1]");
        const uint64_t mid = detail::split_point(m_range, p1q);
        bool one;
        if (m_code < mid) {
            one = true;
            m_range = mid;
        } else {
            one = false;
            m_code -= mid;
            m_range -= mid;
        }
        while (m_range <= kRangeFloor) {
            m_code = ((m_code << 8) | next_byte()) & kWindowMask;
            m_range <<= 8;
        }
        return one;
    }

    size_t consumed() const { return m_pos; }

  private:
    uint8_t next_byte() {
        if (m_pos >= m_in.size())
            throw TruncationError("compressed stream truncated");
        return m_in[m_pos++];
    }

    std::span<const uint8_t> m_in;
    size_t m_pos = 0;
    uint64_t m_code = 0;  // code minus low
    uint64_t m_range = kWindowMask;
};

}  // namespace actw

#endif  // ACTW_CODER_HPP
