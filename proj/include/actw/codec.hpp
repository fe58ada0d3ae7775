#ifndef ACTW_CODEC_HPP
#define ACTW_CODEC_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "actw/context_tree.hpp"
#include "actw/errors.hpp"

namespace actw {

/* Container format. All multi-byte fields little-endian:

     offset 0   magic "ACTW"
            4   version (1)
            5   variant (0..5, VariantKind)
            6   depth (1..63)
            7   param1, IEEE-754 binary64   gamma for FixedRate, c for schedules
           15   param2, IEEE-754 binary64   alpha for schedules, else 0
           23   original length in bytes, uint64
           31   coder payload

   Bytes are flattened to bits most significant bit first, and the context
   window runs across byte boundaries. */
struct CodecHeader {
    static constexpr std::array<uint8_t, 4> kMagic = {'A', 'C', 'T', 'W'};
    static constexpr uint8_t kVersion = 1;
    static constexpr size_t kSize = 31;

    VariantKind variant = VariantKind::Ctw;
    uint8_t depth = 28;
    double param1 = 0.0;
    double param2 = 0.0;
    uint64_t original_length = 0;

    static CodecHeader from_config(const VariantConfig& cfg, uint64_t original_length);
    VariantConfig to_config() const;

    void encode_to(std::vector<uint8_t>& out) const;
    // Throws FormatError on bad magic/version or out-of-range fields.
    static CodecHeader decode_from(std::span<const uint8_t> in);
};

struct CompressStats {
    double model_log2_prob = 0.0;  // log2 joint probability of the input bits
    uint64_t payload_bytes = 0;    // coder output, header excluded
};

// Header plus the arithmetic-coded bit stream under the configured model.
// Deterministic in (input, config).
std::vector<uint8_t> compress(std::span<const uint8_t> input, const VariantConfig& cfg,
                              CompressStats* stats = nullptr);

// Exact inverse of compress. Throws FormatError / TruncationError.
std::vector<uint8_t> decompress(std::span<const uint8_t> input);

// 1 - compressed/original; negative when the stream expanded.
// Throws ParamError when original is 0.
double space_saving(uint64_t original_bytes, uint64_t compressed_bytes);

// Bit helpers shared by tests and the benchmark harness. Bits are bytes
// valued 0/1, packed most significant bit first; pack_bits zero-pads the
// final byte.
std::vector<uint8_t> pack_bits(std::span<const uint8_t> bits);
std::vector<uint8_t> unpack_bits(std::span<const uint8_t> bytes);

}  // namespace actw

#endif  // ACTW_CODEC_HPP
