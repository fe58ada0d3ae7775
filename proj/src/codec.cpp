#include "actw/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>

#include "actw/coder.hpp"

namespace actw {

namespace {

void put_u64_le(std::vector<uint8_t>& out, uint64_t x) {
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t(x >> (8 * i)));
}

uint64_t get_u64_le(std::span<const uint8_t> in, size_t pos) {
    uint64_t x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | in[pos + size_t(i)];
    return x;
}

void put_f64_le(std::vector<uint8_t>& out, double x) {
    put_u64_le(out, std::bit_cast<uint64_t>(x));
}

double get_f64_le(std::span<const uint8_t> in, size_t pos) {
    return std::bit_cast<double>(get_u64_le(in, pos));
}

inline double clamp_prob(double p) { return std::clamp(p, kMinProb, kMaxProb); }

}  // namespace

CodecHeader CodecHeader::from_config(const VariantConfig& cfg, uint64_t original_length) {
    cfg.validate();
    CodecHeader h;
    h.variant = cfg.kind;
    h.depth = uint8_t(cfg.depth);
    h.original_length = original_length;
    switch (cfg.kind) {
        case VariantKind::Ctw:
            break;
        case VariantKind::FixedRate:
            h.param1 = cfg.gamma;
            break;
        default:
            h.param1 = cfg.c;
            h.param2 = cfg.alpha;
            break;
    }
    return h;
}

VariantConfig CodecHeader::to_config() const {
    VariantConfig cfg;
    cfg.kind = variant;
    cfg.depth = depth;
    switch (variant) {
        case VariantKind::Ctw:
            break;
        case VariantKind::FixedRate:
            cfg.gamma = param1;
            break;
        default:
            cfg.c = param1;
            cfg.alpha = param2;
            break;
    }
    return cfg;
}

void CodecHeader::encode_to(std::vector<uint8_t>& out) const {
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kVersion);
    out.push_back(uint8_t(variant));
    out.push_back(depth);
    put_f64_le(out, param1);
    put_f64_le(out, param2);
    put_u64_le(out, original_length);
}

CodecHeader CodecHeader::decode_from(std::span<const uint8_t> in) {
    if (in.size() < kSize) throw FormatError("input shorter than header");
    if (!std::equal(kMagic.begin(), kMagic.end(), in.begin()))
        throw FormatError("bad magic");
    if (in[4] != kVersion) throw FormatError("unsupported version");
    if (in[5] > uint8_t(VariantKind::LeafVisit)) throw FormatError("unknown variant");

    CodecHeader h;
    h.variant = VariantKind(in[5]);
    h.depth = in[6];
    h.param1 = get_f64_le(in, 7);
    h.param2 = get_f64_le(in, 15);
    h.original_length = get_u64_le(in, 23);

    if (h.depth < 1 || h.depth > kMaxTreeDepth) throw FormatError("depth out of range");
    if (!(h.param1 >= 0.0 && h.param1 < 1.0)) throw FormatError("param1 out of range");
    if (!(h.param2 >= 0.0 && h.param2 < 1.0)) throw FormatError("param2 out of range");
    return h;
}

std::vector<uint8_t> compress(std::span<const uint8_t> input, const VariantConfig& cfg,
                              CompressStats* stats) {
    cfg.validate();
    std::vector<uint8_t> out;
    out.reserve(input.size() / 2 + 64);
    CodecHeader::from_config(cfg, input.size()).encode_to(out);

    ContextTree tree(cfg);
    RangeEncoder enc(out);
    for (const uint8_t byte : input) {
        for (int b = 7; b >= 0; --b) {
            const bool bit = (byte >> b) & 1;
            enc.encode_bit(bit, clamp_prob(tree.predict()));
            tree.update(bit);
        }
    }
    enc.flush();

    if (stats) {
        stats->model_log2_prob = tree.joint_logprob() / std::numbers::ln2;
        stats->payload_bytes = out.size() - CodecHeader::kSize;
    }
    return out;
}

std::vector<uint8_t> decompress(std::span<const uint8_t> input) {
    const CodecHeader h = CodecHeader::decode_from(input);
    const VariantConfig cfg = h.to_config();
    cfg.validate();

    ContextTree tree(cfg);
    RangeDecoder dec(input.subspan(CodecHeader::kSize));
    std::vector<uint8_t> out;
    out.reserve(size_t(std::min<uint64_t>(h.original_length, 1u << 26)));
    for (uint64_t i = 0; i < h.original_length; ++i) {
        unsigned byte = 0;
        for (int b = 7; b >= 0; --b) {
            const bool bit = dec.decode_bit(clamp_prob(tree.predict()));
            tree.update(bit);
            byte = (byte << 1) | unsigned(bit);
        }
        out.push_back(uint8_t(byte));
    }
    return out;
}

double space_saving(uint64_t original_bytes, uint64_t compressed_bytes) {
    if (original_bytes == 0)
        throw ParamError("space saving undefined for zero original size");
    return 1.0 - double(compressed_bytes) / double(original_bytes);
}

std::vector<uint8_t> pack_bits(std::span<const uint8_t> bits) {
    std::vector<uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) bytes[i / 8] |= uint8_t(0x80u >> (i % 8));
    return bytes;
}

std::vector<uint8_t> unpack_bits(std::span<const uint8_t> bytes) {
    std::vector<uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (const uint8_t byte : bytes)
        for (int b = 7; b >= 0; --b) bits.push_back(uint8_t((byte >> b) & 1));
    return bits;
}

}  // namespace actw
