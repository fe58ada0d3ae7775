#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "actw/coder.hpp"
#include "actw/context_tree.hpp"

using namespace actw;

namespace {

// Shared pseudo-random probability stream so encoder and decoder agree.
std::vector<double> prob_stream(uint64_t seed, size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (auto& p : out) {
        const double u = double(rng() >> 11) * 0x1.0p-53;
        p = kMinProb + u * (kMaxProb - kMinProb);
    }
    return out;
}

}  // namespace

TEST_CASE("probability quantisation") {
    CHECK(quantize_prob(0.5) == kProbScale / 2);
    CHECK(quantize_prob(kMinProb) == 1);
    CHECK(quantize_prob(kMaxProb) == kProbScale - 1);
    CHECK_THROWS_AS(quantize_prob(0.0), ParamError);
    CHECK_THROWS_AS(quantize_prob(1.0), ParamError);
    CHECK_THROWS_AS(quantize_prob(-0.2), ParamError);
}

TEST_CASE("empty message flushes to the frozen eight zero bytes") {
    std::vector<uint8_t> out;
    RangeEncoder enc(out);
    enc.flush();
    CHECK(out == std::vector<uint8_t>{0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(out.size() <= 9);
}

TEST_CASE("flush twice is an error") {
    std::vector<uint8_t> out;
    RangeEncoder enc(out);
    enc.encode_bit(true, 0.3);
    enc.flush();
    CHECK(enc.flushed());
    CHECK_THROWS_AS(enc.flush(), Error);
    CHECK_THROWS_AS(enc.encode_bit(true, 0.3), Error);
}

TEST_CASE("single bit round trip") {
    for (const bool bit : {false, true}) {
        std::vector<uint8_t> out;
        RangeEncoder enc(out);
        enc.encode_bit(bit, 0.25);
        enc.flush();
        RangeDecoder dec(out);
        CHECK(dec.decode_bit(0.25) == bit);
    }
}

TEST_CASE("random bits with random probability streams round trip exactly") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const size_t n = 1000;
        const std::vector<double> probs = prob_stream(rng(), n);
        std::vector<uint8_t> bits(n);
        for (auto& b : bits) b = uint8_t(rng() & 1);

        std::vector<uint8_t> out;
        RangeEncoder enc(out);
        for (size_t i = 0; i < n; ++i) enc.encode_bit(bits[i] != 0, probs[i]);
        enc.flush();

        RangeDecoder dec(out);
        for (size_t i = 0; i < n; ++i)
            REQUIRE(dec.decode_bit(probs[i]) == (bits[i] != 0));
        CHECK(dec.consumed() == out.size());
    }
}

TEST_CASE("adversarial extreme probabilities round trip") {
    const size_t n = 4096;
    std::vector<uint8_t> bits(n);
    std::mt19937_64 rng(37);
    for (auto& b : bits) b = uint8_t(rng() & 1);

    std::vector<uint8_t> out;
    RangeEncoder enc(out);
    for (size_t i = 0; i < n; ++i)
        enc.encode_bit(bits[i] != 0, (i & 1) ? kMinProb : kMaxProb);
    enc.flush();

    RangeDecoder dec(out);
    for (size_t i = 0; i < n; ++i)
        REQUIRE(dec.decode_bit((i & 1) ? kMinProb : kMaxProb) == (bits[i] != 0));
}

TEST_CASE("coding at one half costs one bit per bit plus slack") {
    const size_t n = 10000;
    std::mt19937_64 rng(41);
    std::vector<uint8_t> out;
    RangeEncoder enc(out);
    for (size_t i = 0; i < n; ++i) enc.encode_bit(rng() & 1, 0.5);
    enc.flush();
    const size_t bits_out = out.size() * 8;
    CHECK(bits_out >= n);
    CHECK(bits_out <= n + 70);
}

TEST_CASE("near-optimality against the ideal code length") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const size_t n = 1 << 15;
        const std::vector<double> probs = prob_stream(rng(), n);
        double ideal_bits = 0.0;
        std::vector<uint8_t> out;
        RangeEncoder enc(out);
        for (size_t i = 0; i < n; ++i) {
            const bool bit = rng() & 1;
            // code the more extreme choice sometimes to vary lengths
            enc.encode_bit(bit, probs[i]);
            ideal_bits -= std::log2(bit ? probs[i] : 1.0 - probs[i]);
        }
        enc.flush();
        const double emitted = double(out.size()) * 8.0;
        CHECK(emitted <= std::ceil(ideal_bits) + 64.0 + double(n) / 32768.0);
        CHECK(emitted >= ideal_bits - 64.0);
    }
}

TEST_CASE("all-zero input under live tree predictions codes near the joint") {
    VariantConfig cfg;
    cfg.kind = VariantKind::Ctw;
    cfg.depth = 8;
    ContextTree tree(cfg);
    std::vector<uint8_t> out;
    RangeEncoder enc(out);
    const size_t n = 1 << 14;
    for (size_t i = 0; i < n; ++i) {
        const double p1 = std::clamp(tree.predict(), kMinProb, kMaxProb);
        enc.encode_bit(false, p1);
        tree.update(false);
    }
    enc.flush();
    const double ideal_bits = -tree.joint_logprob() / std::log(2.0);
    CHECK(double(out.size()) * 8.0 <= 1.03 * ideal_bits + 64.0);
}

TEST_CASE("truncated stream raises a truncation error") {
    std::vector<uint8_t> out;
    RangeEncoder enc(out);
    std::mt19937_64 rng(47);
    std::vector<uint8_t> bits(512);
    for (auto& b : bits) b = uint8_t(rng() & 1);
    for (const auto b : bits) enc.encode_bit(b != 0, 0.5);
    enc.flush();

    const std::span<const uint8_t> cut(out.data(), out.size() - 1);
    CHECK_THROWS_AS(
        [&] {
            RangeDecoder dec(cut);
            for (size_t i = 0; i < bits.size(); ++i) (void)dec.decode_bit(0.5);
        }(),
        TruncationError);
    CHECK_THROWS_AS(RangeDecoder(std::span<const uint8_t>{}), TruncationError);
}
