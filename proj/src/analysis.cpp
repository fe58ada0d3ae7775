#include "actw/analysis.hpp"

#include <cmath>
#include <random>

namespace actw {

double binary_entropy(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw ParamError("theta must lie in [0,1]");
    if (theta == 0.0 || theta == 1.0) return 0.0;
    return -(theta * std::log2(theta) + (1.0 - theta) * std::log2(1.0 - theta));
}

double expected_redundancy(uint32_t k, double theta) {
    if (k < 1) throw ParamError("window length must be >= 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ParamError("theta must lie in [0,1]");

    const double kp1 = double(k) + 1.0;
    if (theta == 0.0 || theta == 1.0) {
        // Degenerate window: the only reachable count term survives.
        return std::log2(kp1 / (double(k) + 0.5));
    }

    const double log_t = std::log(theta);
    const double log_1t = std::log1p(-theta);
    const double lg_k = std::lgamma(kp1);
    double sum = 0.0;
    for (uint32_t a = 0; a <= k; ++a) {
        const double da = double(a);
        const double db = double(k - a);
        const double log_pmf = lg_k - std::lgamma(da + 1.0) - std::lgamma(db + 1.0) +
                               da * log_t + db * log_1t;
        const double bracket = theta * std::log2(kp1 / (da + 0.5)) +
                               (1.0 - theta) * std::log2(kp1 / (db + 0.5));
        sum += std::exp(log_pmf) * bracket;
    }
    return sum - binary_entropy(theta);
}

void SourceSpec::validate() const {
    if (thetas.empty()) throw ParamError("source needs at least one theta");
    for (const double t : thetas)
        if (!(t >= 0.0 && t <= 1.0)) throw ParamError("theta must lie in [0,1]");
    if (total_bits < 1) throw ParamError("total_bits must be >= 1");
    if (kind == SourceKind::Switching && segment_length < 1)
        throw ParamError("switching source needs segment_length >= 1");
    if (!(drift_rate >= 0.0) || !std::isfinite(drift_rate))
        throw ParamError("drift_rate must be finite and >= 0");
}

namespace {

double theta_at(const SourceSpec& s, uint64_t i) {
    switch (s.kind) {
        case SourceKind::Iid:
            return s.thetas.front();
        case SourceKind::Switching:
            return s.thetas[size_t((i / s.segment_length) % s.thetas.size())];
        case SourceKind::Drifting: {
            if (s.thetas.size() == 1) return s.thetas.front();
            const double rate = s.drift_rate == 0.0 ? 1.0 : s.drift_rate;
            const double progress =
                s.total_bits > 1 ? double(i) / double(s.total_bits - 1) : 0.0;
            // Sawtooth traversal of the waypoint list, `rate` times overall;
            // a completed traversal ends on the last waypoint.
            const double position = progress * rate;
            double u = position - std::floor(position);
            if (u == 0.0 && position > 0.0) u = 1.0;
            const double pos = u * double(s.thetas.size() - 1);
            const size_t lo = std::min(size_t(pos), s.thetas.size() - 2);
            const double frac = pos - double(lo);
            return s.thetas[lo] + frac * (s.thetas[lo + 1] - s.thetas[lo]);
        }
    }
    throw ParamError("unknown source kind");
}

}  // namespace

std::vector<uint8_t> generate(const SourceSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::vector<uint8_t> bits(spec.total_bits);
    for (uint64_t i = 0; i < spec.total_bits; ++i) {
        const double theta = theta_at(spec, i);
        // 53-bit uniform draw; mt19937_64 output is fully specified, so the
        // stream is identical across platforms.
        const double u = double(rng() >> 11) * 0x1.0p-53;
        bits[i] = u < theta ? 1 : 0;
    }
    return bits;
}

}  // namespace actw
