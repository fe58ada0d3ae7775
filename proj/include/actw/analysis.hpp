#ifndef ACTW_ANALYSIS_HPP
#define ACTW_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "actw/errors.hpp"

namespace actw {

// Binary entropy in bits; 0 at theta = 0 and 1. Throws ParamError outside [0,1].
double binary_entropy(double theta);

// Expected one-bit coding redundancy, in bits, of a KT estimator fed only
// the last k bits of a Bern(theta) sequence:
//
//   R(k; theta) = E_a [ theta log2((k+1)/(a+1/2))
//                       + (1-theta) log2((k+1)/(k-a+1/2)) ] - H[theta]
//
// with a ~ Binomial(k, theta) the count of ones in the window. Binomial
// terms go through log-gamma, stable for k up to 2^14 and beyond.
// Throws ParamError for k < 1 or theta outside [0,1].
double expected_redundancy(uint32_t k, double theta);

enum class SourceKind : uint8_t { Iid, Switching, Drifting };

// Seeded synthetic Bernoulli source with an optionally moving parameter.
struct SourceSpec {
    SourceKind kind = SourceKind::Iid;
    std::vector<double> thetas;   // Iid uses the first entry
    uint64_t segment_length = 0;  // Switching: bits per theta before cycling
    double drift_rate = 1.0;      // Drifting: traversals of the theta list
                                  // across total_bits (0 behaves as 1)
    uint64_t seed = 0;
    uint64_t total_bits = 0;

    void validate() const;  // throws ParamError
};

// Deterministic in spec.seed; returns bits as bytes valued 0/1.
std::vector<uint8_t> generate(const SourceSpec& spec);

}  // namespace actw

#endif  // ACTW_ANALYSIS_HPP
