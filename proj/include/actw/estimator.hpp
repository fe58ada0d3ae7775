#ifndef ACTW_ESTIMATOR_HPP
#define ACTW_ESTIMATOR_HPP

#include <cmath>
#include <cstdint>
#include <span>

#include "actw/errors.hpp"

namespace actw {

/* Krichevsky-Trofimov estimator over a binary alphabet, generalised with a
   multiplicative discount on the symbol counts. gamma = 0 is the classic
   estimator with integer counts; gamma > 0 decays old observations so that
   roughly the last 1/gamma symbols drive the prediction. */

// Discounted zero/one counts plus the accumulated log block probability
// of everything observed at this node.
struct CountPair {
    double zeros = 0.0;
    double ones = 0.0;
    double log_kt = 0.0;
};

// Probability the estimator assigns to the next symbol being `one`.
// The two symbol probabilities sum to 1.
inline double kt_predict(const CountPair& c, bool one) {
    const double num = (one ? c.ones : c.zeros) + 0.5;
    return num / (c.zeros + c.ones + 1.0);
}

inline void check_discount_rate(double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw ParamError("discount rate must lie in [0,1)");
}

// Count half of an estimator step: increment the observed symbol's count,
// then decay both counts by (1 - gamma). Shared with the context tree,
// which folds the predictive probability into log_kt separately.
inline void bump_and_discount(CountPair& c, bool one, double gamma) {
    (one ? c.ones : c.zeros) += 1.0;
    const double keep = 1.0 - gamma;
    c.zeros *= keep;
    c.ones *= keep;
}

// One full estimator step: the probability of the observed symbol is folded
// into log_kt first, computed from the counts as they stand, and only then
// are the counts incremented and discounted.
inline CountPair kt_update(CountPair c, bool one, double gamma) {
    check_discount_rate(gamma);
    c.log_kt += std::log(kt_predict(c, one));
    bump_and_discount(c, one, gamma);
    return c;
}

// Log block probability of a whole bit string (elements 0/1) processed from
// the empty state. Equals the sum of per-step log predictive probabilities.
inline double kt_block_logprob(std::span<const uint8_t> bits, double gamma) {
    check_discount_rate(gamma);
    CountPair c;
    for (uint8_t b : bits) {
        const bool one = b != 0;
        c.log_kt += std::log(kt_predict(c, one));
        bump_and_discount(c, one, gamma);
    }
    return c.log_kt;
}

}  // namespace actw

#endif  // ACTW_ESTIMATOR_HPP
