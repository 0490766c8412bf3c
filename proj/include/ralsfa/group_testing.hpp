#pragma once

#include <cmath>
#include <optional>

#include "ralsfa/estimators.hpp"

namespace ralsfa {

struct MsbParams {
    int k = 1;                  // subband filter half-width
    double eta_compare = 0.1;   // band is small when its energy < eta * max
    bool theory = false;        // 4(2k+1) bands instead of 2k+1
    EnergyEstimatorParams energy{};

    int band_count() const { return theory ? 4 * (2 * k + 1) : 2 * k + 1; }
    void validate() const;
};

// Most significant bit: the surviving cluster of subbands. v is the cluster
// center in band units (half-integer when the cluster has even length), c the
// cluster length; dead means every band measured exactly zero.
struct MsbResult {
    double v = 0.0;
    int c = 0;
    bool dead = false;
};

MsbResult msb(std::shared_ptr<const SignalOracle> f, const MsbParams& p, RngStream& rng);

// Digit-extraction bookkeeping. The located frequency is pinned down by a
// shrinking real interval [lo, lo+width) instead of a digit list: each round
// dilates by q = floor(N/width) so that a mode omega inside the interval shows
// up in the working signal at frequency q*(omega - lo), and the surviving MSB
// cluster cuts the interval down to its own width. Dilation factors stay
// integers this way, so all phases remain exact.
struct GroupTestState {
    i64 n;
    int bands;
    double lo = -0.5;  // half-band offset so omega = 0 sits inside band 0
    double width;

    GroupTestState(i64 n_, int bands_);

    bool done() const { return width <= 0.9; }
    i64 dilation() const;
    double modulation() const { return static_cast<double>(dilation()) * lo; }
    void update(double v, int c);
    i64 result() const { return mod_n(std::llround(lo + 0.5 * width), n); }
};

struct GroupTestResult {
    std::optional<i64> located;
    int rounds = 0;
    bool dead = false;
};

inline constexpr int kGroupTestMaxRounds = 128;

// Locate the dominant frequency of a (hopefully) pure 1-D signal.
GroupTestResult group_test(std::shared_ptr<const SignalOracle> f, const MsbParams& p,
                           RngStream& rng, int max_rounds = kGroupTestMaxRounds);

// Re-estimate coefficients at omega-radius..omega+radius and return the
// frequency with the largest magnitude; ties go to the smallest canonical
// frequency. Catches locations that land one place off.
i64 neighbor_refine(const SignalOracle& s, i64 omega, i64 radius,
                    const CoefficientEstimatorParams& est, RngStream& rng);

}  // namespace ralsfa
