#include "ralsfa/isolation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ralsfa {

IsolationParams IsolationParams::defaults(double delta, i64 b) {
    if (delta <= 0.0 || delta >= 1.0 || b < 1) throw std::invalid_argument("bad isolation defaults");
    IsolationParams p;
    p.repetitions = static_cast<int>(std::ceil(std::log2(1.0 / delta)));
    if (p.repetitions < 1) p.repetitions = 1;
    p.eta = 1.0 / (4.0 * static_cast<double>(b));
    return p;
}

void IsolationParams::validate() const {
    if (k < 1 || repetitions < 1 || eta <= 0.0 || eta >= 1.0)
        throw std::invalid_argument("bad isolation parameters");
}

std::vector<IsolatedSignal> isolate(std::shared_ptr<const SignalOracle> s,
                                    const IsolationParams& p, RngStream& rng) {
    p.validate();
    if (s->dim() != 1) throw std::invalid_argument("isolation is 1-D");
    const i64 n = s->length();
    std::vector<IsolatedSignal> out;
    out.reserve(static_cast<std::size_t>(p.repetitions));
    for (int j = 0; j < p.repetitions; ++j) {
        FrequencyPermutation1D perm = FrequencyPermutation1D::random(n, rng);
        auto filtered = convolved_oracle(permuted_oracle(s, perm), BoxCarFilter{p.k}, 0.0, 1);
        out.push_back({std::move(filtered), perm});
    }
    return out;
}

int choose_filter_width(i64 b) {
    if (b < 1) throw std::invalid_argument("choose_filter_width: b must be positive");
    if (b <= 8) return 1;
    if (b <= 64) return 2;
    return static_cast<int>(std::ceil(0.5 * std::log2(static_cast<double>(b))));
}

int lemma_filter_width(double eta) {
    if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("lemma_filter_width: bad eta");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return static_cast<int>(std::ceil(12.25 * (1.0 - eta) * pi2 / eta));
}

}  // namespace ralsfa
