#include "ralsfa/transform.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ralsfa {

std::optional<i64> mod_inverse(i64 sigma, i64 n) {
    if (n < 1 || sigma < 1 || sigma >= n) throw std::invalid_argument("mod_inverse: bad arguments");
    i64 old_r = sigma, r = n;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) return std::nullopt;
    return mod_n(old_s, n);
}

FrequencyPermutation1D FrequencyPermutation1D::random(i64 n, RngStream& rng, int max_retries) {
    FrequencyPermutation1D p;
    p.theta = rng.uniform_index(n);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        p.sigma = 1 + rng.uniform_index(n - 1);
        p.sigma_star = mod_inverse(p.sigma, n);
        if (p.sigma_star) return p;
    }
    throw std::runtime_error("could not draw a dilation factor coprime to N");
}

i64 FrequencyPermutation1D::forward_freq(i64 omega, i64 n) const {
    if (!sigma_star) throw std::invalid_argument("permutation has no inverse dilation");
    return mod_n(*sigma_star * mod_n(omega - theta, n), n);
}

i64 FrequencyPermutation1D::original_freq(i64 located, i64 n) const {
    return mod_n(sigma * mod_n(located, n) + theta, n);
}

cplx sample_permuted(const SignalOracle& s, const FrequencyPermutation1D& p, i64 t) {
    if (!p.sigma_star) throw std::invalid_argument("permutation has no inverse dilation");
    const i64 n = s.length();
    const i64 pos = mod_n(*p.sigma_star * mod_n(t, n), n);
    // phase -theta * sigma_star * t, reduced mod N before hitting the unit circle
    const i64 ph = mod_n(mod_n(p.theta * *p.sigma_star, n) * mod_n(t, n), n);
    return unit_phase(-static_cast<double>(ph), static_cast<double>(n)) * s.sample1(pos);
}

namespace {

class PermutedOracle : public SignalOracle {
public:
    PermutedOracle(std::shared_ptr<const SignalOracle> s, FrequencyPermutation1D p)
        : SignalOracle(s->length(), s->dim()), parent_(std::move(s)), perm_(p) {
        if (dim() != 1) throw std::invalid_argument("1-D permutation on a d-D oracle");
        if (!perm_.sigma_star) throw std::invalid_argument("permutation has no inverse dilation");
    }

    double sampling_seconds() const override { return parent_->sampling_seconds(); }

protected:
    cplx eval(std::span<const i64> t) const override {
        return sample_permuted(*parent_, perm_, t[0]);
    }

private:
    std::shared_ptr<const SignalOracle> parent_;
    FrequencyPermutation1D perm_;
};

class ConvolvedOracle : public SignalOracle {
public:
    ConvolvedOracle(std::shared_ptr<const SignalOracle> s, BoxCarFilter f, double modulation_j,
                    i64 shift_divisor, int axis)
        : SignalOracle(s->length(), s->dim()), parent_(std::move(s)), axis_(axis) {
        if (axis_ < 0 || axis_ >= dim()) throw std::invalid_argument("filter axis out of range");
        const double tap = f.tap(length());
        taps_.reserve(static_cast<std::size_t>(f.tap_count()));
        for (i64 i = -f.k; i <= f.k; ++i)
            taps_.push_back(tap * unit_phase(modulation_j * static_cast<double>(i),
                                             static_cast<double>(shift_divisor)));
        k_ = f.k;
    }

    double sampling_seconds() const override { return parent_->sampling_seconds(); }

protected:
    cplx eval(std::span<const i64> t) const override {
        const i64 n = length();
        std::vector<i64> idx(t.begin(), t.end());
        cplx sum{0.0, 0.0};
        for (i64 i = -k_; i <= k_; ++i) {
            idx[static_cast<std::size_t>(axis_)] = mod_n(t[static_cast<std::size_t>(axis_)] - i, n);
            sum += taps_[static_cast<std::size_t>(i + k_)] * parent_->sample(idx);
        }
        return sum;
    }

private:
    std::shared_ptr<const SignalOracle> parent_;
    std::vector<cplx> taps_;
    i64 k_;
    int axis_;
};

class DilatedModulatedOracle : public SignalOracle {
public:
    DilatedModulatedOracle(std::shared_ptr<const SignalOracle> s, i64 q, double mu)
        : SignalOracle(s->length(), s->dim()), parent_(std::move(s)), q_(q),
          mu_(mod_real(mu, static_cast<double>(length()))) {
        if (dim() != 1) throw std::invalid_argument("dilation oracle is 1-D");
        if (q_ < 1 || q_ > length()) throw std::invalid_argument("dilation factor out of range");
    }

    double sampling_seconds() const override { return parent_->sampling_seconds(); }

protected:
    cplx eval(std::span<const i64> t) const override {
        const i64 n = length();
        const i64 pos = mod_n(q_ * t[0], n);
        // mu is real-valued; the phase must use the unreduced q*t so that an
        // integer mode omega lands exactly at working frequency q*(omega - L)
        return unit_phase(-mu_ * static_cast<double>(t[0]), static_cast<double>(n)) *
               parent_->sample1(pos);
    }

private:
    std::shared_ptr<const SignalOracle> parent_;
    i64 q_;
    double mu_;
};

}  // namespace

std::shared_ptr<SignalOracle> permuted_oracle(std::shared_ptr<const SignalOracle> s,
                                              FrequencyPermutation1D p) {
    return std::make_shared<PermutedOracle>(std::move(s), p);
}

double BoxCarFilter::tap(i64 n) const {
    return std::sqrt(static_cast<double>(n)) / static_cast<double>(2 * k + 1);
}

double dirichlet_response(int k, i64 omega, i64 n) {
    if (n < 1) throw std::invalid_argument("dirichlet_response: n must be positive");
    const double w = static_cast<double>(mod_n(omega, n));
    const double denom = std::sin(std::numbers::pi * w / static_cast<double>(n));
    if (std::abs(denom) < 1e-300) return 1.0;
    const double m = static_cast<double>(2 * k + 1);
    return std::sin(std::numbers::pi * m * w / static_cast<double>(n)) / (m * denom);
}

cplx sample_convolved(const SignalOracle& s, const BoxCarFilter& f, double modulation_j,
                      i64 shift_divisor, i64 t) {
    const i64 n = s.length();
    const double tap = f.tap(n);
    cplx sum{0.0, 0.0};
    for (i64 i = -f.k; i <= f.k; ++i) {
        cplx m = unit_phase(modulation_j * static_cast<double>(i), static_cast<double>(shift_divisor));
        sum += tap * m * s.sample1(mod_n(t - i, n));
    }
    return sum;
}

std::shared_ptr<SignalOracle> convolved_oracle(std::shared_ptr<const SignalOracle> s,
                                               BoxCarFilter f, double modulation_j,
                                               i64 shift_divisor, int axis) {
    return std::make_shared<ConvolvedOracle>(std::move(s), f, modulation_j, shift_divisor, axis);
}

std::shared_ptr<SignalOracle> dilated_modulated_oracle(std::shared_ptr<const SignalOracle> s,
                                                       i64 q, double mu) {
    return std::make_shared<DilatedModulatedOracle>(std::move(s), q, mu);
}

std::vector<i64> sample_positions(SamplingMode mode, i64 count, i64 n, i64 progression_len,
                                  RngStream& rng) {
    std::vector<i64> out;
    out.reserve(static_cast<std::size_t>(count));
    if (mode == SamplingMode::independent) {
        for (i64 i = 0; i < count; ++i) out.push_back(rng.uniform_index(n));
        return out;
    }
    if (progression_len < 1 || count % progression_len != 0)
        throw std::invalid_argument("progression length must divide the sample count");
    for (i64 p = 0; p < count / progression_len; ++p) {
        i64 start = rng.uniform_index(n);
        for (i64 j = 0; j < progression_len; ++j) out.push_back(mod_n(start + j, n));
    }
    return out;
}

}  // namespace ralsfa
