#include "ralsfa/signal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ralsfa/rng.hpp"

namespace ralsfa {

SignalOracle::SignalOracle(i64 n, int d) : n_(n), d_(d) {
    if (n < 1) throw std::invalid_argument("signal length must be positive");
    if (d < 1) throw std::invalid_argument("signal dimension must be positive");
}

i64 SignalOracle::total_points() const {
    i64 total = 1;
    for (int i = 0; i < d_; ++i) total *= n_;
    return total;
}

cplx SignalOracle::sample(std::span<const i64> t) const {
    if (static_cast<int>(t.size()) != d_) throw std::invalid_argument("index dimension mismatch");
    for (i64 c : t)
        if (c < 0 || c >= n_) throw std::out_of_range("sample index out of range");
    count_one();
    return eval(t);
}

cplx SignalOracle::sample1(i64 t) const {
    return sample(std::span<const i64>(&t, 1));
}

i64 linear_index(std::span<const i64> t, i64 n) {
    i64 idx = 0;
    for (i64 c : t) idx = idx * n + c;
    return idx;
}

SparseRepresentation::SparseRepresentation(i64 n, int d) : n_(n), d_(d) {
    if (n < 1 || d < 1) throw std::invalid_argument("bad representation shape");
}

void SparseRepresentation::add(std::vector<i64> freq, cplx coef) {
    if (static_cast<int>(freq.size()) != d_) throw std::invalid_argument("frequency dimension mismatch");
    for (i64& f : freq) f = mod_n(f, n_);
    if (Mode* m = find(freq)) {
        m->coef += coef;
        return;
    }
    modes_.push_back({std::move(freq), coef});
}

void SparseRepresentation::add(i64 freq, cplx coef) {
    add(std::vector<i64>{freq}, coef);
}

const Mode* SparseRepresentation::find(std::span<const i64> freq) const {
    for (const Mode& m : modes_)
        if (std::equal(m.freq.begin(), m.freq.end(), freq.begin(), freq.end())) return &m;
    return nullptr;
}

Mode* SparseRepresentation::find(std::span<const i64> freq) {
    return const_cast<Mode*>(std::as_const(*this).find(freq));
}

cplx SparseRepresentation::evaluate(std::span<const i64> t) const {
    return evaluate_sparse(*this, t);
}

cplx SparseRepresentation::evaluate1(i64 t) const {
    return evaluate_sparse(*this, std::span<const i64>(&t, 1));
}

double SparseRepresentation::energy() const {
    double e = 0.0;
    for (const Mode& m : modes_) e += std::norm(m.coef);
    return e;
}

void SparseRepresentation::prune_below(double amplitude) {
    std::erase_if(modes_, [&](const Mode& m) { return std::abs(m.coef) < amplitude; });
}

void SparseRepresentation::keep_largest(std::size_t b) {
    if (modes_.size() <= b) return;
    std::stable_sort(modes_.begin(), modes_.end(),
                     [](const Mode& a, const Mode& c) { return std::norm(a.coef) > std::norm(c.coef); });
    modes_.resize(b);
}

void SparseRepresentation::sort_by_frequency() {
    std::sort(modes_.begin(), modes_.end(),
              [](const Mode& a, const Mode& b) { return a.freq < b.freq; });
}

cplx evaluate_sparse(const SparseRepresentation& rep, std::span<const i64> t) {
    const i64 n = rep.length();
    if (static_cast<int>(t.size()) != rep.dim()) throw std::invalid_argument("index dimension mismatch");
    for (i64 c : t)
        if (c < 0 || c >= n) throw std::out_of_range("index out of range");
    cplx sum{0.0, 0.0};
    for (const Mode& m : rep.modes()) {
        i64 dot = 0;
        for (std::size_t i = 0; i < t.size(); ++i) dot += mod_n(m.freq[i] * t[i], n);
        sum += m.coef * unit_phase(static_cast<double>(dot % n), static_cast<double>(n));
    }
    return sum * std::pow(static_cast<double>(n), -0.5 * rep.dim());
}

void GeneratedSignalSpec::validate() const {
    if (n < 1 || d < 1) throw std::invalid_argument("bad signal spec shape");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");
    if (kind == SignalKind::decay_spectrum && d != 1)
        throw std::invalid_argument("decay_spectrum signals are 1-D");
    for (const Mode& m : modes) {
        if (static_cast<int>(m.freq.size()) != d) throw std::invalid_argument("mode dimension mismatch");
        for (i64 f : m.freq)
            if (f < 0 || f >= n) throw std::invalid_argument("mode frequency out of range");
    }
}

double GeneratedSignalSpec::clean_energy() const {
    if (kind == SignalKind::superposition) {
        double e = 0.0;
        for (const Mode& m : modes) e += std::norm(m.coef);
        return e;
    }
    double e = 0.0;
    for (i64 t = 0; t < n; ++t) {
        double v = 1.0 / (1.5 + std::cos(two_pi * static_cast<double>(t) / static_cast<double>(n)));
        e += v * v;
    }
    return e;
}

double GeneratedSignalSpec::snr_db() const {
    double total = 1.0;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(n);
    return 10.0 * std::log10(clean_energy() / (total * noise_sigma * noise_sigma));
}

namespace {

using clock_t_ = std::chrono::steady_clock;

class GeneratedOracle : public SignalOracle {
public:
    explicit GeneratedOracle(GeneratedSignalSpec spec)
        : SignalOracle(spec.n, spec.d), spec_(std::move(spec)), rep_(spec_.n, spec_.d) {
        for (const Mode& m : spec_.modes) rep_.add(m.freq, m.coef);
    }

    double sampling_seconds() const override { return nanos_ * 1e-9; }

protected:
    cplx eval(std::span<const i64> t) const override {
        auto start = clock_t_::now();
        cplx v;
        if (spec_.kind == SignalKind::superposition) {
            v = rep_.evaluate(t);
        } else {
            v = cplx{1.0 / (1.5 + std::cos(two_pi * static_cast<double>(t[0]) /
                                           static_cast<double>(length()))),
                     0.0};
        }
        if (spec_.noise_sigma > 0.0)
            v += noise_at(spec_.seed, static_cast<u64>(linear_index(t, length())), spec_.noise_sigma);
        nanos_ += std::chrono::duration_cast<std::chrono::nanoseconds>(clock_t_::now() - start).count();
        return v;
    }

private:
    GeneratedSignalSpec spec_;
    SparseRepresentation rep_;
    mutable double nanos_ = 0.0;
};

class ResidualOracle : public SignalOracle {
public:
    ResidualOracle(std::shared_ptr<const SignalOracle> parent, SparseRepresentation rep)
        : SignalOracle(parent->length(), parent->dim()),
          parent_(std::move(parent)),
          rep_(std::move(rep)) {
        if (rep_.length() != length() || rep_.dim() != dim())
            throw std::invalid_argument("representation does not match oracle shape");
    }

    double sampling_seconds() const override { return parent_->sampling_seconds(); }

protected:
    cplx eval(std::span<const i64> t) const override {
        return parent_->sample(t) - rep_.evaluate(t);
    }

private:
    std::shared_ptr<const SignalOracle> parent_;
    SparseRepresentation rep_;
};

}  // namespace

std::shared_ptr<SignalOracle> generate_signal(const GeneratedSignalSpec& spec) {
    spec.validate();
    return std::make_shared<GeneratedOracle>(spec);
}

std::shared_ptr<SignalOracle> residual_oracle(std::shared_ptr<const SignalOracle> s,
                                              SparseRepresentation rep) {
    return std::make_shared<ResidualOracle>(std::move(s), std::move(rep));
}

DenseOracle::DenseOracle(std::vector<cplx> values, i64 n, int d)
    : SignalOracle(n, d), values_(std::move(values)) {
    if (static_cast<i64>(values_.size()) != total_points())
        throw std::invalid_argument("dense buffer size does not match n^d");
}

cplx DenseOracle::eval(std::span<const i64> t) const {
    return values_[static_cast<std::size_t>(linear_index(t, length()))];
}

std::vector<cplx> materialize(const SignalOracle& s) {
    const i64 n = s.length();
    const int d = s.dim();
    const i64 total = s.total_points();
    std::vector<cplx> out(static_cast<std::size_t>(total));
    std::vector<i64> idx(static_cast<std::size_t>(d), 0);
    for (i64 li = 0; li < total; ++li) {
        out[static_cast<std::size_t>(li)] = s.sample(idx);
        for (int ax = d - 1; ax >= 0; --ax) {
            if (++idx[static_cast<std::size_t>(ax)] < n) break;
            idx[static_cast<std::size_t>(ax)] = 0;
        }
    }
    return out;
}

}  // namespace ralsfa
