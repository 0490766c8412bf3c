#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ralsfa/common.hpp"

namespace ralsfa {

// Point-evaluable complex signal on the grid Z_N^d. The only access path to
// input data: every read goes through sample() and is tallied, so callers can
// account sampling cost separately from algorithmic cost.
class SignalOracle {
public:
    SignalOracle(i64 n, int d);
    virtual ~SignalOracle() = default;

    i64 length() const { return n_; }
    int dim() const { return d_; }
    i64 total_points() const;

    cplx sample(std::span<const i64> t) const;
    cplx sample1(i64 t) const;  // 1-D convenience

    u64 sample_count() const { return count_.load(std::memory_order_relaxed); }
    void reset_sample_count() { count_.store(0, std::memory_order_relaxed); }

    // Wall time spent producing raw values, when the oracle measures it.
    virtual double sampling_seconds() const { return 0.0; }

protected:
    virtual cplx eval(std::span<const i64> t) const = 0;
    void count_one() const { count_.fetch_add(1, std::memory_order_relaxed); }

private:
    i64 n_;
    int d_;
    mutable std::atomic<u64> count_{0};
};

struct Mode {
    std::vector<i64> freq;  // canonical components in [0, N)
    cplx coef;
};

// B-term representation: list of distinct (frequency vector, coefficient)
// pairs over Z_N^d.
class SparseRepresentation {
public:
    SparseRepresentation(i64 n, int d);

    i64 length() const { return n_; }
    int dim() const { return d_; }
    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }

    // Frequencies are reduced mod N; an existing entry accumulates.
    void add(std::vector<i64> freq, cplx coef);
    void add(i64 freq, cplx coef);  // 1-D convenience

    const Mode* find(std::span<const i64> freq) const;
    Mode* find(std::span<const i64> freq);

    cplx evaluate(std::span<const i64> t) const;
    cplx evaluate1(i64 t) const;

    double energy() const;  // sum |coef|^2, exact by Parseval

    void prune_below(double amplitude);
    void keep_largest(std::size_t b);
    void sort_by_frequency();

private:
    i64 n_;
    int d_;
    std::vector<Mode> modes_;
};

cplx evaluate_sparse(const SparseRepresentation& rep, std::span<const i64> t);

enum class SignalKind { superposition, decay_spectrum };

struct GeneratedSignalSpec {
    i64 n = 0;
    int d = 1;
    SignalKind kind = SignalKind::superposition;
    std::vector<Mode> modes;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
    double clean_energy() const;  // exact for superposition, dense sum for decay
    double snr_db() const;        // 10*log10(||S_clean||^2 / (N^d * sigma^2))
};

std::shared_ptr<SignalOracle> generate_signal(const GeneratedSignalSpec& spec);

// Oracle for S - R; raw samples are forwarded to (and tallied by) the parent.
std::shared_ptr<SignalOracle> residual_oracle(std::shared_ptr<const SignalOracle> s,
                                              SparseRepresentation rep);

// Dense in-memory signal exposed through the oracle interface.
class DenseOracle : public SignalOracle {
public:
    DenseOracle(std::vector<cplx> values, i64 n, int d);
    const std::vector<cplx>& values() const { return values_; }

protected:
    cplx eval(std::span<const i64> t) const override;

private:
    std::vector<cplx> values_;
};

// Materialize an oracle (for tests and the dense baseline path).
std::vector<cplx> materialize(const SignalOracle& s);

i64 linear_index(std::span<const i64> t, i64 n);

}  // namespace ralsfa
