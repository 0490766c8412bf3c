#include "ralsfa/affine.hpp"
#include "ralsfa/recovery.hpp"
#include "ralsfa/transform.hpp"

#include <stdexcept>

#include "recovery_driver.hpp"

namespace ralsfa {

namespace {

i64 at(const std::vector<i64>& m, int d, int r, int c) {
    return m[static_cast<std::size_t>(r * d + c)];
}

i64 minor_det(const std::vector<i64>& m, int d, i64 n, std::vector<int>& rows,
              std::vector<int>& cols) {
    const int sz = static_cast<int>(rows.size());
    if (sz == 1) return mod_n(at(m, d, rows[0], cols[0]), n);
    i64 det = 0;
    const int r0 = rows[0];
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (int j = 0; j < sz; ++j) {
        std::vector<int> sub_cols;
        sub_cols.reserve(static_cast<std::size_t>(sz - 1));
        for (int jj = 0; jj < sz; ++jj)
            if (jj != j) sub_cols.push_back(cols[jj]);
        i64 term = mod_n(at(m, d, r0, cols[static_cast<std::size_t>(j)]) *
                             minor_det(m, d, n, sub_rows, sub_cols),
                         n);
        det = mod_n(j % 2 == 0 ? det + term : det - term, n);
    }
    return det;
}

}  // namespace

i64 det_mod(const std::vector<i64>& a, int d, i64 n) {
    if (d < 1 || static_cast<int>(a.size()) != d * d || n < 2)
        throw std::invalid_argument("det_mod: bad shape");
    std::vector<int> rows(static_cast<std::size_t>(d)), cols(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) rows[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)] = i;
    return minor_det(a, d, n, rows, cols);
}

std::optional<std::vector<i64>> matrix_inverse_mod(const std::vector<i64>& a, int d, i64 n) {
    const i64 det = det_mod(a, d, n);
    if (det == 0) return std::nullopt;
    const auto det_inv = mod_inverse(det, n);
    if (!det_inv) return std::nullopt;
    std::vector<i64> inv(static_cast<std::size_t>(d * d));
    if (d == 1) {
        inv[0] = *det_inv;
        return inv;
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::vector<int> rows, cols;
            for (int r = 0; r < d; ++r)
                if (r != i) rows.push_back(r);
            for (int c = 0; c < d; ++c)
                if (c != j) cols.push_back(c);
            i64 cof = minor_det(a, d, n, rows, cols);
            if ((i + j) % 2 != 0) cof = mod_n(-cof, n);
            // adjugate transposes the cofactor matrix
            inv[static_cast<std::size_t>(j * d + i)] = mod_n(cof * *det_inv, n);
        }
    }
    return inv;
}

std::vector<i64> AffinePermutationND::forward_freq(std::span<const i64> w) const {
    if (static_cast<int>(w.size()) != d) throw std::invalid_argument("frequency dimension mismatch");
    std::vector<i64> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        i64 acc = offset[static_cast<std::size_t>(i)];
        for (int j = 0; j < d; ++j)
            acc = mod_n(acc + at(a, d, i, j) * mod_n(w[static_cast<std::size_t>(j)], n), n);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::vector<i64> AffinePermutationND::original_freq(std::span<const i64> w_prime) const {
    if (static_cast<int>(w_prime.size()) != d)
        throw std::invalid_argument("frequency dimension mismatch");
    std::vector<i64> shifted(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        shifted[static_cast<std::size_t>(i)] =
            mod_n(w_prime[static_cast<std::size_t>(i)] - offset[static_cast<std::size_t>(i)], n);
    std::vector<i64> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        i64 acc = 0;
        for (int j = 0; j < d; ++j)
            acc = mod_n(acc + at(a_inv, d, i, j) * shifted[static_cast<std::size_t>(j)], n);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

AffinePermutationND random_affine_permutation(int d, i64 n, RngStream& rng, int max_retries) {
    if (d < 1 || n < 2) throw std::invalid_argument("bad affine permutation shape");
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        AffinePermutationND p;
        p.n = n;
        p.d = d;
        p.a.resize(static_cast<std::size_t>(d * d));
        p.offset.resize(static_cast<std::size_t>(d));
        for (i64& e : p.a) e = rng.uniform_index(n);
        for (i64& e : p.offset) e = rng.uniform_index(n);
        auto inv = matrix_inverse_mod(p.a, d, n);
        if (!inv) continue;
        p.a_inv = std::move(*inv);
        return p;
    }
    throw std::runtime_error("could not draw an invertible matrix mod N");
}

namespace {

class AffinePermutedOracle : public SignalOracle {
public:
    AffinePermutedOracle(std::shared_ptr<const SignalOracle> s, AffinePermutationND p)
        : SignalOracle(s->length(), s->dim()), parent_(std::move(s)), perm_(std::move(p)) {
        if (perm_.d != dim() || perm_.n != length())
            throw std::invalid_argument("affine permutation shape mismatch");
    }

    double sampling_seconds() const override { return parent_->sampling_seconds(); }

protected:
    cplx eval(std::span<const i64> t) const override {
        const i64 n = length();
        const int d = dim();
        std::vector<i64> pos(static_cast<std::size_t>(d));
        i64 phase = 0;
        for (int j = 0; j < d; ++j) {
            i64 acc = 0;
            for (int i = 0; i < d; ++i)
                acc = mod_n(acc + perm_.a[static_cast<std::size_t>(i * d + j)] *
                                      t[static_cast<std::size_t>(i)],
                            n);
            pos[static_cast<std::size_t>(j)] = acc;
        }
        for (int i = 0; i < d; ++i)
            phase = mod_n(phase + perm_.offset[static_cast<std::size_t>(i)] *
                                      t[static_cast<std::size_t>(i)],
                          n);
        return unit_phase(static_cast<double>(phase), static_cast<double>(n)) *
               parent_->sample(pos);
    }

private:
    std::shared_ptr<const SignalOracle> parent_;
    AffinePermutationND perm_;
};

class AxisSliceOracle : public SignalOracle {
public:
    AxisSliceOracle(std::shared_ptr<const SignalOracle> s, int axis, std::vector<i64> base)
        : SignalOracle(s->length(), 1), parent_(std::move(s)), axis_(axis), base_(std::move(base)) {
        if (axis_ < 0 || axis_ >= parent_->dim() ||
            static_cast<int>(base_.size()) != parent_->dim())
            throw std::invalid_argument("bad axis slice");
    }

    double sampling_seconds() const override { return parent_->sampling_seconds(); }

protected:
    cplx eval(std::span<const i64> t) const override {
        std::vector<i64> idx = base_;
        idx[static_cast<std::size_t>(axis_)] = t[0];
        return parent_->sample(idx);
    }

private:
    std::shared_ptr<const SignalOracle> parent_;
    int axis_;
    std::vector<i64> base_;
};

}  // namespace

std::shared_ptr<SignalOracle> affine_permuted_oracle(std::shared_ptr<const SignalOracle> s,
                                                     AffinePermutationND perm) {
    return std::make_shared<AffinePermutedOracle>(std::move(s), std::move(perm));
}

std::shared_ptr<SignalOracle> axis_slice_oracle(std::shared_ptr<const SignalOracle> s, int axis,
                                                std::vector<i64> base) {
    return std::make_shared<AxisSliceOracle>(std::move(s), axis, std::move(base));
}

RecoveryReport recover_nd(std::shared_ptr<const SignalOracle> s, const RecoveryParams& p,
                          u64 seed) {
    if (s->dim() == 1) return recover(std::move(s), p, seed);
    auto locate = [&p](const std::shared_ptr<const SignalOracle>& resid, u64 sd,
                       i64 it) -> std::vector<std::vector<i64>> {
        const i64 n = resid->length();
        const int d = resid->dim();
        RngStream rng = RngStream::derive(sd, static_cast<u64>(it), 30);

        MsbParams mp;
        mp.k = p.k_msb;
        mp.theory = p.msb_theory;
        mp.energy.r = p.msb_energy_r;
        const BoxCarFilter filter{p.effective_k_isolation()};

        std::vector<std::vector<i64>> cands;
        for (int rep = 0; rep < p.effective_repetitions(); ++rep) {
            AffinePermutationND aff = random_affine_permutation(d, n, rng);
            auto permuted = affine_permuted_oracle(resid, aff);
            const int iso_axis = static_cast<int>(rng.uniform_index(d));
            auto iso = convolved_oracle(permuted, filter, 0.0, 1, iso_axis);

            // one base point shared by all of this candidate's axis views
            std::vector<i64> base(static_cast<std::size_t>(d));
            for (i64& c : base) c = rng.uniform_index(n);

            std::vector<i64> w_prime(static_cast<std::size_t>(d));
            bool located_all = true;
            for (int axis = 0; axis < d; ++axis) {
                auto view = axis_slice_oracle(iso, axis, base);
                GroupTestResult gt = group_test(view, mp, rng);
                if (!gt.located) {
                    located_all = false;
                    break;
                }
                w_prime[static_cast<std::size_t>(axis)] = *gt.located;
            }
            if (located_all) cands.push_back(aff.original_freq(w_prime));
        }
        return cands;
    };
    return detail::run_greedy(std::move(s), p, seed, locate);
}

}  // namespace ralsfa
