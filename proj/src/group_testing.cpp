#include "ralsfa/group_testing.hpp"

#include <algorithm>
#include <stdexcept>

namespace ralsfa {

void MsbParams::validate() const {
    if (k < 1) throw std::invalid_argument("msb filter half-width must be >= 1");
    if (eta_compare <= 0.0 || eta_compare >= 1.0)
        throw std::invalid_argument("eta_compare must lie in (0,1)");
    energy.validate();
}

MsbResult msb(std::shared_ptr<const SignalOracle> f, const MsbParams& p, RngStream& rng) {
    p.validate();
    if (f->dim() != 1) throw std::invalid_argument("msb is 1-D");
    const int w = p.band_count();

    std::vector<double> e(static_cast<std::size_t>(w));
    for (int j = 0; j < w; ++j) {
        auto band = convolved_oracle(f, BoxCarFilter{p.k}, static_cast<double>(j), w);
        e[static_cast<std::size_t>(j)] = estimate_energy(*band, p.energy, rng);
    }

    int l = 0;
    for (int j = 1; j < w; ++j)
        if (e[static_cast<std::size_t>(j)] > e[static_cast<std::size_t>(l)]) l = j;
    if (e[static_cast<std::size_t>(l)] == 0.0) return {0.0, w, true};

    std::vector<char> small(static_cast<std::size_t>(w));
    for (int j = 0; j < w; ++j)
        small[static_cast<std::size_t>(j)] =
            e[static_cast<std::size_t>(j)] < p.eta_compare * e[static_cast<std::size_t>(l)];

    // longest cyclic run of consecutive small bands, ties to the smallest start
    int best_start = 0, best_len = 0;
    for (int start = 0; start < w; ++start) {
        if (!small[static_cast<std::size_t>(start)]) continue;
        if (small[static_cast<std::size_t>((start + w - 1) % w)] && best_len > 0) continue;
        int len = 0;
        while (len < w && small[static_cast<std::size_t>((start + len) % w)]) ++len;
        if (len > best_len) {
            best_len = len;
            best_start = start;
        }
    }

    int c = w - best_len;
    if (c > w / 2) return {static_cast<double>(l), 2, false};
    const double v = mod_real(static_cast<double>(best_start + best_len) + 0.5 * (c - 1),
                              static_cast<double>(w));
    return {v, c, false};
}

GroupTestState::GroupTestState(i64 n_, int bands_) : n(n_), bands(bands_), width(static_cast<double>(n_)) {
    if (n < 2 || bands < 2) throw std::invalid_argument("bad group-test geometry");
}

i64 GroupTestState::dilation() const {
    i64 q = static_cast<i64>(std::floor(static_cast<double>(n) / width));
    return std::clamp<i64>(q, 1, n);
}

void GroupTestState::update(double v, int c) {
    const i64 q = dilation();
    const double nn = static_cast<double>(n);
    const double bw = nn / static_cast<double>(bands);
    const double valid = static_cast<double>(q) * width;  // the mode's working freq is in here

    // cluster arc, trimmed symmetrically so every round shrinks the interval
    double len = std::min(static_cast<double>(c) * bw, nn);
    len = std::min(len, 0.8 * valid);
    const double center = mod_real(v * bw, nn);
    double f_lo = center - 0.5 * len;

    // the arc is cyclic: pick the representative that meets [0, valid)
    double best_shift = 0.0, best_overlap = -1.0;
    int admissible_pieces = 0;
    for (int k = -1; k <= 1; ++k) {
        const double a = f_lo + k * nn;
        const double ov = std::min(a + len, valid) - std::max(a, 0.0);
        if (ov > 0.0) ++admissible_pieces;
        if (ov > best_overlap) {
            best_overlap = ov;
            best_shift = k * nn;
        }
    }
    f_lo += best_shift;
    double f_hi = f_lo + len;
    // a unique admissible piece can be clipped to; if the arc straddles the
    // seam (two pieces) keep all of it and let the cyclic phases sort it out
    if (admissible_pieces == 1 && best_overlap > 0.0) {
        f_lo = std::max(f_lo, 0.0);
        f_hi = std::min(f_hi, valid);
    }
    lo += f_lo / static_cast<double>(q);
    width = (f_hi - f_lo) / static_cast<double>(q);
}

GroupTestResult group_test(std::shared_ptr<const SignalOracle> f, const MsbParams& p,
                           RngStream& rng, int max_rounds) {
    p.validate();
    if (f->dim() != 1) throw std::invalid_argument("group test is 1-D");
    GroupTestState st(f->length(), p.band_count());
    GroupTestResult out;
    while (!st.done()) {
        if (out.rounds >= max_rounds) return out;  // no convergence, located stays empty
        auto working = dilated_modulated_oracle(f, st.dilation(), st.modulation());
        MsbResult r = msb(working, p, rng);
        ++out.rounds;
        if (r.dead) {
            out.dead = true;
            return out;
        }
        st.update(r.v, r.c);
    }
    out.located = st.result();
    return out;
}

i64 neighbor_refine(const SignalOracle& s, i64 omega, i64 radius,
                    const CoefficientEstimatorParams& est, RngStream& rng) {
    if (radius < 0) throw std::invalid_argument("neighbor radius must be >= 0");
    const i64 n = s.length();
    i64 best = mod_n(omega, n);
    if (radius == 0) return best;
    double best_mag = -1.0;
    for (i64 c = omega - radius; c <= omega + radius; ++c) {
        const i64 w = mod_n(c, n);
        const double mag = std::abs(estimate_coefficient(s, w, est, rng));
        if (mag > best_mag || (mag == best_mag && w < best)) {
            best_mag = mag;
            best = w;
        }
    }
    return best;
}

}  // namespace ralsfa
