#include "ralsfa/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ralsfa {

double DenseSpectrum::energy() const {
    double e = 0.0;
    for (cplx c : coef) e += std::norm(c);
    return e;
}

namespace {

i64 total_points(i64 n, int d) {
    i64 total = 1;
    for (int i = 0; i < d; ++i) total *= n;
    return total;
}

void check_shape(const std::vector<cplx>& dense, i64 n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("bad transform shape");
    if (static_cast<i64>(dense.size()) != total_points(n, d))
        throw std::invalid_argument("dense buffer size does not match n^d");
}

// Unitary 1-D naive transform of one stride-strided line, sign = -1 forward.
void line_dft_naive(const cplx* in, cplx* out, i64 n, i64 stride, int sign) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (i64 w = 0; w < n; ++w) {
        cplx acc{0.0, 0.0};
        for (i64 t = 0; t < n; ++t)
            acc += in[t * stride] * unit_phase(sign * static_cast<double>(mod_n(w * t, n)),
                                               static_cast<double>(n));
        out[w * stride] = acc * scale;
    }
}

// In-place radix-2, unnormalized, sign = -1 forward.
void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * two_pi / static_cast<double>(len);
        const cplx wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Chirp-z embedding for arbitrary n, unnormalized, sign = -1 forward.
void fft_bluestein(std::vector<cplx>& a, int sign) {
    const i64 n = static_cast<i64>(a.size());
    std::size_t m = std::bit_ceil(static_cast<std::size_t>(2 * n - 1));
    std::vector<cplx> chirp(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i) {
        // i^2 mod 2n keeps the phase argument exact
        i64 sq = static_cast<i64>((static_cast<__int128>(i) * i) % (2 * n));
        chirp[static_cast<std::size_t>(i)] =
            unit_phase(sign * 0.5 * static_cast<double>(sq), static_cast<double>(n));
    }
    std::vector<cplx> x(m, cplx{0.0, 0.0}), y(m, cplx{0.0, 0.0});
    for (i64 i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * chirp[static_cast<std::size_t>(i)];
    y[0] = std::conj(chirp[0]);
    for (i64 i = 1; i < n; ++i)
        y[static_cast<std::size_t>(i)] = y[m - static_cast<std::size_t>(i)] = std::conj(chirp[static_cast<std::size_t>(i)]);
    fft_pow2(x, -1);
    fft_pow2(y, -1);
    for (std::size_t i = 0; i < m; ++i) x[i] *= y[i];
    fft_pow2(x, 1);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (i64 i = 0; i < n; ++i)
        a[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] * chirp[static_cast<std::size_t>(i)] * inv_m;
}

void line_fft(std::vector<cplx>& line, int sign) {
    if (std::has_single_bit(line.size()))
        fft_pow2(line, sign);
    else
        fft_bluestein(line, sign);
}

std::vector<cplx> transform_nd(const std::vector<cplx>& dense, i64 n, int d, int sign) {
    std::vector<cplx> data = dense;
    const i64 total = total_points(n, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // axis ax has stride n^(d-1-ax) in row-major order
    for (int ax = d - 1; ax >= 0; --ax) {
        i64 stride = 1;
        for (int i = ax + 1; i < d; ++i) stride *= n;
        const i64 block = stride * n;
        std::vector<cplx> line(static_cast<std::size_t>(n));
        for (i64 base = 0; base < total; base += block) {
            for (i64 off = 0; off < stride; ++off) {
                cplx* p = data.data() + base + off;
                for (i64 t = 0; t < n; ++t) line[static_cast<std::size_t>(t)] = p[t * stride];
                line_fft(line, sign);
                for (i64 t = 0; t < n; ++t) p[t * stride] = line[static_cast<std::size_t>(t)] * scale;
            }
        }
    }
    return data;
}

}  // namespace

DenseSpectrum dft_naive(const std::vector<cplx>& dense, i64 n, int d, i64 cap) {
    check_shape(dense, n, d);
    if (total_points(n, d) > cap) throw std::length_error("dense transform cap exceeded");
    std::vector<cplx> data = dense;
    const i64 total = total_points(n, d);
    for (int ax = d - 1; ax >= 0; --ax) {
        i64 stride = 1;
        for (int i = ax + 1; i < d; ++i) stride *= n;
        const i64 block = stride * n;
        std::vector<cplx> tmp = data;
        for (i64 base = 0; base < total; base += block)
            for (i64 off = 0; off < stride; ++off)
                line_dft_naive(tmp.data() + base + off, data.data() + base + off, n, stride, -1);
    }
    return {std::move(data), n, d};
}

std::vector<cplx> idft_naive(const DenseSpectrum& spec, i64 cap) {
    check_shape(spec.coef, spec.n, spec.d);
    if (total_points(spec.n, spec.d) > cap) throw std::length_error("dense transform cap exceeded");
    std::vector<cplx> data = spec.coef;
    const i64 total = total_points(spec.n, spec.d);
    for (int ax = spec.d - 1; ax >= 0; --ax) {
        i64 stride = 1;
        for (int i = ax + 1; i < spec.d; ++i) stride *= spec.n;
        const i64 block = stride * spec.n;
        std::vector<cplx> tmp = data;
        for (i64 base = 0; base < total; base += block)
            for (i64 off = 0; off < stride; ++off)
                line_dft_naive(tmp.data() + base + off, data.data() + base + off, spec.n, stride, 1);
    }
    return data;
}

DenseSpectrum fft(const std::vector<cplx>& dense, i64 n, int d) {
    check_shape(dense, n, d);
    return {transform_nd(dense, n, d, -1), n, d};
}

std::vector<cplx> ifft(const DenseSpectrum& spec) {
    check_shape(spec.coef, spec.n, spec.d);
    return transform_nd(spec.coef, spec.n, spec.d, 1);
}

SparseRepresentation top_modes(const DenseSpectrum& spec, i64 b) {
    std::vector<i64> order(spec.coef.size());
    std::iota(order.begin(), order.end(), i64{0});
    const i64 keep = std::min<i64>(b, static_cast<i64>(order.size()));
    std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](i64 a, i64 c) {
        double ea = std::norm(spec.coef[static_cast<std::size_t>(a)]);
        double ec = std::norm(spec.coef[static_cast<std::size_t>(c)]);
        return ea != ec ? ea > ec : a < c;
    });
    SparseRepresentation rep(spec.n, spec.d);
    for (i64 i = 0; i < keep; ++i) {
        i64 li = order[static_cast<std::size_t>(i)];
        if (std::norm(spec.coef[static_cast<std::size_t>(li)]) == 0.0) break;
        std::vector<i64> freq(static_cast<std::size_t>(spec.d));
        for (int ax = spec.d - 1; ax >= 0; --ax) {
            freq[static_cast<std::size_t>(ax)] = li % spec.n;
            li /= spec.n;
        }
        rep.add(std::move(freq), spec.coef[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    }
    return rep;
}

}  // namespace ralsfa
