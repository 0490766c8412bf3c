#include "ralsfa/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ralsfa {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'R', 'L', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

std::string kind_name(SignalKind kind) {
    return kind == SignalKind::superposition ? "superposition" : "decay_spectrum";
}

SignalKind kind_from_name(const std::string& name) {
    if (name == "superposition") return SignalKind::superposition;
    if (name == "decay_spectrum") return SignalKind::decay_spectrum;
    throw std::invalid_argument("unknown signal kind: " + name);
}

template <typename T>
void write_raw(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("truncated RLSF stream");
    return value;
}

}  // namespace

GeneratedSignalSpec spec_from_json(const std::string& text) {
    json j = json::parse(text);
    GeneratedSignalSpec spec;
    spec.n = j.at("n").get<i64>();
    spec.d = j.value("d", 1);
    spec.kind = kind_from_name(j.value("kind", std::string("superposition")));
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.seed = j.value("seed", u64{0});
    for (const json& m : j.value("modes", json::array())) {
        Mode mode;
        mode.freq = m.at("freq").get<std::vector<i64>>();
        mode.coef = {m.value("re", 0.0), m.value("im", 0.0)};
        spec.modes.push_back(std::move(mode));
    }
    spec.validate();
    return spec;
}

std::string spec_to_json(const GeneratedSignalSpec& spec) {
    json modes = json::array();
    for (const Mode& m : spec.modes)
        modes.push_back({{"freq", m.freq}, {"re", m.coef.real()}, {"im", m.coef.imag()}});
    json j{{"n", spec.n},
           {"d", spec.d},
           {"kind", kind_name(spec.kind)},
           {"modes", std::move(modes)},
           {"noise_sigma", spec.noise_sigma},
           {"seed", spec.seed}};
    return j.dump(2);
}

void write_rlsf(std::ostream& out, const DenseSignal& sig) {
    i64 total = 1;
    for (int i = 0; i < sig.d; ++i) total *= sig.n;
    if (sig.n < 1 || sig.d < 1 || static_cast<i64>(sig.data.size()) != total)
        throw std::invalid_argument("RLSF: buffer size does not match n^d");
    out.write(kMagic, sizeof(kMagic));
    write_raw(out, kVersion);
    write_raw(out, static_cast<std::uint64_t>(sig.n));
    write_raw(out, static_cast<std::uint32_t>(sig.d));
    for (const cplx& v : sig.data) {
        write_raw(out, v.real());
        write_raw(out, v.imag());
    }
    if (!out) throw std::runtime_error("RLSF write failed");
}

void write_rlsf_file(const std::string& path, const DenseSignal& sig) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_rlsf(out, sig);
}

DenseSignal read_rlsf(std::istream& in) {
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not an RLSF stream");
    if (read_raw<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported RLSF version");
    DenseSignal sig;
    sig.n = static_cast<i64>(read_raw<std::uint64_t>(in));
    sig.d = static_cast<int>(read_raw<std::uint32_t>(in));
    if (sig.n < 1 || sig.d < 1 || sig.d > 16) throw std::runtime_error("bad RLSF header");
    i64 total = 1;
    for (int i = 0; i < sig.d; ++i) {
        if (total > (i64{1} << 40) / sig.n) throw std::runtime_error("RLSF size overflow");
        total *= sig.n;
    }
    sig.data.reserve(static_cast<std::size_t>(total));
    for (i64 i = 0; i < total; ++i) {
        const double re = read_raw<double>(in);
        const double im = read_raw<double>(in);
        sig.data.emplace_back(re, im);
    }
    return sig;
}

DenseSignal read_rlsf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_rlsf(in);
}

std::string report_to_json(const RecoveryReport& report) {
    json modes = json::array();
    for (const Mode& m : report.representation.modes())
        modes.push_back({{"freq", m.freq}, {"re", m.coef.real()}, {"im", m.coef.imag()}});
    json trace = json::array();
    for (const IterationTrace& it : report.trace) {
        json cands = json::array();
        for (const TraceMode& c : it.candidates)
            cands.push_back({{"freq", c.freq},
                             {"re", c.coef.real()},
                             {"im", c.coef.imag()},
                             {"accepted", c.accepted}});
        trace.push_back({{"residual_estimate", it.residual_estimate}, {"candidates", std::move(cands)}});
    }
    json j{{"n", report.representation.length()},
           {"d", report.representation.dim()},
           {"modes", std::move(modes)},
           {"iterations_used", report.iterations_used},
           {"samples_used", report.samples_used},
           {"wall_total_s", report.wall_total_s},
           {"wall_excl_sampling_s", report.wall_excl_sampling_s},
           {"residual_energy_estimate", report.residual_energy_estimate},
           {"significance_cutoff_used", report.significance_cutoff_used},
           {"exhausted", report.exhausted},
           {"trace", std::move(trace)}};
    return j.dump(2);
}

std::string report_csv_header() {
    return "n,d,b,seed,success,iterations,samples,t_total_s,t_excl_sampling_s,residual";
}

std::string report_csv_row(const ReportRow& row) {
    std::ostringstream out;
    out.precision(9);
    out << row.n << ',' << row.d << ',' << row.b << ',' << row.seed << ','
        << (row.success ? 1 : 0) << ',' << row.iterations << ',' << row.samples << ','
        << row.t_total_s << ',' << row.t_excl_sampling_s << ',' << row.residual;
    return out.str();
}

}  // namespace ralsfa
