#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ralsfa/recovery.hpp"
#include "ralsfa/signal.hpp"

namespace ralsfa {

// Signal spec JSON: {n, d, kind, modes:[{freq:[...], re, im}], noise_sigma, seed}.
GeneratedSignalSpec spec_from_json(const std::string& text);
std::string spec_to_json(const GeneratedSignalSpec& spec);

struct DenseSignal {
    std::vector<cplx> data;  // row-major
    i64 n = 0;
    int d = 1;
};

// RLSF dense dump: magic "RLSF", u32 version=1, u64 n, u32 d, then N^d
// little-endian f64 (re, im) pairs in row-major order.
void write_rlsf(std::ostream& out, const DenseSignal& sig);
void write_rlsf_file(const std::string& path, const DenseSignal& sig);
DenseSignal read_rlsf(std::istream& in);
DenseSignal read_rlsf_file(const std::string& path);

// Full recovery report, trace included.
std::string report_to_json(const RecoveryReport& report);

// One CSV summary line per run; success is determined by the caller.
struct ReportRow {
    i64 n = 0;
    int d = 1;
    i64 b = 0;
    u64 seed = 0;
    bool success = false;
    i64 iterations = 0;
    u64 samples = 0;
    double t_total_s = 0.0;
    double t_excl_sampling_s = 0.0;
    double residual = 0.0;
};

std::string report_csv_header();
std::string report_csv_row(const ReportRow& row);

}  // namespace ralsfa
