#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhc/model.hpp"

namespace fhc {

/// One activity grid point of a phase scan, with the sign diagnostics
/// h, g, l, q, w evaluated at the symmetric fixed point.
struct ScanRecord {
    double lambda = 0;
    double z1 = 0, z2 = 0;
    double s1 = 0, s2 = 0, s0 = 0;
    double ks = 0, kappa = 0, msw = 0;
    std::string verdict;
    double h = 0;  // z - 1/2
    double g = 0;  // (sqrt(3)-1) z - 1
    double l = 0;  // z - 1
    double q = 0;  // (sqrt(3)-1) z - 1
    double w = 0;  // z - sqrt(3) + 1
};

struct ScanResult {
    std::vector<ScanRecord> records;
    bool any_error = false;  // some grid point failed to solve
};

ScanResult run_scan(const GraphSpec& graph, int k, double lambda_min,
                    double lambda_max, int steps, bool log_spacing);

/// Header `lambda,z1,z2,s1,s2,s0,ks,kappa,msw,verdict,h,g,l,q,w`;
/// numbers at 17 significant digits.
void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records);

std::vector<ScanRecord> parse_scan_csv(std::istream& is);

/// Activity at which a symmetric-z diagnostic (z - pivot) changes sign,
/// located by bisection in lambda.
double diagnostic_flip_lambda(const GraphSpec& graph, int k, double z_pivot);

}  // namespace fhc
