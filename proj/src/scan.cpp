#include "fhc/scan.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>

#include "fhc/extremality.hpp"

namespace fhc {

namespace {

const double kSqrt3 = std::sqrt(3.0);

ScanRecord record_at(const GraphSpec& graph, int k, double lambda) {
    ScanRecord rec;
    rec.lambda = lambda;
    try {
        auto rep = classify(ModelParams(graph, k, lambda));
        rec.z1 = rep.fixed_point.z1;
        rec.z2 = rep.fixed_point.z2;
        rec.s1 = rep.spectrum.s1;
        rec.s2 = rep.spectrum.s2;
        rec.s0 = rep.spectrum.s0;
        rec.ks = rep.ks_value;
        rec.kappa = rep.kappa;
        rec.msw = rep.msw_value;
        rec.verdict = to_string(rep.verdict);
        double z = rep.fixed_point.z1;
        rec.h = z - 0.5;
        rec.g = (kSqrt3 - 1.0) * z - 1.0;
        rec.l = z - 1.0;
        rec.q = (kSqrt3 - 1.0) * z - 1.0;
        rec.w = z - kSqrt3 + 1.0;
    } catch (const std::exception&) {
        rec.verdict = "error";
    }
    return rec;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ScanResult run_scan(const GraphSpec& graph, int k, double lambda_min,
                    double lambda_max, int steps, bool log_spacing) {
    if (!(lambda_min > 0) || !(lambda_max > lambda_min) || steps < 2)
        throw InvalidParameter("scan needs 0 < lambda_min < lambda_max, steps >= 2");

    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) {
        double t = double(i) / (steps - 1);
        grid[i] = log_spacing
                      ? lambda_min * std::pow(lambda_max / lambda_min, t)
                      : lambda_min + t * (lambda_max - lambda_min);
    }

    // evaluate grid points concurrently, emit in lambda order
    const int chunk = 64;
    std::vector<std::future<std::vector<ScanRecord>>> futures;
    for (int begin = 0; begin < steps; begin += chunk) {
        int end = std::min(steps, begin + chunk);
        futures.push_back(std::async(std::launch::async, [&, begin, end] {
            std::vector<ScanRecord> part;
            part.reserve(end - begin);
            for (int i = begin; i < end; ++i)
                part.push_back(record_at(graph, k, grid[i]));
            return part;
        }));
    }

    ScanResult out;
    for (auto& f : futures)
        for (auto& rec : f.get()) {
            if (rec.verdict == "error") out.any_error = true;
            out.records.push_back(std::move(rec));
        }
    return out;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << "lambda,z1,z2,s1,s2,s0,ks,kappa,msw,verdict,h,g,l,q,w\n";
    for (const auto& r : records) {
        os << fmt17(r.lambda) << ',' << fmt17(r.z1) << ',' << fmt17(r.z2) << ','
           << fmt17(r.s1) << ',' << fmt17(r.s2) << ',' << fmt17(r.s0) << ','
           << fmt17(r.ks) << ',' << fmt17(r.kappa) << ',' << fmt17(r.msw) << ','
           << r.verdict << ',' << fmt17(r.h) << ',' << fmt17(r.g) << ','
           << fmt17(r.l) << ',' << fmt17(r.q) << ',' << fmt17(r.w) << '\n';
    }
}

std::vector<ScanRecord> parse_scan_csv(std::istream& is) {
    std::vector<ScanRecord> out;
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 15) throw InvalidParameter("malformed scan CSV row");
        ScanRecord r;
        r.lambda = std::stod(fields[0]);
        r.z1 = std::stod(fields[1]);
        r.z2 = std::stod(fields[2]);
        r.s1 = std::stod(fields[3]);
        r.s2 = std::stod(fields[4]);
        r.s0 = std::stod(fields[5]);
        r.ks = std::stod(fields[6]);
        r.kappa = std::stod(fields[7]);
        r.msw = std::stod(fields[8]);
        r.verdict = fields[9];
        r.h = std::stod(fields[10]);
        r.g = std::stod(fields[11]);
        r.l = std::stod(fields[12]);
        r.q = std::stod(fields[13]);
        r.w = std::stod(fields[14]);
        out.push_back(std::move(r));
    }
    return out;
}

double diagnostic_flip_lambda(const GraphSpec& graph, int k, double z_pivot) {
    auto zdiff = [&](double lam) {
        return solve_symmetric(ModelParams(graph, k, lam)).z1 - z_pivot;
    };
    double lo = 1e-6, hi = 1e6;
    if (zdiff(lo) >= 0 || zdiff(hi) <= 0)
        throw NonConvergence("diagnostic pivot not bracketed");
    // z(lambda) is strictly increasing, so one sign change
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (zdiff(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace fhc
