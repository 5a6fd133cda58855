#include "isoconic/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace isoconic {

std::string format_exact(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

std::string format_human(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.15g", v);
    return buf.data();
}

void write_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "delta";
    for (Metric m : report.metrics) out << ',' << to_string(m);
    out << '\n';
    for (const SweepRow& row : report.rows) {
        out << format_exact(row.delta);
        for (double v : row.values) out << ',' << format_exact(v);
        out << '\n';
    }
    out << "empirical_order";
    for (const MetricFit& f : report.fits) {
        out << ',' << (f.estimate.order ? format_exact(*f.estimate.order) : "undefined");
    }
    out << "\nratios_used";
    for (const MetricFit& f : report.fits) out << ',' << f.estimate.n_used;
    out << "\nconstant";
    for (const MetricFit& f : report.fits) {
        out << ',' << (f.constant ? format_exact(*f.constant) : "undefined");
    }
    out << '\n';
    if (report.truncated) {
        std::string reason = *report.truncated;
        for (char& c : reason) {
            if (c == ',' || c == '\n') c = ';';
        }
        out << "truncated," << reason << '\n';
    }
}

}  // namespace isoconic
