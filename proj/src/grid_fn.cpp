#include "meanlab/grid_fn.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace meanlab {

GridFn::GridFn(double lo, double hi, std::vector<ExtReal> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
    if (!(lo < hi)) throw BadInterval(lo, hi);
    if (values_.size() < 3) throw Error("grid needs at least 3 samples");
    bool any_finite = false;
    for (const auto& v : values_) any_finite = any_finite || v.is_finite();
    if (!any_finite) throw EmptyDomain();
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& tok, int line) {
    double out = 0.0;
    const auto* begin = tok.data();
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end || std::isnan(out) || std::isinf(out))
        throw Error("csv line " + std::to_string(line) + ": bad number '" + tok + "'");
    return out;
}

} // namespace

void GridFn::write_csv(std::ostream& os) const {
    os << "x,value\n";
    for (int i = 0; i < size(); ++i) {
        os << fmt17(x(i)) << ',';
        if (values_[static_cast<size_t>(i)].is_inf())
            os << "inf";
        else
            os << fmt17(values_[static_cast<size_t>(i)].value());
        os << '\n';
    }
}

GridFn GridFn::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,value") throw Error("csv: expected header 'x,value'");

    std::vector<double> xs;
    std::vector<ExtReal> vals;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error("csv line " + std::to_string(line_no) + ": missing comma");
        xs.push_back(parse_double(line.substr(0, comma), line_no));
        std::string v = line.substr(comma + 1);
        if (v == "inf")
            vals.push_back(ExtReal::inf());
        else
            vals.push_back(ExtReal(parse_double(v, line_no)));
    }
    if (xs.size() < 3) throw Error("csv: need at least 3 samples");

    const double lo = xs.front(), hi = xs.back();
    if (!(lo < hi)) throw BadInterval(lo, hi);
    const double h = (hi - lo) / (static_cast<double>(xs.size()) - 1);
    for (size_t i = 0; i < xs.size(); ++i) {
        if (std::fabs(xs[i] - (lo + static_cast<double>(i) * h)) > 1e-9 * (hi - lo))
            throw Error("csv: x column is not a uniform grid (row " + std::to_string(i + 2) + ")");
    }
    return GridFn(lo, hi, std::move(vals));
}

} // namespace meanlab
