#pragma once

#include <iosfwd>
#include <vector>

#include "meanlab/ext_real.hpp"

namespace meanlab {

// Extended-real-valued function sampled on a uniform grid over [lo, hi].
// Invariants: lo < hi, at least 3 samples, at least one finite sample.
class GridFn {
  public:
    GridFn(double lo, double hi, std::vector<ExtReal> values);

    // Samples fn at n uniform points; fn may return ExtReal::inf().
    template <class F>
    static GridFn sample(double lo, double hi, int n, F&& fn) {
        std::vector<ExtReal> v;
        v.reserve(static_cast<size_t>(n));
        const double h = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i) v.push_back(fn(lo + i * h));
        return GridFn(lo, hi, std::move(v));
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    int size() const { return static_cast<int>(values_.size()); }
    double spacing() const { return (hi_ - lo_) / (size() - 1); }
    double x(int i) const { return lo_ + i * spacing(); }
    const ExtReal& operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    const std::vector<ExtReal>& values() const { return values_; }

    bool same_grid(const GridFn& other) const {
        return lo_ == other.lo_ && hi_ == other.hi_ && size() == other.size();
    }

    // Round-trippable CSV with header "x,value"; +inf serialises as "inf".
    void write_csv(std::ostream& os) const;
    static GridFn read_csv(std::istream& is);

  private:
    double lo_, hi_;
    std::vector<ExtReal> values_;
};

} // namespace meanlab
