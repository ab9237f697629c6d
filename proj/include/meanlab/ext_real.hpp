#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "meanlab/errors.hpp"

namespace meanlab {

// Value on the extended half-line R u {+inf}.  +inf is a tagged state, never
// an IEEE infinity travelling through arithmetic, so no operation can produce
// a NaN.  The sign conventions are the ones convex duality needs:
//
//   c * (+inf) = +inf for every c >= 0  (including c = 0),
//   (+inf) - (+inf) = +inf,
//   finite - (+inf) is an error.
class ExtReal {
  public:
    ExtReal() : v_(0.0), inf_(false) {}
    ExtReal(double v) : v_(v), inf_(false) { // NOLINT: implicit by design
        if (std::isnan(v)) throw Error("NaN cannot enter an ExtReal");
        if (std::isinf(v)) throw Error("use ExtReal::inf() for the infinite state");
    }

    static ExtReal inf() {
        ExtReal r;
        r.inf_ = true;
        return r;
    }

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }

    // Finite payload; calling this on the infinite state is a logic error.
    double value() const {
        if (inf_) throw Error("value() called on +inf");
        return v_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

  private:
    double v_;
    bool inf_;
};

inline ExtReal ext_add(const ExtReal& x, const ExtReal& y) {
    if (x.is_inf() || y.is_inf()) return ExtReal::inf();
    return ExtReal(x.value() + y.value());
}

// x - y.  +inf - anything = +inf (including +inf - +inf); finite - +inf throws.
inline ExtReal ext_sub(const ExtReal& x, const ExtReal& y) {
    if (x.is_inf()) return ExtReal::inf();
    if (y.is_inf()) throw FiniteMinusInf();
    return ExtReal(x.value() - y.value());
}

// c * x with c >= 0; note 0 * (+inf) = +inf, which keeps weighted combinations
// of functions with different effective domains lower semicontinuous.
inline ExtReal ext_scale(double c, const ExtReal& x) {
    if (std::isnan(c)) throw Error("NaN scale factor");
    if (c < 0.0) throw NegativeScale(c);
    if (x.is_inf()) return ExtReal::inf();
    return ExtReal(c * x.value());
}

inline std::string to_string(const ExtReal& x) {
    if (x.is_inf()) return "inf";
    return std::to_string(x.value());
}

} // namespace meanlab
