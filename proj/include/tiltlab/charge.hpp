#pragma once

#include "tiltlab/rational.hpp"

namespace tiltlab {

/// Value of a central charge: an exact point of Q + Q*sqrt(-1).
struct Charge {
    Rational re;
    Rational im;

    friend Charge operator+(const Charge& x, const Charge& y) { return {x.re + y.re, x.im + y.im}; }
    friend Charge operator-(const Charge& x, const Charge& y) { return {x.re - y.re, x.im - y.im}; }
    friend bool operator==(const Charge&, const Charge&) = default;
};

}  // namespace tiltlab
