#ifndef PINLAB_SLOWLY_VARYING_HPP
#define PINLAB_SLOWLY_VARYING_HPP

#include <cmath>
#include <stdexcept>

namespace pinlab {

// Slowly varying modulation L(n) of the inter-arrival tail.
// Two registered kinds: a positive constant, and (log(n + offset))^exponent
// with offset >= 2 so the log stays positive on n >= 1.
struct SlowlyVarying {
    enum class Kind { constant, log_power };

    Kind kind = Kind::constant;
    double c = 1.0;         // constant kind
    double exponent = 0.0;  // log_power kind
    double offset = 2.0;    // log_power kind

    static SlowlyVarying constant(double value) {
        if (!(value > 0.0))
            throw std::invalid_argument("SlowlyVarying: constant must be > 0");
        SlowlyVarying l;
        l.kind = Kind::constant;
        l.c = value;
        return l;
    }

    static SlowlyVarying log_power(double exponent, double offset = 2.0) {
        if (!(offset >= 2.0))
            throw std::invalid_argument("SlowlyVarying: offset must be >= 2");
        SlowlyVarying l;
        l.kind = Kind::log_power;
        l.exponent = exponent;
        l.offset = offset;
        return l;
    }

    double operator()(double n) const {
        switch (kind) {
            case Kind::constant:
                return c;
            case Kind::log_power:
                return std::pow(std::log(n + offset), exponent);
        }
        return c;
    }

    bool is_constant() const { return kind == Kind::constant; }
};

}  // namespace pinlab

#endif
