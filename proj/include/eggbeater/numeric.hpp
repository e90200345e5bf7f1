#pragma once

#include <cstdio>
#include <string>

namespace eggbeater {

// Compensated (Neumaier) accumulator for long quadrature sums.
class KahanSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

// 17 significant digits: enough to round-trip an IEEE double exactly, so
// serialized outputs are reproducible byte for byte.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace eggbeater
