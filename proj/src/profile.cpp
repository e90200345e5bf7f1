#include "eggbeater/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "eggbeater/numeric.hpp"

namespace eggbeater {

namespace {

// Piece layout over the canonical window (-1/8, 7/8]. The four mandated
// formulas own their closed intervals; the gaps carry images of one blend
// chain q(s), s in [0, 0.115]:
//   [-1/8,-0.01]  h =  q(-u - 0.01)   (mirror of the base gap)
//   [0.01, 1/8 ]  h =  q( u - 0.01)   (base gap)
//   [3/8, 0.49 ]  h = -q(0.49 - u)
//   [0.51, 5/8 ]  h = -q( u - 0.51)
enum class Piece {
    MirrorBlend,
    TopCap,
    BaseBlend,
    LinearDown,
    NegMirrorBlend,
    BottomCap,
    NegShiftBlend,
    LinearUp,
};

double cap_eval(double sign, double d, int order) {
    switch (order) {
        case 0: return sign * (1.0 - 50.0 * d * d);
        case 1: return sign * (-100.0 * d);
        default: return sign * (-100.0);
    }
}

double linear_eval(double a, double b, double u, int order) {
    switch (order) {
        case 0: return a + b * u;
        case 1: return b;
        default: return 0.0;
    }
}

double poly_eval(const std::array<double, 6>& c, double s, int order) {
    // Horner on the order-th derivative coefficients.
    double v = 0.0;
    for (int k = 5; k >= order; --k) {
        double fac = 1.0;
        for (int j = 0; j < order; ++j) fac *= static_cast<double>(k - j);
        v = v * s + fac * c[static_cast<std::size_t>(k)];
    }
    return v;
}

double blend_chain_eval(const std::vector<BlendSegment>& chain, double s, int order) {
    s = std::clamp(s, chain.front().s_lo, chain.back().s_hi);
    for (const BlendSegment& seg : chain)
        if (s <= seg.s_hi || &seg == &chain.back()) return poly_eval(seg.c, s, order);
    return poly_eval(chain.back().c, s, order);
}

double eval_piece(const ProfileH& h, Piece piece, double u, int order) {
    switch (piece) {
        case Piece::TopCap: return cap_eval(1.0, u, order);
        case Piece::BottomCap: return cap_eval(-1.0, u - 0.5, order);
        case Piece::LinearDown: return linear_eval(1.25, -5.0, u, order);
        case Piece::LinearUp: return linear_eval(-3.75, 5.0, u, order);
        case Piece::BaseBlend: {
            const double v = blend_chain_eval(h.blend_, u - 0.01, order);
            return v;
        }
        case Piece::MirrorBlend: {
            const double v = blend_chain_eval(h.blend_, -u - 0.01, order);
            return order == 1 ? -v : v;
        }
        case Piece::NegMirrorBlend: {
            const double v = blend_chain_eval(h.blend_, 0.49 - u, order);
            return order == 1 ? v : -v;
        }
        case Piece::NegShiftBlend: {
            const double v = blend_chain_eval(h.blend_, u - 0.51, order);
            return -v;
        }
    }
    return 0.0;
}

Piece piece_at(double u) {
    if (u >= -0.01 && u <= 0.01) return Piece::TopCap;
    if (u >= 0.125 && u <= 0.375) return Piece::LinearDown;
    if (u >= 0.49 && u <= 0.51) return Piece::BottomCap;
    if (u >= 0.625 && u <= 0.875) return Piece::LinearUp;
    if (u > 0.01 && u < 0.125) return Piece::BaseBlend;
    if (u > -0.125 && u < -0.01) return Piece::MirrorBlend;
    if (u > 0.375 && u < 0.49) return Piece::NegMirrorBlend;
    return Piece::NegShiftBlend;
}

double to_window(double t) {
    double u = t - std::floor(t + 0.125);
    // Rounding in t + 0.125 can land u a hair outside (-1/8, 7/8]; the shifts
    // below are exact because the true value is representable.
    if (u <= -0.125)
        u += 1.0;
    else if (u > 0.875)
        u -= 1.0;
    return u;
}

// Quintic with prescribed value / first / second derivative at both ends of
// [0, len]; the low coefficients come straight from the left-end data.
std::array<double, 6> hermite_quintic(double len, double v0, double d0, double s0,
                                      double v1, double d1, double s1) {
    std::array<double, 6> c{};
    c[0] = v0;
    c[1] = d0;
    c[2] = 0.5 * s0;
    const double L2 = len * len, L3 = L2 * len, L4 = L3 * len, L5 = L4 * len;
    double m[3][4] = {
        {L3, L4, L5, v1 - (c[0] + c[1] * len + c[2] * L2)},
        {3 * L2, 4 * L3, 5 * L4, d1 - (c[1] + 2 * c[2] * len)},
        {6 * len, 12 * L2, 20 * L3, s1 - 2 * c[2]},
    };
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        std::swap(m[piv], m[col]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double v = m[r][3];
        for (int k = r + 1; k < 3; ++k) v -= m[r][k] * c[static_cast<std::size_t>(k + 3)];
        c[static_cast<std::size_t>(r + 3)] = v / m[r][r];
    }
    return c;
}

// Endpoint data of the base gap: cap side (s=0) and linear side (s=len).
struct GapEnds {
    double v0 = 0.995, d0 = -1.0, s0 = -100.0;
    double v1 = 0.625, d1 = -5.0, s1 = 0.0;
};

bool blend_slope_ok(const std::vector<BlendSegment>& chain) {
    constexpr int kGrid = 4096;
    const double lo = chain.front().s_lo, hi = chain.back().s_hi;
    double prev = blend_chain_eval(chain, lo, 1);
    if (prev > -1.0 + 1e-9 || prev < -5.0 - 1e-9) return false;
    for (int i = 1; i <= kGrid; ++i) {
        const double s = lo + (hi - lo) * i / kGrid;
        const double d = blend_chain_eval(chain, s, 1);
        if (!(d < prev + 1e-12)) return false; // strictly decreasing slope
        if (d < -5.0 - 1e-9) return false;
        prev = d;
    }
    return true;
}

} // namespace

double ProfileH::eval(double t, int order) const {
    if (!std::isfinite(t)) throw InvalidInput("ProfileH::eval: non-finite t");
    if (order < 0 || order > 2) throw InvalidInput("ProfileH::eval: order must be 0, 1 or 2");
    const double u = to_window(t);
    return eval_piece(*this, piece_at(u), u, order);
}

ProfileH build_profile(const BlendConfig& config) {
    if (config.degree < 5)
        throw InvalidProfile(
            "blend degree " + std::to_string(config.degree) +
            " cannot match value, slope and curvature at both gap endpoints (need >= 5)");

    const GapEnds g;
    const double len = ProfileH::kGapLength;

    ProfileH h;
    h.blend_ = {{0.0, len, hermite_quintic(len, g.v0, g.d0, g.s0, g.v1, g.d1, g.s1)}};
    if (!blend_slope_ok(h.blend_)) {
        // One midpoint subdivision with averaged slope/curvature before giving up.
        const double vm = blend_chain_eval(h.blend_, 0.5 * len, 0);
        const double dm = 0.5 * (g.d0 + g.d1);
        const double sm = 0.5 * (g.s0 + g.s1);
        std::array<double, 6> left = hermite_quintic(0.5 * len, g.v0, g.d0, g.s0, vm, dm, sm);
        std::array<double, 6> right = hermite_quintic(0.5 * len, vm, dm, sm, g.v1, g.d1, g.s1);
        // Re-base the right half from s - len/2 to s so the chain shares one
        // coordinate: r_k (s-m)^k contributes r_k C(k,j) (-m)^(k-j) to s^j.
        const double m = 0.5 * len;
        std::array<double, 6> shifted{};
        double binom[6][6] = {};
        for (int k = 0; k <= 5; ++k) {
            binom[k][0] = binom[k][k] = 1.0;
            for (int j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
        }
        for (int k = 0; k <= 5; ++k)
            for (int j = 0; j <= k; ++j)
                shifted[static_cast<std::size_t>(j)] += right[static_cast<std::size_t>(k)] *
                                                        binom[k][j] * std::pow(-m, k - j);
        h.blend_ = {{0.0, 0.5 * len, left}, {0.5 * len, len, shifted}};
        if (!blend_slope_ok(h.blend_))
            throw InvalidProfile("blend slope is not strictly monotone in [-5,-1] even after subdivision");
    }

    const ValidationReport report = validate(h);
    if (!report.all_pass()) {
        for (const ValidationEntry& e : report.entries)
            if (!e.pass) throw InvalidProfile("profile invariant violated: " + e.name + " (" + e.detail + ")");
    }
    return h;
}

bool ValidationReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ValidationEntry& e) { return e.pass; });
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const ValidationEntry& e : entries) {
        out += e.pass ? "[pass] " : "[FAIL] ";
        out += e.name;
        if (!e.detail.empty()) out += ": " + e.detail;
        out += "\n";
    }
    return out;
}

namespace {

void check_piece_exact(const ProfileH& h, ValidationReport& rep, const char* name,
                       double lo, double hi, double (*formula)(double)) {
    constexpr int kGrid = 2000;
    bool ok = true;
    double worst = 0.0, worst_t = lo;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = lo + (hi - lo) * i / kGrid;
        const double got = h.eval(t, 0);
        const double want = formula(t);
        if (got != want) {
            ok = false;
            const double err = std::fabs(got - want);
            if (err > worst) { worst = err; worst_t = t; }
        }
    }
    rep.entries.push_back({name, ok,
                           ok ? "bit-exact" : "mismatch " + format_g17(worst) + " at t=" + format_g17(worst_t)});
}

double integrate_pieces(const ProfileH& h) {
    // Caps and linear runs in closed form.
    double total = 0.0;
    total += 2.0 * 0.01 - 50.0 * (2.0 * 0.01 * 0.01 * 0.01 / 3.0);            // top cap
    total -= 2.0 * 0.01 - 50.0 * (2.0 * 0.01 * 0.01 * 0.01 / 3.0);            // bottom cap
    total += 1.25 * 0.25 - 5.0 * (0.375 * 0.375 - 0.125 * 0.125) / 2.0;       // 1.25 - 5t
    total += -3.75 * 0.25 + 5.0 * (0.875 * 0.875 - 0.625 * 0.625) / 2.0;      // -3.75 + 5t
    // Blend images: +I (mirror), +I (base), -I (both negated copies).
    double blend_integral = 0.0;
    for (const BlendSegment& seg : h.blend_)
        for (int k = 0; k <= 5; ++k)
            blend_integral += seg.c[static_cast<std::size_t>(k)] *
                              (std::pow(seg.s_hi, k + 1) - std::pow(seg.s_lo, k + 1)) / (k + 1);
    total += blend_integral + blend_integral - blend_integral - blend_integral;
    return total;
}

} // namespace

ValidationReport validate(const ProfileH& h) {
    ValidationReport rep;
    constexpr int kGrid = 100000;

    check_piece_exact(h, rep, "piece_top_cap_exact", -0.01, 0.01,
                      [](double t) { return 1.0 - 50.0 * t * t; });
    check_piece_exact(h, rep, "piece_linear_down_exact", 0.125, 0.375,
                      [](double t) { return 1.25 - 5.0 * t; });
    check_piece_exact(h, rep, "piece_bottom_cap_exact", 0.49, 0.51,
                      [](double t) { return -1.0 + 50.0 * (t - 0.5) * (t - 0.5); });
    check_piece_exact(h, rep, "piece_linear_up_exact", 0.625, 0.875,
                      [](double t) { return -3.75 + 5.0 * t; });

    bool range_ok = true, slope_range_ok = true, floor_ok = true;
    bool antisym_ok = true, even_ok = true;
    double worst_val = 0.0, worst_slope = 0.0, worst_floor = 10.0, worst_asym = 0.0, worst_even = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        const double t = static_cast<double>(i) / kGrid;
        const double v = h.eval(t, 0);
        const double d = h.eval(t, 1);
        worst_val = std::max(worst_val, std::fabs(v));
        worst_slope = std::max(worst_slope, std::fabs(d));
        if (std::fabs(v) > 1.0 + 1e-12) range_ok = false;
        if (std::fabs(d) > 5.0 + 1e-12) slope_range_ok = false;
        const double u = to_window(t);
        const bool in_cap = (u > -0.01 && u < 0.01) || (u > 0.49 && u < 0.51);
        if (!in_cap) {
            worst_floor = std::min(worst_floor, std::fabs(d));
            if (std::fabs(d) < 1.0 - 1e-12) floor_ok = false;
        }
        const double asym = std::fabs(h.eval(t + 0.5, 0) + v);
        const double even = std::fabs(h.eval(-t, 0) - v);
        worst_asym = std::max(worst_asym, asym);
        worst_even = std::max(worst_even, even);
        if (asym > 1e-12) antisym_ok = false;
        if (even > 1e-12) even_ok = false;
    }
    rep.entries.push_back({"range_h", range_ok, "max |h| = " + format_g17(worst_val)});
    rep.entries.push_back({"range_h_prime", slope_range_ok, "max |h'| = " + format_g17(worst_slope)});
    rep.entries.push_back({"slope_floor_outside_caps", floor_ok, "min |h'| = " + format_g17(worst_floor)});
    rep.entries.push_back({"antisymmetry", antisym_ok, "max |h(t+1/2)+h(t)| = " + format_g17(worst_asym)});
    rep.entries.push_back({"evenness", even_ok, "max |h(-t)-h(t)| = " + format_g17(worst_even)});

    // h' strictly monotone on the two solution windows.
    constexpr int kWin = 20000;
    bool mono1 = true, mono2 = true;
    double prev1 = h.eval(-0.125, 1), prev2 = h.eval(0.375, 1);
    for (int i = 1; i <= kWin; ++i) {
        const double t1 = -0.125 + 0.25 * i / kWin;
        const double t2 = 0.375 + 0.25 * i / kWin;
        const double d1 = h.eval(t1, 1);
        const double d2 = h.eval(t2, 1);
        if (!(d1 < prev1 + 1e-12)) mono1 = false;
        if (!(d2 > prev2 - 1e-12)) mono2 = false;
        prev1 = d1;
        prev2 = d2;
    }
    rep.entries.push_back({"monotone_window_first", mono1, "h' decreasing on [-1/8,1/8]"});
    rep.entries.push_back({"monotone_window_second", mono2, "h' increasing on [3/8,5/8]"});

    const double mean = integrate_pieces(h);
    rep.entries.push_back({"mean_zero", std::fabs(mean) <= 1e-12, "|mean(h)| = " + format_g17(std::fabs(mean))});

    // C^2 junctions: side limits from the adjacent piece formulas.
    struct Junction {
        double u_left, u_right;
        Piece left, right;
    };
    const Junction junctions[] = {
        {-0.01, -0.01, Piece::MirrorBlend, Piece::TopCap},
        {0.01, 0.01, Piece::TopCap, Piece::BaseBlend},
        {0.125, 0.125, Piece::BaseBlend, Piece::LinearDown},
        {0.375, 0.375, Piece::LinearDown, Piece::NegMirrorBlend},
        {0.49, 0.49, Piece::NegMirrorBlend, Piece::BottomCap},
        {0.51, 0.51, Piece::BottomCap, Piece::NegShiftBlend},
        {0.625, 0.625, Piece::NegShiftBlend, Piece::LinearUp},
        {0.875, -0.125, Piece::LinearUp, Piece::MirrorBlend},
    };
    bool c2_ok = true;
    double worst_jump = 0.0;
    for (const Junction& j : junctions) {
        const double tol[3] = {1e-12, 1e-10, 1e-7};
        for (int order = 0; order <= 2; ++order) {
            const double a = eval_piece(h, j.left, j.u_left, order);
            const double b = eval_piece(h, j.right, j.u_right, order);
            const double jump = std::fabs(a - b);
            if (order == 2) worst_jump = std::max(worst_jump, jump);
            if (jump > tol[order]) c2_ok = false;
        }
    }
    rep.entries.push_back({"c2_junctions", c2_ok, "max |h'' jump| = " + format_g17(worst_jump)});
    return rep;
}

std::vector<double> slope_solutions(const ProfileH& h, double c) {
    if (!std::isfinite(c)) throw InvalidInput("slope_solutions: non-finite target");
    if (std::fabs(c) > 5.0) return {};
    std::vector<double> out;
    struct Window {
        double lo, hi;
        bool decreasing;
    };
    const Window windows[] = {{-0.125, 0.125, true}, {0.375, 0.625, false}};
    for (const Window& w : windows) {
        double lo = w.lo, hi = w.hi;
        auto f = [&](double t) {
            const double d = h.eval(t, 1) - c;
            return w.decreasing ? -d : d; // increasing in both cases
        };
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) < 0.0 ? lo : hi) = mid;
        }
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it) {
            const double d2 = h.eval(t, 2);
            if (std::fabs(d2) < 1e-6) break;
            const double step = (h.eval(t, 1) - c) / d2;
            const double next = t - step;
            if (next < w.lo || next > w.hi) break;
            t = next;
        }
        out.push_back(t);
    }
    return out;
}

void write_profile_csv(const ProfileH& h, const std::string& path, int resolution) {
    if (resolution < 2) throw InvalidInput("write_profile_csv: resolution must be >= 2");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("write_profile_csv: cannot open " + path);
    out << "t,h,h1,h2\n";
    for (int i = 0; i <= resolution; ++i) {
        const double t = static_cast<double>(i) / resolution;
        out << format_g17(t) << ',' << format_g17(h.eval(t, 0)) << ','
            << format_g17(h.eval(t, 1)) << ',' << format_g17(h.eval(t, 2)) << '\n';
    }
}

} // namespace eggbeater
