#include "eggbeater/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace eggbeater {

TorusPoint reduce(LiftPoint l) {
    if (!std::isfinite(l.x) || !std::isfinite(l.y))
        throw InvalidInput("reduce: non-finite lift coordinates");
    double x = l.x - std::floor(l.x);
    double y = l.y - std::floor(l.y);
    // x - floor(x) can round up to 1.0 for tiny negative inputs
    if (x >= 1.0) x = 0.0;
    if (y >= 1.0) y = 0.0;
    return {x, y};
}

double torus_distance(TorusPoint a, TorusPoint b) {
    double dx = std::fabs(a.x - b.x);
    double dy = std::fabs(a.y - b.y);
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return std::hypot(dx, dy);
}

Loop make_loop(std::vector<LoopSample> samples) {
    if (samples.size() < 2)
        throw InvalidInput("make_loop: need at least two samples");
    if (samples.front().t != 0.0 || samples.back().t != 1.0)
        throw InvalidInput("make_loop: sample times must start at 0 and end at 1");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].lift.x) ||
            !std::isfinite(samples[i].lift.y))
            throw InvalidInput("make_loop: non-finite sample");
        if (i > 0) {
            if (!(samples[i].t > samples[i - 1].t))
                throw InvalidInput("make_loop: sample times must be strictly increasing");
            const double dx = samples[i].lift.x - samples[i - 1].lift.x;
            const double dy = samples[i].lift.y - samples[i - 1].lift.y;
            if (std::fabs(dx) >= 0.5 || std::fabs(dy) >= 0.5)
                throw BrokenLift("make_loop: lift jump >= 0.5 between consecutive samples");
        }
    }
    Loop loop;
    loop.samples = std::move(samples);
    const double dx = loop.samples.back().lift.x - loop.samples.front().lift.x;
    const double dy = loop.samples.back().lift.y - loop.samples.front().lift.y;
    loop.closure_winding = {static_cast<std::int64_t>(std::llround(dx)),
                            static_cast<std::int64_t>(std::llround(dy))};
    loop.closure_residual =
        std::max(std::fabs(dx - static_cast<double>(loop.closure_winding.m)),
                 std::fabs(dy - static_cast<double>(loop.closure_winding.n)));
    return loop;
}

IntVec2 winding_vector(const Loop& loop) {
    if (loop.samples.size() < 2)
        throw InvalidInput("winding_vector: loop has no samples");
    if (loop.closure_residual >= kWindingTolerance)
        throw BrokenLift("winding_vector: endpoint displacement is not integral");
    return loop.closure_winding;
}

std::int64_t intersection_number(IntVec2 c1, IntVec2 c2) {
    return c1.m * c2.n - c1.n * c2.m;
}

namespace {

struct Segment {
    LiftPoint a;
    LiftPoint b;
};

double cross(double ax, double ay, double bx, double by) {
    return ax * by - ay * bx;
}

double orient(const LiftPoint& p, const LiftPoint& q, const LiftPoint& r) {
    return cross(q.x - p.x, q.y - p.y, r.x - p.x, r.y - p.y);
}

bool in_box(const LiftPoint& p, const LiftPoint& a, const LiftPoint& b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Segment-segment intersection; on a hit writes one crossing point.
bool segments_cross(const Segment& s, const Segment& t, LiftPoint& out) {
    const double o1 = orient(s.a, s.b, t.a);
    const double o2 = orient(s.a, s.b, t.b);
    const double o3 = orient(t.a, t.b, s.a);
    const double o4 = orient(t.a, t.b, s.b);

    if (((o1 > 0) != (o2 > 0)) && o1 != 0 && o2 != 0 &&
        ((o3 > 0) != (o4 > 0)) && o3 != 0 && o4 != 0) {
        const double denom = o3 - o4;
        const double u = o3 / denom; // position along s
        out = {s.a.x + u * (s.b.x - s.a.x), s.a.y + u * (s.b.y - s.a.y)};
        return true;
    }
    // Touching / collinear cases: an endpoint lying on the other segment.
    if (o1 == 0 && in_box(t.a, s.a, s.b)) { out = t.a; return true; }
    if (o2 == 0 && in_box(t.b, s.a, s.b)) { out = t.b; return true; }
    if (o3 == 0 && in_box(s.a, t.a, t.b)) { out = s.a; return true; }
    if (o4 == 0 && in_box(s.b, t.a, t.b)) { out = s.b; return true; }
    return false;
}

std::vector<Segment> positive_segments(const Loop& loop) {
    std::vector<Segment> segs;
    segs.reserve(loop.samples.size());
    for (std::size_t i = 0; i + 1 < loop.samples.size(); ++i) {
        const LiftPoint& a = loop.samples[i].lift;
        const LiftPoint& b = loop.samples[i + 1].lift;
        if (a.x == b.x && a.y == b.y) continue; // zero-length, cannot cross transversally
        segs.push_back({a, b});
    }
    return segs;
}

constexpr int kCells = 16; // hash cells per axis on the torus

int cell_index(int cx, int cy) {
    cx = ((cx % kCells) + kCells) % kCells;
    cy = ((cy % kCells) + kCells) % kCells;
    return cy * kCells + cx;
}

void cover_cells(const Segment& s, int pad, std::vector<int>& out) {
    constexpr double cs = 1.0 / kCells;
    const int x0 = static_cast<int>(std::floor(std::min(s.a.x, s.b.x) / cs)) - pad;
    const int x1 = static_cast<int>(std::floor(std::max(s.a.x, s.b.x) / cs)) + pad;
    const int y0 = static_cast<int>(std::floor(std::min(s.a.y, s.b.y) / cs)) - pad;
    const int y1 = static_cast<int>(std::floor(std::max(s.a.y, s.b.y) / cs)) + pad;
    out.clear();
    for (int cy = y0; cy <= y1 && cy - y0 < kCells; ++cy)
        for (int cx = x0; cx <= x1 && cx - x0 < kCells; ++cx)
            out.push_back(cell_index(cx, cy));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

} // namespace

std::optional<TorusPoint> loops_intersect(const Loop& l1, const Loop& l2) {
    const std::vector<Segment> sa = positive_segments(l1);
    const std::vector<Segment> sb = positive_segments(l2);
    if (sa.empty() || sb.empty())
        throw InvalidInput("loops_intersect: loop is degenerate (all segments have zero length)");

    // Bucket l2's segments by the torus cells their lift bounding boxes cover.
    std::vector<std::vector<std::uint32_t>> grid(kCells * kCells);
    std::vector<int> cells;
    for (std::uint32_t j = 0; j < sb.size(); ++j) {
        cover_cells(sb[j], 0, cells);
        for (int c : cells) grid[c].push_back(j);
    }

    std::vector<std::uint32_t> candidates;
    std::vector<char> seen(sb.size(), 0);
    for (const Segment& a : sa) {
        cover_cells(a, 1, cells);
        candidates.clear();
        for (int c : cells)
            for (std::uint32_t j : grid[c])
                if (!seen[j]) { seen[j] = 1; candidates.push_back(j); }
        std::sort(candidates.begin(), candidates.end());
        for (std::uint32_t j : candidates) seen[j] = 0;

        const double ax0 = std::min(a.a.x, a.b.x), ax1 = std::max(a.a.x, a.b.x);
        const double ay0 = std::min(a.a.y, a.b.y), ay1 = std::max(a.a.y, a.b.y);
        for (std::uint32_t j : candidates) {
            const Segment& b = sb[j];
            const double bx0 = std::min(b.a.x, b.b.x), bx1 = std::max(b.a.x, b.b.x);
            const double by0 = std::min(b.a.y, b.b.y), by1 = std::max(b.a.y, b.b.y);
            // Integer translates of b whose bounding box can touch a's.
            const auto vx_lo = static_cast<std::int64_t>(std::ceil(ax0 - bx1));
            const auto vx_hi = static_cast<std::int64_t>(std::floor(ax1 - bx0));
            const auto vy_lo = static_cast<std::int64_t>(std::ceil(ay0 - by1));
            const auto vy_hi = static_cast<std::int64_t>(std::floor(ay1 - by0));
            for (std::int64_t vx = vx_lo; vx <= vx_hi; ++vx) {
                for (std::int64_t vy = vy_lo; vy <= vy_hi; ++vy) {
                    const Segment bt{{b.a.x + vx, b.a.y + vy}, {b.b.x + vx, b.b.y + vy}};
                    LiftPoint hit;
                    if (segments_cross(a, bt, hit)) return reduce(hit);
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace eggbeater
