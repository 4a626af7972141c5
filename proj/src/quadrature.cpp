#include "listmatch/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace listmatch {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kNodes[8] = {
    0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
    0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813,
};
constexpr double kGaussW[8] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870,
    0.0, 0.0, 0.0, 0.0,
};
constexpr double kKronrodW[8] = {
    0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
    0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529,
};

struct Segment {
    double a, b, value, error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double gauss = kGaussW[0] * f0;
    double kronrod = kKronrodW[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNodes[i];
        const double fi = f(mid + dx) + f(mid - dx);
        gauss += kGaussW[i] * fi;
        kronrod += kKronrodW[i] * fi;
    }
    gauss *= half;
    kronrod *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (!(b >= a)) throw std::domain_error("quadrature: require a <= b");
    if (a == b) return 0.0;

    // Globally adaptive: always bisect the segment with the largest error
    // estimate until the total estimate meets the tolerance.
    const std::size_t max_segments = std::size_t{1} << std::min(max_depth, 14);
    std::priority_queue<Segment> segments;
    segments.push(gk15(f, a, b));
    double total_error = segments.top().error;

    while (total_error > abs_tol) {
        if (segments.size() >= max_segments)
            throw std::runtime_error("quadrature: tolerance not reached");
        const Segment worst = segments.top();
        if (worst.b - worst.a < 1e-15 * (b - a)) break;  // resolution floor
        segments.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
    }

    // Sum smallest-error segments first to limit cancellation.
    std::vector<double> values;
    values.reserve(segments.size());
    while (!segments.empty()) {
        values.push_back(segments.top().value);
        segments.pop();
    }
    double sum = 0.0;
    for (auto it = values.rbegin(); it != values.rend(); ++it) sum += *it;
    return sum;
}

}  // namespace listmatch
