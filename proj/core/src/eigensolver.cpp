#include "gpdwell/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "gpdwell/error.hpp"

namespace gpdwell {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kResidualBound = 1e-10;
constexpr double kDegenerateGap = 1e-12;
constexpr int kMaxInverseIterations = 8;

struct SturmData {
    std::vector<double> diag;
    std::vector<double> offdiag_sq;
    double pivot_min;
};

SturmData make_sturm_data(const TridiagonalOperator& op) {
    SturmData s{op.diag, std::vector<double>(op.offdiag.size()), 0.0};
    double max_sq = 0.0;
    for (std::size_t i = 0; i < op.offdiag.size(); ++i) {
        s.offdiag_sq[i] = op.offdiag[i] * op.offdiag[i];
        max_sq = std::max(max_sq, s.offdiag_sq[i]);
    }
    s.pivot_min = std::numeric_limits<double>::min() * std::max(1.0, max_sq);
    return s;
}

int sturm_count(const SturmData& s, double x) {
    int count = 0;
    double q = s.diag[0] - x;
    if (std::abs(q) < s.pivot_min) q = -s.pivot_min;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < s.diag.size(); ++i) {
        q = s.diag[i] - x - s.offdiag_sq[i - 1] / q;
        if (std::abs(q) < s.pivot_min) q = -s.pivot_min;
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = op.size();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(op.offdiag[i - 1]);
        if (i + 1 < n) radius += std::abs(op.offdiag[i]);
        lo = std::min(lo, op.diag[i] - radius);
        hi = std::max(hi, op.diag[i] + radius);
    }
    const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    return {lo - pad, hi + pad};
}

// Eigenvalue with 0-based index j by bisection to working precision.
double bisect_eigenvalue(const SturmData& s, int j, double lo, double hi) {
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + s.pivot_min) break;
        if (sturm_count(s, mid) > j) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// LU factorization with partial pivoting of (T - shift I) in extended
// precision; U carries two superdiagonals. Zero pivots are perturbed, as usual
// for inverse iteration.
class ShiftedTridiagonalLU {
public:
    using Real = long double;

    ShiftedTridiagonalLU(const TridiagonalOperator& op, double shift, double scale)
        : n_(op.size()), u0_(op.diag.begin(), op.diag.end()),
          u1_(op.offdiag.begin(), op.offdiag.end()), u2_(n_ > 2 ? n_ - 2 : 0, 0.0L),
          lower_(n_ > 0 ? n_ - 1 : 0, 0.0L), swapped_(n_ > 0 ? n_ - 1 : 0, false) {
        const Real tiny = static_cast<Real>(kEps) * scale;
        for (auto& d : u0_) d -= shift;
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            const Real sub = op.offdiag[k];
            if (std::abs(u0_[k]) >= std::abs(sub)) {
                if (u0_[k] == 0.0L) u0_[k] = tiny;
                const Real m = sub / u0_[k];
                lower_[k] = m;
                u0_[k + 1] -= m * u1_[k];
            } else {
                const Real m = u0_[k] / sub;
                lower_[k] = m;
                swapped_[k] = true;
                const Real old_super = u1_[k];
                const Real next_diag = u0_[k + 1];
                const Real next_super = (k + 1 < n_ - 1) ? u1_[k + 1] : 0.0L;
                u0_[k] = sub;
                u1_[k] = next_diag;
                if (k + 2 < n_) u2_[k] = next_super;
                u0_[k + 1] = old_super - m * next_diag;
                if (k + 1 < n_ - 1) u1_[k + 1] = -m * next_super;
            }
        }
        if (n_ > 0 && u0_[n_ - 1] == 0.0L) u0_[n_ - 1] = tiny;
    }

    void solve_in_place(std::vector<Real>& rhs) const {
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            if (swapped_[k]) std::swap(rhs[k], rhs[k + 1]);
            rhs[k + 1] -= lower_[k] * rhs[k];
        }
        for (std::size_t kk = n_; kk-- > 0;) {
            Real v = rhs[kk];
            if (kk + 1 < n_) v -= u1_[kk] * rhs[kk + 1];
            if (kk + 2 < n_) v -= u2_[kk] * rhs[kk + 2];
            rhs[kk] = v / u0_[kk];
        }
    }

private:
    std::size_t n_;
    std::vector<Real> u0_, u1_, u2_;
    std::vector<Real> lower_;
    std::vector<bool> swapped_;
};

std::vector<double> start_vector(std::size_t n, int index) {
    std::uint64_t state = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(index + 1);
    std::vector<double> v(n);
    for (auto& x : v) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        x = static_cast<double>(state >> 11) * 0x1.0p-53 + 0.5;
    }
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Tv - value v accumulated in extended precision; the kinetic stencil cancels
// strongly at fine spacing.
std::vector<long double> shifted_product(const TridiagonalOperator& op,
                                         const std::vector<double>& v, long double value) {
    const std::size_t n = v.size();
    std::vector<long double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double s = (static_cast<long double>(op.diag[i]) - value) * v[i];
        if (i > 0) s += static_cast<long double>(op.offdiag[i - 1]) * v[i - 1];
        if (i + 1 < n) s += static_cast<long double>(op.offdiag[i]) * v[i + 1];
        r[i] = s;
    }
    return r;
}

double rayleigh_quotient(const TridiagonalOperator& op, const std::vector<double>& v) {
    const auto tv = shifted_product(op, v, 0.0L);
    long double num = 0.0L;
    long double den = 0.0L;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += tv[i] * v[i];
        den += static_cast<long double>(v[i]) * v[i];
    }
    return static_cast<double>(num / den);
}

double residual_norm(const TridiagonalOperator& op, const std::vector<double>& v, double value,
                     double spacing) {
    const auto r = shifted_product(op, v, value);
    long double s = 0.0L;
    for (long double x : r) s += x * x;
    return static_cast<double>(std::sqrt(static_cast<long double>(spacing) * s));
}

void fix_sign(std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    const double threshold = peak * (1.0 - 1e-8);
    for (double x : v) {
        if (std::abs(x) >= threshold) {
            if (x < 0.0) {
                for (auto& y : v) y = -y;
            }
            return;
        }
    }
}

double reflection_overlap(const std::vector<double>& u, const std::vector<double>& w) {
    double s = 0.0;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) s += u[i] * w[n - 1 - i];
    return s;
}

// Rotates an orthonormal pair spanning a degenerate eigenspace so that the
// first vector is even and the second odd under index reversal.
void rotate_to_parity(std::vector<double>& u, std::vector<double>& w) {
    const double ruu = reflection_overlap(u, u);
    const double ruw = reflection_overlap(u, w);
    const double rww = reflection_overlap(w, w);
    // Eigenvector of [[ruu, ruw], [ruw, rww]] with the larger eigenvalue.
    const double theta = 0.5 * std::atan2(2.0 * ruw, ruu - rww);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<double> even(u.size()), odd(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        even[i] = c * u[i] + s * w[i];
        odd[i] = -s * u[i] + c * w[i];
    }
    u = std::move(even);
    w = std::move(odd);
}

}  // namespace

int count_eigenvalues_below(const TridiagonalOperator& op, double x) {
    if (op.size() == 0) return 0;
    return sturm_count(make_sturm_data(op), x);
}

std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalOperator& op, int k, const Grid& grid) {
    const auto n = static_cast<int>(op.size());
    if (n != static_cast<int>(grid.interior_size())) {
        throw ValidationError("lowest_eigenpairs: operator size does not match the grid");
    }
    if (k < 1 || k > n) {
        throw ValidationError("lowest_eigenpairs: k = " + std::to_string(k) +
                              " outside [1, " + std::to_string(n) + "]");
    }
    const SturmData sturm = make_sturm_data(op);
    const auto [lo, hi] = gershgorin_bounds(op);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    const double spacing = grid.spacing();

    std::vector<Eigenpair> pairs(static_cast<std::size_t>(k));
    double lower = lo;
    for (int j = 0; j < k; ++j) {
        const double value = bisect_eigenvalue(sturm, j, lower, hi);
        pairs[static_cast<std::size_t>(j)].value = value;
        lower = std::max(lo, value - 4.0 * kEps * scale);
    }

    for (int j = 0; j < k; ++j) {
        auto& pair = pairs[static_cast<std::size_t>(j)];
        const ShiftedTridiagonalLU lu(op, pair.value, scale);
        const std::vector<double> start = start_vector(op.size(), j);
        std::vector<long double> w(start.begin(), start.end());
        std::vector<double> v(op.size());
        bool accepted = false;
        for (int iter = 0; iter < kMaxInverseIterations; ++iter) {
            lu.solve_in_place(w);
            for (int i = 0; i < j; ++i) {
                const auto& prev = pairs[static_cast<std::size_t>(i)].vector;
                // prev is delta-normalized; project in the Euclidean metric.
                long double c = 0.0L;
                for (std::size_t m = 0; m < w.size(); ++m) c += w[m] * prev[m];
                c *= spacing;
                for (std::size_t m = 0; m < w.size(); ++m) w[m] -= c * prev[m];
            }
            long double norm = 0.0L;
            for (long double x : w) norm += x * x;
            norm = std::sqrt(norm);
            for (auto& x : w) x /= norm;
            if (iter >= 1) {
                for (std::size_t m = 0; m < w.size(); ++m) v[m] = static_cast<double>(w[m]);
                pair.value = rayleigh_quotient(op, v);
                const double res = residual_norm(op, v, pair.value, 1.0);
                if (res <= 0.1 * kResidualBound * (1.0 + std::abs(pair.value))) {
                    accepted = true;
                    break;
                }
            }
        }
        const double inv_norm = 1.0 / std::sqrt(spacing * dot(v, v));
        for (auto& x : v) x *= inv_norm;
        const double res = residual_norm(op, v, pair.value, spacing);
        if (!accepted && res > kResidualBound * (1.0 + std::abs(pair.value))) {
            throw ConvergenceError("inverse iteration failed for eigenvalue index " +
                                   std::to_string(j) + " (residual " + std::to_string(res) +
                                   ")");
        }
        pair.vector = std::move(v);
    }

    for (int j = 0; j + 1 < k; ++j) {
        auto& a = pairs[static_cast<std::size_t>(j)];
        auto& b = pairs[static_cast<std::size_t>(j) + 1];
        if (b.value - a.value < kDegenerateGap * std::max(1.0, std::abs(a.value))) {
            rotate_to_parity(a.vector, b.vector);
        }
    }
    for (auto& pair : pairs) fix_sign(pair.vector);
    return pairs;
}

}  // namespace gpdwell
