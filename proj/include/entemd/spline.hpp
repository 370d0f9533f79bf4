#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "entemd/errors.hpp"

namespace entemd {

/**
 * Natural cubic spline (zero second derivative at both end knots).
 *
 * Knot abscissae must be strictly increasing. Second derivatives are solved
 * with the Thomas algorithm. Outside [x_front, x_back] the spline continues
 * as a straight line with the end slope, which is the natural extension of
 * the zero-curvature end condition.
 */
class NaturalCubicSpline {
public:
    NaturalCubicSpline(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)), m_(xs_.size(), 0.0) {
        if (xs_.size() != ys_.size())
            throw StructuralError("spline: knot abscissa/ordinate count mismatch");
        if (xs_.size() < 2)
            throw InsufficientExtrema("spline needs at least 2 knots, got " + std::to_string(xs_.size()));
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            if (!(xs_[i] > xs_[i - 1]))
                throw StructuralError("spline knots must be strictly increasing");
        }
        solve_second_derivatives();
    }

    std::size_t knot_count() const noexcept { return xs_.size(); }
    std::span<const double> second_derivatives() const noexcept { return m_; }

    double operator()(double x) const {
        const std::size_t n = xs_.size();
        if (x <= xs_.front()) {
            if (x == xs_.front()) return ys_.front();
            return ys_.front() + slope_at(0, true) * (x - xs_.front());
        }
        if (x >= xs_.back()) {
            if (x == xs_.back()) return ys_.back();
            return ys_.back() + slope_at(n - 2, false) * (x - xs_.back());
        }
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
        if (x == xs_[i]) return ys_[i];
        return eval_piece(i, x);
    }

private:
    double eval_piece(std::size_t i, double x) const {
        const double h = xs_[i + 1] - xs_[i];
        const double a = xs_[i + 1] - x;
        const double b = x - xs_[i];
        return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) +
               (ys_[i] / h - m_[i] * h / 6.0) * a + (ys_[i + 1] / h - m_[i + 1] * h / 6.0) * b;
    }

    // Derivative of piece i at its left (at_left) or right end.
    double slope_at(std::size_t i, bool at_left) const {
        const double h = xs_[i + 1] - xs_[i];
        const double secant = (ys_[i + 1] - ys_[i]) / h;
        if (at_left) return secant - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
        return secant + h * (m_[i] + 2.0 * m_[i + 1]) / 6.0;
    }

    void solve_second_derivatives() {
        const std::size_t n = xs_.size();
        if (n < 3) return;
        const std::size_t k = n - 2; // interior unknowns M_1..M_{n-2}
        std::vector<double> diag(k), upper(k), rhs(k);
        for (std::size_t r = 0; r < k; ++r) {
            const std::size_t i = r + 1;
            const double h0 = xs_[i] - xs_[i - 1];
            const double h1 = xs_[i + 1] - xs_[i];
            diag[r] = 2.0 * (h0 + h1);
            upper[r] = h1;
            rhs[r] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
        }
        // Forward sweep; the sub-diagonal entry of row r is h_{r} = xs[r+1]-xs[r].
        for (std::size_t r = 1; r < k; ++r) {
            const double lower = xs_[r + 1] - xs_[r];
            const double w = lower / diag[r - 1];
            diag[r] -= w * upper[r - 1];
            rhs[r] -= w * rhs[r - 1];
        }
        m_[k] = rhs[k - 1] / diag[k - 1];
        for (std::size_t r = k - 1; r-- > 0;) m_[r + 1] = (rhs[r] - upper[r] * m_[r + 2]) / diag[r];
    }

    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> m_;
};

} // namespace entemd
