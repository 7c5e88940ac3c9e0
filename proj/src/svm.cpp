#include <algorithm>
#include <cmath>
#include <vector>

#include "speechbelt/classify.hpp"
#include "speechbelt/error.hpp"
#include "speechbelt/rng.hpp"

namespace speechbelt {

namespace {

// Soft-margin RBF SVM solved with sequential minimal optimization.
// Decision function convention: u(x) = sum_i alpha_i y_i K(x_i, x) - b.
class SmoSolver {
public:
    SmoSolver(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
              double c, double gamma, double tol, Rng rng)
        : x_(rows), c_(c), gamma_(gamma), tol_(tol), rng_(rng) {
        n_ = rows.size();
        y_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) y_[i] = labels[i] == Label::Speech ? 1.0 : -1.0;

        kernel_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) {
                double ss = 0.0;
                for (std::size_t f = 0; f < rows[i].size(); ++f) {
                    const double d = rows[i][f] - rows[j][f];
                    ss += d * d;
                }
                kernel_[i * n_ + j] = kernel_[j * n_ + i] = std::exp(-gamma_ * ss);
            }

        alpha_.assign(n_, 0.0);
        errors_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) errors_[i] = -y_[i];  // u starts at 0
    }

    void solve() {
        std::size_t num_changed = 0;
        bool examine_all = true;
        int guard = 0;
        while ((num_changed > 0 || examine_all) && guard++ < 10000) {
            num_changed = 0;
            if (examine_all) {
                for (std::size_t i = 0; i < n_; ++i) num_changed += examine(i);
            } else {
                for (std::size_t i = 0; i < n_; ++i)
                    if (is_free(i)) num_changed += examine(i);
            }
            if (examine_all)
                examine_all = false;
            else if (num_changed == 0)
                examine_all = true;
        }
    }

    SvmParameters extract() const {
        SvmParameters params;
        params.gamma = gamma_;
        params.bias = b_;
        for (std::size_t i = 0; i < n_; ++i) {
            if (alpha_[i] <= 0.0) continue;
            params.support_vectors.push_back(x_[i]);
            params.coefficients.push_back(alpha_[i] * y_[i]);
        }
        return params;
    }

private:
    static constexpr double kEps = 1e-8;

    bool is_free(std::size_t i) const { return alpha_[i] > 0.0 && alpha_[i] < c_; }

    double k(std::size_t i, std::size_t j) const { return kernel_[i * n_ + j]; }

    std::size_t examine(std::size_t i2) {
        const double y2 = y_[i2];
        const double alph2 = alpha_[i2];
        const double e2 = errors_[i2];
        const double r2 = e2 * y2;

        const bool violates = (r2 < -tol_ && alph2 < c_) || (r2 > tol_ && alph2 > 0.0);
        if (!violates) return 0;

        // Second-choice heuristic: the free multiplier with the largest
        // |E1 - E2| step estimate; ties fall to the lowest index.
        std::size_t best = n_;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!is_free(i)) continue;
            const double gap = std::abs(errors_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && take_step(best, i2)) return 1;

        // Fall back to scanning, starting at a seeded random offset so no
        // index is systematically favored.
        const std::size_t start_free = rng_.uniform_index(n_);
        for (std::size_t d = 0; d < n_; ++d) {
            const std::size_t i1 = (start_free + d) % n_;
            if (is_free(i1) && take_step(i1, i2)) return 1;
        }
        const std::size_t start_all = rng_.uniform_index(n_);
        for (std::size_t d = 0; d < n_; ++d) {
            const std::size_t i1 = (start_all + d) % n_;
            if (take_step(i1, i2)) return 1;
        }
        return 0;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double alph1 = alpha_[i1];
        const double alph2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = errors_[i1], e2 = errors_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, alph2 - alph1);
            hi = std::min(c_, c_ + alph2 - alph1);
        } else {
            lo = std::max(0.0, alph1 + alph2 - c_);
            hi = std::min(c_, alph1 + alph2);
        }
        if (lo >= hi) return false;

        const double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2;
        if (eta > 0.0) {
            a2 = alph2 + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, lo, hi);
        } else {
            // eta == 0 happens for duplicate points; pick the better bound.
            const double f1 = y1 * (e1 + b_) - alph1 * k11 - s * alph2 * k12;
            const double f2 = y2 * (e2 + b_) - s * alph1 * k12 - alph2 * k22;
            const double l1 = alph1 + s * (alph2 - lo);
            const double h1 = alph1 + s * (alph2 - hi);
            const double lo_obj = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                                  0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double hi_obj = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                                  0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (lo_obj < hi_obj - kEps)
                a2 = lo;
            else if (lo_obj > hi_obj + kEps)
                a2 = hi;
            else
                a2 = alph2;
        }
        if (std::abs(a2 - alph2) < kEps * (a2 + alph2 + kEps)) return false;

        double a1 = alph1 + s * (alph2 - a2);
        if (a1 < 0.0) {
            a2 += s * a1;
            a1 = 0.0;
        } else if (a1 > c_) {
            a2 += s * (a1 - c_);
            a1 = c_;
        }

        const double d1 = y1 * (a1 - alph1);
        const double d2 = y2 * (a2 - alph2);
        const double b1 = e1 + d1 * k11 + d2 * k12 + b_;
        const double b2 = e2 + d1 * k12 + d2 * k22 + b_;
        double b_new;
        if (a1 > 0.0 && a1 < c_)
            b_new = b1;
        else if (a2 > 0.0 && a2 < c_)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);

        for (std::size_t j = 0; j < n_; ++j)
            errors_[j] += d1 * k(i1, j) + d2 * k(i2, j) + b_ - b_new;

        alpha_[i1] = a1;
        alpha_[i2] = a2;
        b_ = b_new;
        return true;
    }

    const std::vector<std::vector<double>>& x_;
    double c_;
    double gamma_;
    double tol_;
    Rng rng_;
    std::size_t n_ = 0;
    std::vector<double> y_;
    std::vector<double> kernel_;
    std::vector<double> alpha_;
    std::vector<double> errors_;
    double b_ = 0.0;
};

} // namespace

SvmParameters train_svm(const std::vector<std::vector<double>>& rows,
                        const std::vector<Label>& labels, const Hyperparams& hp,
                        std::uint64_t seed) {
    double gamma = hp.svm_gamma;
    if (gamma <= 0.0) {
        // 1 / (d * mean feature variance), measured on the rows the kernel
        // actually sees (the z-scored matrix).
        const std::size_t n = rows.size();
        const std::size_t d = rows.front().size();
        double total_var = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double sum = 0.0, ss = 0.0;
            for (const auto& row : rows) {
                sum += row[j];
                ss += row[j] * row[j];
            }
            const double mean = sum / static_cast<double>(n);
            total_var += ss / static_cast<double>(n) - mean * mean;
        }
        const double mean_var = total_var / static_cast<double>(d);
        gamma = mean_var > 0.0 ? 1.0 / (static_cast<double>(d) * mean_var)
                               : 1.0 / static_cast<double>(d);
    }

    SmoSolver solver(rows, labels, hp.svm_c, gamma, hp.svm_tol,
                     Rng(derive_seed(seed, "svm-smo")));
    solver.solve();
    return solver.extract();
}

} // namespace speechbelt
