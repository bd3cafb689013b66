#include "pmwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pmwave {

GridSpec::GridSpec(double x_max, int n_x, int n_y)
    : x_max_(x_max), n_x_(n_x), n_y_(n_y) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw std::invalid_argument("GridSpec: x_max must be positive and finite");
    }
    if (n_x < 3) {
        throw std::invalid_argument("GridSpec: n_x must be at least 3");
    }
    if (n_y < 4) {
        throw std::invalid_argument("GridSpec: n_y must be at least 4");
    }
    dx_ = x_max / (n_x - 1);
    dy_ = 1.0 / (n_y - 1);
}

int wrap_row(int j, const GridSpec& grid) {
    const int period = grid.rows();
    int r = (j - 1) % period;
    if (r < 0) {
        r += period;
    }
    return r + 1;
}

GridField::GridField(const GridSpec& grid, double fill)
    : grid_(grid), data_(grid.node_count(), fill) {}

std::span<const double> GridField::row(int j) const {
    return std::span<const double>(data_).subspan(offset(1, wrap_row(j, grid_)),
                                                  static_cast<std::size_t>(grid_.n_x()));
}

std::span<double> GridField::row(int j) {
    return std::span<double>(data_).subspan(offset(1, wrap_row(j, grid_)),
                                            static_cast<std::size_t>(grid_.n_x()));
}

double GridField::max() const {
    return *std::max_element(data_.begin(), data_.end());
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

namespace {

void require_column(const GridField& p, int i, int lo, int hi, const char* what) {
    if (i < lo || i > hi) {
        throw std::out_of_range(std::string(what) + ": column " + std::to_string(i) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    }
    (void)p;
}

}  // namespace

double diff_backward_x(const GridField& p, int i, int j) {
    require_column(p, i, 2, p.grid().n_x(), "diff_backward_x");
    return (p(i, j) - p(i - 1, j)) / p.grid().dx();
}

double diff_centered_x(const GridField& p, int i, int j) {
    require_column(p, i, 2, p.grid().n_x() - 1, "diff_centered_x");
    return (p(i + 1, j) - p(i - 1, j)) / (2.0 * p.grid().dx());
}

double diff_centered_y(const GridField& p, int i, int j) {
    require_column(p, i, 1, p.grid().n_x(), "diff_centered_y");
    return (p(i, j + 1) - p(i, j - 1)) / (2.0 * p.grid().dy());
}

double diff2_xx(const GridField& p, int i, int j) {
    require_column(p, i, 2, p.grid().n_x() - 1, "diff2_xx");
    const double dx = p.grid().dx();
    return (p(i + 1, j) + p(i - 1, j) - 2.0 * p(i, j)) / (dx * dx);
}

double diff2_yy(const GridField& p, int i, int j) {
    require_column(p, i, 1, p.grid().n_x(), "diff2_yy");
    const double dy = p.grid().dy();
    return (p(i, j + 1) + p(i, j - 1) - 2.0 * p(i, j)) / (dy * dy);
}

double diff2_xy(const GridField& p, int i, int j) {
    require_column(p, i, 2, p.grid().n_x() - 1, "diff2_xy");
    const double num = (p(i + 1, j + 1) - p(i + 1, j - 1)) - (p(i - 1, j + 1) - p(i - 1, j - 1));
    return num / (4.0 * p.grid().dx() * p.grid().dy());
}

}  // namespace pmwave
