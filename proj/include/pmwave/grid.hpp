#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Mesh geometry, discrete fields and finite-difference stencils on the
// truncated periodic cylinder [0, x_max] x T^1.
//
// Indices follow the mesh numbering: columns i in [1, n_x], rows j in
// [1, n_y - 1]. Row n_y is the same circle point as row 1 and is not stored.

namespace pmwave {

class GridSpec {
public:
    GridSpec(double x_max, int n_x, int n_y);

    double x_max() const { return x_max_; }
    int n_x() const { return n_x_; }
    int n_y() const { return n_y_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }

    // Number of independent (stored) rows.
    int rows() const { return n_y_ - 1; }
    std::size_t node_count() const {
        return static_cast<std::size_t>(n_x_) * static_cast<std::size_t>(rows());
    }

    double x(int i) const { return (i - 1) * dx_; }
    double y(int j) const { return (j - 1) * dy_; }

    bool operator==(const GridSpec& o) const {
        return x_max_ == o.x_max_ && n_x_ == o.n_x_ && n_y_ == o.n_y_;
    }

private:
    double x_max_;
    int n_x_;
    int n_y_;
    double dx_;
    double dy_;
};

// Periodic row index: result is congruent to j modulo n_y - 1 and lies in
// [1, n_y - 1].
int wrap_row(int j, const GridSpec& grid);

// A scalar field on the mesh, stored row-major by j (each row holds n_x
// contiguous values). Used both for the pressure and for derived fields
// such as residuals.
class GridField {
public:
    explicit GridField(const GridSpec& grid, double fill = 0.0);

    const GridSpec& grid() const { return grid_; }

    // j is wrapped; i must lie in [1, n_x].
    double operator()(int i, int j) const { return data_[offset(i, wrap_row(j, grid_))]; }
    double& operator()(int i, int j) { return data_[offset(i, wrap_row(j, grid_))]; }

    // Row j (wrapped), element k is column i = k + 1.
    std::span<const double> row(int j) const;
    std::span<double> row(int j);

    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }

    double max() const;
    double max_abs() const;

    bool operator==(const GridField& o) const { return grid_ == o.grid_ && data_ == o.data_; }

private:
    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(grid_.n_x()) +
               static_cast<std::size_t>(i - 1);
    }

    GridSpec grid_;
    std::vector<double> data_;
};

using PressureField = GridField;

// Stencils. x-stencils throw std::out_of_range when they would read outside
// [1, n_x]; y-stencils wrap.
double diff_backward_x(const GridField& p, int i, int j);
double diff_centered_x(const GridField& p, int i, int j);
double diff_centered_y(const GridField& p, int i, int j);
double diff2_xx(const GridField& p, int i, int j);
double diff2_yy(const GridField& p, int i, int j);
double diff2_xy(const GridField& p, int i, int j);

}  // namespace pmwave
