#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pubchoice {

/// Dense row-major matrix, sized for small games (a handful of types and venues).
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& row_list) {
    Matrix m;
    m.rows = row_list.size();
    m.cols = m.rows ? row_list.front().size() : 0;
    for (const auto& r : row_list) {
      if (r.size() != m.cols) throw std::invalid_argument("ragged row list");
      m.data.insert(m.data.end(), r.begin(), r.end());
    }
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::vector<double> row(std::size_t i) const {
    return {data.begin() + static_cast<std::ptrdiff_t>(i * cols),
            data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols)};
  }
  std::vector<double> col(std::size_t j) const {
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
    return out;
  }
};

/// Per-venue average impacts; the state of the game dynamics.
struct VenueImpacts {
  std::vector<double> v;

  VenueImpacts() = default;
  explicit VenueImpacts(std::vector<double> impacts) : v(std::move(impacts)) {}
  VenueImpacts(std::initializer_list<double> impacts) : v(impacts) {}
  VenueImpacts(std::size_t k, double fill) : v(k, fill) {}

  std::size_t size() const { return v.size(); }
  double operator[](std::size_t j) const { return v[j]; }
  double& operator[](std::size_t j) { return v[j]; }
};

/// Per-type, per-venue publication counts (non-negative reals).
struct ActionProfile {
  Matrix a;

  ActionProfile() = default;
  explicit ActionProfile(Matrix m) : a(std::move(m)) {}
};

}  // namespace pubchoice
