#ifndef SARMT_TYPES_HPP
#define SARMT_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sarmt {

using cdouble = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

// Row-major 2-D complex grid. Rows index azimuth (pulse / X), columns index
// range (frequency / Y) throughout the library.
class ComplexGrid {
public:
    ComplexGrid() = default;
    ComplexGrid(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cdouble& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cdouble& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    cdouble* data() { return data_.data(); }
    const cdouble* data() const { return data_.data(); }
    std::vector<cdouble>& raw() { return data_; }
    const std::vector<cdouble>& raw() const { return data_; }

    double energy() const {
        double e = 0.0;
        for (const auto& v : data_) e += std::norm(v);
        return e;
    }

    bool same_shape(const ComplexGrid& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

// Center index convention used for every centered axis in the library:
// axis value 0 (time, frequency offset, image DC) sits at floor(n/2).
inline std::size_t center_index(std::size_t n) { return n / 2; }

}  // namespace sarmt

#endif
