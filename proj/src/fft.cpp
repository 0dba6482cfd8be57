#include "sarmt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <utility>

namespace sarmt::fft {

namespace {

// One cached in-place plan (and its aligned buffer) per (size, sign).
// Single-threaded use; plans are created with FFTW_ESTIMATE so results are
// reproducible run to run.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, entry] : plans_) {
            fftw_destroy_plan(entry.plan);
            fftw_free(entry.buf);
        }
    }

    void execute(cdouble* data, std::size_t n, int sign) {
        auto& e = plan_for(n, sign);
        auto* buf = reinterpret_cast<cdouble*>(e.buf);
        std::copy(data, data + n, buf);
        fftw_execute(e.plan);
        std::copy(buf, buf + n, data);
    }

private:
    struct Entry {
        fftw_plan plan;
        fftw_complex* buf;
    };

    Entry& plan_for(std::size_t n, int sign) {
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        Entry e;
        e.buf = fftw_alloc_complex(n);
        e.plan = fftw_plan_dft_1d(static_cast<int>(n), e.buf, e.buf, sign, FFTW_ESTIMATE);
        return plans_.emplace(key, e).first->second;
    }

    std::map<std::pair<std::size_t, int>, Entry> plans_;
};

PlanCache g_plans;

// exp(sgn * j * 2 pi * k / n) with k reduced modulo n to keep the angle small.
cdouble unit_phase(long long k, std::size_t n, int sgn) {
    long long m = k % static_cast<long long>(n);
    if (m < 0) m += static_cast<long long>(n);
    double ang = sgn * kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace

void transform_1d(cdouble* data, std::size_t n, Direction dir) {
    if (n == 0) return;
    const int sgn = (dir == Direction::Forward) ? -1 : +1;
    const long long c = static_cast<long long>(center_index(n));

    // (p-c)(m-c) = pm - pc - mc + c^2; fold the three linear/constant factors
    // into pre/post phase ramps around a plain FFT.
    for (std::size_t m = 0; m < n; ++m)
        data[m] *= unit_phase(-sgn * c * static_cast<long long>(m), n, 1);

    g_plans.execute(data, n, (dir == Direction::Forward) ? FFTW_FORWARD : FFTW_BACKWARD);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const cdouble fixed = unit_phase(sgn * c * c, n, 1) * scale;
    for (std::size_t p = 0; p < n; ++p)
        data[p] *= unit_phase(-sgn * c * static_cast<long long>(p), n, 1) * fixed;
}

void transform_rows(ComplexGrid& g, Direction dir) {
    for (std::size_t r = 0; r < g.rows(); ++r)
        transform_1d(g.data() + r * g.cols(), g.cols(), dir);
}

void transform_cols(ComplexGrid& g, Direction dir) {
    std::vector<cdouble> col(g.rows());
    for (std::size_t c = 0; c < g.cols(); ++c) {
        for (std::size_t r = 0; r < g.rows(); ++r) col[r] = g.at(r, c);
        transform_1d(col.data(), col.size(), dir);
        for (std::size_t r = 0; r < g.rows(); ++r) g.at(r, c) = col[r];
    }
}

void transform_2d(ComplexGrid& g, Direction dir) {
    transform_rows(g, dir);
    transform_cols(g, dir);
}

}  // namespace sarmt::fft
