#include "sarmt/export_image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace sarmt {

void export_magnitude(const ComplexImage& image, const std::filesystem::path& path,
                      double dynamic_range_db) {
    if (!(dynamic_range_db > 0.0))
        throw std::invalid_argument("export_magnitude: dynamic range must be positive");
    double peak = 0.0;
    for (const auto& v : image.data.raw()) peak = std::max(peak, std::abs(v));
    if (!(peak > 0.0)) throw std::invalid_argument("export_magnitude: zero image");

    const std::size_t rows = image.data.rows(), cols = image.data.cols();
    std::vector<unsigned char> bytes(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const double a = std::abs(image.data.raw()[i]);
        double db = (a > 0.0) ? 20.0 * std::log10(a / peak) : -2.0 * dynamic_range_db;
        db = std::clamp(db, -dynamic_range_db, 0.0);
        bytes[i] = static_cast<unsigned char>(
            std::lround(255.0 * (db + dynamic_range_db) / dynamic_range_db));
    }

    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("export_magnitude: cannot open " + tmp.string());
        out << "P5\n" << cols << " " << rows << "\n255\n";
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("export_magnitude: write failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace sarmt
