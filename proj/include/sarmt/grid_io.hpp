#ifndef SARMT_GRID_IO_HPP
#define SARMT_GRID_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sarmt/echo_sim.hpp"
#include "sarmt/error_model.hpp"
#include "sarmt/pfa.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

// On-disk grid container, version 1. ASCII header of fixed fields terminated
// by a "payload" line, then row-major interleaved 32-bit little-endian IEEE
// real/imaginary pairs.
enum class GridKind { PhaseHistory, Image, Surface, Profile };

std::string grid_kind_name(GridKind k);
GridKind grid_kind_from_name(const std::string& s);

class GridIoError : public std::runtime_error {
public:
    enum class Code { Io, CorruptHeader, TruncatedPayload, UnknownVersion, WrongKind };
    GridIoError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

struct GridFile {
    int version = 1;
    GridKind kind = GridKind::PhaseHistory;
    Stage stage = Stage::Raw;
    std::size_t rows = 0, cols = 0;
    double row_start = 0.0, row_step = 0.0;  // t (s) or X (rad/m)
    double col_start = 0.0, col_step = 0.0;  // fr (Hz) or Y (rad/m)
    double y0 = 0.0, phi_ref = 0.0, fc = 0.0;
    bool empty_scene = false;
    std::vector<std::string> provenance;
    std::vector<cdouble> data;  // values rounded through float32 on write
};

void write_grid_file(const GridFile& g, const std::filesystem::path& path);
GridFile read_grid_file(const std::filesystem::path& path);

// Prints the header fields (inspection mode; payload untouched).
std::string describe_grid_file(const std::filesystem::path& path);

GridFile to_grid_file(const PhaseHistory& ph, const SpatialFrequencyGrid* grid = nullptr);
GridFile to_grid_file(const ComplexImage& img);
GridFile to_grid_file(const PhaseErrorSurface& surface);
GridFile profile_grid_file(const std::vector<double>& x_axis, const std::vector<double>& phi0);

PhaseHistory as_phase_history(const GridFile& g);
ComplexImage as_image(const GridFile& g);

}  // namespace sarmt

#endif
