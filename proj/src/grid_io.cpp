#include "sarmt/grid_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "grid payload is little-endian; big-endian hosts need byte swapping");

namespace sarmt {

namespace {

constexpr const char* kMagic = "SARMT-GRID";

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw GridIoError(GridIoError::Code::CorruptHeader, "bad number: " + s);
    return v;
}

}  // namespace

std::string grid_kind_name(GridKind k) {
    switch (k) {
        case GridKind::PhaseHistory: return "phase_history";
        case GridKind::Image: return "image";
        case GridKind::Surface: return "surface";
        case GridKind::Profile: return "profile";
    }
    throw std::logic_error("unreachable grid kind");
}

GridKind grid_kind_from_name(const std::string& s) {
    for (auto k : {GridKind::PhaseHistory, GridKind::Image, GridKind::Surface, GridKind::Profile})
        if (grid_kind_name(k) == s) return k;
    throw GridIoError(GridIoError::Code::CorruptHeader, "unknown grid kind: " + s);
}

void write_grid_file(const GridFile& g, const std::filesystem::path& path) {
    if (g.data.size() != g.rows * g.cols)
        throw GridIoError(GridIoError::Code::Io, "payload length != rows*cols");

    std::ostringstream header;
    header << kMagic << " " << g.version << "\n"
           << "kind " << grid_kind_name(g.kind) << "\n"
           << "stage " << stage_name(g.stage) << "\n"
           << "rows " << g.rows << "\n"
           << "cols " << g.cols << "\n"
           << "row_start " << fmt_double(g.row_start) << "\n"
           << "row_step " << fmt_double(g.row_step) << "\n"
           << "col_start " << fmt_double(g.col_start) << "\n"
           << "col_step " << fmt_double(g.col_step) << "\n"
           << "y0 " << fmt_double(g.y0) << "\n"
           << "phi_ref " << fmt_double(g.phi_ref) << "\n"
           << "fc " << fmt_double(g.fc) << "\n"
           << "empty_scene " << (g.empty_scene ? 1 : 0) << "\n";
    header << "provenance ";
    for (std::size_t i = 0; i < g.provenance.size(); ++i) {
        std::string entry = g.provenance[i];
        for (auto& ch : entry)
            if (ch == ' ' || ch == '\n' || ch == ';') ch = '_';
        header << (i ? ";" : "") << entry;
    }
    header << "\npayload\n";

    // atomic write: temp file in the same directory, then rename
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw GridIoError(GridIoError::Code::Io, "cannot open " + tmp.string());
        const std::string h = header.str();
        out.write(h.data(), static_cast<std::streamsize>(h.size()));
        std::vector<float> payload(2 * g.data.size());
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            payload[2 * i] = static_cast<float>(g.data[i].real());
            payload[2 * i + 1] = static_cast<float>(g.data[i].imag());
        }
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size() * sizeof(float)));
        if (!out) throw GridIoError(GridIoError::Code::Io, "write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

struct HeaderFields {
    GridFile g;
    std::streampos payload_offset;
};

HeaderFields read_header(std::ifstream& in, const std::filesystem::path& path) {
    HeaderFields hf;
    std::string line;
    if (!std::getline(in, line))
        throw GridIoError(GridIoError::Code::CorruptHeader, "empty file: " + path.string());
    {
        std::istringstream is(line);
        std::string magic;
        int version = 0;
        is >> magic >> version;
        if (magic != kMagic)
            throw GridIoError(GridIoError::Code::CorruptHeader, "bad magic in " + path.string());
        if (version != 1)
            throw GridIoError(GridIoError::Code::UnknownVersion,
                              "unsupported version " + std::to_string(version));
        hf.g.version = version;
    }

    bool saw_payload = false;
    while (std::getline(in, line)) {
        if (line == "payload") {
            saw_payload = true;
            break;
        }
        const auto sp = line.find(' ');
        const std::string key = line.substr(0, sp);
        const std::string val = (sp == std::string::npos) ? "" : line.substr(sp + 1);
        try {
            if (key == "kind") hf.g.kind = grid_kind_from_name(val);
            else if (key == "stage") hf.g.stage = stage_from_name(val);
            else if (key == "rows") hf.g.rows = std::stoul(val);
            else if (key == "cols") hf.g.cols = std::stoul(val);
            else if (key == "row_start") hf.g.row_start = parse_double(val);
            else if (key == "row_step") hf.g.row_step = parse_double(val);
            else if (key == "col_start") hf.g.col_start = parse_double(val);
            else if (key == "col_step") hf.g.col_step = parse_double(val);
            else if (key == "y0") hf.g.y0 = parse_double(val);
            else if (key == "phi_ref") hf.g.phi_ref = parse_double(val);
            else if (key == "fc") hf.g.fc = parse_double(val);
            else if (key == "empty_scene") hf.g.empty_scene = (val == "1");
            else if (key == "provenance") {
                std::istringstream ps(val);
                std::string entry;
                while (std::getline(ps, entry, ';'))
                    if (!entry.empty()) hf.g.provenance.push_back(entry);
            } else {
                throw GridIoError(GridIoError::Code::CorruptHeader, "unknown field: " + key);
            }
        } catch (const GridIoError&) {
            throw;
        } catch (const std::exception& e) {
            throw GridIoError(GridIoError::Code::CorruptHeader,
                              "bad header field '" + key + "': " + e.what());
        }
    }
    if (!saw_payload)
        throw GridIoError(GridIoError::Code::CorruptHeader,
                          "missing payload marker in " + path.string());
    if (hf.g.rows == 0 || hf.g.cols == 0)
        throw GridIoError(GridIoError::Code::CorruptHeader, "zero dimensions");
    hf.payload_offset = in.tellg();
    return hf;
}

}  // namespace

GridFile read_grid_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GridIoError(GridIoError::Code::Io, "cannot open " + path.string());
    auto hf = read_header(in, path);

    const std::size_t count = hf.g.rows * hf.g.cols;
    std::vector<float> payload(2 * count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != payload.size() * sizeof(float))
        throw GridIoError(GridIoError::Code::TruncatedPayload,
                          "truncated payload in " + path.string());
    hf.g.data.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        hf.g.data[i] = cdouble{payload[2 * i], payload[2 * i + 1]};
    return hf.g;
}

std::string describe_grid_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GridIoError(GridIoError::Code::Io, "cannot open " + path.string());
    const auto hf = read_header(in, path);
    std::ostringstream os;
    os << "kind=" << grid_kind_name(hf.g.kind) << "\n"
       << "stage=" << stage_name(hf.g.stage) << "\n"
       << "rows=" << hf.g.rows << "\n"
       << "cols=" << hf.g.cols << "\n"
       << "row_start=" << fmt_double(hf.g.row_start) << "\n"
       << "row_step=" << fmt_double(hf.g.row_step) << "\n"
       << "col_start=" << fmt_double(hf.g.col_start) << "\n"
       << "col_step=" << fmt_double(hf.g.col_step) << "\n"
       << "y0=" << fmt_double(hf.g.y0) << "\n"
       << "phi_ref=" << fmt_double(hf.g.phi_ref) << "\n"
       << "fc=" << fmt_double(hf.g.fc) << "\n";
    return os.str();
}

GridFile to_grid_file(const PhaseHistory& ph, const SpatialFrequencyGrid* grid) {
    GridFile g;
    g.kind = GridKind::PhaseHistory;
    g.stage = ph.stage;
    g.rows = ph.num_pulses();
    g.cols = ph.num_freqs();
    g.row_start = ph.t_axis.front();
    g.row_step = ph.t_axis[1] - ph.t_axis[0];
    g.col_start = ph.fr_axis.front();
    g.col_step = ph.fr_axis[1] - ph.fr_axis[0];
    if (grid != nullptr) {
        g.y0 = grid->y0;
        g.phi_ref = grid->phi_ref;
        g.fc = grid->fc;
    }
    g.empty_scene = ph.empty_scene;
    g.data = ph.data.raw();
    return g;
}

GridFile to_grid_file(const ComplexImage& img) {
    GridFile g;
    g.kind = GridKind::Image;
    g.stage = Stage::Image;
    g.rows = img.data.rows();
    g.cols = img.data.cols();
    g.row_start = img.grid.x_start;
    g.row_step = img.grid.x_step;
    g.col_start = img.grid.y_start;
    g.col_step = img.grid.y_step;
    g.y0 = img.grid.y0;
    g.phi_ref = img.grid.phi_ref;
    g.fc = img.grid.fc;
    g.provenance = img.provenance;
    g.data = img.data.raw();
    return g;
}

GridFile to_grid_file(const PhaseErrorSurface& surface) {
    GridFile g;
    g.kind = GridKind::Surface;
    g.stage = Stage::Image;
    g.rows = surface.grid.nx;
    g.cols = surface.grid.ny;
    g.row_start = surface.grid.x_start;
    g.row_step = surface.grid.x_step;
    g.col_start = surface.grid.y_start;
    g.col_step = surface.grid.y_step;
    g.y0 = surface.grid.y0;
    g.phi_ref = surface.grid.phi_ref;
    g.fc = surface.grid.fc;
    g.data.resize(surface.values.size());
    for (std::size_t i = 0; i < surface.values.size(); ++i)
        g.data[i] = cdouble{surface.values[i], 0.0};
    return g;
}

GridFile profile_grid_file(const std::vector<double>& x_axis, const std::vector<double>& phi0) {
    if (x_axis.size() != phi0.size() || x_axis.size() < 2)
        throw GridIoError(GridIoError::Code::Io, "profile: bad axes");
    GridFile g;
    g.kind = GridKind::Profile;
    g.stage = Stage::Image;
    g.rows = x_axis.size();
    g.cols = 1;
    g.row_start = x_axis.front();
    g.row_step = x_axis[1] - x_axis[0];
    g.col_start = 0.0;
    g.col_step = 1.0;
    g.data.resize(phi0.size());
    for (std::size_t i = 0; i < phi0.size(); ++i) g.data[i] = cdouble{phi0[i], 0.0};
    return g;
}

PhaseHistory as_phase_history(const GridFile& g) {
    if (g.kind != GridKind::PhaseHistory)
        throw GridIoError(GridIoError::Code::WrongKind, "grid file is not a phase history");
    PhaseHistory ph;
    ph.stage = g.stage;
    ph.empty_scene = g.empty_scene;
    ph.t_axis.resize(g.rows);
    for (std::size_t i = 0; i < g.rows; ++i)
        ph.t_axis[i] = g.row_start + g.row_step * static_cast<double>(i);
    ph.fr_axis.resize(g.cols);
    for (std::size_t i = 0; i < g.cols; ++i)
        ph.fr_axis[i] = g.col_start + g.col_step * static_cast<double>(i);
    ph.data = ComplexGrid(g.rows, g.cols);
    ph.data.raw() = g.data;
    return ph;
}

ComplexImage as_image(const GridFile& g) {
    if (g.kind != GridKind::Image)
        throw GridIoError(GridIoError::Code::WrongKind, "grid file is not an image");
    ComplexImage img;
    img.grid.nx = g.rows;
    img.grid.ny = g.cols;
    img.grid.x_start = g.row_start;
    img.grid.x_step = g.row_step;
    img.grid.y_start = g.col_start;
    img.grid.y_step = g.col_step;
    img.grid.y0 = g.y0;
    img.grid.phi_ref = g.phi_ref;
    img.grid.fc = g.fc;
    img.data = ComplexGrid(g.rows, g.cols);
    img.data.raw() = g.data;
    img.azimuth_pixel_spacing = kTwoPi / (g.row_step * static_cast<double>(g.rows));
    img.range_pixel_spacing = kTwoPi / (g.col_step * static_cast<double>(g.cols));
    img.provenance = g.provenance;
    return img;
}

}  // namespace sarmt
