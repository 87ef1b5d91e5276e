#include "nlheat/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nlheat/errors.hpp"

namespace nlheat::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    os.precision(17);
    return os;
}

void check_written(const std::ofstream& os, const std::filesystem::path& path) {
    if (!os) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

template <typename T>
void put_le(std::ostream& os, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw IoError("truncated binary trajectory");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

nlohmann::json grid_to_json(const Grid& grid) {
    nlohmann::json j;
    j["dim"] = grid.dim();
    for (int a = 0; a < grid.dim(); ++a) {
        j["lengths"].push_back(grid.length(a));
        j["n"].push_back(grid.n(a));
        j["h"].push_back(grid.h(a));
    }
    return j;
}

Grid grid_from_json(const nlohmann::json& j) {
    try {
        const int dim = j.at("dim").get<int>();
        const auto lengths = j.at("lengths").get<std::vector<double>>();
        const auto n = j.at("n").get<std::vector<std::size_t>>();
        if (dim == 1 && lengths.size() == 1 && n.size() == 1) {
            return Grid::interval(lengths[0], n[0]);
        }
        if (dim == 2 && lengths.size() == 2 && n.size() == 2) {
            return Grid::rectangle(lengths[0], lengths[1], n[0], n[1]);
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed grid metadata: ") + e.what());
    }
    throw IoError("grid metadata must describe a 1D or 2D grid");
}

nlohmann::json field_to_json(const Field& f) {
    nlohmann::json j = grid_to_json(f.grid());
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    return j;
}

Field field_from_json(const nlohmann::json& j) {
    const Grid grid = grid_from_json(j);
    try {
        return Field(grid, j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed field values: ") + e.what());
    }
}

void write_field_csv(const std::filesystem::path& path, const Field& f) {
    auto os = open_out(path);
    const Grid& g = f.grid();
    os << (g.dim() == 1 ? "x,value\n" : "x,y,value\n");
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto x = g.coordinate(i);
        os << x[0] << ',';
        if (g.dim() == 2) {
            os << x[1] << ',';
        }
        os << f[i] << '\n';
    }
    check_written(os, path);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    auto os = open_out(path);
    os << j.dump(2) << '\n';
    check_written(os, path);
}

void write_field_json(const std::filesystem::path& path, const Field& f) { write_json(path, field_to_json(f)); }

Field read_field(const std::filesystem::path& path, const Grid& grid) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw IoError("'" + path.string() + "' is not valid JSON: " + e.what());
        }
        Field f = field_from_json(j);
        if (!(f.grid() == grid)) {
            throw IoError("'" + path.string() + "' was written for a different grid");
        }
        return f;
    }

    std::string line;
    std::getline(is, line);  // header
    std::vector<double> values;
    values.reserve(grid.size());
    std::size_t row = 0;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                cols.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("'" + path.string() + "': unparsable number '" + cell + "'");
            }
        }
        if (cols.size() != static_cast<std::size_t>(grid.dim()) + 1) {
            throw IoError("'" + path.string() + "': wrong column count");
        }
        if (row >= grid.size()) {
            throw IoError("'" + path.string() + "' has more rows than the grid has nodes");
        }
        const auto x = grid.coordinate(row);
        for (int a = 0; a < grid.dim(); ++a) {
            if (!close(cols[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(a)])) {
                throw IoError("'" + path.string() + "': node coordinates do not match the grid");
            }
        }
        values.push_back(cols.back());
        ++row;
    }
    if (values.size() != grid.size()) {
        throw IoError("'" + path.string() + "' has fewer rows than the grid has nodes");
    }
    return Field(grid, std::move(values));
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    if (traj.states.empty()) {
        throw IoError("cannot export an empty trajectory");
    }
    auto os = open_out(path);
    os << "t,node,value\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const Field& u = traj.states[k];
        for (std::size_t i = 0; i < u.size(); ++i) {
            os << traj.times[k] << ',' << i << ',' << u[i] << '\n';
        }
    }
    check_written(os, path);
}

void write_trajectory_bin(const std::filesystem::path& path, const Trajectory& traj) {
    if (traj.states.empty()) {
        throw IoError("cannot export an empty trajectory");
    }
    auto os = open_out(path, std::ios::out | std::ios::binary);
    const Grid& g = traj.grid();
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
    put_le<std::uint64_t>(os, traj.states.size() - 1);
    for (int a = 0; a < g.dim(); ++a) {
        put_le<std::uint64_t>(os, g.n(a));
    }
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        put_le<double>(os, traj.times[k]);
        for (double v : traj.states[k].values()) {
            put_le<double>(os, v);
        }
    }
    check_written(os, path);
}

Trajectory read_trajectory_bin(const std::filesystem::path& path, const std::vector<double>& lengths) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    const auto dims = get_le<std::uint32_t>(is);
    if ((dims != 1 && dims != 2) || lengths.size() != dims) {
        throw IoError("binary trajectory dimension does not match the supplied lengths");
    }
    const auto k_last = get_le<std::uint64_t>(is);
    std::vector<std::uint64_t> n(dims);
    for (auto& x : n) {
        x = get_le<std::uint64_t>(is);
    }
    const Grid grid = dims == 1 ? Grid::interval(lengths[0], n[0]) : Grid::rectangle(lengths[0], lengths[1], n[0], n[1]);
    Trajectory traj;
    for (std::uint64_t k = 0; k <= k_last; ++k) {
        traj.times.push_back(get_le<double>(is));
        std::vector<double> v(grid.size());
        for (double& x : v) {
            x = get_le<double>(is);
        }
        traj.states.emplace_back(grid, std::move(v));
    }
    if (traj.times.size() >= 2) {
        traj.dt = traj.times[1] - traj.times[0];
    }
    return traj;
}

}  // namespace nlheat::io
