#include "trigokit/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "trigokit/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "field containers are little endian; add byte swapping for this platform");

namespace trigokit {

namespace {

using nlohmann::json;

constexpr const char* kStrainMagic = "SFLD1";
constexpr const char* kDispMagic = "DFLD1";

void write_doubles(std::ofstream& out, const double* data, std::size_t count) {
    out.write(reinterpret_cast<const char*>(data), std::streamsize(count * sizeof(double)));
}

std::string dims_json(const TorusGrid& g) {
    std::ostringstream os;
    os << "\"dims\":[" << g.n[0] << "," << g.n[1] << "," << g.n[2] << "],\"lengths\":[";
    os.precision(17);
    os << g.length[0] << "," << g.length[1] << "," << g.length[2] << "]";
    return os.str();
}

void check_magic(std::istream& in, const char* expected, const char* kind) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::FormatError, "missing magic line");
    if (line != expected) {
        const std::string prefix(expected, 4);
        if (line.rfind(prefix, 0) == 0)
            throw Error(ErrorCode::FormatError,
                        std::string("unsupported ") + kind + " version '" + line + "'");
        throw Error(ErrorCode::FormatError, std::string("bad magic '") + line + "'");
    }
}

json parse_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::FormatError, "missing header line");
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("header is not valid JSON: ") + e.what());
    }
}

TorusGrid grid_from_header(const json& h) {
    if (!h.contains("dims") || !h.contains("lengths") || !h.contains("dtype"))
        throw Error(ErrorCode::FormatError, "header lacks dims/lengths/dtype");
    if (h["dtype"] != "f64") throw Error(ErrorCode::FormatError, "unsupported dtype");
    const auto& d = h["dims"];
    const auto& l = h["lengths"];
    if (!d.is_array() || d.size() != 3 || !l.is_array() || l.size() != 3)
        throw Error(ErrorCode::FormatError, "dims/lengths must have three entries");
    try {
        return TorusGrid(d[0].get<int>(), d[1].get<int>(), d[2].get<int>(), l[0].get<double>(),
                         l[1].get<double>(), l[2].get<double>());
    } catch (const Error& e) {
        throw Error(ErrorCode::FormatError, std::string("invalid grid: ") + e.what());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("invalid grid header: ") + e.what());
    }
}

void read_payload(std::istream& in, double* data, std::size_t count, const char* what) {
    in.read(reinterpret_cast<char*>(data), std::streamsize(count * sizeof(double)));
    if (std::size_t(in.gcount()) != count * sizeof(double))
        throw Error(ErrorCode::FormatError, std::string("truncated ") + what + " payload");
}

void expect_eof(std::istream& in) {
    if (in.peek() != std::char_traits<char>::eof())
        throw Error(ErrorCode::FormatError, "trailing data after payload");
}

} // namespace

void write_field(const std::string& path, const StrainField& e) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");

    const bool with_mask = e.masked_count() > 0;
    out << kStrainMagic << "\n";
    out << "{" << dims_json(e.grid)
        << ",\"components\":[\"e11\",\"e22\",\"e33\",\"e23\",\"e13\",\"e12\"],"
        << "\"dtype\":\"f64\",\"mask\":" << (with_mask ? "true" : "false") << "}\n";

    const std::size_t cells = e.grid.cells();
    std::vector<double> record(6);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        for (int c = 0; c < 6; ++c) record[std::size_t(c)] = e.comp[std::size_t(c)][cell];
        write_doubles(out, record.data(), 6);
    }
    if (with_mask)
        out.write(reinterpret_cast<const char*>(e.mask.data()), std::streamsize(cells));
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

StrainField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");

    check_magic(in, kStrainMagic, "strain field");
    const json h = parse_header(in);
    StrainField e(grid_from_header(h));

    if (h.contains("components")) {
        const json expected = json::array({"e11", "e22", "e33", "e23", "e13", "e12"});
        if (h["components"] != expected)
            throw Error(ErrorCode::FormatError, "unexpected component list");
    }
    bool with_mask = false;
    if (h.contains("mask")) {
        if (!h["mask"].is_boolean()) throw Error(ErrorCode::FormatError, "mask flag must be boolean");
        with_mask = h["mask"].get<bool>();
    }

    const std::size_t cells = e.grid.cells();
    std::vector<double> record(6);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        read_payload(in, record.data(), 6, "strain");
        for (int c = 0; c < 6; ++c) e.comp[std::size_t(c)][cell] = record[std::size_t(c)];
    }
    if (with_mask) {
        in.read(reinterpret_cast<char*>(e.mask.data()), std::streamsize(cells));
        if (std::size_t(in.gcount()) != cells)
            throw Error(ErrorCode::FormatError, "truncated mask section");
        for (std::uint8_t b : e.mask)
            if (b > 1) throw Error(ErrorCode::FormatError, "mask bytes must be 0 or 1");
    }
    expect_eof(in);
    return e;
}

void write_disp(const std::string& path, const DisplacementField& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");

    std::ostringstream ms;
    ms.precision(17);
    const SymMat3& m = u.mean_strain;
    ms << "[" << m.e11 << "," << m.e22 << "," << m.e33 << "," << m.e23 << "," << m.e13 << ","
       << m.e12 << "]";

    out << kDispMagic << "\n";
    out << "{" << dims_json(u.grid) << ",\"components\":[\"u1\",\"u2\",\"u3\"],"
        << "\"dtype\":\"f64\",\"mean_strain\":" << ms.str() << "}\n";

    const std::size_t verts = u.grid.cells();
    std::vector<double> record(3);
    for (std::size_t v = 0; v < verts; ++v) {
        for (int c = 0; c < 3; ++c) record[std::size_t(c)] = u.u[std::size_t(c)][v];
        write_doubles(out, record.data(), 3);
    }
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

DisplacementField read_disp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");

    check_magic(in, kDispMagic, "displacement field");
    const json h = parse_header(in);
    DisplacementField u(grid_from_header(h));

    if (!h.contains("mean_strain") || !h["mean_strain"].is_array() || h["mean_strain"].size() != 6)
        throw Error(ErrorCode::FormatError, "header lacks a six-entry mean_strain");
    const auto& ms = h["mean_strain"];
    u.mean_strain = SymMat3{ms[0].get<double>(), ms[1].get<double>(), ms[2].get<double>(),
                            ms[3].get<double>(), ms[4].get<double>(), ms[5].get<double>()};

    const std::size_t verts = u.grid.cells();
    std::vector<double> record(3);
    for (std::size_t v = 0; v < verts; ++v) {
        read_payload(in, record.data(), 3, "displacement");
        for (int c = 0; c < 3; ++c) u.u[std::size_t(c)][v] = record[std::size_t(c)];
    }
    expect_eof(in);
    return u;
}

} // namespace trigokit
