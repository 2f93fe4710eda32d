#ifndef KMPP_IO_HPP
#define KMPP_IO_HPP

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kmpp/bench.hpp"
#include "kmpp/centroids.hpp"
#include "kmpp/dataset.hpp"
#include "kmpp/errors.hpp"

namespace kmpp {
namespace detail {

// %.17g round-trips doubles exactly.
inline void append_double(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

inline double parse_double(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r'))
        --last;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw IoError("line " + std::to_string(line_no) + ": bad number '" +
                      std::string(field) + "'");
    return v;
}

inline std::uint64_t parse_u64(std::string_view field, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw IoError("line " + std::to_string(line_no) + ": bad integer '" +
                      std::string(field) + "'");
    return v;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

inline void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

} // namespace detail

/**
 * Point CSV: one point per line, coordinates comma-separated, no header.
 * Dimensionality comes from the first line.
 */
inline Dataset load_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<double> coords;
    std::size_t dims = 0;
    std::size_t n = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv_line(line);
        if (dims == 0) {
            dims = fields.size();
        } else if (fields.size() != dims) {
            throw IoError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(dims) + " coordinates, got " +
                          std::to_string(fields.size()));
        }
        for (const auto f : fields) coords.push_back(detail::parse_double(f, line_no));
        ++n;
    }
    if (n == 0) throw IoError(path + ": no points");
    return Dataset(std::move(coords), n, dims);
}

inline void save_points_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    std::string buf;
    for (std::size_t i = 0; i < data.size(); ++i) {
        buf.clear();
        const auto p = data.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j) buf.push_back(',');
            detail::append_double(buf, p[j]);
        }
        buf.push_back('\n');
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path);
}

/**
 * Raw binary points: little-endian u64 point count, little-endian u64 dims,
 * then n x dims little-endian IEEE-754 doubles.
 */
inline void save_points_binary(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    std::string buf;
    buf.reserve(1 << 16);
    detail::put_u64_le(buf, data.size());
    detail::put_u64_le(buf, data.dims());
    for (const double v : data.storage()) {
        detail::put_u64_le(buf, std::bit_cast<std::uint64_t>(v));
        if (buf.size() >= (1 << 16)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("write failed: " + path);
}

inline Dataset load_points_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    unsigned char header[16];
    if (!in.read(reinterpret_cast<char*>(header), 16))
        throw IoError(path + ": truncated header");
    const std::uint64_t n = detail::get_u64_le(header);
    const std::uint64_t dims = detail::get_u64_le(header + 8);
    if (n == 0 || dims == 0) throw IoError(path + ": empty dataset");
    std::vector<double> coords(n * dims);
    std::vector<unsigned char> raw(coords.size() * 8);
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
        throw IoError(path + ": truncated point data");
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] = std::bit_cast<double>(detail::get_u64_le(raw.data() + i * 8));
    return Dataset(std::move(coords), n, dims);
}

/// Dispatch on extension: ".csv" / ".txt" parse as CSV, anything else as raw binary.
inline Dataset load_points(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".csv" || ext == ".txt") return load_points_csv(path);
    return load_points_binary(path);
}

/// Centers CSV: one centroid per line, coordinates comma-separated.
inline void write_centers_csv(const std::string& path, const CentroidSet& centers) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    std::string buf;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        buf.clear();
        const auto p = centers.centroid(c);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j) buf.push_back(',');
            detail::append_double(buf, p[j]);
        }
        buf.push_back('\n');
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path);
}

/// Labels CSV: one integer per line.
inline void write_labels_csv(const std::string& path, std::span<const std::uint32_t> labels) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const std::uint32_t l : labels) out << l << '\n';
    if (!out) throw IoError("write failed: " + path);
}

inline constexpr std::string_view report_csv_header =
    "scenario,n_points,k,strategy,workers,chunk_size,phase,trial,wall_ms";

/// Timing report CSV, environment header first as '#' comment lines.
/// Round-trips losslessly through read_report_csv.
inline std::string report_to_csv(const TimingReport& report) {
    std::string out;
    out += "# cores=" + std::to_string(report.cores) + "\n";
    out += "# timestamp=" + report.timestamp + "\n";
    out += report_csv_header;
    out += '\n';
    for (const TimingRow& r : report.rows) {
        out += r.scenario;
        out += ',' + std::to_string(r.n_points);
        out += ',' + std::to_string(r.k);
        out += ',';
        out += to_string(r.strategy);
        out += ',' + std::to_string(r.workers);
        out += ',' + std::to_string(r.chunk_size);
        out += ',';
        out += to_string(r.phase);
        out += ',' + std::to_string(r.trial);
        out += ',';
        detail::append_double(out, r.wall_ms);
        out += '\n';
    }
    return out;
}

inline TimingReport report_from_csv(std::string_view csv) {
    TimingReport report;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t nl = csv.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? csv.substr(pos) : csv.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? csv.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line.starts_with("# cores="))
                report.cores = detail::parse_u64(line.substr(8), line_no);
            else if (line.starts_with("# timestamp="))
                report.timestamp = std::string(line.substr(12));
            continue;
        }
        if (!saw_header) {
            if (line != report_csv_header)
                throw IoError("line " + std::to_string(line_no) + ": unexpected report header");
            saw_header = true;
            continue;
        }
        const auto f = detail::split_csv_line(line);
        if (f.size() != 9)
            throw IoError("line " + std::to_string(line_no) + ": expected 9 fields, got " +
                          std::to_string(f.size()));
        TimingRow row;
        row.scenario = std::string(f[0]);
        row.n_points = detail::parse_u64(f[1], line_no);
        row.k = detail::parse_u64(f[2], line_no);
        row.strategy = parse_strategy(f[3]);
        row.workers = detail::parse_u64(f[4], line_no);
        row.chunk_size = detail::parse_u64(f[5], line_no);
        row.phase = parse_phase(f[6]);
        row.trial = detail::parse_u64(f[7], line_no);
        row.wall_ms = detail::parse_double(f[8], line_no);
        report.rows.push_back(std::move(row));
    }
    if (!saw_header) throw IoError("report csv: missing header row");
    return report;
}

inline void write_report_csv(const std::string& path, const TimingReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << report_to_csv(report);
    if (!out) throw IoError("write failed: " + path);
}

inline TimingReport read_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return report_from_csv(ss.str());
}

} // namespace kmpp

#endif // KMPP_IO_HPP
