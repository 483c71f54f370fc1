#include "greedyseq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "greedyseq/torus.hpp"

namespace greedyseq::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_pointset(const fs::path& csv_path, const PointSet& points) {
    std::ostringstream out;
    out << "index";
    for (std::size_t a = 1; a <= points.dim(); ++a) out << ",x" << a;
    out << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << (i + 1);
        auto p = points.point(i);
        for (double c : p) out << ',' << format_double(c);
        out << "\n";
    }
    atomic_write(csv_path, out.str());

    nlohmann::json prov = {{"kind", points.provenance.kind},
                           {"detail", points.provenance.detail},
                           {"dim", points.dim()},
                           {"n", points.size()}};
    fs::path sidecar = csv_path;
    sidecar += ".provenance.json";
    atomic_write(sidecar, prov.dump(2) + "\n");
}

PointSet read_pointset(const fs::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open points file: " + csv_path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("no points: empty file " + csv_path.string());
    // header: index,x1[,x2,...]
    std::size_t dim = 0;
    for (char c : line)
        if (c == ',') ++dim;
    if (dim == 0) throw std::runtime_error("malformed header in " + csv_path.string());

    PointSet ps(dim);
    std::vector<double> row(dim);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        if (!std::getline(ss, cell, ',')) continue; // index column
        for (std::size_t a = 0; a < dim; ++a) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("short row in " + csv_path.string());
            row[a] = std::stod(cell);
        }
        ps.append(row);
    }
    if (ps.empty()) throw std::runtime_error("no points in " + csv_path.string());

    fs::path sidecar = csv_path;
    sidecar += ".provenance.json";
    if (fs::exists(sidecar)) {
        auto j = read_json(sidecar);
        ps.provenance.kind = j.value("kind", std::string("file"));
        ps.provenance.detail = j.value("detail", nlohmann::json::object());
    } else {
        ps.provenance.kind = "file";
        ps.provenance.detail = {{"path", csv_path.string()}};
    }
    return ps;
}

void write_metric_rows(const fs::path& path, const std::vector<MetricCsvRow>& rows) {
    std::ostringstream out;
    out << "n,metric,value,tail_bound\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.metric << ',' << format_double(r.value) << ','
            << format_double(r.tail_bound) << "\n";
    }
    atomic_write(path, out.str());
}

std::vector<MetricCsvRow> rows_from_reports(const std::vector<MetricReport>& reports) {
    std::vector<MetricCsvRow> rows;
    for (const auto& rep : reports)
        for (const auto& [name, vt] : rep.values)
            rows.push_back({rep.n, name, vt.value, vt.tail_bound});
    return rows;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    nlohmann::json j;
    in >> j;
    return j;
}

double parse_coordinate(const std::string& token) {
    auto slash = token.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(token.substr(0, slash));
        double den = std::stod(token.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator in " + token);
        return wrap01(num / den);
    }
    return wrap01(std::stod(token));
}

} // namespace greedyseq::io
