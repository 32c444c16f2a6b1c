#include "qreset/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qreset/errors.hpp"

namespace qreset {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    const std::size_t d = m.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t i = 0; i < d; ++i) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (std::size_t j = 0; j < d; ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw ConfigError("matrix JSON needs fields dim, re, im");
    const std::size_t d = j.at("dim").get<std::size_t>();
    if (d < 1) throw ConfigError("matrix dim must be >= 1");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != d || im.size() != d)
        throw ConfigError("matrix JSON row count does not match dim");
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (re[i].size() != d || im[i].size() != d)
            throw ConfigError("matrix JSON column count does not match dim");
        for (std::size_t k = 0; k < d; ++k) {
            const double x = re[i][k].get<double>();
            const double y = im[i][k].get<double>();
            if (!std::isfinite(x) || !std::isfinite(y))
                throw ConfigError("matrix entries must be finite");
            m(i, k) = Complex(x, y);
        }
    }
    return m;
}

ComplexMatrix load_matrix(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse matrix file '" + path + "': " + e.what());
    }
    return matrix_from_json(j);
}

nlohmann::json report_to_json(const ResonanceReport& report) {
    nlohmann::json deg = nlohmann::json::array();
    for (const auto& p : report.degenerate_pairs) deg.push_back({p[0], p[1]});
    nlohmann::json res = nlohmann::json::array();
    for (const auto& entry : report.resonances) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& p : entry.pairs) pairs.push_back({p[0], p[1], p[2]});
        res.push_back({{"theta", entry.theta}, {"pairs", std::move(pairs)}});
    }
    return {{"degenerate_pairs", std::move(deg)}, {"resonances", std::move(res)}};
}

std::string format_full(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& row) {
    if (row.size() != header_.size())
        throw BadDimension("CSV row width does not match header");
    for (double x : row)
        if (!std::isfinite(x)) throw Error("non-finite value in CSV row");
    rows_.push_back(row);
}

void CsvTable::add_comment(const std::string& text) { trailers_.push_back("# " + text); }

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) os << ',';
        os << header_[i];
    }
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_full(row[i]);
        }
        os << '\n';
    }
    for (const auto& line : trailers_) os << line << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace qreset
