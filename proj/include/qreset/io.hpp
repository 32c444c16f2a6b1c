#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qreset/matrix.hpp"
#include "qreset/poisson.hpp"

namespace qreset {

/// {"dim": n, "re": [[...]], "im": [[...]]}
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
ComplexMatrix load_matrix(const std::string& path);

nlohmann::json report_to_json(const ResonanceReport& report);

/// shortest round-trip-exact decimal (17 significant digits)
std::string format_full(double x);

/// CSV with a mandatory header, 17-significant-digit cells, '\n' endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(const std::vector<double>& row);
    void add_comment(const std::string& text); // "# ..." trailer line
    std::string to_string() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::string> trailers_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace qreset
