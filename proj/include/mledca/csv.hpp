#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mledca {

/// In-memory CSV table. The first line of the rendered file is a
/// "# schema: <name>/<version>" comment so that readers can detect layout changes.
class CsvTable {
public:
    CsvTable(std::string schema, std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& data() const { return rows_; }

    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::string schema_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Fixed formatting so that reruns produce byte-identical files.
std::string fmt(double v);
std::string fmt(long long v);
inline std::string fmt(int v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(long v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(std::size_t v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(bool v) { return v ? "1" : "0"; }

}  // namespace mledca
