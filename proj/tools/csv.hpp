#pragma once

// Locale-independent CSV assembly with shortest round-trip numbers, and the
// FNV-1a checksum recorded in manifests.

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace wvl::cli {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

/// 64-bit FNV-1a over the bytes of s, as 16 lowercase hex digits.
std::string fnv1a64(const std::string& s);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& row(std::initializer_list<double> values);
    CsvTable& row(const std::vector<std::string>& cells);

    std::size_t columns() const { return columns_; }
    std::size_t rows() const { return rows_; }
    const std::string& text() const { return text_; }

private:
    void append(const std::vector<std::string>& cells);

    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

/// Writes text to path, creating parent directories; throws wvl::Error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace wvl::cli
