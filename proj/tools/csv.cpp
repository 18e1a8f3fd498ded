#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "wvl/errors.hpp"

namespace wvl::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw Error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

std::string fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) throw InvalidArgument("CsvTable: header must not be empty");
    append(header);
    rows_ = 0;
}

CsvTable& CsvTable::row(std::initializer_list<double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    append(cells);
    return *this;
}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
    append(cells);
    return *this;
}

void CsvTable::append(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw InvalidArgument("CsvTable: row width does not match header");
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k > 0) text_ += ',';
        text_ += cells[k];
    }
    text_ += '\n';
    ++rows_;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace wvl::cli
