#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "beamfair/errors.hpp"

namespace beamfair {

// Shortest round-trip decimal form; locale-free and byte-stable across runs.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw ValidationError("format_double: conversion failed");
    return std::string(buf, ptr);
}

// Line-at-a-time CSV writer with a fixed, documented header.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) : path_(path) {
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) throw IoError("cannot open output file: " + path);
        write_row_strings(columns);
    }

    class Row {
    public:
        explicit Row(CsvWriter& w) : writer_(w) {}
        Row& add(double v) { return add_str(format_double(v)); }
        Row& add(int v) { return add_str(std::to_string(v)); }
        Row& add(std::uint64_t v) { return add_str(std::to_string(v)); }
        Row& add(const std::string& v) { return add_str(v); }
        ~Row() { writer_.write_line(line_); }

        Row(const Row&) = delete;
        Row& operator=(const Row&) = delete;

    private:
        Row& add_str(const std::string& s) {
            if (!line_.empty()) line_ += ',';
            line_ += s;
            return *this;
        }
        CsvWriter& writer_;
        std::string line_;
    };

    Row row() { return Row(*this); }

    const std::string& path() const { return path_; }

private:
    void write_row_strings(const std::vector<std::string>& cells) {
        std::string line;
        for (const std::string& c : cells) {
            if (!line.empty()) line += ',';
            line += c;
        }
        write_line(line);
    }

    void write_line(const std::string& line) {
        out_ << line << '\n';
        if (!out_) throw IoError("write failed: " + path_);
    }

    std::string path_;
    std::ofstream out_;
};

}  // namespace beamfair
