#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "hs/errors.hpp"

namespace hs {

/// Compact fixed formatting shared by every CSV writer, so identical runs
/// produce byte-identical files.
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header) : out_(path) {
        if (!out_) throw Error("cannot open output file '" + path + "'");
        out_ << header << "\n";
    }

    template <typename... Cols>
    void row(const Cols&... cols) {
        bool first = true;
        ((out_ << (first ? "" : ","), first = false, out_ << cols), ...);
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

}  // namespace hs
