#ifndef PENGAP_CSV_HPP
#define PENGAP_CSV_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pengap/errors.hpp"

namespace pengap {

// 12 significant digits, dot decimal separator.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Buffers rows and publishes the file atomically on commit
/// (write to <path>.tmp, rename), so failed runs leave no partial artifact.
class CsvWriter {
public:
    explicit CsvWriter(std::filesystem::path path) : path_(std::move(path)) {}

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) buffer_ += ',';
            buffer_ += cells[i];
        }
        buffer_ += '\n';
    }

    void commit() {
        const std::filesystem::path tmp = path_.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot open " + tmp.string());
            out << buffer_;
            if (!out.flush()) throw Error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path_);
    }

private:
    std::filesystem::path path_;
    std::string buffer_;
};

} // namespace pengap

#endif
