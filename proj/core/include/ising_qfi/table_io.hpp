#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace ising_qfi {

/// Round-trip-safe decimal rendering (17 significant digits, '.' decimal
/// point, no locale effects).
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// A CSV table with a mandatory header row, comma separators and LF line
/// endings. Values are rendered with format_value.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const {
        std::string out;
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            out += header[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += format_value(row[i]);
            }
            out += '\n';
        }
        return out;
    }
};

}  // namespace ising_qfi
