#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ionshape/errors.hpp"

namespace ionshape {

// Deterministic CSV writing: fixed %.12g formatting so re-runs are
// byte-identical for identical inputs.

std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::string header);
    void row(const std::vector<double>& values);
    void row_raw(const std::string& line);
    const std::string& str() const { return buffer_; }
    void write(const std::string& path) const;

private:
    std::string buffer_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ionshape
