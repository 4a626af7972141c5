// Byte-stable CSV emission: fixed column order, "%.10g" numbers, \n endings.
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace listmatch {

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& columns);
    void begin_row();
    void field(const std::string& value);
    void field(double value);
    void field(std::int64_t value);
    void end_row();

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    bool row_started_ = false;
    bool first_field_ = true;
};

}  // namespace listmatch
