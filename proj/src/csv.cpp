#include "listmatch/csv.hpp"

#include <stdexcept>

#include "listmatch/textio.hpp"

namespace listmatch {

CsvWriter::CsvWriter(const std::string& path)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open CSV output: " + path);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    bool first = true;
    for (const auto& c : columns) {
        if (!first) out_ << ',';
        out_ << c;
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::begin_row() {
    row_started_ = true;
    first_field_ = true;
}

void CsvWriter::field(const std::string& value) {
    if (!row_started_) throw std::logic_error("CsvWriter: field outside a row");
    if (!first_field_) out_ << ',';
    out_ << value;
    first_field_ = false;
}

void CsvWriter::field(double value) { field(format_g(value)); }

void CsvWriter::field(std::int64_t value) { field(std::to_string(value)); }

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

}  // namespace listmatch
