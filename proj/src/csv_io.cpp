#include "fracsync/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracsync/errors.hpp"

namespace fracsync {

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const CsvDoc& doc) {
    for (const auto& m : doc.meta_before) out << "# " << m << '\n';
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
        if (c) out << ',';
        out << doc.columns[c];
    }
    out << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_g17(row[c]);
        }
        out << '\n';
    }
    for (const auto& m : doc.meta_after) out << "# " << m << '\n';
}

std::string write_csv_string(const CsvDoc& doc) {
    std::ostringstream os;
    write_csv(os, doc);
    return os.str();
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw DomainError("csv: unparseable number \"" + field + "\" on line " +
                          std::to_string(line_no));
    return v;
}

// Metadata text without the leading "#" and one optional space.
std::string meta_text(const std::string& line) {
    std::size_t pos = 1;
    if (pos < line.size() && line[pos] == ' ') ++pos;
    return line.substr(pos);
}

}  // namespace

CsvDoc read_csv(std::istream& in) {
    CsvDoc doc;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    bool in_tail = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_header) {
                doc.meta_before.push_back(meta_text(line));
            } else {
                doc.meta_after.push_back(meta_text(line));
                in_tail = true;
            }
            continue;
        }
        if (in_tail)
            throw DomainError("csv: data row after trailing metadata on line " +
                              std::to_string(line_no));
        const auto parts = split_commas(line);
        if (!have_header) {
            doc.columns = parts;
            have_header = true;
            continue;
        }
        if (parts.size() != doc.columns.size())
            throw DomainError("csv: row on line " + std::to_string(line_no) + " has " +
                              std::to_string(parts.size()) + " fields, expected " +
                              std::to_string(doc.columns.size()));
        std::vector<double> row(parts.size());
        for (std::size_t c = 0; c < parts.size(); ++c) row[c] = parse_double(parts[c], line_no);
        doc.rows.push_back(std::move(row));
    }
    if (!have_header) throw DomainError("csv: missing header line");
    return doc;
}

CsvDoc read_csv_string(const std::string& text) {
    std::istringstream is(text);
    return read_csv(is);
}

std::size_t column_index(const CsvDoc& doc, const std::string& name) {
    for (std::size_t c = 0; c < doc.columns.size(); ++c)
        if (doc.columns[c] == name) return c;
    throw DomainError("csv: no column named \"" + name + "\"");
}

}  // namespace fracsync
