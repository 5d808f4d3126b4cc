#pragma once
// CSV serialization with `#`-prefixed metadata lines.
//
// Layout produced by write_csv:
//
//     # key: value          <- meta_before, one "# " line per entry, in order
//     t,x,y,z               <- header row
//     0,0.01,0.01,0.01      <- data rows, each value printed with %.17g
//     # status: completed   <- meta_after
//
// The %.17g format round-trips IEEE-754 doubles exactly, and metadata text is
// stored verbatim (without the "# " prefix), so read_csv followed by write_csv
// reproduces a write_csv-produced document byte for byte.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace fracsync {

struct CsvDoc {
    std::vector<std::string> meta_before;   // metadata lines above the header
    std::vector<std::string> columns;       // header row
    std::vector<std::vector<double>> rows;  // each row has columns.size() values
    std::vector<std::string> meta_after;    // metadata lines below the data
};

// Shortest printf "%.17g" rendering; parses back to the exact same double.
std::string format_g17(double value);

void write_csv(std::ostream& out, const CsvDoc& doc);
std::string write_csv_string(const CsvDoc& doc);

// Parses a document in the layout above.  Metadata lines before the header
// populate meta_before; metadata lines after it populate meta_after.  Throws
// DomainError on a missing header, ragged rows, unparseable numbers, or data
// rows appearing after trailing metadata.
CsvDoc read_csv(std::istream& in);
CsvDoc read_csv_string(const std::string& text);

// Index of `name` within doc.columns; throws DomainError if absent.
std::size_t column_index(const CsvDoc& doc, const std::string& name);

}  // namespace fracsync
