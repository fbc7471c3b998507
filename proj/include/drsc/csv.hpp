#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace drsc {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// RFC 4180 field quoting: fields containing a comma, quote or line break are
// wrapped in quotes with inner quotes doubled.
std::string csv_field(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace drsc
