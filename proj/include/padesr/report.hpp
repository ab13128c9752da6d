#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "padesr/pde.hpp"
#include "padesr/search.hpp"

namespace padesr {

/// Shortest round-trip text; "inf", "-inf" and "nan" for the special values.
std::string format_double(double v);

/// key=value lines for a breakdown (mse_interior, mse_boundary.<name>, ...).
void write_breakdown(std::ostream& os, const MseBreakdown& b, const PdeCase& pde);

/// Full run report as [section] blocks of key=value lines.
std::string format_report(const SearchResult& r, CaseId id, const DatasetOptions& data);

/// Reads a report back; keys come out as "section.key" (plain "key" before the first section).
std::map<std::string, std::string> parse_report(std::istream& in);

}  // namespace padesr
