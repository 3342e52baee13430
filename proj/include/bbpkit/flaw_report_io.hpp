#pragma once

#include <string>

#include "bbpkit/base5.hpp"

namespace bbpkit {

// Human-readable report: windows side by side plus the full forensic table.
std::string render_flaw_report_text(const FlawReport& report);

// Machine format: line-oriented "key: value" records under a versioned
// "schema: flaw-report/1" header. Carries exactly the same data as the text
// rendering and round-trips through parse_flaw_report_structured.
std::string render_flaw_report_structured(const FlawReport& report);

// Strict parser for the structured format; throws std::invalid_argument on
// any deviation.
FlawReport parse_flaw_report_structured(const std::string& text);

}  // namespace bbpkit
