#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kicked_top/measures.hpp"

namespace kicked_top
{

using CommentList = std::vector<std::pair<std::string, std::string>>;

/// Value formatting shared by every CSV writer: scientific, 15 digits after the point.
[[nodiscard]] std::string format_value(double v);

/// '#'-prefixed metadata block, a header "axis,measure" and one row per point.
/// `comments` are appended to the metadata block verbatim (key: value).
void write_series_csv(std::ostream& os, const MeasureSeries& s, const CommentList& comments = {});

/// Inverse of write_series_csv; unknown metadata keys are ignored.
[[nodiscard]] MeasureSeries read_series_csv(std::istream& is);

/// Metadata block lines for a series, without values.
[[nodiscard]] CommentList series_metadata(const SeriesMeta& meta);

void write_comments(std::ostream& os, const CommentList& comments);

} // namespace kicked_top
