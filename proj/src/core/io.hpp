#pragma once

#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "quantizer.hpp"

namespace chandeg {

/// Channel file schema: {"q": int, "px": [...], "outputs": [...], "W": [[...]]}.
/// Entries may be numbers or exact rational strings "a/b"; the channel is
/// exact iff every W and px entry is an integer or a rational string.
Channel channel_from_json(const nlohmann::json& j);
Channel channel_from_text(const std::string& text);
Channel channel_from_file(const std::string& path);

nlohmann::json channel_to_json(const Channel& ch);
std::string channel_to_text(const Channel& ch);
void channel_to_file(const Channel& ch, const std::string& path);

nlohmann::json degrade_result_to_json(const DegradeResult& r);

/// %.12g, the fixed significance used in all report output.
std::string format_sig12(double v);

/// The nearest double to format_sig12(v); report JSON carries these.
double round_sig12(double v);

std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);

}  // namespace chandeg
