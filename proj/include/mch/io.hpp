#pragma once

#include <string>

#include <json.hpp>

#include "mch/grid_field.hpp"

namespace mch {

// Lossless double formatting (17 significant digits).
std::string float17(double v);

// Serializes with insertion-ordered keys and %.17g floats so identical
// inputs produce byte-identical reports.
std::string to_json_text(const nlohmann::ordered_json& j);

void write_text_file(const std::string& path, const std::string& text);

// CSV schema: header x,m[,mx,mxx,mxxx,mxxxx], one row per grid point.
void write_field_csv(const std::string& path, const GridField& field);
GridField read_field_csv(const std::string& path, double kappa = 1.0,
                         bool periodic = false);

}  // namespace mch
