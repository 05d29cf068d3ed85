#pragma once

#include <string>

#include <json.hpp>

#include "hitbend/exactmat.hpp"
#include "hitbend/surfgrp.hpp"

namespace hitbend {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const NumberField& field);
Json to_json(const NfElement& e);
Json to_json(const NfMatrix& m);
Json to_json(const KPoly& f);
Json to_json(const ZPoly& f);

Rational rational_from_json(const Json& j);
FieldPtr field_from_json(const Json& j);
NfElement element_from_json(const Json& j, const FieldPtr& field);
NfMatrix matrix_from_json(const Json& j, const FieldPtr& field);
NfMatrix matrix_from_json(const Json& j);  // reads the embedded field descriptor
KPoly kpoly_from_json(const Json& j, const FieldPtr& field);
ZPoly zpoly_from_json(const Json& j);

std::string sha256_hex(const std::string& data);
/// Hash of the canonical (sorted-key, compact) dump.
std::string content_hash(const Json& j);

Json read_json_file(const std::string& path);
/// Writes to a temporary sibling and renames, so readers never see a
/// partial file.
void write_json_file(const std::string& path, const Json& j);

}  // namespace hitbend
