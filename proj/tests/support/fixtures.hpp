#pragma once

#include <string>

#include "pisot/field_io.hpp"

#ifndef PISOT_FIXTURE_DIR
#error "PISOT_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(PISOT_FIXTURE_DIR) + "/" + name + ".json"; }

inline pisot::FieldDescription description(const std::string& name) {
  return pisot::read_field_description(fixture_path(name));
}

inline pisot::LoadedField load(const std::string& name, const pisot::PrecisionPolicy& policy = {}) {
  return pisot::parse_field(fixture_path(name), policy);
}

inline pisot::Rational q(const char* text) { return pisot::parse_rational(text); }

}  // namespace testing_support
