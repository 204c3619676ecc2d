#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "killform/harness.hpp"

namespace killform {

using Json = nlohmann::ordered_json;

Json to_json(const Verdict& v);
Json to_json(const ComponentReport& r);
Json to_json(const DetResult& d);
Json class_table_json(const Group& g, const ClassTable& t);

/// Human-readable summary; nested objects are indented, short arrays inlined.
std::string render_text(const Json& j);
std::string render_text(const Verdict& v);

/// Integer CSV with a one-line `#` header; rows follow k.ordering.
void write_killing_csv(std::ostream& os, const KillingMatrix& k, const std::string& spec,
                       const std::string& selector);

/// Undirected DOT graph of the Killing graph. Vertex names are element
/// indices, labels carry the element and its component.
void write_dot(std::ostream& os, const ClassSupportFn& fn, const ComponentReport& comp);

}  // namespace killform
