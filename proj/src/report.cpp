#include "killform/report.hpp"

#include <ostream>
#include <sstream>

namespace killform {

Json to_json(const Verdict& v) {
  Json j;
  j["theorem"] = v.theorem;
  Json params = Json::object();
  for (const auto& [k, val] : v.params) params[k] = val;
  j["params"] = params;
  j["pass"] = v.pass;
  if (v.skipped) j["skipped"] = true;
  Json ev = Json::array();
  for (const auto& e : v.evidence)
    ev.push_back({{"claim", e.claim}, {"expected", e.expected}, {"observed", e.observed}, {"ok", e.ok()}});
  j["evidence"] = ev;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json to_json(const ComponentReport& r) {
  Json j;
  j["components"] = r.component_count;
  j["sizes"] = r.component_sizes;
  if (r.equals_commuting_graph) {
    j["equals_commuting_graph"] = *r.equals_commuting_graph;
    j["killing_edges"] = r.killing_edges;
    j["commuting_edges"] = r.commuting_edges;
  } else {
    j["equals_commuting_graph"] = nullptr;
  }
  return j;
}

Json to_json(const DetResult& d) {
  Json j;
  j["method"] = to_string(d.method);
  j["degenerate"] = !d.nonzero;
  j["det"] = d.det ? Json(d.det->get_str()) : Json(nullptr);
  if (d.certificate_prime) j["certificate_prime"] = *d.certificate_prime;
  if (d.rank) j["rank"] = *d.rank;
  if (d.primes_used) j["primes_used"] = d.primes_used;
  return j;
}

Json class_table_json(const Group& g, const ClassTable& t) {
  Json j;
  j["group"] = g.spec();
  j["order"] = g.order();
  j["class_count"] = t.size();
  Json cls = Json::array();
  for (const auto& c : t.classes) {
    cls.push_back({{"id", c.id},
                   {"element_order", c.elt_order},
                   {"size", c.size},
                   {"centralizer_order", c.centralizer_order},
                   {"real", c.real()},
                   {"inverse_class", c.inverse_class},
                   {"representative", g.label(c.rep)}});
  }
  j["classes"] = cls;
  return j;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) {
        os << pad << k << ": " << scalar(v) << "\n";
      } else if (v.is_array() && v.size() <= 16 && std::all_of(v.begin(), v.end(), is_scalar)) {
        os << pad << k << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
        os << "]\n";
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v)) {
        os << pad << "- " << scalar(v) << "\n";
      } else {
        os << pad << "-\n";
        render(os, v, indent + 1);
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(os, j, 0);
  return os.str();
}

std::string render_text(const Verdict& v) {
  std::ostringstream os;
  os << v.theorem;
  for (const auto& [k, val] : v.params) os << " " << k << "=" << val;
  os << ": " << (v.skipped ? "SKIP" : v.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& e : v.evidence) {
    os << "  [" << (e.ok() ? "ok" : "MISMATCH") << "] " << e.claim << ": expected " << e.expected;
    if (!e.ok()) os << ", observed " << e.observed;
    os << "\n";
  }
  for (const auto& n : v.notes) os << "  note: " << n << "\n";
  return os.str();
}

void write_killing_csv(std::ostream& os, const KillingMatrix& k, const std::string& spec,
                       const std::string& selector) {
  os << "# killing-matrix group=" << spec << " class=" << selector << " order=component-grouped\n";
  for (std::size_t i = 0; i < k.n; ++i) {
    for (std::size_t j = 0; j < k.n; ++j) os << (j ? "," : "") << k.at(i, j);
    os << "\n";
  }
}

void write_dot(std::ostream& os, const ClassSupportFn& fn, const ComponentReport& comp) {
  const Group& g = *fn.group;
  const auto& members = fn.set.members;
  os << "graph killing {\n";
  for (std::size_t i = 0; i < members.size(); ++i) {
    os << "  v" << members[i] << " [label=\"" << g.label(members[i]) << "\\nc" << comp.vertex_to_component[i]
       << "\", component=" << comp.vertex_to_component[i] << "];\n";
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (fn.at_product(members[i], members[j]) > 0)
        os << "  v" << members[i] << " -- v" << members[j] << ";\n";
  os << "}\n";
}

}  // namespace killform
