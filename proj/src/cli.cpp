#include "killform/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "killform/error.hpp"
#include "killform/parallel.hpp"
#include "killform/report.hpp"

namespace killform::cli {

namespace {

struct Caps {
  std::size_t matrix, graph;
};

Caps caps_of(const RunConfig& cfg) {
  if (cfg.max_class) return {*cfg.max_class, *cfg.max_class};
  return {kDefaultMatrixCap, kDefaultGraphCap};
}

HarnessConfig harness_config(const RunConfig& cfg) {
  HarnessConfig h;
  const auto caps = caps_of(cfg);
  h.max_order = cfg.max_order;
  h.matrix_cap = caps.matrix;
  h.graph_cap = caps.graph;
  return h;
}

void emit(std::ostream& out, const Json& j, Format f) {
  if (f == Format::json)
    out << j.dump(2) << "\n";
  else
    out << render_text(j);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write " + path);
  return os;
}

ClassSupportFn selected_fn(Context& ctx, const RunConfig& cfg) {
  if (cfg.selector.empty()) throw UsageError("--class is required");
  const Group& g = ctx.group(cfg.spec);
  const ClassTable& t = ctx.classes(cfg.spec);
  auto ids = select_classes(t, cfg.selector);
  return support_function(g, t, build_stable_set(g, t, std::move(ids), {false, false, true}));
}

Json selection_json(const ClassSupportFn& fn) {
  Json j;
  j["classes"] = fn.set.class_ids;
  j["size"] = fn.set.size();
  Json sf = Json::array();
  for (std::size_t d = 0; d < fn.f.size(); ++d) sf.push_back(fn.f[d]);
  j["support_function"] = sf;
  return j;
}

int cmd_info(Context& ctx, const RunConfig& cfg, std::ostream& out, Format f) {
  const Group& g = ctx.group(cfg.spec);
  emit(out, class_table_json(g, ctx.classes(cfg.spec)), f);
  return kOk;
}

int cmd_killing(Context& ctx, const RunConfig& cfg, std::ostream& out, Format f) {
  const auto caps = caps_of(cfg);
  const auto fn = selected_fn(ctx, cfg);
  if (fn.set.size() > caps.matrix)
    throw CapExceeded("G-stable set has " + std::to_string(fn.set.size()) + " elements, matrix cap is " +
                      std::to_string(caps.matrix));
  const auto comp = killing_graph_components(fn, false, caps.graph);
  const auto k = killing_matrix(fn, comp, caps.matrix);
  const auto det = blockwise_det(k, fn, kDefaultBareissCap, !cfg.exact);
  Json j;
  j["group"] = cfg.spec;
  j["selector"] = cfg.selector;
  j.update(selection_json(fn));
  j["graph"] = to_json(comp);
  j["reducible"] = comp.component_count > 1;
  j["degenerate"] = !det.nonzero;
  j["det"] = det.det ? Json(det.det->get_str()) : Json(nullptr);
  j["determinant"] = to_json(det);
  if (!cfg.csv_path.empty()) {
    auto os = open_out(cfg.csv_path);
    write_killing_csv(os, k, cfg.spec, cfg.selector);
    j["csv"] = cfg.csv_path;
  }
  emit(out, j, f);
  return kOk;
}

int cmd_graph(Context& ctx, const RunConfig& cfg, std::ostream& out, Format f) {
  const auto caps = caps_of(cfg);
  const auto fn = selected_fn(ctx, cfg);
  const auto comp = killing_graph_components(fn, true, caps.graph);
  Json j;
  j["group"] = cfg.spec;
  j["selector"] = cfg.selector;
  j["size"] = fn.set.size();
  j["graph"] = to_json(comp);
  if (!cfg.dot_path.empty()) {
    auto os = open_out(cfg.dot_path);
    write_dot(os, fn, comp);
    j["dot"] = cfg.dot_path;
  }
  emit(out, j, f);
  return kOk;
}

int cmd_count(Context& ctx, const RunConfig& cfg, std::ostream& out, Format f) {
  if (cfg.triple.size() != 3) throw UsageError("--triple needs three class ids a,b,c");
  const Group& g = ctx.group(cfg.spec);
  const ClassTable& t = ctx.classes(cfg.spec);
  for (auto id : cfg.triple)
    if (id >= t.size()) throw UsageError("class id " + std::to_string(id) + " out of range");
  const auto tc = triple_count(g, t, cfg.triple[0], cfg.triple[1], cfg.triple[2]);
  const mpz_class size3 = static_cast<unsigned long>(t[tc.c3].size);
  Json j;
  j["group"] = cfg.spec;
  j["triple"] = {tc.c1, tc.c2, tc.c3};
  j["count"] = tc.count.get_str();
  j["size_c3"] = t[tc.c3].size;
  j["per_element"] = mpz_class(tc.count / size3).get_str();
  j["divisible"] = mpz_divisible_p(tc.count.get_mpz_t(), size3.get_mpz_t()) != 0;
  emit(out, j, f);
  return kOk;
}

Verdict run_verify(Context& ctx, const RunConfig& cfg) {
  const std::string& tag = cfg.spec;
  auto need = [&](std::uint64_t v, const char* flag) {
    if (v == 0) throw UsageError(std::string("verify ") + tag + " needs " + flag);
    return v;
  };
  if (tag == "rank1-involutions") {
    if (cfg.family.empty()) throw UsageError("verify rank1-involutions needs --family");
    return verify_rank_one_involutions(ctx, cfg.family, need(cfg.q, "--q"));
  }
  if (tag == "unipotent-irreducible") {
    if (cfg.group.empty()) throw UsageError("verify unipotent-irreducible needs --group");
    return verify_unipotent_irreducible(ctx, cfg.group, static_cast<std::uint32_t>(need(cfg.p, "--p")));
  }
  if (tag == "psl2-unipotent") return verify_psl2_unipotent(ctx, need(cfg.q, "--q"));
  if (tag == "psu3-c2-odd") return verify_psu3_c2_odd(ctx, need(cfg.q, "--q"));
  if (tag == "sym-alt") return verify_sym_alt(ctx, need(cfg.n, "--n"));
  if (tag == "dihedral-strong") return verify_dihedral_strong(ctx, need(cfg.n, "--n"));
  if (tag == "suzuki-counts") return verify_suzuki_counts(ctx, need(cfg.q, "--q"));
  if (tag == "quotient-lifting") return verify_quotient_lifting(ctx, need(cfg.q, "--q"));
  throw UsageError("unknown verify tag: " + tag);
}

int emit_verdict(const Verdict& v, std::ostream& out, Format f) {
  if (f == Format::json)
    out << to_json(v).dump(2) << "\n";
  else
    out << render_text(v);
  return v.pass || v.skipped ? kOk : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool stdout_is_tty) {
  RunConfig cfg;
  CLI::App app{"Killing forms on G-stable subsets of finite groups", "killform"};
  app.require_subcommand(1);
  bool json = false, text = false;
  std::size_t max_class = 0;
  std::string triple;
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "JSON output");
    sub->add_flag("--text", text, "human-readable output");
    sub->add_option("--max-order", cfg.max_order, "group enumeration cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-class", max_class, "cap on G-stable set size")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto with_spec = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("spec", cfg.spec, "group spec, e.g. psl2:7 or perm:FILE")->required();
    common(sub);
    return sub;
  };
  auto* info = with_spec("info", "order and class table");
  auto* killing = with_spec("killing", "support function, reducibility and determinant");
  killing->add_option("--class", cfg.selector, "class selector")->required();
  killing->add_option("--csv", cfg.csv_path, "write the Killing matrix as CSV");
  killing->add_flag("--exact", cfg.exact, "reconstruct every determinant exactly");
  auto* graph = with_spec("graph", "Killing graph components");
  graph->add_option("--class", cfg.selector, "class selector")->required();
  graph->add_option("--dot", cfg.dot_path, "write the graph in DOT format");
  auto* count = with_spec("count", "class multiplication coefficients");
  count->add_option("--triple", triple, "class ids a,b,c")->required();
  auto* scan = with_spec("scan", "non-degeneracy on every real noncentral class");
  auto* verify = app.add_subcommand("verify", "run one verification procedure");
  verify->add_option("tag", cfg.spec, "verification tag")->required();
  verify->add_option("--family", cfg.family);
  verify->add_option("--group", cfg.group);
  verify->add_option("--q", cfg.q)->check(CLI::PositiveNumber);
  verify->add_option("--n", cfg.n)->check(CLI::PositiveNumber);
  verify->add_option("--p", cfg.p)->check(CLI::PositiveNumber);
  common(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (json && text) throw UsageError("--json and --text are exclusive");
    if (json) cfg.format = Format::json;
    if (text) cfg.format = Format::text;
    if (max_class) cfg.max_class = max_class;
    if (!triple.empty()) {
      std::stringstream ss(triple);
      std::string part;
      while (std::getline(ss, part, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(part, &pos);
        } catch (const std::exception&) {
          pos = std::string::npos;
        }
        if (pos != part.size() || part.empty()) throw UsageError("bad class id in --triple: " + part);
        cfg.triple.push_back(static_cast<std::uint32_t>(v));
      }
      if (cfg.triple.size() != 3) throw UsageError("--triple needs three class ids a,b,c");
    }
    if (cfg.threads) set_thread_count(cfg.threads);
    const Format f = cfg.format.value_or(stdout_is_tty ? Format::text : Format::json);

    Context ctx(harness_config(cfg));
    auto* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    if (sub == info) return cmd_info(ctx, cfg, out, f);
    if (sub == killing) return cmd_killing(ctx, cfg, out, f);
    if (sub == graph) return cmd_graph(ctx, cfg, out, f);
    if (sub == count) return cmd_count(ctx, cfg, out, f);
    if (sub == scan) return emit_verdict(conjecture_scan(ctx, cfg.spec), out, f);
    if (sub == verify) return emit_verdict(run_verify(ctx, cfg), out, f);
    throw UsageError("unknown subcommand");
  } catch (const CapExceeded& e) {
    err << "killform: cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const UsageError& e) {
    err << "killform: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "killform: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "killform: error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace killform::cli
