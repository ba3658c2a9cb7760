#include "sofic/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sofic/borders.hpp"
#include "sofic/cover.hpp"
#include "sofic/error.hpp"
#include "sofic/families.hpp"
#include "sofic/matrix.hpp"

namespace sofic::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool multichar = false;
  std::uint64_t seed = 1;
  std::optional<std::size_t> bound;
  std::string json_path;
  std::string dot_path;
  // Report bookkeeping.
  std::vector<std::string> command;
  nlohmann::json inputs = nlohmann::json::array();
  std::vector<std::string> warnings;
  bool report_written = false;
};

// FNV-1a, 64 bit, as lowercase hex.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GeneratingList load(const std::string& path, Globals& g) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw UsageError("cannot read list file " + path);
  std::stringstream bytes;
  bytes << probe.rdbuf();
  g.inputs.push_back({{"path", path}, {"fnv1a64", digest(bytes.str())}});
  return read_list_file(path, ParseOptions{g.multichar});
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void write_report(Globals& g, const nlohmann::json& results) {
  nlohmann::json j;
  j["command"] = g.command;
  j["inputs"] = g.inputs;
  j["results"] = results;
  j["warnings"] = g.warnings;
  write_file(g.json_path, j.dump(2) + "\n");
  g.report_written = true;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::pair<long, long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("expected a range lo..hi, got " + text);
  try {
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("expected a range lo..hi, got " + text);
  }
}

nlohmann::json cover_json(const Cover& c) {
  nlohmann::json j;
  j["memory"] = c.memory;
  j["kind"] = c.kind == CoverKind::Fischer ? "fischer" : "krieger";
  j["components"] = c.components;
  auto g = canonical(c.graph);
  for (std::size_t v = 0; v < c.graph.size(); ++v) {
    nlohmann::json vj;
    vj["descriptor"] = c.graph.vertices[v].descriptor;
    vj["fingerprint"] = nlohmann::json::array();
    for (const auto& w : c.fingerprint_words(v)) vj["fingerprint"].push_back(to_string(w));
    j["vertices"].push_back(vj);
  }
  std::sort(j["vertices"].begin(), j["vertices"].end(),
            [](const nlohmann::json& a, const nlohmann::json& b) { return a["descriptor"] < b["descriptor"]; });
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) {
    j["edges"].push_back({g.vertices[e.src].descriptor, g.vertices[e.dst].descriptor,
                          g.alphabet[e.label].token});
  }
  return j;
}

void print_graph(const LabelledGraph& graph, std::ostream& out) {
  auto g = canonical(graph);
  for (const auto& v : g.vertices) out << "vertex " << v.descriptor << "\n";
  for (const auto& e : g.edges) {
    out << "edge " << g.vertices[e.src].descriptor << " -> " << g.vertices[e.dst].descriptor << " "
        << g.alphabet[e.label].token << "\n";
  }
}

std::string torsion_text(const std::vector<mpz_class>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].get_str();
  return s + "]";
}

// Replaces or appends key=value in a family params string.
std::string set_param(const std::string& text, const std::string& key, long value) {
  std::string out;
  bool found = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(",/", start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    if (item.rfind(key + "=", 0) == 0) {
      item = key + "=" + std::to_string(value);
      found = true;
    }
    out += item;
    if (end < text.size()) out += text[end];
    start = end + 1;
  }
  if (!found) out += (out.empty() ? "" : ",") + key + "=" + std::to_string(value);
  return out;
}

struct FamilyRun {
  GeneratingList list;
  BowenFranksClass bf;
  std::size_t vertices;
};

FamilyRun run_family(const FamilyParams& p) {
  auto list = build_family(p);
  auto cover = left_fischer_cover(list);
  return {list, signed_bowen_franks(adjacency_matrix(cover.graph)), cover.graph.size()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& real_out, std::ostream& err) {
  CLI::App app{"Covers, border points and flow invariants of renewal systems"};
  app.name("sofic-forge");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--multichar", g.multichar, "Read a line without spaces as one symbol");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--bound", g.bound, "Generator search bound");
  app.add_option("--json", g.json_path, "Write a JSON report");
  app.add_option("--dot", g.dot_path, "Write a DOT rendering");

  std::string list1, list2, side = "left", weights, variant, params, grid, out_path, emit_path,
                                target, k_range = "-50..50";
  bool reversed_flag = false, krieger = false, check_surgery = false, all_generators = false;
  double tol = 1e-9;
  long det_target = 0;

  auto* cover_cmd = app.add_subcommand("cover", "Left Fischer cover of an SFT renewal system");
  cover_cmd->add_option("list", list1)->required();
  cover_cmd->add_flag("--reversed", reversed_flag, "Reverse the list first (right cover)");
  cover_cmd->add_flag("--krieger", krieger, "Allow reducible covers");

  auto* sft_cmd = app.add_subcommand("sft", "Decide the SFT property");
  sft_cmd->add_option("list", list1)->required();

  auto* forbidden_cmd = app.add_subcommand("forbidden", "Minimal forbidden words");
  forbidden_cmd->add_option("list", list1)->required();

  auto* borders_cmd = app.add_subcommand("borders", "Border points and generators");
  borders_cmd->add_option("list", list1)->required();
  borders_cmd->add_flag("--all-generators", all_generators, "Print non-minimal generators too");

  auto* modular_cmd = app.add_subcommand("modular", "Decide modularity");
  modular_cmd->add_option("list", list1)->required();
  modular_cmd->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* sum_cmd = app.add_subcommand("sum", "Sum of two generating lists");
  sum_cmd->add_option("list1", list1)->required();
  sum_cmd->add_option("list2", list2)->required();
  sum_cmd->add_flag("--check-surgery", check_surgery, "Compare the surgery cover with the pipeline");
  sum_cmd->add_option("--emit-list", emit_path, "Write the union list");

  auto* bf_cmd = app.add_subcommand("bf", "Signed Bowen-Franks invariant");
  bf_cmd->add_option("list", list1)->required();
  bf_cmd->add_option("--weights", weights, "Fragmentation weights s=k,...");

  auto* fe_cmd = app.add_subcommand("fe", "Flow equivalence of two renewal systems");
  fe_cmd->add_option("list1", list1)->required();
  fe_cmd->add_option("list2", list2)->required();

  auto* entropy_cmd = app.add_subcommand("entropy", "Topological entropy");
  entropy_cmd->add_option("list", list1)->required();
  entropy_cmd->add_option("--tol", tol);

  auto* family_cmd = app.add_subcommand("family", "Build a family instance and compare invariants");
  family_cmd->add_option("variant", variant)->required();
  family_cmd->add_option("--params", params);
  family_cmd->add_option("--emit-list", emit_path);

  auto* sweep_cmd = app.add_subcommand("sweep", "Invariants over a parameter grid");
  sweep_cmd->add_option("variant", variant)->required();
  sweep_cmd->add_option("--grid", grid)->required();
  sweep_cmd->add_option("--params", params, "Base parameters");
  sweep_cmd->add_option("--out", out_path);

  auto* search_cmd = app.add_subcommand("search-det", "Parameters realizing a determinant");
  search_cmd->add_option("k", det_target)->required();

  auto* reproduce_cmd = app.add_subcommand("reproduce", "Run a stored scenario");
  reproduce_cmd->add_option("target", target)->required();
  reproduce_cmd->add_option("--k", k_range, "Determinant range lo..hi");

  std::vector<std::string> argv_store{"sofic-forge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    real_out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  g.command = args;
  // Text goes through a buffer so the report can fall back to it.
  std::ostringstream out;
  auto body = [&]() -> int {
    if (cover_cmd->parsed()) {
      auto list = load(list1, g);
      if (reversed_flag) list = reversed(list);
      auto cover = left_fischer_cover(list, krieger ? CoverKind::Krieger : CoverKind::Fischer);
      out << "memory=" << cover.memory << " vertices=" << cover.graph.size()
          << " edges=" << cover.graph.edges.size() << "\n";
      print_graph(cover.graph, out);
      if (!g.dot_path.empty()) write_file(g.dot_path, to_dot(cover.graph));
      if (!g.json_path.empty()) write_report(g, cover_json(cover));
      return 0;
    }
    if (sft_cmd->parsed()) {
      auto cert = sft_certificate(load(list1, g));
      out << cert.describe() << "\n";
      if (!g.json_path.empty()) {
        nlohmann::json j{{"is_sft", cert.is_sft}};
        if (cert.is_sft) j["memory"] = cert.memory;
        if (cert.witness) {
          j["witness"]["label"] = to_string(cert.witness->label);
          for (auto v : cert.witness->cycle1) j["witness"]["cycle1"].push_back(cert.presentation.vertices[v].descriptor);
          for (auto v : cert.witness->cycle2) j["witness"]["cycle2"].push_back(cert.presentation.vertices[v].descriptor);
        }
        write_report(g, j);
      }
      return cert.is_sft ? 0 : 1;
    }
    if (forbidden_cmd->parsed()) {
      auto words = infer_forbidden_words(load(list1, g));
      if (words.empty()) out << "(none)\n";
      for (const auto& w : words) out << to_string(w) << "\n";
      return 0;
    }
    if (borders_cmd->parsed()) {
      auto list = load(list1, g);
      auto cover = left_fischer_cover(list);
      auto report = border_report(list, cover, g.bound);
      const auto& vs = cover.graph.vertices;
      if (report.generators_truncated) {
        g.warnings.push_back("generator search stopped at bound " + std::to_string(report.search_bound));
      }
      out << "memory=" << cover.memory << " bound=" << report.search_bound
          << " truncated=" << yes_no(report.generators_truncated) << "\n";
      for (auto v : report.border_vertices) out << "border " << vs[v].descriptor << "\n";
      for (std::size_t v = 0; v < vs.size(); ++v) {
        if (!report.border_vertices.count(v)) out << "non-border " << vs[v].descriptor << "\n";
      }
      out << "universal " << (report.universal_vertex ? vs[*report.universal_vertex].descriptor : "none") << "\n";
      for (const auto& [v, gens] : report.generators) {
        for (const auto& gw : gens) {
          if (gw.minimal || all_generators) {
            out << "generator " << vs[v].descriptor << " " << to_string(gw.word) << " "
                << (gw.minimal ? "minimal" : "non-minimal") << "\n";
          }
        }
      }
      if (report.left_modular) out << "left_modular " << yes_no(*report.left_modular) << "\n";
      if (!g.dot_path.empty()) write_file(g.dot_path, to_dot(cover.graph, report.border_vertices));
      if (!g.json_path.empty()) {
        nlohmann::json j = cover_json(cover);
        for (auto v : report.border_vertices) j["border"].push_back(vs[v].descriptor);
        if (report.universal_vertex) j["universal"] = vs[*report.universal_vertex].descriptor;
        j["search_bound"] = report.search_bound;
        j["truncated"] = report.generators_truncated;
        for (const auto& [v, gens] : report.generators) {
          for (const auto& gw : gens) {
            j["generators"][vs[v].descriptor].push_back({{"word", to_string(gw.word)}, {"minimal", gw.minimal}});
          }
        }
        write_report(g, j);
      }
      return 0;
    }
    if (modular_cmd->parsed()) {
      auto list = load(list1, g);
      auto res = is_modular(list, side == "left" ? Side::Left : Side::Right);
      out << "MODULAR " << yes_no(res.modular);
      if (!res.modular) {
        out << " counterexample=" << to_string(*res.counterexample)
            << " start=" << (res.start_is_border ? "border" : "non-border");
      }
      out << "\n";
      return 0;
    }
    if (sum_cmd->parsed()) {
      auto l1 = load(list1, g);
      auto l2 = load(list2, g);
      auto s = sum_lists(l1, l2);
      out << "words=" << s.list.size() << " alphabet_disjoint=" << yes_no(s.alphabet_disjoint) << "\n";
      if (!emit_path.empty()) write_file(emit_path, format_list(s.list));
      if (check_surgery) {
        auto surgery = sum_surgery(l1, l2);
        auto direct = left_fischer_cover(s.list);
        bool match = labelled_iso(surgery.graph, direct.graph).has_value();
        out << "SURGERY_MATCH " << yes_no(match) << "\n";
        if (!g.dot_path.empty()) write_file(g.dot_path, to_dot(surgery.graph));
        return match ? 0 : 1;
      }
      return 0;
    }
    if (bf_cmd->parsed()) {
      auto list = load(list1, g);
      auto cover = left_fischer_cover(list);
      std::optional<std::map<Symbol, mpz_class>> w;
      if (!weights.empty()) {
        w.emplace();
        for (const auto& s : cover.graph.alphabet) (*w)[s] = 1;
        std::stringstream ss(weights);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto eq = item.find('=');
          if (eq == std::string::npos) throw UsageError("weights take the form s=k: " + item);
          Symbol s(item.substr(0, eq));
          if (!cover.graph.label_index(s)) throw Error(ErrorCode::SymbolNotInAlphabet, s.token);
          mpz_class k;
          if (k.set_str(item.substr(eq + 1), 10) != 0 || k <= 0) {
            throw UsageError("weight must be a positive integer: " + item);
          }
          (*w)[s] = k;
        }
      }
      auto bf = signed_bowen_franks(adjacency_matrix(cover.graph, w));
      out << bf.to_string() << "\n";
      if (!g.json_path.empty()) {
        nlohmann::json j{{"sign", bf.sign}, {"free_rank", bf.free_rank}, {"det", bf.det.get_str()}};
        j["torsion"] = nlohmann::json::array();
        for (const auto& t : bf.torsion) j["torsion"].push_back(t.get_str());
        write_report(g, j);
      }
      return 0;
    }
    if (fe_cmd->parsed()) {
      auto a = adjacency_matrix(left_fischer_cover(load(list1, g)).graph);
      auto b = adjacency_matrix(left_fischer_cover(load(list2, g)).graph);
      out << "FLOW_EQUIVALENT " << to_string(flow_equivalent(a, b)) << "\n";
      return 0;
    }
    if (entropy_cmd->parsed()) {
      auto e = entropy(adjacency_matrix(left_fischer_cover(load(list1, g)).graph), tol);
      char buf[160];
      std::snprintf(buf, sizeof buf, "entropy=%.12f lower=%.12f upper=%.12f", e.value, e.lower, e.upper);
      out << buf << "\n";
      return 0;
    }
    if (family_cmd->parsed()) {
      auto p = parse_family_params(variant, params);
      auto run = run_family(p);
      out << "family=" << family_name(p) << " params=" << format_family_params(p) << "\n";
      out << "words=" << run.list.size() << " alphabet=" << run.list.alphabet().size()
          << " cover_vertices=" << run.vertices << "\n";
      out << "pipeline " << run.bf.to_string() << "\n";
      if (!emit_path.empty()) write_file(emit_path, format_list(run.list));
      bool match = true;
      if (auto* b = std::get_if<BParams>(&p)) {
        auto r = run_family(matched_r(*b));
        out << "matched_r " << r.bf.to_string() << "\n";
        match = r.bf == run.bf;
      } else if (auto* d = std::get_if<DPlusMParams>(&p)) {
        auto x = dplusm_witness_x(d->diag, run.bf.det);
        out << "x_witness=" << (x ? x->get_str() : "none") << "\n";
        try {
          auto cf = closed_form_invariant(p);
          out << "x_conjectured=" << dplusm_conjectured_x(d->modular).get_str()
              << " closed_form det=" << cf.det.get_str() << "\n";
          match = cf.det == run.bf.det;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoClosedForm) throw;
          out << "closed_form none\n";
        }
      } else {
        auto cf = closed_form_invariant(p);
        out << "closed_form det=" << cf.det.get_str() << " sign=" << cf.sign
            << " torsion=" << (cf.torsion ? torsion_text(*cf.torsion) : "unpredicted") << "\n";
        match = cf.det == run.bf.det && cf.sign == run.bf.sign &&
                (!cf.torsion || *cf.torsion == run.bf.torsion);
      }
      out << "match " << yes_no(match) << "\n";
      return match ? 0 : 1;
    }
    if (sweep_cmd->parsed()) {
      std::vector<std::pair<std::string, std::pair<long, long>>> axes;
      std::stringstream ss(grid);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("grid items take the form key=lo..hi: " + item);
        axes.push_back({item.substr(0, eq), parse_range(item.substr(eq + 1))});
        if (axes.back().second.first > axes.back().second.second) throw UsageError("empty range: " + item);
      }
      if (axes.empty()) throw UsageError("--grid needs at least one axis");
      std::ostringstream tsv;
      for (const auto& [k, r] : axes) tsv << k << "\t";
      tsv << "sign\ttorsion\tfree_rank\tdet\n";
      std::vector<long> cur;
      for (const auto& a : axes) cur.push_back(a.second.first);
      while (true) {
        std::string text = params;
        for (std::size_t i = 0; i < axes.size(); ++i) text = set_param(text, axes[i].first, cur[i]);
        auto bf = run_family(parse_family_params(variant, text)).bf;
        for (auto v : cur) tsv << v << "\t";
        tsv << bf.sign << "\t" << torsion_text(bf.torsion) << "\t" << bf.free_rank << "\t"
            << bf.det.get_str() << "\n";
        // Odometer over the grid, last axis fastest.
        std::size_t i = axes.size();
        while (i > 0 && cur[i - 1] == axes[i - 1].second.second) {
          cur[i - 1] = axes[i - 1].second.first;
          --i;
        }
        if (i == 0) break;
        ++cur[i - 1];
      }
      if (out_path.empty()) {
        out << tsv.str();
      } else {
        write_file(out_path, tsv.str());
      }
      return 0;
    }
    if (search_cmd->parsed()) {
      auto p = search_det(det_target);
      auto bf = run_family(p).bf;
      out << "params=" << format_family_params(p) << "\n";
      out << "closed_form_det=" << closed_form_invariant(p).det.get_str() << "\n";
      out << "pipeline " << bf.to_string() << "\n";
      return bf.det == det_target ? 0 : 1;
    }
    if (reproduce_cmd->parsed()) {
      ReproduceOptions opt;
      auto [lo, hi] = parse_range(k_range);
      opt.k_lo = lo;
      opt.k_hi = hi;
      opt.seed = g.seed;
      return reproduce(target, opt, out, err);
    }
    return 2;
  };

  int code = 2;
  try {
    code = body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    code = 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::NotSft) out << e.detail() << "\n";
    code = e.code() == ErrorCode::InvalidParams ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = 1;
  }
  real_out << out.str();
  if (!g.json_path.empty() && !g.report_written && code != 2) {
    nlohmann::json lines = nlohmann::json::array();
    std::stringstream ss(out.str());
    for (std::string line; std::getline(ss, line);) lines.push_back(line);
    try {
      write_report(g, {{"exit_code", code}, {"lines", lines}});
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace sofic::cli
