// Command line driver. Machine-readable JSON goes to stdout, a human table
// to stderr; --format json / table silences the other stream. Reports are
// byte-identical across runs with the same flags and seed; wall-clock time
// is only attached under --timing.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "xihom/parallel.hpp"
#include "xihom/verify.hpp"

using nlohmann::json;
using namespace xihom;

namespace {

struct Output {
  std::string format = "both";
  bool timing = false;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void emit(json& report, const std::vector<std::string>& table) const {
    if (timing)
      report["wall_ms"] =
          int(std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count());
    if (format != "table") std::cout << report.dump(2) << "\n";
    if (format != "json")
      for (const auto& line : table) std::cerr << line << "\n";
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "json, table, or both")
      ->check(CLI::IsMember({"json", "table", "both"}))
      ->capture_default_str();
  cmd->add_flag("--timing", out.timing, "attach wall-clock time to the report");
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  check(dots != std::string::npos, "range must look like a..b");
  int a = std::stoi(text.substr(0, dots));
  int b = std::stoi(text.substr(dots + 2));
  check(a <= b, "empty range");
  return {a, b};
}

json base_report(const std::string& command, const std::string& instance,
                 json flags) {
  json j;
  j["schema_version"] = "1";
  j["command"] = command;
  j["instance"] = instance;
  j["flags"] = std::move(flags);
  return j;
}

json pd_json(const PdVerdict& v) {
  json j;
  j["finite"] = v.finite;
  if (v.finite) j["value"] = v.value;
  return j;
}

std::string pd_str(const PdVerdict& v) {
  return v.finite ? std::to_string(v.value) : std::string("exceeds-window");
}

struct Session {
  InstanceData inst;
  std::string path;
  ProperClassSpec xi;
  std::string class_text = "instance";
};

Session open_session(const std::string& path, const std::string& cls) {
  Session s;
  s.inst = load_instance_file(path);
  s.path = path;
  if (cls.empty()) {
    s.xi = s.inst.proper_class;
    s.class_text =
        s.inst.proper_class.is_all() ? "all" : s.inst.proper_class.describe();
  } else {
    s.xi = parse_class_spec(s.inst, cls);
    s.class_text = cls;
  }
  return s;
}

int run_verify_catalog(int window, const Output& out) {
  auto results = run_catalog_acceptance(window);
  json rep = base_report("verify", "catalog", {{"window", window}});
  json arr = json::array();
  std::vector<std::string> table;
  bool all_pass = true;
  for (const auto& r : results) {
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail}});
    table.push_back(std::string(r.pass ? "PASS" : "FAIL") + " criterion " +
                    std::to_string(r.id) + ": " + r.name +
                    (r.detail.empty() ? "" : " -- " + r.detail));
    all_pass = all_pass && r.pass;
  }
  rep["results"] = std::move(arr);
  rep["pass"] = all_pass;
  out.emit(rep, table);
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "xihom: relative and complete cohomology over finite-dimensional "
      "quiver algebras"};
  app.require_subcommand(1);

  // ---- basis
  auto* basis = app.add_subcommand("basis", "algebra basis and dimension");
  std::string basis_file;
  Output basis_out;
  basis->add_option("file", basis_file)->required();
  add_output_flags(basis, basis_out);

  // ---- resolve
  auto* resolve = app.add_subcommand("resolve", "resolution summary");
  std::string res_file, res_module, res_class;
  int res_length = 12;
  Output res_out;
  resolve->add_option("file", res_file)->required();
  resolve->add_option("module", res_module)->required();
  resolve->add_option("--length", res_length, "tower length")
      ->capture_default_str();
  resolve->add_option("--class", res_class,
                      "override the proper class (all | relative:M1,M2)");
  add_output_flags(resolve, res_out);

  // ---- pd
  auto* pd = app.add_subcommand("pd", "relative projective dimension");
  std::string pd_file, pd_module, pd_class;
  int pd_window = 12;
  Output pd_out;
  pd->add_option("file", pd_file)->required();
  pd->add_option("module", pd_module)->required();
  pd->add_option("--window", pd_window)->capture_default_str();
  pd->add_option("--class", pd_class);
  add_output_flags(pd, pd_out);

  // ---- ext
  auto* ext = app.add_subcommand("ext", "relative ext dimensions, both routes");
  std::string ext_file, ext_m, ext_n, ext_class, ext_range;
  int ext_deg = -1;
  bool ext_cocycles = false;
  Output ext_out;
  ext->add_option("file", ext_file)->required();
  ext->add_option("M", ext_m)->required();
  ext->add_option("N", ext_n)->required();
  ext->add_option("--deg", ext_deg, "single degree");
  ext->add_option("--range", ext_range, "degree range a..b");
  ext->add_flag("--cocycles", ext_cocycles, "include cocycle representatives");
  ext->add_option("--class", ext_class);
  add_output_flags(ext, ext_out);

  // ---- complete-ext
  auto* cext = app.add_subcommand("complete-ext",
                                  "complete cohomology with oracles");
  std::string cext_file, cext_m, cext_n, cext_class, cext_range = "-6..6";
  int cext_window = 12, cext_stability = 4;
  Output cext_out;
  cext->add_option("file", cext_file)->required();
  cext->add_option("M", cext_m)->required();
  cext->add_option("N", cext_n)->required();
  cext->add_option("--range", cext_range)->capture_default_str();
  cext->add_option("--window", cext_window)->capture_default_str();
  cext->add_option("--stability", cext_stability)->capture_default_str();
  cext->add_option("--class", cext_class);
  add_output_flags(cext, cext_out);

  // ---- gpd
  auto* gpd_cmd = app.add_subcommand("gpd", "Gorenstein projective dimension");
  std::string gpd_file, gpd_module, gpd_class;
  int gpd_window = 12;
  Output gpd_out;
  gpd_cmd->add_option("file", gpd_file)->required();
  gpd_cmd->add_option("module", gpd_module)->required();
  gpd_cmd->add_option("--window", gpd_window)->capture_default_str();
  gpd_cmd->add_option("--class", gpd_class);
  add_output_flags(gpd_cmd, gpd_out);

  // ---- audit
  auto* audit = app.add_subcommand("audit", "proper-class axiom audit");
  std::string audit_file, audit_class;
  int audit_trials = 200;
  uint64_t audit_seed = 20240814;
  Output audit_out;
  audit->add_option("file", audit_file)->required();
  audit->add_option("--trials", audit_trials)->capture_default_str();
  audit->add_option("--seed", audit_seed)->capture_default_str();
  audit->add_option("--class", audit_class);
  add_output_flags(audit, audit_out);

  // ---- verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::string verify_file;
  bool verify_catalog = false;
  int verify_window = 12;
  Output verify_out;
  verify->add_option("file", verify_file, "instance file");
  verify->add_flag("--catalog", verify_catalog,
                   "run the full acceptance suite on the bundled catalog");
  verify->add_option("--window", verify_window)->capture_default_str();
  add_output_flags(verify, verify_out);

  // ---- make-catalog
  auto* makecat =
      app.add_subcommand("make-catalog", "write the bundled instance files");
  std::string makecat_dir;
  makecat->add_option("dir", makecat_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*basis) {
      Session s = open_session(basis_file, "");
      json rep = base_report("basis", basis_file, json::object());
      json names = json::array();
      for (int i = 0; i < s.inst.algebra->dim(); ++i)
        names.push_back(s.inst.algebra->path_name(i));
      rep["results"] = {{{"dimension", s.inst.algebra->dim()},
                         {"basis", names},
                         {"self_injective", is_self_injective(s.inst.algebra)},
                         {"modules", s.inst.module_names}}};
      std::vector<std::string> table{
          "algebra dimension " + std::to_string(s.inst.algebra->dim()),
          "basis: " + names.dump(),
          std::string("self-injective: ") +
              (is_self_injective(s.inst.algebra) ? "yes" : "no")};
      basis_out.emit(rep, table);
      return 0;
    }
    if (*resolve) {
      Session s = open_session(res_file, res_class);
      check(res_length >= 0, "length must be nonnegative");
      ResolutionPtr r =
          build_resolution(s.xi, s.inst.module(res_module), res_length);
      json rep = base_report(
          "resolve", res_file,
          {{"module", res_module}, {"length", res_length},
           {"class", s.class_text}});
      json steps = json::array();
      std::vector<std::string> table;
      for (int i = 0; i <= res_length; ++i) {
        TopData top = top_of(*r->term(i));
        steps.push_back({{"index", i},
                         {"term_dim", r->term(i)->dim},
                         {"term_top", top.multiplicity},
                         {"syzygy_dim", r->syzygy(i + 1)->dim}});
        table.push_back("P_" + std::to_string(i) + " dim " +
                        std::to_string(r->term(i)->dim) + ", syzygy dim " +
                        std::to_string(r->syzygy(i + 1)->dim));
      }
      rep["results"] = std::move(steps);
      res_out.emit(rep, table);
      return 0;
    }
    if (*pd) {
      Session s = open_session(pd_file, pd_class);
      PdVerdict v = xi_pd(s.xi, s.inst.module(pd_module), pd_window);
      json rep = base_report("pd", pd_file,
                             {{"module", pd_module}, {"window", pd_window},
                              {"class", s.class_text}});
      rep["results"] = {{{"module", pd_module}, {"pd", pd_json(v)}}};
      pd_out.emit(rep, {"pd(" + pd_module + ") = " + pd_str(v)});
      return 0;
    }
    if (*ext) {
      Session s = open_session(ext_file, ext_class);
      int lo = ext_deg, hi = ext_deg;
      if (!ext_range.empty()) std::tie(lo, hi) = parse_range(ext_range);
      check(lo >= 0, "ext degrees are nonnegative (use complete-ext below 0)");
      const ModulePtr& m = s.inst.module(ext_m);
      const ModulePtr& n = s.inst.module(ext_n);
      std::vector<json> rows(size_t(hi - lo + 1));
      parallel_for(rows.size(), [&](size_t t) {
        int d = lo + int(t);
        CohomologyGroup g = xi_ext(s.xi, m, n, d, ext_cocycles);
        json row;
        row["deg"] = d;
        row["dimension"] = g.dimension;
        if (d >= 1) {
          int two = xi_ext_two_resolutions(s.xi, m, n, d).dimension;
          row["two_resolution_dimension"] = two;
          row["routes_agree"] = (two == g.dimension);
        }
        try {
          int inj = xi_ext_injective_side(s.xi, m, n, d).dimension;
          row["injective_side_dimension"] = inj;
          row["routes_agree"] =
              row.value("routes_agree", true) && (inj == g.dimension);
        } catch (const UnsupportedError& e) {
          row["injective_side"] = std::string("unsupported: ") + e.what();
        }
        if (ext_cocycles && g.cocycle_basis) {
          json basis = json::array();
          for (const auto& z : *g.cocycle_basis) {
            json mat = json::array();
            for (int i = 0; i < z.matrix.rows; ++i) {
              json rowv = json::array();
              for (int jc = 0; jc < z.matrix.cols; ++jc)
                rowv.push_back(z.matrix.at(i, jc));
              mat.push_back(rowv);
            }
            basis.push_back(mat);
          }
          row["cocycles"] = std::move(basis);
        }
        rows[t] = std::move(row);
      });
      json rep = base_report("ext", ext_file,
                             {{"M", ext_m}, {"N", ext_n},
                              {"range", json::array({lo, hi})},
                              {"class", s.class_text}});
      json arr = json::array();
      std::vector<std::string> table;
      for (auto& row : rows) {
        table.push_back("ext^" + row["deg"].dump() + "(" + ext_m + "," +
                        ext_n + ") = " + row["dimension"].dump());
        arr.push_back(std::move(row));
      }
      rep["results"] = std::move(arr);
      ext_out.emit(rep, table);
      return 0;
    }
    if (*cext) {
      Session s = open_session(cext_file, cext_class);
      auto [lo, hi] = parse_range(cext_range);
      const ModulePtr& m = s.inst.module(cext_m);
      const ModulePtr& n = s.inst.module(cext_n);
      json rep = base_report(
          "complete-ext", cext_file,
          {{"M", cext_m}, {"N", cext_n}, {"range", json::array({lo, hi})},
           {"window", cext_window}, {"stability", cext_stability},
           {"class", s.class_text}});
      json arr = json::array();
      std::vector<std::string> table;
      try {
        std::vector<json> rows(size_t(hi - lo + 1));
        parallel_for(rows.size(), [&](size_t t) {
          int d = lo + int(t);
          CompleteExtResult r = complete_ext(s.xi, m, n, d, cext_window);
          json row;
          row["deg"] = d;
          row["dimension"] = r.group.dimension;
          row["regime"] = regime_name(r.regime);
          bool agree = true;
          try {
            int st = complete_ext_stable_oracle(m, n, d).dimension;
            row["stable_oracle"] = st;
            agree = agree && (st == r.group.dimension);
          } catch (const UnsupportedError&) {
            row["stable_oracle"] = nullptr;
          }
          ColimitResult col = complete_ext_colimit_oracle(
              s.xi, m, n, d, cext_window, cext_stability);
          if (col.stabilized) {
            row["colimit_oracle"] = col.dimension;
            row["colimit_stabilized_at"] = col.stabilized_at;
            agree = agree && (col.dimension == r.group.dimension);
          } else {
            row["colimit_oracle"] = "not-stabilized";
          }
          row["oracles_agree"] = agree;
          rows[t] = std::move(row);
        });
        for (auto& row : rows) {
          table.push_back("complete-ext^" + row["deg"].dump() + " = " +
                          row["dimension"].dump());
          arr.push_back(std::move(row));
        }
      } catch (const NoGpWithinWindow& e) {
        rep["verdict"] = std::string("no-gp-within-window: ") + e.what();
        table.push_back(std::string("no Gorenstein syzygy within the window"));
      }
      rep["results"] = std::move(arr);
      cext_out.emit(rep, table);
      return 0;
    }
    if (*gpd_cmd) {
      Session s = open_session(gpd_file, gpd_class);
      GpdVerdict v = gpd(s.xi, s.inst.module(gpd_module), gpd_window);
      json rep = base_report("gpd", gpd_file,
                             {{"module", gpd_module}, {"window", gpd_window},
                              {"class", s.class_text}});
      rep["results"] = {{{"module", gpd_module},
                         {"gpd", pd_json(v.value)},
                         {"regime", regime_name(v.regime)}}};
      gpd_out.emit(rep, {"gpd(" + gpd_module + ") = " + pd_str(v.value) +
                             " [" + regime_name(v.regime) + "]"});
      return 0;
    }
    if (*audit) {
      Session s = open_session(audit_file, audit_class);
      std::vector<ModulePtr> pool{zero_module(s.inst.algebra)};
      for (const auto& name : s.inst.module_names)
        pool.push_back(s.inst.module(name));
      AuditReport r = audit_axioms(s.xi, pool, audit_trials, audit_seed);
      json rep = base_report("audit", audit_file,
                             {{"trials", audit_trials},
                              {"class", s.class_text}});
      rep["seed"] = audit_seed;
      json viol = json::array();
      for (const auto& v : r.violations)
        viol.push_back({{"axiom", v.axiom}, {"conflation", v.detail}});
      rep["results"] = {{{"checks_run", r.checks_run},
                         {"violations", viol},
                         {"pass", r.pass()}}};
      std::vector<std::string> table{
          std::string("audit ") + (r.pass() ? "passed" : "FAILED") + " with " +
          std::to_string(r.violations.size()) + " violations over " +
          std::to_string(audit_trials) + " trials"};
      audit_out.emit(rep, table);
      return r.pass() ? 0 : 3;
    }
    if (*verify) {
      if (verify_catalog) return run_verify_catalog(verify_window, verify_out);
      check(!verify_file.empty(), "verify needs a file or --catalog");
      Session s = open_session(verify_file, "");
      auto results = run_instance_verify(s.inst, verify_window);
      json rep = base_report("verify", verify_file,
                             {{"window", verify_window}});
      json arr = json::array();
      std::vector<std::string> table;
      bool all_pass = true;
      for (const auto& r : results) {
        arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass},
                       {"detail", r.detail}});
        table.push_back(std::string(r.pass ? "PASS" : "FAIL") + " " + r.name +
                        (r.detail.empty() ? "" : " -- " + r.detail));
        all_pass = all_pass && r.pass;
      }
      rep["results"] = std::move(arr);
      rep["pass"] = all_pass;
      verify_out.emit(rep, table);
      return all_pass ? 0 : 3;
    }
    if (*makecat) {
      for (const auto& [id, inst] : catalog_instances()) {
        std::ofstream f(makecat_dir + "/" + id + ".json");
        check(f.good(), "cannot write to " + makecat_dir);
        f << save_instance(inst).dump(2) << "\n";
      }
      std::cerr << "wrote 5 instance files to " << makecat_dir << "\n";
      return 0;
    }
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
