#ifndef SCHEMEFORGE_CLI_HPP
#define SCHEMEFORGE_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "schemeforge/designs.hpp"
#include "schemeforge/io.hpp"

namespace schemeforge {

// Parallelism cap: SCHEME_FORGE_THREADS when set, otherwise a small
// hardware-based default. Results never depend on the thread count.
inline int thread_budget() {
  if (const char* env = std::getenv("SCHEME_FORGE_THREADS")) {
    int value = std::atoi(env);
    if (value >= 1) return value;
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(hw < 4 ? hw : 4);
}

namespace detail {

inline json set_json(const std::set<int>& s) {
  json out = json::array();
  for (int v : s) out.push_back(v);
  return out;
}

inline json orderings_json(const std::vector<std::vector<int>>& orderings) {
  json out = json::array();
  for (const std::vector<int>& order : orderings) out.push_back(order);
  return out;
}

inline json constraint_json(const ConstraintReport& report) {
  json out;
  out["initial_support"] = set_json(report.initial_support);
  json trace = json::array();
  for (const ConstraintStep& step : report.trace) {
    json entry;
    entry["h"] = step.h;
    entry["dichotomy"] = step.dichotomy;
    trace.push_back(entry);
  }
  out["trace"] = trace;
  out["final_support"] = set_json(report.final_support);
  out["forced_half_size"] = report.forced_half_size;
  return out;
}

inline std::string design_set_text(int d, const std::set<int>& final_support) {
  std::string text = "{";
  bool first = true;
  for (int j = 1; j <= d; ++j) {
    if (final_support.count(j)) continue;
    if (!first) text += ",";
    text += std::to_string(j);
    first = false;
  }
  text += "}";
  return text;
}

inline std::string constraint_conclusion(int d, const ConstraintReport& report,
                                         const std::optional<Rational>& size,
                                         const Rational& half) {
  bool size_resolves = size.has_value() && *size != half;
  if (report.trace.empty()) return "no reduction available";
  if (report.forced_half_size)
    return "nontrivial subsets with this support have exactly half the "
           "vertices";
  std::string designs = design_set_text(d, report.final_support);
  if (size_resolves) return "the subset is a " + designs + "-design";
  return "the subset is a " + designs +
         "-design or has exactly half the vertices";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reports

inline json info_report(const json& desc, bool approx) {
  DescriptorResult res = resolve_descriptor(desc);
  json out;
  out["command"] = "info";
  out["descriptor"] = desc;
  if (res.scheme.source() == SchemeSource::ExplicitRelations &&
      res.scheme.n() <= 500) {
    validate_axioms(res.scheme);
    out["axioms_ok"] = true;
  }
  SpectralData spec = spectral(res.scheme);
  out["n"] = spec.n.str();
  out["d"] = spec.d;
  out["source"] = source_name(res.scheme.source());
  out["k"] = scalars_json(spec.k);
  out["m"] = scalars_json(spec.m);
  out["P"] = matrix_json(spec.P);
  out["Q"] = matrix_json(spec.Q);

  KreinTensor krein = krein_parameters(spec);
  json flags;
  flags["q_bipartite"] = is_Q_bipartite(krein);
  if (spec.d <= 8) {
    std::vector<std::vector<int>> cometric = find_cometric_orderings(krein);
    flags["q_antipodal"] =
        cometric.empty() ? json(nullptr)
                         : json(is_Q_antipodal(krein, cometric.front()));
  } else {
    flags["q_antipodal"] = nullptr;
  }
  flags["non_integral_multiplicity"] = spec.non_integral_multiplicity;
  if (!spec.non_integral_indices.empty())
    flags["non_integral_indices"] = spec.non_integral_indices;
  out["flags"] = flags;
  if (!res.metadata.empty()) out["metadata"] = res.metadata;
  if (approx) {
    out["k_approx"] = scalars_approx_json(spec.k);
    out["m_approx"] = scalars_approx_json(spec.m);
    out["P_approx"] = matrix_approx_json(spec.P);
    out["Q_approx"] = matrix_approx_json(spec.Q);
  }
  return out;
}

inline json krein_report(const json& desc, bool approx) {
  DescriptorResult res = resolve_descriptor(desc);
  SpectralData spec = spectral(res.scheme);
  KreinTensor krein = krein_parameters(spec);

  json out;
  out["command"] = "krein";
  out["descriptor"] = desc;
  out["n"] = spec.n.str();
  out["d"] = spec.d;
  json tensor = json::array();
  for (int i = 0; i <= spec.d; ++i) {
    json slice = json::array();
    for (int j = 0; j <= spec.d; ++j) {
      json line = json::array();
      for (int h = 0; h <= spec.d; ++h)
        line.push_back(to_string(krein.at(i, j, h)));
      slice.push_back(line);
    }
    tensor.push_back(slice);
  }
  out["krein"] = tensor;
  json vanishing = json::array();
  for (const std::array<int, 3>& triple : vanishing_krein(krein))
    vanishing.push_back({triple[0], triple[1], triple[2]});
  out["vanishing"] = vanishing;
  std::vector<Scalar> reduced;
  for (int i = 0; i <= spec.d; ++i)
    reduced.push_back(reduced_krein_diagonal(spec, i));
  out["reduced_diagonal"] = scalars_json(reduced);
  if (approx) {
    json tensor_approx = json::array();
    for (int i = 0; i <= spec.d; ++i) {
      json slice = json::array();
      for (int j = 0; j <= spec.d; ++j) {
        json line = json::array();
        for (int h = 0; h <= spec.d; ++h)
          line.push_back(approx_value(krein.at(i, j, h)));
        slice.push_back(line);
      }
      tensor_approx.push_back(slice);
    }
    out["krein_approx"] = tensor_approx;
  }
  return out;
}

inline json orderings_report(const json& desc) {
  DescriptorResult res = resolve_descriptor(desc);
  SpectralData spec = spectral(res.scheme);
  KreinTensor krein = krein_parameters(spec);
  IntersectionTensor p = intersection_tensor(spec);
  std::vector<std::vector<int>> cometric = find_cometric_orderings(krein);
  std::vector<std::vector<int>> metric = find_metric_orderings(p);

  json out;
  out["command"] = "orderings";
  out["descriptor"] = desc;
  out["d"] = spec.d;
  out["cometric"] = detail::orderings_json(cometric);
  out["metric"] = detail::orderings_json(metric);
  out["q_bipartite"] = is_Q_bipartite(krein);
  json arrays = json::array();
  for (const std::vector<int>& order : cometric) {
    KreinArray ka = krein_array(krein, order);
    json entry;
    entry["ordering"] = order;
    entry["a"] = scalars_json(ka.a);
    entry["b"] = scalars_json(ka.b);
    entry["c"] = scalars_json(ka.c);
    entry["q_antipodal"] = is_Q_antipodal(krein, order);
    arrays.push_back(entry);
  }
  out["krein_arrays"] = arrays;
  return out;
}

struct DesignRequest {
  std::vector<int> subset;
  std::vector<std::string> distribution;
  std::vector<int> support;
  std::string size_text;
  bool approx = false;
};

inline json design_report(const json& desc, const DesignRequest& req) {
  int provided = (req.subset.empty() ? 0 : 1) +
                 (req.distribution.empty() ? 0 : 1) +
                 (req.support.empty() ? 0 : 1);
  if (provided != 1)
    throw ParseError(
        "design needs exactly one of --subset, --distribution, --support");

  DescriptorResult res = resolve_descriptor(desc);
  SpectralData spec = spectral(res.scheme);
  KreinTensor krein = krein_parameters(spec);
  Rational half(spec.n);
  half /= 2;

  json out;
  out["command"] = "design";
  out["descriptor"] = desc;

  std::optional<Rational> size;
  if (!req.size_text.empty()) size = parse_rational(req.size_text);

  std::set<int> support;
  if (!req.support.empty()) {
    support.insert(req.support.begin(), req.support.end());
    out["support"] = detail::set_json(support);
  } else {
    std::vector<Scalar> a;
    if (!req.subset.empty()) {
      std::vector<int> members(req.subset);
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()),
                    members.end());
      for (int x : members)
        if (x < 0 || x >= res.scheme.n())
          throw ParseError("subset index " + std::to_string(x) +
                           " out of range");
      out["subset"] = members;
      a = inner_distribution(res.scheme, members);
      size = Rational(static_cast<long long>(members.size()));
    } else {
      for (const std::string& text : req.distribution)
        a.push_back(parse_scalar(text));
    }
    DesignCertificate cert = mac_williams(a, spec);
    out["a"] = scalars_json(a);
    out["aQ"] = scalars_json(cert.aQ);
    out["size"] = to_string(cert.size);
    out["half_size"] = cert.half_size;
    out["T"] = detail::set_json(cert.T);
    out["S"] = detail::set_json(cert.S);
    if (!size && cert.size.is_rational()) size = cert.size.as_rational();
    if (!req.subset.empty()) {
      std::set<int> espace =
          eigenspace_support(res.scheme, spec, out["subset"].get<std::vector<int>>());
      out["eigenspace_support"] = detail::set_json(espace);
      out["support_matches_transform"] = espace == cert.S;
    }
    if (req.approx) {
      out["a_approx"] = scalars_approx_json(a);
      out["aQ_approx"] = scalars_approx_json(cert.aQ);
    }
    support = cert.S;
  }

  ConstraintReport constraint = constrain_design(spec, krein, support, size);
  out["constraint"] = detail::constraint_json(constraint);
  out["conclusion"] =
      detail::constraint_conclusion(spec.d, constraint, size, half);
  return out;
}

inline json pg_scan_report(long long s_max, long long t_max) {
  std::vector<PgScanRow> rows = pg_scan(s_max, t_max, thread_budget());
  json out;
  out["command"] = "pg-scan";
  out["s_max"] = s_max;
  out["t_max"] = t_max;
  json table = json::array();
  for (const PgScanRow& row : rows) {
    json entry;
    entry["s"] = row.s;
    entry["t"] = row.t;
    entry["alpha"] = row.alpha;
    entry["n"] = row.n.str();
    table.push_back(entry);
  }
  out["rows"] = table;
  return out;
}

inline json catalog_list_report() {
  json out;
  out["command"] = "catalog-list";
  json families = json::array();
  auto add = [&families](const char* name, const char* grammar,
                         const char* note) {
    json entry;
    entry["name"] = name;
    entry["grammar"] = grammar;
    entry["note"] = note;
    families.push_back(entry);
  };
  add("johnson", "johnson:v,k",
      "k-subsets of a v-set; distance by intersection size");
  add("pg", "pg:s,t,a",
      "partial geometry point scheme; a=1 is the generalised quadrangle");
  add("srg", "srg:v,k,l,m",
      "strongly regular graph scheme from its parameter set");
  add("dualpolar", "dualpolar:DH5|DQ6|DW5,q",
      "dual polar eigenmatrices; q is formal, not checked for prime power");
  add("octagon", "octagon:s,t",
      "generalised octagon point scheme from its intersection array");
  add("genpw", "genpw:q,n[,explicit]",
      "quadric scheme off a hyperplane; explicit form enumerates points for "
      "prime q");
  add("taylor", "taylor:k,mu",
      "antipodal double cover with intersection array {k,mu,1;1,mu,k}");
  out["families"] = families;
  return out;
}

// ---------------------------------------------------------------------------
// Named reproduction checks

inline json reproduce_report(const std::string& name) {
  json out;
  out["command"] = "reproduce";
  out["check"] = name;
  if (name == "octagon-no-movoid") {
    LineCliqueReport rep = line_clique_analysis_octagon(2, 4);
    SpectralData spec = spectral(octagon_scheme(2, 4));
    KreinTensor krein = krein_parameters(spec);
    json details;
    details["n"] = spec.n.str();
    details["clique_a"] = scalars_json(rep.clique_a);
    details["clique_aQ"] = scalars_json(rep.clique_aQ);
    details["aQ_zero_indices"] = detail::set_json(rep.clique_design_set);
    details["q222"] = to_string(krein.at(2, 2, 2));
    details["constraint"] = detail::constraint_json(rep.constraint);
    details["conclusion"] = rep.conclusion;
    out["details"] = details;
    out["pass"] = spec.n == 1755 &&
                  rep.clique_design_set == std::set<int>{2} &&
                  krein.at(2, 2, 2).is_zero() && rep.forced_half &&
                  rep.conclusion == "no nontrivial m-ovoid";
    return out;
  }
  if (name == "genpw-appendices") {
    bool pass = true;
    json cases = json::array();
    for (auto [q, n] : {std::pair<long long, int>{3, 3},
                        {4, 3},
                        {5, 3},
                        {3, 4},
                        {4, 4},
                        {5, 5}}) {
      SpectralData spec = spectral(genpw_param(q, n));
      KreinTensor krein = krein_parameters(spec);
      IntersectionTensor p = intersection_tensor(spec);
      IntersectionTensor p_ref = genpw_reference_intersection_tensor(q, n);
      KreinTensor q_ref = genpw_reference_krein_tensor(q, n);
      bool match = true;
      for (int i = 0; i <= 4 && match; ++i)
        for (int j = 0; j <= 4 && match; ++j)
          for (int h = 0; h <= 4; ++h)
            if (!(p.at(i, j, h) == p_ref.at(i, j, h)) ||
                !(krein.at(i, j, h) == q_ref.at(i, j, h))) {
              match = false;
              break;
            }
      json entry;
      entry["q"] = q;
      entry["n_param"] = n;
      entry["tensors_match"] = match;
      cases.push_back(entry);
      pass = pass && match;
    }
    Scheme explicit33 = genpw_explicit(3, 3);
    ValidationReport axioms = validate_axioms(explicit33);
    SpectralData espec = spectral(explicit33);
    bool explicit_ok = axioms.ok && espec.P == genpw_eigenmatrix(3, 3);
    IntersectionTensor p_ref = genpw_reference_intersection_tensor(3, 3);
    for (int i = 0; i <= 4 && explicit_ok; ++i)
      for (int j = 0; j <= 4 && explicit_ok; ++j)
        for (int h = 0; h <= 4; ++h)
          if (!(axioms.p.at(i, j, h) == p_ref.at(i, j, h))) {
            explicit_ok = false;
            break;
          }
    json details;
    details["closed_forms"] = cases;
    details["explicit_q3_n3_ok"] = explicit_ok;
    out["details"] = details;
    out["pass"] = pass && explicit_ok;
    return out;
  }
  throw ParseError("unknown reproduction check '" + name + "'");
}

// ---------------------------------------------------------------------------
// Entry point

namespace detail {

inline json parse_descriptor_text(const std::string& text) {
  std::string body = text;
  std::size_t first = body.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw ParseError("empty descriptor");
  if (body[first] != '{') {
    std::ifstream in(text);
    if (!in) throw ParseError("cannot read descriptor file '" + text + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    body = buffer.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("descriptor is not valid JSON: ") +
                     err.what());
  }
}

inline std::string error_type_of(const std::string& what) {
  std::size_t colon = what.find(':');
  if (colon == std::string::npos || colon == 0) return "Error";
  return what.substr(0, colon);
}

inline int emit_error(std::ostream& out, const std::string& type, int code,
                      const std::string& message) {
  json report;
  json error;
  error["type"] = type;
  error["code"] = code;
  error["message"] = message;
  report["error"] = error;
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace detail

// Runs one CLI invocation; returns the process exit code. Reports and error
// objects both go to `out` as JSON.
inline int run_command(const std::vector<std::string>& args,
                       std::ostream& out) {
  CLI::App app{"exact association scheme computations"};
  app.name("schemeforge");
  app.require_subcommand(1);

  std::string desc_text;
  bool approx = false;
  DesignRequest design_req;
  long long s_max = 0, t_max = 0;
  std::string check_name;

  CLI::App* info = app.add_subcommand("info", "spectral data and flags");
  info->add_option("descriptor", desc_text,
                   "inline JSON descriptor or a path to one")
      ->required();
  info->add_flag("--approx", approx, "add decimal renderings");

  CLI::App* krein = app.add_subcommand("krein", "Krein tensor and zeros");
  krein->add_option("descriptor", desc_text, "descriptor")->required();
  krein->add_flag("--approx", approx, "add decimal renderings");

  CLI::App* orderings =
      app.add_subcommand("orderings", "cometric and metric orderings");
  orderings->add_option("descriptor", desc_text, "descriptor")->required();

  CLI::App* design =
      app.add_subcommand("design", "certificates and support constraints");
  design->add_option("descriptor", desc_text, "descriptor")->required();
  design->add_option("--subset", design_req.subset,
                     "vertex indices of an explicit subset")
      ->delimiter(',');
  design->add_option("--distribution", design_req.distribution,
                     "inner distribution as scalar strings")
      ->delimiter(',');
  design->add_option("--support", design_req.support,
                     "eigenspace support indices to constrain")
      ->delimiter(',');
  design->add_option("--size", design_req.size_text,
                     "subset size as a rational string");
  design->add_flag("--approx", design_req.approx, "add decimal renderings");

  CLI::App* scan = app.add_subcommand("pg-scan", "vanishing-parameter sweep");
  scan->add_option("s_max", s_max, "largest line parameter s")->required();
  scan->add_option("t_max", t_max, "largest point parameter t")->required();

  CLI::App* reproduce =
      app.add_subcommand("reproduce", "named reproduction checks");
  reproduce->add_option("check", check_name, "check name")->required();

  CLI::App* catalog = app.add_subcommand("catalog", "catalog inspection");
  CLI::App* catalog_list =
      catalog->add_subcommand("list", "list the scheme families");
  catalog->require_subcommand(1);

  std::vector<std::string> storage(args);
  std::vector<const char*> argv;
  argv.push_back("schemeforge");
  for (const std::string& arg : storage) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& err) {
    return detail::emit_error(out, "ParseError", 2, err.what());
  }

  try {
    json report;
    if (*info) {
      report = info_report(detail::parse_descriptor_text(desc_text), approx);
    } else if (*krein) {
      report = krein_report(detail::parse_descriptor_text(desc_text), approx);
    } else if (*orderings) {
      report = orderings_report(detail::parse_descriptor_text(desc_text));
    } else if (*design) {
      report =
          design_report(detail::parse_descriptor_text(desc_text), design_req);
    } else if (*scan) {
      report = pg_scan_report(s_max, t_max);
    } else if (*reproduce) {
      report = reproduce_report(check_name);
    } else if (*catalog_list) {
      report = catalog_list_report();
    } else {
      return detail::emit_error(out, "ParseError", 2, "unknown subcommand");
    }
    out << report.dump(2) << "\n";
    if (*reproduce && !report["pass"].get<bool>())
      return static_cast<int>(ErrorCategory::CheckFailed);
    return 0;
  } catch (const Error& err) {
    return detail::emit_error(out, detail::error_type_of(err.what()),
                              err.exit_code(), err.what());
  } catch (const std::exception& err) {
    return detail::emit_error(out, "Internal", 1, err.what());
  }
}

}  // namespace schemeforge

#endif
