#include "sok/cli.hpp"

#include "sok/error.hpp"
#include "sok/probe/probe.hpp"
#include "sok/rinfty/rinfty.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace sok::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string spec_path;
  std::string group;
  std::string model;
  std::string catalog_path;
  int n = 1;
  std::string chi;
  std::size_t radius = 6;
  std::string grid = "0,1,2,3";
  std::string probe = "sigma";
  std::string out_path;
  int schema_version = kSchemaVersion;
  bool timestamp = false;
};

// Domain error raised while handling a particular input file.
struct FileError {
  Error error;
  std::string file;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError{Error(ErrorCode::ParseError, "cannot open file"), path};
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FileError{Error(ErrorCode::ParseError, e.what()), path};
  }
}

template <class F>
auto with_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw FileError{e, path};
  } catch (const json::exception& e) {
    throw FileError{Error(ErrorCode::ParseError, e.what()), path};
  }
}

Catalog load_catalog(const Options& o) {
  Catalog c = Catalog::builtin();
  if (!o.catalog_path.empty()) {
    json j = read_json_file(o.catalog_path);
    with_file(o.catalog_path, [&] {
      c.load_json(j);
      return 0;
    });
  }
  return c;
}

// A spec file holds either an extension spec or a bare presentation.
struct Input {
  std::optional<ExtensionSpec> spec;
  Presentation presentation;
  std::string label;
};

Input load_input(const Options& o, const Catalog& catalog) {
  Input in;
  if (!o.spec_path.empty()) {
    json j = read_json_file(o.spec_path);
    with_file(o.spec_path, [&] {
      if (j.is_object() && j.contains("H")) {
        in.spec = extension_spec_from_json(j);
        in.presentation = build_extension_presentation(*in.spec);
        in.label = in.spec->name.empty() ? "G" : in.spec->name;
      } else {
        in.presentation = presentation_from_json(j);
        in.label = o.spec_path;
      }
      return 0;
    });
    return in;
  }
  auto p = catalog.presentation(o.group);
  if (!p) throw Error(ErrorCode::UnknownGroup, "no presentation for '" + o.group + "'");
  in.presentation = *p;
  in.label = canonical_group_id(o.group);
  return in;
}

ExtensionSpec require_spec(const Input& in, const std::string& command) {
  if (!in.spec) throw Error(ErrorCode::InvalidSpec, command + " needs an extension spec");
  return *in.spec;
}

json cmd_abelianize(const Options& o) {
  Input in = load_input(o, load_catalog(o));
  json j = to_json(abelianization(in.presentation));
  j["group"] = in.label;
  j["generators"] = in.presentation.generators();
  return j;
}

json cmd_hom(const Options& o) {
  Input in = load_input(o, load_catalog(o));
  HomSpace hs(in.presentation);
  std::vector<std::string> coords;
  for (auto g : hs.free_generators()) coords.push_back(in.presentation.generators()[g]);
  json j{{"group", in.label},
         {"dim", hs.dim()},
         {"coordinates", coords},
         {"generators", in.presentation.generators()},
         {"basis", rational_matrix_to_json(hs.basis())}};
  if (in.spec) {
    Extension ext = with_file(o.spec_path, [&] { return Extension(*in.spec); });
    j["fix"] = to_json(ext.fix());
    if (in.spec->flavor == Flavor::Split) j["split_dim"] = hom_space_split(ext).dim;
  }
  return j;
}

json cmd_fix(const Options& o) {
  Input in = load_input(o, load_catalog(o));
  ExtensionSpec spec = require_spec(in, "fix");
  Extension ext = with_file(o.spec_path, [&] { return Extension(spec); });
  json actions = json::object();
  for (std::size_t b = 0; b < spec.K.generator_count(); ++b)
    actions[spec.K.generators()[b]] = rational_matrix_to_json(ext.action_matrices()[b]);
  std::vector<std::string> coords;
  for (auto g : ext.hom_h().free_generators()) coords.push_back(spec.H.generators()[g]);
  return {{"group", in.label},
          {"hom_h_coordinates", coords},
          {"actions", actions},
          {"fix", to_json(ext.fix())}};
}

InvariantRecord sigma_record(const Options& o, const Catalog& catalog) {
  if (!o.spec_path.empty()) {
    Input in = load_input(o, catalog);
    ExtensionSpec spec = require_spec(in, "sigma");
    return with_file(o.spec_path, [&] { return sigma_finite_extension(spec, h_record(spec, o.n, catalog)); });
  }
  return catalog.lookup(o.group, o.n);
}

json cmd_sigma(const Options& o) {
  Catalog catalog = load_catalog(o);
  return to_json(sigma_record(o, catalog));
}

json cmd_omega(const Options& o) {
  Catalog catalog = load_catalog(o);
  InvariantRecord rec = sigma_record(o, catalog);
  if (!rec.omega) rec = omega_from_sigma_record(rec);
  return to_json(rec);
}

json cmd_bounds(const Options& o) {
  Catalog catalog = load_catalog(o);
  Input in = load_input(o, catalog);
  ExtensionSpec spec = require_spec(in, "bounds");
  return with_file(o.spec_path, [&] {
    auto recH = h_record(spec, o.n, catalog);
    json r = to_json(omega_bounds_finite_extension(spec, recH));
    if (auto exact = omega_exact_if_sufficient(spec, recH)) r["exact"] = to_json(*exact);
    return r;
  });
}

json cmd_rinfty(const Options& o) {
  Catalog catalog = load_catalog(o);
  std::optional<RinftyCertificate> cert;
  std::string label;
  if (!o.spec_path.empty()) {
    Input in = load_input(o, catalog);
    ExtensionSpec spec = require_spec(in, "rinfty");
    label = in.label;
    cert = with_file(o.spec_path, [&]() -> std::optional<RinftyCertificate> {
      auto recH = h_record(spec, o.n, catalog);
      if (auto c = rinfty_finite_ext(spec, recH, o.n)) return c;
      if (spec.flavor == Flavor::Split && spec.k_catalog)
        return rinfty_split_ext(spec, recH, k_record(spec, o.n, catalog), o.n);
      return std::nullopt;
    });
  } else {
    label = canonical_group_id(o.group);
    cert = rinfty_single_point(catalog.lookup(o.group, o.n));
  }
  json j;
  if (cert) {
    j = to_json(*cert);
  } else {
    j = {{"verdict", std::string(to_string(Verdict::Inconclusive))},
         {"reason", "no rule applies at degree " + std::to_string(o.n)}};
  }
  j["group"] = label;
  return j;
}

std::vector<Rational> parse_grid(const std::string& text) {
  RatVector v = parse_vector(text);
  return {v.begin(), v.end()};
}

json cmd_probe(const Options& o) {
  ModelPtr model;
  if (!o.spec_path.empty()) {
    Catalog catalog = load_catalog(o);
    Input in = load_input(o, catalog);
    ExtensionSpec spec = require_spec(in, "probe");
    model = with_file(o.spec_path, [&] {
      if (!spec.h_catalog) throw Error(ErrorCode::MissingInvariant, "spec has no H_catalog id for the H model");
      return extension_model(Extension(spec), model_for_catalog_id(*spec.h_catalog));
    });
  } else {
    model = model_for_catalog_id(o.model);
  }
  RatVector chi = parse_vector(o.chi);
  auto grid = parse_grid(o.grid);
  Ball ball = build_ball(*model, o.radius);
  json j = json::object();
  if (o.probe == "sigma" || o.probe == "both")
    j["sigma"] = to_json(sigma_probe(*model, ball, chi, o.radius, grid));
  if (o.probe == "omega" || o.probe == "both")
    j["omega"] = to_json(omega_probe(*model, ball, chi, o.radius, grid));
  return o.probe == "both" ? j : json(j.begin().value());
}

json cmd_catalog(const Options& o) {
  Catalog catalog = load_catalog(o);
  if (o.group.empty()) return {{"catalog", catalog.to_json()}, {"ids", catalog.ids()}};
  json j = to_json(catalog.lookup(o.group, o.n));
  if (auto p = catalog.presentation(o.group)) j["presentation"] = to_json(*p);
  return j;
}

void write_output(const Options& o, const std::string& command, json payload, std::ostream& out) {
  payload["schema_version"] = o.schema_version;
  payload["command"] = command;
  if (o.timestamp) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    payload["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
  }
  std::string text = payload.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw FileError{Error(ErrorCode::ParseError, "cannot write output file"), o.out_path};
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sigma and Omega invariants of group extensions", "sok"};
  app.require_subcommand(1, 1);
  app.add_option("--schema-version", o.schema_version, "Output schema version")->check(CLI::IsMember({kSchemaVersion}));
  app.add_flag("--timestamp", o.timestamp, "Add a timestamp to the output");
  app.add_option("--out", o.out_path, "Write the JSON output to this file");
  app.add_option("--catalog", o.catalog_path, "Extra catalog entries (JSON list)");

  struct Sub {
    CLI::App* app;
    std::string name;
    std::function<json(const Options&)> fn;
  };
  std::vector<Sub> subs;
  std::vector<CLI::App*> needs_input;
  auto input_group = [&](CLI::App* s, bool group_ok, bool required) {
    auto* spec = s->add_option("--spec", o.spec_path, "Extension spec or presentation (JSON)")->check(CLI::ExistingFile);
    if (group_ok) {
      auto* group = s->add_option("--group", o.group, "Catalog group id, e.g. Z2 or BS(1,2)xF2");
      spec->excludes(group);
      group->excludes(spec);
      if (required) needs_input.push_back(s);
    } else if (required) {
      spec->required();
    }
  };
  auto degree = [&](CLI::App* s) { s->add_option("--n", o.n, "Degree")->check(CLI::Range(1, 64)); };

  auto add = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    subs.push_back({s, name, fn});
    return s;
  };

  auto* ab = add("abelianize", "Abelianization of a presented group", cmd_abelianize);
  input_group(ab, true, true);
  auto* hom = add("hom", "Coordinates of Hom(G,R)", cmd_hom);
  input_group(hom, true, true);
  auto* fix = add("fix", "Transversal action on Hom(H,R) and its fixed subspace", cmd_fix);
  input_group(fix, false, true);
  auto* sig = add("sigma", "Sigma invariant of a finite extension or catalog group", cmd_sigma);
  input_group(sig, true, true);
  degree(sig);
  auto* om = add("omega", "Omega invariant", cmd_omega);
  input_group(om, true, true);
  degree(om);
  auto* bd = add("bounds", "Lower and upper bounds for Omega of a finite extension", cmd_bounds);
  input_group(bd, false, true);
  degree(bd);
  auto* ri = add("rinfty", "R-infinity certificate", cmd_rinfty);
  input_group(ri, true, true);
  degree(ri);
  auto* pr = add("probe", "Cayley-ball evidence for Sigma or Omega membership", cmd_probe);
  auto* spec_opt = pr->add_option("--spec", o.spec_path, "Extension spec with an H_catalog id")->check(CLI::ExistingFile);
  auto* model_opt = pr->add_option("--model", o.model, "Catalog group id with a normal form model");
  spec_opt->excludes(model_opt);
  model_opt->excludes(spec_opt);
  pr->add_option("--chi", o.chi, "Character coordinates, comma separated")->required();
  pr->add_option("--radius", o.radius, "Ball radius")->check(CLI::Range(0, 64));
  pr->add_option("--grid", o.grid, "Levels s, comma separated");
  pr->add_option("--probe", o.probe, "sigma, omega or both")->check(CLI::IsMember({"sigma", "omega", "both"}));
  auto* cat = add("catalog", "List catalog ids or show one entry", cmd_catalog);
  cat->add_option("--group", o.group, "Catalog group id");
  degree(cat);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* s : needs_input)
    if (s->parsed() && o.spec_path.empty() && o.group.empty()) {
      err << s->get_name() << ": one of --spec or --group is required\n";
      return 2;
    }
  if (pr->parsed() && o.spec_path.empty() && o.model.empty()) {
    err << "probe: one of --spec or --model is required\n";
    return 2;
  }

  const Sub* chosen = nullptr;
  for (const auto& s : subs)
    if (s.app->parsed()) chosen = &s;

  std::string file;
  try {
    try {
      write_output(o, chosen->name, chosen->fn(o), out);
      return 0;
    } catch (const FileError& fe) {
      file = fe.file;
      throw fe.error;
    }
  } catch (const Error& e) {
    json j{{"schema_version", o.schema_version},
           {"command", chosen->name},
           {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    if (!file.empty()) j["error"]["file"] = file;
    out << j.dump(2) << "\n";
    err << "sok " << chosen->name << ": " << (file.empty() ? "" : file + ": ") << e.what() << "\n";
    return 1;
  }
}

}  // namespace sok::cli
