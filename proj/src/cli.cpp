#include "c1homeo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "c1homeo/curves.hpp"
#include "c1homeo/errors.hpp"
#include "c1homeo/induced.hpp"
#include "c1homeo/interpolation.hpp"
#include "c1homeo/maps.hpp"
#include "c1homeo/sequences.hpp"
#include "c1homeo/verifier.hpp"

namespace c1homeo {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GeomError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GeomError("cannot write: " + path);
  f << text;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::logic_error&) {
      throw GeomError("bad h_grid entry: " + tok);
    }
  }
  if (out.empty()) throw GeomError("empty h_grid");
  return out;
}

void apply_resolution_kv(ResolutionParams& r, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw GeomError("--resolution expects key=value, got: " + kv);
  std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
  try {
    if (key == "tail_length")
      r.tail_length = std::stoi(val);
    else if (key == "dir_tolerance")
      r.dir_tolerance = std::stod(val);
    else if (key == "slope_tolerance")
      r.slope_tolerance = std::stod(val);
    else if (key == "c1_span")
      r.c1_span = std::stod(val);
    else if (key == "c1_ratio")
      r.c1_ratio = std::stod(val);
    else if (key == "dir_tail_levels")
      r.dir_tail_levels = std::stoi(val);
    else if (key == "h_grid")
      r.h_grid = parse_grid(val);
    else
      throw GeomError("unknown resolution key: " + key);
  } catch (const std::logic_error&) {
    throw GeomError("bad resolution value in: " + kv);
  }
}

void apply_resolution_json(ResolutionParams& r, const nlohmann::json& j) {
  if (j.contains("tail_length")) r.tail_length = j["tail_length"].get<int>();
  if (j.contains("dir_tolerance")) r.dir_tolerance = j["dir_tolerance"].get<double>();
  if (j.contains("slope_tolerance"))
    r.slope_tolerance = j["slope_tolerance"].get<double>();
  if (j.contains("c1_span")) r.c1_span = j["c1_span"].get<double>();
  if (j.contains("c1_ratio")) r.c1_ratio = j["c1_ratio"].get<double>();
  if (j.contains("dir_tail_levels"))
    r.dir_tail_levels = j["dir_tail_levels"].get<int>();
  if (j.contains("h_grid")) {
    r.h_grid.clear();
    for (const auto& v : j["h_grid"]) r.h_grid.push_back(v.get<double>());
  }
}

Point2 parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw GeomError("--point expects x,y, got: " + s);
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw GeomError("bad point: " + s);
  }
}

int status_code(Status s) {
  switch (s) {
    case Status::PASS:
      return 0;
    case Status::FAIL:
      return 2;
    default:
      return 3;
  }
}

Battery load_battery(const std::string& arg) {
  if (arg.empty() || arg == "default") return default_battery();
  return battery_from_json(read_file(arg));
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (c == ':' || c == '/' || c == '*') c = '_';
  return out;
}

std::string gallery_svg(const PlaneMap& f, const Battery& bat, int samples) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::vector<std::vector<Point2>> polys;
  for (const auto& bc : bat.curves) {
    std::vector<Point2> poly;
    for (int i = 0; i < samples; ++i) {
      double t = bc.curve.t_min + bc.curve.length() * i / (samples - 1.0);
      poly.push_back(f.fwd(bc.curve.at(t)));
    }
    polys.push_back(std::move(poly));
  }
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (const auto& poly : polys)
    for (const Point2& q : poly) {
      minx = std::min(minx, q.x);
      maxx = std::max(maxx, q.x);
      miny = std::min(miny, q.y);
      maxy = std::max(maxy, q.y);
    }
  double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
  double margin = 0.05 * std::max(w, h);
  minx -= margin;
  maxx += margin;
  miny -= margin;
  maxy += margin;
  w = maxx - minx;
  h = maxy - miny;
  const double W = 800.0, H = 800.0;
  auto X = [&](double x) { return (x - minx) / w * W; };
  auto Y = [&](double y) { return (maxy - y) / h * H; };
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                "width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                W, H, W, H);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<title>images of the test curves under %s</title>\n",
                f.name.c_str());
  out += buf;
  for (size_t c = 0; c < polys.size(); ++c) {
    std::snprintf(buf, sizeof buf,
                  "<path fill=\"none\" stroke=\"%s\" stroke-width=\"1.2\" d=\"",
                  palette[c % 8]);
    out += buf;
    for (size_t i = 0; i < polys[c].size(); ++i) {
      std::snprintf(buf, sizeof buf, "%c%.3f %.3f ", i == 0 ? 'M' : 'L',
                    X(polys[c][i].x), Y(polys[c][i].y));
      out += buf;
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"probes plane homeomorphisms for compatibility with the class "
               "of maps sending C1 curves to C1 curves"};
  app.require_subcommand(1);

  std::string map_name, battery_arg, out_path, config_path, point_arg, seq_path,
      svg_path, gallery_dir, maps_arg;
  int samples = 0, want = 0;
  std::vector<std::string> res_kv;

  auto* verify = app.add_subcommand(
      "verify", "classify a named map against the curve/point/sequence battery");
  verify->add_option("--map", map_name, "map name (try: identity, rot:30, G, H, "
                     "Hinv, Q, W, P:8, corner_shear)");
  verify->add_option("--battery", battery_arg,
                     "battery JSON path, or 'default'");
  verify->add_option("--out", out_path, "also write the JSON report here");
  verify->add_option("--resolution", res_kv, "override key=value, repeatable");
  verify->add_option("--config", config_path, "JSON config (lower precedence)");

  auto* induced = app.add_subcommand(
      "induced", "tabulate the induced map on directions at a point");
  induced->add_option("--map", map_name, "map name");
  induced->add_option("--point", point_arg, "base point as x,y");
  induced->add_option("--samples", samples, "number of input directions");
  induced->add_option("--out", out_path, "also write the CSV here");
  induced->add_option("--resolution", res_kv, "override key=value, repeatable");
  induced->add_option("--config", config_path, "JSON config (lower precedence)");

  auto* construct = app.add_subcommand(
      "construct", "interpolate a convergent direction sequence by a closed C1 curve");
  construct->add_option("--seq", seq_path, "sequence CSV (x,y,theta with a limit row)");
  construct->add_option("--want", want, "points the greedy filter must keep");
  construct->add_option("--samples", samples, "samples in the curve CSV");
  construct->add_option("--out", out_path, "also write the curve CSV here");
  construct->add_option("--svg", svg_path, "write a rendering here");
  construct->add_option("--resolution", res_kv, "override key=value, repeatable");
  construct->add_option("--config", config_path, "JSON config (lower precedence)");

  auto* gallery = app.add_subcommand(
      "gallery", "render the battery curves' images under the catalog maps");
  gallery->add_option("--out", gallery_dir, "output directory")->required();
  gallery->add_option("--maps", maps_arg, "comma-separated map names");
  gallery->add_option("--samples", samples, "samples per curve");

  try {
    std::vector<const char*> argv;
    argv.push_back("c1homeo");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    nlohmann::json config;
    if (!config_path.empty()) config = nlohmann::json::parse(read_file(config_path));

    ResolutionParams r;
    if (config.contains("resolution")) apply_resolution_json(r, config["resolution"]);
    for (const auto& kv : res_kv) apply_resolution_kv(r, kv);
    r.validate();

    auto config_fill = [&](std::string& slot, const char* key) {
      if (slot.empty() && config.contains(key))
        slot = config[key].get<std::string>();
    };

    if (verify->parsed()) {
      config_fill(map_name, "map");
      config_fill(battery_arg, "battery");
      if (map_name.empty()) throw GeomError("verify: --map is required");
      PlaneMap f = map_by_name(map_name);
      Battery bat = load_battery(battery_arg);
      ClassificationReport rep = classify(f, bat, r);
      std::string text = report_to_json(rep);
      out << text;
      if (!out_path.empty()) write_file(out_path, text);
      return status_code(rep.overall);
    }

    if (induced->parsed()) {
      config_fill(map_name, "map");
      config_fill(point_arg, "point");
      if (samples == 0 && config.contains("samples"))
        samples = config["samples"].get<int>();
      if (samples == 0) samples = 36;
      if (map_name.empty()) throw GeomError("induced: --map is required");
      if (point_arg.empty()) throw GeomError("induced: --point is required");
      PlaneMap f = map_by_name(map_name);
      Point2 p = parse_point(point_arg);
      auto profile = induced_map_profile(f, p, samples, r);
      std::string csv = profile_to_csv(profile);
      out << csv;
      if (!out_path.empty()) write_file(out_path, csv);
      try {
        Verdict v = homeo_surrogate(profile, r);
        err << "induced map at " << point_arg << ": " << to_string(v.status)
            << (v.reason.empty() ? "" : " " + v.reason) << "\n";
        return status_code(v.status);
      } catch (const MissingTangentError& e) {
        err << "induced map at " << point_arg << ": INCONCLUSIVE " << e.what()
            << "\n";
        return 3;
      }
    }

    if (construct->parsed()) {
      config_fill(seq_path, "seq");
      if (want == 0 && config.contains("want")) want = config["want"].get<int>();
      if (want == 0) want = 8;
      if (samples == 0 && config.contains("samples"))
        samples = config["samples"].get<int>();
      if (samples == 0) samples = 2048;
      if (seq_path.empty()) throw GeomError("construct: --seq is required");
      DirectionSequence seq = sequence_from_csv(read_file(seq_path));
      ClosedCurveResult res = construct_closed_c1(seq, want, r);
      Verdict v = validate_construction(res, r);
      std::string csv = curve_samples_to_csv(sample_curve(res.curve, samples, r));
      out << csv;
      if (!out_path.empty()) write_file(out_path, csv);
      if (!svg_path.empty()) write_file(svg_path, construction_to_svg(res));
      err << "construction: " << to_string(v.status)
          << (v.reason.empty() ? "" : " " + v.reason) << "\n";
      return status_code(v.status);
    }

    if (gallery->parsed()) {
      if (samples == 0) samples = 512;
      if (maps_arg.empty()) maps_arg = "identity,G,H,Hinv,Q,W,P:8";
      std::error_code ec;
      std::filesystem::create_directories(gallery_dir, ec);
      if (ec) throw GeomError("cannot create directory: " + gallery_dir);
      Battery bat = default_battery();
      std::stringstream ss(maps_arg);
      std::string nm;
      while (std::getline(ss, nm, ',')) {
        PlaneMap f = map_by_name(nm);
        std::string path = gallery_dir + "/" + sanitize(nm) + ".svg";
        write_file(path, gallery_svg(f, bat, samples));
        out << path << "\n";
      }
      return 0;
    }
  } catch (const GeomError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace c1homeo
