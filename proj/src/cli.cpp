#include "tdoa/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "tdoa/bifurcation.hpp"
#include "tdoa/config_io.hpp"
#include "tdoa/errors.hpp"
#include "tdoa/localizer.hpp"
#include "tdoa/oracles.hpp"
#include "tdoa/tdoa_model.hpp"

namespace tdoa::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string receivers;
  std::string tau;
  std::string point;
  std::string format = "json";
  std::string out;
  int n = 720;
  bool normalized = false;
  bool deep = false;
  std::uint64_t seed = 1;
};

json pair_json(double a, double b) { return json::array({a, b}); }

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

TdoaPair parse_tau(const std::string& s) {
  const auto [a, b] = parse_rational_pair(s);
  return {a.to_double(), b.to_double()};
}

// ---- subcommands ------------------------------------------------------------

void cmd_classify_tau(const ConfigFile& cf, const Options& o, std::ostream& out) {
  const TauClassification c = classify_tau(cf.config, parse_tau(o.tau), cf.tolerances);
  json j{{"region", to_string(c.region)},
         {"expected_count", c.expected_count},
         {"a_value", c.a_value},
         {"facet_slacks", c.facet_slacks}};
  out << j.dump(2) << '\n';
}

void cmd_localize(const ConfigFile& cf, const Options& o, std::ostream& out) {
  const LocalizationResult r = localize(cf.config, parse_tau(o.tau), cf.tolerances);
  json sources = json::array();
  for (const Vec2& s : r.sources) sources.push_back(pair_json(s.x, s.y));
  json j{{"sources", sources}, {"d0", r.d0_roots}, {"degenerate", r.degenerate_linear}};
  out << j.dump(2) << '\n';
}

void cmd_bifurcation_poly(const ConfigFile& cf, const Options& o, std::ostream& out) {
  const QuinticCurve curve = build_quintic(cf.config);
  out << poly_to_json(o.normalized ? curve.normalized() : curve.F).dump(2) << '\n';
}

void cmd_classify_point(const ConfigFile& cf, const Options& o, std::ostream& out) {
  const auto [px, py] = parse_rational_pair(o.point);
  const Vec2 x{px.to_double(), py.to_double()};
  const QuinticCurve curve = build_quintic(cf.config);
  json j{{"region", to_string(classify_point(curve, x, cf.tolerances))},
         {"F_value", curve.F.eval(px, py).str()}};
  try {
    j["sampson_distance"] = distance_to_curve(curve, x, false).sampson;
  } catch (const GradientVanishes&) {
    j["sampson_distance"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

void cmd_asymptotes(const ConfigFile& cf, const Options&, std::ostream& out) {
  json lines = json::array();
  for (const RationalLine& l : asymptotes(cf.config)) lines.push_back({l.a.str(), l.b.str(), l.c.str()});
  out << json{{"lines", lines}}.dump(2) << '\n';
}

void write_svg(const ReceiverConfig& cfg, const std::vector<CurveArc>& arcs, std::ostream& out) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  auto grow = [&](const Vec2& p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const CurveArc& a : arcs) {
    for (const Vec2& p : a.points) grow(p);
  }
  for (int i = 0; i < 3; ++i) grow(cfg.receiver_f(i));
  const double padx = 0.1 * std::max(xmax - xmin, 1e-9);
  const double pady = 0.1 * std::max(ymax - ymin, 1e-9);
  xmin -= padx;
  xmax += padx;
  ymin -= pady;
  ymax += pady;
  const double w = xmax - xmin;
  const double h = ymax - ymin;
  const double stroke = 0.003 * std::max(w, h);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_double(xmin) << ' '
      << fmt_double(-ymax) << ' ' << fmt_double(w) << ' ' << fmt_double(h) << "\">\n";
  out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << fmt_double(stroke) << "\">\n";
  const double reach = 2.0 * (w + h);
  for (const RationalLine& l : asymptotes(cfg)) {
    const AffineLine f = to_double(l);
    const double nn = f.a * f.a + f.b * f.b;
    const Vec2 foot{-f.c * f.a / nn, -f.c * f.b / nn};
    const Vec2 dir = (1.0 / std::sqrt(nn)) * Vec2{-f.b, f.a};
    const Vec2 p = foot - reach * dir;
    const Vec2 q = foot + reach * dir;
    out << "<line x1=\"" << fmt_double(p.x) << "\" y1=\"" << fmt_double(p.y) << "\" x2=\"" << fmt_double(q.x)
        << "\" y2=\"" << fmt_double(q.y) << "\" stroke=\"gray\" stroke-dasharray=\"" << fmt_double(4 * stroke)
        << "\"/>\n";
  }
  for (const CurveArc& a : arcs) {
    out << "<polyline stroke=\"blue\" points=\"";
    for (const Vec2& p : a.points) out << fmt_double(p.x) << ',' << fmt_double(p.y) << ' ';
    out << "\"/>\n";
  }
  for (int i = 0; i < 3; ++i) {
    const Vec2 m = cfg.receiver_f(i);
    out << "<circle cx=\"" << fmt_double(m.x) << "\" cy=\"" << fmt_double(m.y) << "\" r=\""
        << fmt_double(3 * stroke) << "\" fill=\"black\" stroke=\"none\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

void cmd_curve_sample(const ConfigFile& cf, const Options& o, std::ostream& out) {
  const QuinticCurve curve = build_quintic(cf.config);
  const std::vector<CurveArc> arcs = sample_curve(curve, o.n, cf.tolerances);
  if (o.format == "csv") {
    out << "arc_id,theta,x,y\n";
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      for (std::size_t k = 0; k < arcs[a].points.size(); ++k) {
        out << a << ',' << fmt_double(arcs[a].theta[k]) << ',' << fmt_double(arcs[a].points[k].x) << ','
            << fmt_double(arcs[a].points[k].y) << '\n';
      }
    }
  } else if (o.format == "svg") {
    write_svg(cf.config, arcs, out);
  } else {
    json ja = json::array();
    for (const CurveArc& a : arcs) {
      json pts = json::array();
      for (const Vec2& p : a.points) pts.push_back(pair_json(p.x, p.y));
      ja.push_back({{"theta", a.theta}, {"points", pts}});
    }
    out << json{{"arcs", ja}}.dump(2) << '\n';
  }
}

void cmd_tangency(const ConfigFile& cf, const Options&, std::ostream& out) {
  json pts = json::array();
  for (const TdoaPair& t : tangency_points(cf.config)) pts.push_back(pair_json(t.tau1, t.tau2));
  out << json{{"tangency_points", pts}}.dump(2) << '\n';
}

void cmd_vertices(const ConfigFile& cf, const Options&, std::ostream& out) {
  json pts = json::array();
  for (const TdoaPair& t : polytope_vertices(cf.config)) pts.push_back(pair_json(t.tau1, t.tau2));
  out << json{{"vertices", pts}}.dump(2) << '\n';
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> run_checks(const ConfigFile& cf, bool deep, std::uint64_t seed) {
  const ReceiverConfig& cfg = cf.config;
  std::vector<Check> checks;
  const QuinticCurve curve = build_quintic(cfg);

  {
    bool ok = curve.F.total_degree() == 5 && !curve.leading_form.is_zero();
    for (int d = 6; d <= 8; ++d) ok = ok && curve.F.homogeneous_component(d).is_zero();
    checks.push_back({"degree-5 certificate", ok, "terms=" + std::to_string(curve.F.size())});
  }
  checks.push_back({"leading form identity", verify_leading_form(curve), ""});
  {
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && curve.F.eval(cfg.receiver(i).x, cfg.receiver(i).y) == curve.W8;
    checks.push_back({"F(m_i) = W^8", ok, "W^8=" + curve.W8.str()});
  }
  {
    const auto lines = asymptotes(cfg);
    const BivariatePoly sum = line_poly(lines[0]) + line_poly(lines[1]) + line_poly(lines[2]);
    bool ok = sum == BivariatePoly(-cfg.W()) && !common_point(lines).has_value();
    for (int i = 0; i < 3; ++i) ok = ok && asymptote_contact(curve, i).double_root_at_infinity;
    checks.push_back({"asymptotes", ok, "sum=" + sum.str()});
  }
  {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-200, 200);
    std::uniform_int_distribution<long> den(1, 9);
    const int trials = deep ? 10000 : 500;
    int bad = 0;
    for (int k = 0; k < trials; ++k) {
      const QVec2 x{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
      if (!lemma_identity_residual(cfg, x).is_zero()) ++bad;
    }
    checks.push_back({"wedge identity", bad == 0, std::to_string(trials) + " points, " + std::to_string(bad) + " nonzero"});
  }
  {
    const RoundTripReport r = round_trip_sweep(cfg, deep ? 10000 : 1000, seed, cf.tolerances);
    checks.push_back({"round-trip localization", r.missed == 0 && r.cardinality_mismatches == 0,
                      std::to_string(r.trials) + " sources, missed=" + std::to_string(r.missed) +
                          ", cardinality mismatches=" + std::to_string(r.cardinality_mismatches)});
  }
  {
    const OracleAgreementReport r = oracle_agreement(cfg, deep ? 1000 : 100, 128, seed);
    checks.push_back({"newton oracle agreement", r.cardinality_mismatches == 0 && r.position_mismatches == 0,
                      std::to_string(r.trials) + " measurements, cardinality mismatches=" +
                          std::to_string(r.cardinality_mismatches) +
                          ", position mismatches=" + std::to_string(r.position_mismatches)});
  }
  {
    const Vec2 c = cfg.centroid();
    const double half = 3.0 * std::max({cfg.dist(1, 0), cfg.dist(2, 0), cfg.dist(2, 1)});
    const SignMapReport r = sign_map_compare(curve, {c.x - half, c.x + half, c.y - half, c.y + half}, deep ? 200 : 100);
    checks.push_back({"sign map", r.mismatches == 0,
                      std::to_string(r.samples) + " samples, mismatches=" + std::to_string(r.mismatches) +
                          ", excluded=" + std::to_string(r.excluded)});
  }
  {
    const double dev = numeric_vs_exact_F(curve, 1000, seed);
    checks.push_back({"numeric vs exact F", dev < 1e-7, "max relative deviation=" + fmt_double(dev)});
  }
  {
    const auto arcs = sample_curve(curve, 720, cf.tolerances);
    bool on = true;
    for (const CurveArc& a : arcs) {
      for (const Vec2& p : a.points) on = on && classify_point(curve, p, cf.tolerances) == PointRegion::OnCurve;
    }
    checks.push_back({"curve sampling", arcs.size() == 3 && on, std::to_string(arcs.size()) + " arcs"});
  }
  return checks;
}

int cmd_validate(const ConfigFile& cf, const Options& o, std::ostream& out) {
  const auto checks = run_checks(cf, o.deep, o.seed);
  int failed = 0;
  for (const Check& c : checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
    if (!c.pass) ++failed;
  }
  out << checks.size() - static_cast<std::size_t>(failed) << '/' << checks.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of three-receiver TDOA localization and its bifurcation quintic", "tdoa"};
  app.require_subcommand(1);
  Options o;

  auto add_receivers = [&](CLI::App* sub) {
    sub->add_option("--receivers", o.receivers, "receiver config JSON")->required();
    sub->add_option("--out", o.out, "write the result to this file instead of stdout");
  };

  struct Entry {
    CLI::App* app;
    std::function<int(const ConfigFile&)> fn;
  };
  std::vector<Entry> entries;
  auto simple = [&](const char* name, const char* help,
                    std::function<void(const ConfigFile&, const Options&, std::ostream&)> body,
                    std::ostream*& sink) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_receivers(sub);
    entries.push_back({sub, [body, &o, &sink](const ConfigFile& cf) {
                         body(cf, o, *sink);
                         return kExitOk;
                       }});
    return sub;
  };

  std::ostream* sink = &out;
  simple("classify-tau", "classify a TDOA pair", cmd_classify_tau, sink)
      ->add_option("--tau", o.tau, "t1,t2")->required();
  simple("localize", "all sources of a TDOA pair", cmd_localize, sink)
      ->add_option("--tau", o.tau, "t1,t2")->required();
  simple("bifurcation-poly", "exact bifurcation quintic", cmd_bifurcation_poly, sink)
      ->add_flag("--normalized", o.normalized, "divide by W^8");
  simple("classify-point", "side of the bifurcation curve", cmd_classify_point, sink)
      ->add_option("--point", o.point, "x,y")->required();
  simple("asymptotes", "the three real asymptotic lines", cmd_asymptotes, sink);
  CLI::App* cs = simple("curve-sample", "sample the bifurcation curve", cmd_curve_sample, sink);
  cs->add_option("--n", o.n, "number of ellipse samples")->check(CLI::Range(3, 10000000));
  cs->add_option("--format", o.format, "json|csv|svg")->check(CLI::IsMember({"json", "csv", "svg"}));
  simple("tangency", "points where E touches the hexagon", cmd_tangency, sink);
  simple("vertices", "vertices of the hexagon P2", cmd_vertices, sink);

  CLI::App* val = app.add_subcommand("validate", "run the brute-force oracles");
  add_receivers(val);
  val->add_flag("--deep", o.deep, "full-size sweeps");
  val->add_option("--seed", o.seed, "random seed");
  entries.push_back({val, [&o, &sink](const ConfigFile& cf) { return cmd_validate(cf, o, *sink); }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalidInput;
  }

  for (const Entry& e : entries) {
    if (!e.app->parsed()) continue;
    try {
      const ConfigFile cf = load_config(o.receivers);
      std::ofstream file;
      if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
          err << "error: cannot write " << o.out << '\n';
          return kExitInvalidInput;
        }
        sink = &file;
      }
      const int rc = e.fn(cf);
      sink = &out;
      return rc;
    } catch (const Error& ex) {
      err << "error: " << ex.what() << '\n';
      return kExitInvalidInput;
    } catch (const std::invalid_argument& ex) {
      err << "error: " << ex.what() << '\n';
      return kExitInvalidInput;
    }
  }
  err << app.help();
  return kExitInvalidInput;
}

}  // namespace tdoa::cli
