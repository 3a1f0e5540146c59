// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Every subcommand is a thin wrapper over the headers.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dilation_search.hpp"
#include "io.hpp"
#include "weylsg.hpp"

using namespace weylsg;
using io::json;

namespace {

struct Globals {
  double tol = ToleranceConfig{}.triangle;
  int mmax = SearchConfig{}.m_max;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "json";
  std::string input, output;
};

struct Inline {
  std::size_t n = 0;
  std::string p, q, b;
};

SearchConfig search_config(const Globals& g) {
  SearchConfig c;
  c.m_max = g.mmax;
  c.tol.slack = g.tol;
  c.tol.triangle = g.tol;
  return c;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidInput("cannot parse number '" + item + "'");
    }
  }
  return out;
}

json read_input(const Globals& g) {
  try {
    if (g.input.empty() || g.input == "-") return json::parse(std::cin);
    if (!g.input.empty() && (g.input.front() == '{' || g.input.front() == '[')) return json::parse(g.input);
    std::ifstream f(g.input);
    if (!f) throw InvalidInput("cannot open " + g.input);
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad JSON input: ") + e.what());
  }
}

// --n/--p style inline input wins over --input
json gather(const Globals& g, const Inline& in) {
  json j = json::object();
  if (!in.p.empty()) j["p"] = parse_list(in.p);
  if (!in.q.empty()) j["q"] = parse_list(in.q);
  if (!in.b.empty()) j["b"] = parse_list(in.b);
  if (j.empty()) return read_input(g);
  if (in.n) j["n"] = in.n;
  return j;
}

void emit_json(const Globals& g, const json& j) {
  if (g.output.empty() || g.output == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(g.output);
  if (!f) throw InvalidInput("cannot write " + g.output);
  f << j.dump(2) << '\n';
}

template <class Writer>
void emit_csv(const Globals& g, const json& meta, Writer&& w) {
  if (g.output.empty() || g.output == "-") {
    w(std::cout);
    std::cerr << meta.dump() << '\n';
    return;
  }
  std::ofstream f(g.output);
  if (!f) throw InvalidInput("cannot write " + g.output);
  w(f);
  std::ofstream(g.output + ".meta.json") << meta.dump(2) << '\n';
}

json run_meta(const Globals& g, std::size_t samples, std::size_t n, json extra = json::object()) {
  extra["tol"] = g.tol;
  extra["mmax"] = g.mmax;
  extra["threads"] = g.threads;
  return io::sidecar(g.seed, samples, n, extra);
}

int verdict_exit(const AccessibilityVerdict& v) {
  switch (v.reason) {
    case Reason::NonReal:
    case Reason::SingularSpectrum:
      return 2;
    case Reason::BudgetExhausted:
      return 3;
    default:
      return 0;
  }
}

FacePoint face_point(const json& j) {
  if (j.contains("face")) {
    const auto w = j.at("face").get<std::vector<double>>();
    if (w.size() != 3) throw InvalidInput("face needs three weights");
    return {w[0], w[1], w[2]};
  }
  // a Z-face channel p = (p1, p2, p3) on indices 0, 1, 2
  if (j.contains("p")) {
    const auto p = j.at("p").get<std::vector<double>>();
    if (p.size() == 3) return {p[0], p[1], p[2]};
    if (p.size() == 9) {
      for (std::size_t i = 3; i < 9; ++i)
        if (std::abs(p[i]) > 1e-12) throw InvalidInput("channel is not on the Z face");
      return {p[0], p[1], p[2]};
    }
  }
  throw InvalidInput("expected face weights or a Z-face channel");
}

std::array<WeylChannel, 3> named_face(const std::string& name, std::size_t n) {
  const Dimension d(n);
  std::array<std::vector<double>, 3> v;
  for (std::size_t k = 0; k < 3; ++k) {
    v[k].assign(d.sq(), 0.0);
    const std::size_t s = k % n;
    if (name == "x") v[k][weyl_index(s, 0, n)] = 1;
    else if (name == "z") v[k][weyl_index(0, s, n)] = 1;
    else if (name == "xz") v[k][weyl_index(s, s, n)] = 1;
    else throw InvalidInput("unknown face " + name);
  }
  if (n < 3) throw InvalidInput("named faces need n >= 3");
  return {WeylChannel(d, v[0]), WeylChannel(d, v[1]), WeylChannel(d, v[2])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accessibility and unistochasticity of Weyl channels"};
  app.set_version_flag("--version", std::string(io::version()));
  app.require_subcommand(1);
  // global flags may also follow the subcommand
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "numerical slack for region and sign tests");
  app.add_option("--mmax", g.mmax, "largest log branch searched");
  app.add_option("--seed", g.seed, "seed for sampling commands");
  app.add_option("--threads", g.threads, "worker threads for Monte Carlo");
  app.add_option("--format", g.format, "emitter format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-i,--input", g.input, "JSON file, inline JSON, or - for stdin");
  app.add_option("-o,--output", g.output, "output path, stdout when absent");

  Inline in;
  auto inline_opts = [&](CLI::App* s) {
    s->add_option("--n", in.n, "dimension");
    s->add_option("--p", in.p, "comma separated Weyl weights");
  };

  auto* acc = app.add_subcommand("accessible", "Lindblad accessibility of a Weyl channel");
  inline_opts(acc);
  auto* emb = app.add_subcommand("embed", "Kolmogorov embeddability of a circulant matrix");
  emb->add_option("--q", in.q, "first column weights");
  emb->add_option("--n", in.n, "dimension");
  auto* dec = app.add_subcommand("decohere", "classical shadow of a channel");
  inline_opts(dec);
  auto* spec = app.add_subcommand("spectrum", "eigenvalues of a channel or circulant");
  inline_opts(spec);
  spec->add_option("--q", in.q, "circulant weights instead of a channel");

  std::size_t vol_n = 3, vol_samples = 1'000'000;
  double vol_p0 = -1;
  auto* vol = app.add_subcommand("volume", "Monte Carlo accessible fraction");
  vol->add_option("--n", vol_n)->required();
  vol->add_option("--samples", vol_samples);
  vol->add_option("--p0", vol_p0, "fix the identity weight");

  std::string face = "x";
  std::size_t res = 100, scan_n = 3, scatter = 0;
  std::string ensemble = "simplex";
  auto* scan = app.add_subcommand("scan", "face cross section masks, or spectra scatter with --scatter");
  scan->add_option("--face", face, "x, z or xz")->check(CLI::IsMember({"x", "z", "xz"}));
  scan->add_option("--resolution", res);
  scan->add_option("--n", scan_n);
  scan->add_option("--scatter", scatter, "number of channels for a spectra scatter");
  scan->add_option("--ensemble", ensemble)->check(CLI::IsMember({"simplex", "semigroup", "accessible", "face"}));

  std::size_t sp_n = 3, sp_points = 512;
  auto* spi = app.add_subcommand("spiral", "boundary of the accessible spectral region");
  spi->add_option("--n", sp_n);
  spi->add_option("--points", sp_points);

  auto* jar = app.add_subcommand("jarlskog", "Q of a 3x3 bistochastic matrix");
  jar->add_option("--b", in.b, "b1,b2,b3,b4");
  auto* star = app.add_subcommand("star", "hypocycloid and star tests for a face point");
  star->add_option("--p", in.p, "p1,p2,p3 face weights");

  bool search = false;
  std::size_t restarts = DilationSearchConfig{}.restarts;
  auto* dil = app.add_subcommand("dilation", "channel and transition of a dilation unitary, or a Z-face search");
  dil->add_flag("--search", search, "search for a dilation of a Z-face point");
  dil->add_option("--p", in.p, "face weights for --search");
  dil->add_option("--restarts", restarts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto cfg = search_config(g);
    if (*acc) {
      const auto ch = io::channel_from_json(gather(g, in));
      const auto v = decide_accessibility(ch, cfg);
      emit_json(g, io::verdict_to_json(v));
      return verdict_exit(v);
    }
    if (*emb) {
      const auto t = io::circulant_from_json(gather(g, in));
      const auto v = decide_embeddability(t, cfg);
      emit_json(g, io::verdict_to_json(v));
      return verdict_exit(v);
    }
    if (*dec) {
      const auto t = hyperdecohere_channel(io::channel_from_json(gather(g, in)));
      json j = io::circulant_to_json(t);
      j["matrix"] = io::matrix_to_json(t.matrix());
      emit_json(g, j);
      return 0;
    }
    if (*spec) {
      const auto j = gather(g, in);
      if (j.contains("q") || j.contains("matrix")) {
        const auto t = io::circulant_from_json(j);
        emit_json(g, json{{"n", t.dim.n()}, {"xi", io::complex_vector_to_json(circulant_spectrum(t))}});
      } else {
        const auto ch = io::channel_from_json(j);
        emit_json(g, json{{"n", ch.dim.n()}, {"lambda", io::complex_vector_to_json(spectrum_from_probabilities(ch).lambda)}});
      }
      return 0;
    }
    if (*vol) {
      const auto v = vol_p0 < 0 ? accessible_volume_fraction(vol_n, vol_samples, g.seed, g.threads, cfg)
                                 : fixed_p0_fraction(vol_n, vol_p0, vol_samples, g.seed, g.threads, cfg);
      json j = io::volume_to_json(v, vol_n);
      if (vol_p0 >= 0) j["p0"] = vol_p0;
      j["meta"] = run_meta(g, vol_samples, vol_n);
      emit_json(g, j);
      return 0;
    }
    if (*scan) {
      if (scatter) {
        EnsembleSpec e;
        e.n = scan_n;
        e.kind = ensemble == "semigroup" ? Ensemble::Semigroup
                 : ensemble == "accessible" ? Ensemble::Accessible
                 : ensemble == "face"       ? Ensemble::Face
                                            : Ensemble::Simplex;
        if (e.kind == Ensemble::Face) {
          const auto f = named_face(face, scan_n);
          for (std::size_t k = 0; k < 3; ++k) e.face[k] = f[k].p;
        }
        const auto pts = spectra_scatter(e, scatter, g.seed, cfg);
        const auto meta = run_meta(g, scatter, scan_n, json{{"ensemble", ensemble}});
        if (g.format == "json") {
          emit_json(g, json{{"points", io::complex_vector_to_json(pts)}, {"meta", meta}});
        } else {
          emit_csv(g, meta, [&](std::ostream& os) { io::write_scatter_csv(os, pts); });
        }
        return 0;
      }
      const auto grid = cross_section_scan(named_face(face, scan_n), res, ScanAccessible | ScanHypocycloid | ScanStar | ScanEmbeddable, cfg);
      const auto meta = run_meta(g, grid.cells.size(), scan_n, json{{"face", face}, {"resolution", res}});
      if (g.format == "json") {
        json cells = json::array();
        for (const auto& c : grid.cells)
          cells.push_back(json{{"x", c.x}, {"y", c.y}, {"w", c.w}, {"accessible", bool(c.flags & ScanAccessible)},
                               {"hypocycloid", bool(c.flags & ScanHypocycloid)}, {"star", bool(c.flags & ScanStar)},
                               {"embeddable", bool(c.flags & ScanEmbeddable)}});
        emit_json(g, json{{"cells", cells}, {"meta", meta}});
      } else {
        emit_csv(g, meta, [&](std::ostream& os) { io::write_scan_csv(os, grid); });
      }
      return 0;
    }
    if (*spi) {
      if (sp_points < 2) throw InvalidInput("need at least two points");
      std::vector<double> t(sp_points);
      for (std::size_t i = 0; i < sp_points; ++i) t[i] = std::numbers::pi * double(i) / double(sp_points - 1);
      const auto pts = spiral_boundary(sp_n, t);
      const auto meta = run_meta(g, sp_points, sp_n, json{{"area", spectral_support_area(sp_n)}, {"x_min", x_min(sp_n)}});
      if (g.format == "json") {
        json a = json::array();
        for (const auto& p : pts) a.push_back(json{{"t", p.t}, {"upper", io::complex_to_json(p.upper)}, {"lower", io::complex_to_json(p.lower)}});
        emit_json(g, json{{"points", a}, {"meta", meta}});
      } else {
        emit_csv(g, meta, [&](std::ostream& os) { io::write_spiral_csv(os, pts); });
      }
      return 0;
    }
    if (*jar) {
      const auto b = io::bistochastic_from_json(gather(g, in));
      const double q = jarlskog_Q(b);
      emit_json(g, json{{"Q", q}, {"unistochastic", q >= -g.tol}});
      return 0;
    }
    if (*star) {
      const auto fp = face_point(gather(g, in));
      // hypocycloid verdicts are proven, star verdicts conjectured
      emit_json(g, json{{"hypocycloid", hypocycloid_test(fp, g.tol)}, {"star", david_star_test(fp, g.tol)}, {"Q", hypocycloid_value(fp)}});
      return 0;
    }
    if (*dil) {
      if (search) {
        const auto fp = face_point(gather(g, in));
        DilationSearchConfig dc;
        dc.restarts = restarts;
        dc.seed = g.seed;
        const auto r = dilation_search_z_face(fp, dc);
        json j{{"found", r.found}, {"residual", r.residual}, {"restarts", r.restarts}};
        if (r.found) j["unitary"] = io::matrix_to_json(r.u.u);
        emit_json(g, j);
        return 0;
      }
      const auto j = read_input(g);
      if (!j.contains("unitary")) throw InvalidInput("dilation input needs a unitary field");
      const auto u = io::matrix_from_json(j.at("unitary"));
      const std::size_t d = j.contains("d") ? j.at("d").get<std::size_t>() : isqrt_exact(u.rows());
      const DilationUnitary w{u, d};
      const auto ch = channel_from_dilation(w);
      emit_json(g, json{{"n", ch.dim.n()}, {"p", ch.weyl_p}, {"weyl_residual", ch.weyl_residual},
                        {"transition", io::matrix_to_json(transition_from_dilation(w))}});
      return 0;
    }
  } catch (const NonPhysicalSpectrum& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
