#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "primtop/dot.hpp"
#include "primtop/errors.hpp"
#include "primtop/json_io.hpp"

namespace {

using namespace primtop;

struct Options {
  std::string input;
  std::string aux1, aux2;
  std::string format = "json";
  std::string out_path;
  std::string bound = "3";
  std::string eps = "1/16";
  int depth = 8;
  std::string horizon = "4";
  std::string tail;
};

Degree parse_degree(const std::string& s, int k) {
  Degree d;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      d.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) d.push_back(std::stoi(cur));
  if (static_cast<int>(d.size()) == 1 && k > 1) d.assign(k, d[0]);
  if (static_cast<int>(d.size()) != k) throw parse_error("degree vector has wrong rank");
  for (int x : d)
    if (x < 0) throw parse_error("degree coordinates must be nonnegative");
  return d;
}

template <class T>
const T& as(const InputObject& obj, const char* want) {
  const T* p = std::get_if<T>(&obj);
  if (!p) throw parse_error(std::string("input is not of type '") + want + "'");
  return *p;
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(opt.out_path);
    out << text;
  }
}

void write_json(const Options& opt, const Json& j) { write_output(opt, j.dump(2)); }

KTail find_tail(const KGraphSkeleton& sk, const std::string& spec) {
  KTail want;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      want.members.push_back(sk.vertex(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) want.members.push_back(sk.vertex(cur));
  std::sort(want.members.begin(), want.members.end());
  for (const auto& t : ktails(sk))
    if (t == want) return t;
  throw domain_error("NoSuchTail", "'" + spec + "' is not a maximal tail");
}

int run_graph(const std::string& cmd, const Options& opt) {
  InputObject obj = parse_input_file(opt.input);
  const DirectedGraph& g = as<DirectedGraph>(obj, "graph");
  if (cmd == "tails") {
    Json j;
    j["tails"] = Json::array();
    for (const auto& t : maximal_tails(g)) j["tails"].push_back(tail_to_json(g, t));
    write_json(opt, j);
  } else if (cmd == "prim") {
    if (opt.format == "dot") {
      write_output(opt, emit_dot(g));
    } else {
      write_json(opt, spectrum_to_json(g, prim_spectrum(g)));
    }
  } else if (cmd == "specializes") {
    PrimPoint p1 = prim_point_from_json(g, load_json_file(opt.aux1));
    PrimPoint p2 = prim_point_from_json(g, load_json_file(opt.aux2));
    Json j;
    j["specializes"] = specializes(g, p1, p2);
    write_json(opt, j);
  } else if (cmd == "closure") {
    Json seeds = load_json_file(opt.aux1);
    std::vector<PrimPoint> pts;
    std::map<std::vector<int>, CircleSet> fibers;
    for (const auto& p : seeds.value("seeds", Json::array()))
      pts.push_back(prim_point_from_json(g, p));
    for (const auto& f : seeds.value("fiber_seeds", Json::array())) {
      std::vector<int> loop;
      for (const auto& v : f.at("loop")) loop.push_back(g.vertex(v.get<std::string>()));
      std::sort(loop.begin(), loop.end());
      fibers[loop] = circle_from_json(f.at("set"));
    }
    write_json(opt, closed_set_to_json(g, closure(g, pts, fibers)));
  } else if (cmd == "ideals") {
    Json j;
    j["hereditary_saturated"] = Json::array();
    for (const auto& s : hereditary_saturated_sets(g)) {
      Json set = Json::array();
      for (int v : s) set.push_back(g.vnames[v]);
      j["hereditary_saturated"].push_back(set);
    }
    write_json(opt, j);
  } else {
    throw parse_error("unknown graph subcommand");
  }
  return 0;
}

int run_kgraph(const std::string& cmd, const Options& opt) {
  InputObject obj = parse_input_file(opt.input);
  const KGraphSkeleton& sk = as<KGraphSkeleton>(obj, "kgraph");
  if (cmd == "validate") {
    Json j;
    j["valid"] = true;
    j["k"] = sk.k;
    j["vertices"] = static_cast<int>(sk.vnames.size());
    j["edges"] = static_cast<int>(sk.edges.size());
    write_json(opt, j);
  } else if (cmd == "tails") {
    Json j = Json::array();
    for (const auto& t : ktails(sk)) {
      Json mem = Json::array();
      for (int v : t.members) mem.push_back(sk.vnames[v]);
      j.push_back(mem);
    }
    write_json(opt, Json{{"tails", j}});
  } else if (cmd == "per" || cmd == "mper") {
    if (opt.tail.empty()) throw parse_error("--tail is required");
    KTail tail = find_tail(sk, opt.tail);
    PerResult per = per_subgroup(sk, tail, parse_degree(opt.bound, sk.k));
    if (cmd == "per") {
      write_json(opt, per_result_to_json(sk, per));
    } else {
      Json j = Json::array();
      for (int v : m_per(sk, tail, per)) j.push_back(sk.vnames[v]);
      write_json(opt, Json{{"m_per", j}});
    }
  } else if (cmd == "prim") {
    Json j = Json::array();
    for (const auto& e : kprim_spectrum(sk, parse_degree(opt.bound, sk.k))) {
      Json entry;
      Json mem = Json::array();
      for (int v : e.tail.members) mem.push_back(sk.vnames[v]);
      entry["tail"] = mem;
      entry["per"] = per_result_to_json(sk, e.per);
      entry["characters"] = torus_desc_to_json(e.char_space);
      j.push_back(entry);
    }
    write_json(opt, Json{{"spectrum", j}});
  } else if (cmd == "converges") {
    Json in = load_json_file(opt.aux1);
    KPrimPoint target = kprim_point_from_json(sk, in.at("target"));
    std::vector<KPrimPoint> seq;
    for (const auto& p : in.at("seq")) seq.push_back(kprim_point_from_json(sk, p));
    KConvergeParams params;
    params.lambda0 = kpath_from_json(sk, in.at("lambda0"));
    params.eps = parse_ratio(in.value("eps", opt.eps));
    for (const auto& l : in.at("F")) {
      std::vector<Int> row;
      for (const auto& x : l) row.push_back(Int(x.get<long long>()));
      params.F.push_back(row);
    }
    params.b_search =
        in.contains("bound") ? Degree(in["bound"].get<Degree>()) : parse_degree(opt.bound, sk.k);
    KConvergeResult r = k_converges(sk, target, seq, params);
    Json j;
    j["ok"] = r.ok;
    if (r.ok) {
      Json cert = Json::array();
      for (const auto& item : r.certificate) {
        Json e;
        e["n"] = item.n;
        e["mu"] = kpath_to_json(sk, item.mu);
        e["m"] = item.m;
        cert.push_back(e);
      }
      j["certificate"] = cert;
    } else {
      j["fail_at"] = r.fail_at;
    }
    write_json(opt, j);
  } else if (cmd == "specializes") {
    Json in = load_json_file(opt.aux1);
    KPrimPoint p1 = kprim_point_from_json(sk, in.at("p1"));
    KPrimPoint p2 = kprim_point_from_json(sk, in.at("p2"));
    KSpecializeResult r = k_specializes(sk, p1, p2, parse_degree(opt.bound, sk.k));
    Json j;
    j["yes"] = r.yes;
    if (!r.yes && r.failing) {
      Json f;
      f["lambda0"] = kpath_to_json(sk, r.failing->lambda0);
      f["eps"] = ratio_str(r.failing->eps);
      j["failing"] = f;
    }
    write_json(opt, j);
  } else if (cmd == "dset") {
    auto D = d_map_from_json(sk, load_json_file(opt.aux1));
    DSetReport rep = validate_D_set(sk, D, parse_degree(opt.horizon, sk.k));
    Json j;
    j["valid"] = rep.valid;
    if (!rep.valid) j["violation"] = rep.violation;
    write_json(opt, j);
    if (!rep.valid) return 1;
  } else {
    throw parse_error("unknown kgraph subcommand");
  }
  return 0;
}

int run_sgds(const std::string& cmd, const Options& opt) {
  InputObject obj = parse_input_file(opt.input);
  const SGDS& s = as<SGDS>(obj, "sgds");
  if (cmd == "classify") {
    Classification c = classify(s);
    Json j;
    j["aperiodic"] = Json::array();
    for (int x : c.aperiodic) j["aperiodic"].push_back(s.xnames[x]);
    j["isolated_periodic"] = Json::array();
    for (int x : c.isolated_periodic) j["isolated_periodic"].push_back(s.xnames[x]);
    write_json(opt, j);
  } else if (cmd == "prim") {
    if (opt.format == "dot") {
      write_output(opt, emit_dot(s));
      return 0;
    }
    SgdsSpectrum spec = sgds_prim(s);
    Json j;
    j["aperiodic_orbits"] = Json::array();
    for (const auto& o : spec.aperiodic_orbits) {
      Json e = Json::array();
      for (int x : o) e.push_back(s.xnames[x]);
      j["aperiodic_orbits"].push_back(e);
    }
    j["periodic_fibers"] = Json::array();
    for (const auto& f : spec.periodic_fibers) {
      Json e;
      Json o = Json::array();
      for (int x : f.orbit) o.push_back(s.xnames[x]);
      e["orbit"] = o;
      e["period"] = f.period;
      j["periodic_fibers"].push_back(e);
    }
    write_json(opt, j);
  } else if (cmd == "validate-y") {
    auto Y = y_map_from_json(s, load_json_file(opt.aux1));
    YReport rep = validate_Y(s, Y);
    Json j;
    j["valid"] = rep.valid;
    if (!rep.valid) j["violation"] = rep.violation;
    j["vacuous_clauses"] = rep.vacuous;
    write_json(opt, j);
    if (!rep.valid) return 1;
  } else {
    throw parse_error("unknown sgds subcommand");
  }
  return 0;
}

int run_action(const std::string& cmd, const Options& opt) {
  InputObject obj = parse_input_file(opt.input);
  const FiniteAction& a = as<FiniteAction>(obj, "action");
  auto chi_json = [&](const SubgroupCharacter& chi) {
    Json j;
    Json els = Json::array(), vals = Json::array();
    for (size_t i = 0; i < chi.elements.size(); ++i) {
      els.push_back(a.group.names[chi.elements[i]]);
      vals.push_back(chi.values[i].str());
    }
    j["elements"] = els;
    j["values"] = vals;
    return j;
  };
  if (cmd == "stab") {
    Json j = Json::array();
    for (int x = 0; x < a.nx(); ++x) {
      Subgroup s = stabilizer(a, x);
      Json e;
      e["x"] = a.xnames[x];
      Json els = Json::array();
      for (int g : s.elements) els.push_back(a.group.names[g]);
      e["elements"] = els;
      e["abelian"] = s.abelian;
      j.push_back(e);
    }
    write_json(opt, Json{{"stabilizers", j}});
  } else if (cmd == "delta") {
    StabHat sh = stab_hat(a);
    Json pts = Json::array();
    for (const auto& p : sh.points) {
      Json e;
      e["x"] = a.xnames[p.x];
      e["chi"] = chi_json(p.chi);
      pts.push_back(e);
    }
    Json j;
    j["points"] = pts;
    j["orbits"] = sh.orbits;
    write_json(opt, j);
  } else if (cmd == "orbits") {
    Json j = Json::array();
    for (const auto& cls : quasi_orbit_space(a)) {
      Json e = Json::array();
      for (const auto& p : cls) {
        Json q;
        q["x"] = a.xnames[p.x];
        q["chi"] = chi_json(p.chi);
        e.push_back(q);
      }
      j.push_back(e);
    }
    write_json(opt, Json{{"quasi_orbits", j}});
  } else {
    throw parse_error("unknown action subcommand");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primtop: primitive ideal spaces of groupoid C*-algebras from finite presentations"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool aux1 = false, bool aux2 = false) {
    sub->add_option("input", opt.input, "input JSON file")->required();
    if (aux1) sub->add_option("aux1", opt.aux1, "auxiliary JSON file")->required();
    if (aux2) sub->add_option("aux2", opt.aux2, "second auxiliary JSON file")->required();
    sub->add_option("--format", opt.format, "output format: json|dot|text");
    sub->add_option("--out", opt.out_path, "write output to file");
    sub->add_option("--bound", opt.bound, "degree bound, e.g. 3,3");
    sub->add_option("--eps", opt.eps, "rational tolerance, e.g. 1/16");
    sub->add_option("--depth", opt.depth, "simulation depth");
    sub->add_option("--horizon", opt.horizon, "degree horizon, e.g. 4,4");
    sub->add_option("--tail", opt.tail, "tail selector: comma-separated vertices");
  };

  std::vector<std::tuple<std::string, std::string, bool, bool>> cmds = {
      {"graph", "tails", false, false},    {"graph", "prim", false, false},
      {"graph", "specializes", true, true}, {"graph", "closure", true, false},
      {"graph", "ideals", false, false},   {"kgraph", "validate", false, false},
      {"kgraph", "tails", false, false},   {"kgraph", "per", false, false},
      {"kgraph", "mper", false, false},    {"kgraph", "prim", false, false},
      {"kgraph", "converges", true, false}, {"kgraph", "specializes", true, false},
      {"kgraph", "dset", true, false},     {"sgds", "classify", false, false},
      {"sgds", "prim", false, false},      {"sgds", "validate-y", true, false},
      {"action", "stab", false, false},    {"action", "delta", false, false},
      {"action", "orbits", false, false},
  };
  std::map<std::string, CLI::App*> groups;
  for (const auto& [group, cmd, a1, a2] : cmds) {
    if (!groups.count(group)) {
      groups[group] = app.add_subcommand(group, group + " commands");
      groups[group]->require_subcommand(1);
    }
    add_common(groups[group]->add_subcommand(cmd, ""), a1, a2);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [group, cmd, a1, a2] : cmds) {
      if (!groups[group]->parsed()) continue;
      CLI::App* sub = groups[group]->get_subcommands().front();
      if (sub->get_name() != cmd) continue;
      if (group == "graph") return run_graph(cmd, opt);
      if (group == "kgraph") return run_kgraph(cmd, opt);
      if (group == "sgds") return run_sgds(cmd, opt);
      if (group == "action") return run_action(cmd, opt);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const primtop::parse_error& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const primtop::domain_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
