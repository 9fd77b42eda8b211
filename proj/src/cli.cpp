#include "wfomc/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "wfomc/encoders.hpp"
#include "wfomc/error.hpp"
#include "wfomc/frontends.hpp"
#include "wfomc/propcheck.hpp"
#include "wfomc/transform.hpp"

namespace wfomc::cli {

namespace {

namespace fs = std::filesystem;

enum class InputKind { Fol, Mln, Plp };

InputKind kind_of(const std::string& path) {
  auto ext = fs::path(path).extension().string();
  if (ext == ".fol") return InputKind::Fol;
  if (ext == ".mln") return InputKind::Mln;
  if (ext == ".plp") return InputKind::Plp;
  throw ModelError("unknown input extension '" + ext + "' (expected .fol, .mln or .plp)");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  WfomcEncoding enc;
  std::optional<Domain> domain;  // from a `domain` directive
  bool raw = false;              // a plain .fol theory, not yet skolemized
};

Loaded load(const std::string& path) {
  std::string text = slurp(path);
  switch (kind_of(path)) {
    case InputKind::Fol: {
      TheoryFile tf = parse_theory(text);
      return {{tf.theory, tf.theory}, tf.domain, true};
    }
    case InputKind::Mln:
      return {encode_mln(parse_mln(text)), std::nullopt, false};
    case InputKind::Plp:
      return {encode_problog(parse_problog(text)), std::nullopt, false};
  }
  return {};
}

struct DomainFlags {
  int size = 0;
  std::string names;

  void add(CLI::App* app) {
    auto* s = app->add_option("--domain-size", size, "number of constants")->check(CLI::PositiveNumber);
    auto* n = app->add_option("--domain", names, "comma-separated constants, e.g. \"A,B\"");
    s->excludes(n);
  }

  Domain resolve(const std::optional<Domain>& from_file, const std::vector<std::string>& named) const {
    if (!names.empty()) {
      std::vector<std::string> cs;
      std::stringstream ss(names);
      for (std::string c; std::getline(ss, c, ',');) {
        c.erase(0, c.find_first_not_of(" \t"));
        c.erase(c.find_last_not_of(" \t") + 1);
        cs.push_back(c);
      }
      return Domain(cs);
    }
    if (size > 0) return Domain::of_size(size, named);
    if (from_file) return *from_file;
    throw DomainError("no domain given (use --domain-size or --domain)");
  }
};

std::size_t max_atoms_from_env(std::size_t fallback) {
  if (const char* v = std::getenv("WFOMC_MAX_ATOMS")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (end != v && *end == '\0') return n;
  }
  return fallback;
}

std::string print_weight(const Weight& w) { return w.is_exact() ? w.str() : format_double(w.to_double()); }

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoi(tok));
  if (out.empty()) throw ModelError("empty --sizes");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted first-order model counting with modular Skolemization", "wfomc"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  // skolemize
  auto* sk = app.add_subcommand("skolemize", "eliminate existential quantifiers");
  std::string sk_in;
  bool sk_shortcut = false, sk_no_shortcut = false, sk_no_prop = false, sk_no_cnf = false;
  sk->add_option("input", sk_in, ".fol theory")->required();
  auto* o_sc = sk->add_flag("--shortcut", sk_shortcut, "require forall*exists* prenex input and use the one-step rule");
  sk->add_flag("--no-shortcut", sk_no_shortcut, "always use the general elimination step")->excludes(o_sc);
  sk->add_flag("--no-propagate", sk_no_prop, "skip unit propagation");
  sk->add_flag("--no-cnf", sk_no_cnf, "print the eliminated theory without clausifying");

  // cnf
  auto* cnf = app.add_subcommand("cnf", "clausal form of a theory");
  std::string cnf_in;
  bool tseitin = false;
  cnf->add_option("input", cnf_in, ".fol theory")->required();
  cnf->add_flag("--tseitin", tseitin, "definitional transformation instead of distribution");

  // count
  auto* cnt = app.add_subcommand("count", "weighted first-order model count");
  std::string cnt_in, engine = "auto", dimacs;
  bool cnt_skolemize = false;
  DomainFlags cnt_dom;
  cnt->add_option("input", cnt_in, ".fol, .mln or .plp input")->required();
  cnt_dom.add(cnt);
  cnt->add_option("--engine", engine, "brute, dpll or auto")->check(CLI::IsMember({"brute", "dpll", "auto"}));
  cnt->add_flag("--skolemize", cnt_skolemize, "count the skolemized theory instead");
  cnt->add_option("--export-dimacs", dimacs, "write the ground CNF with weight comments to this file");

  // prob
  auto* pr = app.add_subcommand("prob", "query probability");
  std::string pr_in, query, mode = "exact";
  DomainFlags pr_dom;
  pr->add_option("input", pr_in, ".mln, .plp or .fol input")->required();
  pr->add_option("--query", query, "closed formula")->required();
  pr_dom.add(pr);
  pr->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));

  // check
  auto* ck = app.add_subcommand("check", "randomized soundness and modularity checks");
  std::string ck_in, sizes = "1,2";
  int seeds = 100;
  std::uint64_t first_seed = 1;
  std::size_t max_atoms = 26;
  bool modularity = false;
  ck->add_option("input", ck_in, "check one .fol theory instead of random ones");
  ck->add_option("--seeds", seeds, "number of random theories")->check(CLI::NonNegativeNumber);
  ck->add_option("--seed", first_seed, "first seed");
  ck->add_option("--sizes", sizes, "comma-separated domain sizes");
  ck->add_option("--max-atoms", max_atoms, "brute-force cap");
  ck->add_flag("--modularity", modularity, "also check queries conjoined after skolemization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUsage;
  }

  CountOptions copts;
  copts.max_atoms = max_atoms_from_env(copts.max_atoms);

  try {
    if (*sk) {
      WeightedTheory t = load(sk_in).enc.theory;
      WeightedTheory r;
      if (sk_shortcut) {
        r = skolemize_prenex_shortcut(t);
      } else {
        SkolemizeOptions so;
        so.prenex_shortcut = !sk_no_shortcut;
        r = skolemize(t, so);
      }
      if (!sk_no_cnf) r = to_cnf_distribute(r);
      if (!sk_no_prop) r = unit_propagate(r);
      std::string text = serialize_theory(r);
      if (json) out << nlohmann::json{{"theory", text}}.dump() << "\n";
      else out << text;
    } else if (*cnf) {
      WeightedTheory t = load(cnf_in).enc.theory;
      WeightedTheory r = tseitin ? to_cnf_tseitin(t) : to_cnf_distribute(t);
      std::string text = serialize_theory(r);
      if (json) out << nlohmann::json{{"theory", text}}.dump() << "\n";
      else out << text;
    } else if (*cnt) {
      Loaded l = load(cnt_in);
      WeightedTheory t = l.raw ? l.enc.theory : l.enc.query_ready;
      if (cnt_skolemize && l.raw) t = skolemize(t);
      Domain d = cnt_dom.resolve(l.domain, t.constants());
      copts.engine = engine == "brute" ? Engine::Brute : engine == "dpll" ? Engine::Dpll : Engine::Auto;
      if (!dimacs.empty()) {
        std::ofstream f(dimacs);
        if (!f) throw ModelError("cannot write " + dimacs);
        f << export_dimacs(ground(t, d));
      }
      Weight w = wfomc(t, d, copts);
      if (json) out << count_json(w) << "\n";
      else out << print_weight(w) << "\n";
    } else if (*pr) {
      Loaded l = load(pr_in);
      Formula phi = parse_formula(query);
      if (l.raw) l.enc = make_encoding(l.enc.theory);
      std::vector<std::string> named = l.enc.theory.constants();
      for (const auto& c : constants(phi))
        if (std::find(named.begin(), named.end(), c) == named.end()) named.push_back(c);
      Domain d = pr_dom.resolve(l.domain, named);
      Weight p = query_probability(l.enc, d, phi, copts);
      if (mode == "float") p = Weight::from_double(p.to_double());
      else if (!p.is_exact()) err << "note: model has floating-point weights; result is approximate\n";
      if (json) out << count_json(p, "probability") << "\n";
      else out << print_weight(p) << "\n";
    } else if (*ck) {
      std::vector<int> sz = parse_sizes(sizes);
      CheckOptions opts;
      opts.count.max_atoms = max_atoms;
      if (!ck_in.empty()) {
        WeightedTheory t = parse_theory(slurp(ck_in)).theory;
        CheckReport r = check_soundness(t, sz, opts);
        if (json) {
          out << nlohmann::json{{"ok", r.ok()}, {"detail", r.detail}}.dump() << "\n";
        } else if (r.ok()) {
          out << "ok\n";
        } else {
          out << "FAIL at |D|=" << r.domain_size << ": expected " << r.expected << ", got " << r.actual << "\n";
        }
        return r.ok() ? kOk : kCheckFailed;
      }
      GenConfig cfg;
      cfg.seed = first_seed;
      cfg.sizes = sz;
      RunSummary s = run_soundness(cfg, seeds, opts, false);
      RunSummary m;
      if (modularity) m = run_modularity(cfg, seeds, opts);
      bool ok = s.failures == 0 && m.failures == 0;
      if (json) {
        nlohmann::json j{{"soundness", {{"runs", s.runs}, {"failures", s.failures}, {"unsupported", s.unsupported}}}};
        if (modularity) j["modularity"] = {{"runs", m.runs}, {"failures", m.failures}, {"unsupported", m.unsupported}};
        if (s.first_failing_seed) j["soundness"]["first_failing_seed"] = *s.first_failing_seed;
        out << j.dump() << "\n";
      } else {
        out << "soundness: " << s.runs << " runs, " << s.failures << " failures, " << s.unsupported
            << " unsupported\n";
        if (modularity)
          out << "modularity: " << m.runs << " runs, " << m.failures << " failures, " << m.unsupported
              << " unsupported\n";
        if (s.first_failing_seed) out << "first failing seed " << *s.first_failing_seed << ":\n" << s.counterexample << "\n";
        if (m.first_failing_seed) out << "modularity seed " << *m.first_failing_seed << ":\n" << m.counterexample << "\n";
      }
      return ok ? kOk : kCheckFailed;
    }
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const TightnessError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kInput;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}

}  // namespace wfomc::cli
