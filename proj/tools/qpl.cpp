// qpl: command-line front end for the q-polymatroid library.
//
// Exit codes: 0 all checks pass, 1 mathematical finding (violation,
// non-equivalence), 2 usage or input error.

#include "qpl/qpl.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

namespace {

using namespace qpl;

constexpr int kClean = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;

struct Options {
  std::vector<std::string> files;
  std::string mu;
  std::string gram;
  std::string out;
  std::uint64_t budget = 0;
  bool list = false;
  bool machine = false;
  bool scaling = false;
};

/// Errors in a named input file; the message is prefixed with the path.
class FileError : public InputError {
 public:
  FileError(const std::string& path, const std::string& what) : InputError(path + ": " + what) {}
};

template <typename Fn>
auto load(const std::string& path, Fn read) {
  std::ifstream in(path);
  if (!in) throw FileError(path, "cannot open");
  try {
    return read(in);
  } catch (const InputError& e) {
    throw FileError(path, e.what());
  }
}

QPolymatroid load_qpm(const std::string& path) {
  return load(path, [](std::istream& in) { return read_qpm(in); });
}

/// Writes to -o when given, otherwise to stdout.
void emit(const Options& o, const std::function<void(std::ostream&)>& write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw FileError(o.out, "cannot write");
  write(f);
}

/// "key: value" for people, "key=value" with --machine.
class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  void put(const std::string& key, const std::string& value) const {
    std::cout << key << (machine_ ? "=" : ": ") << value << '\n';
  }

  /// Counts per dimension of a list of subspaces, optionally followed by the list.
  void spaces(const std::string& name, const QPolymatroid& m, const std::vector<Ordinal>& list, bool full) const {
    const LatticeIndex& L = m.index();
    if (machine_) {
      put(name + ".total", std::to_string(list.size()));
      std::map<std::size_t, std::size_t> counts;
      for (Ordinal v : list) ++counts[L.dim(v)];
      for (const auto& [k, c] : counts) put(name + ".dim" + std::to_string(k), std::to_string(c));
    } else {
      put(name, "total " + std::to_string(list.size()) + (list.empty() ? "" : "; " + counts_by_dim(L, list)));
    }
    if (!full) return;
    for (Ordinal v : list) {
      if (machine_)
        put(name + ".space", L.key(v) + " " + to_string(m.rho(v)));
      else
        std::cout << "  " << L.key(v) << " rho=" << to_string(m.rho(v)) << '\n';
    }
  }

  void axioms(const AxiomReport& r) const {
    if (machine_) {
      put("violations", std::to_string(r.total));
      for (const auto& v : r.violations) {
        std::string w;
        for (const auto& s : v.witnesses) w += (w.empty() ? "" : " ") + s;
        put("violation", v.axiom + " " + w);
      }
    } else {
      std::cout << r;
    }
  }

 private:
  bool machine_;
};

Rational mu_for(const Options& o, const QPolymatroid& m) {
  return o.mu.empty() ? principal_denominator(m) : parse_rational(o.mu);
}

std::optional<Matrix> gram_for(const Options& o) {
  if (o.gram.empty()) return std::nullopt;
  return load(o.gram, [](std::istream& in) { return read_matrix(in); });
}

void require_files(const Options& o, std::size_t n, const std::string& what) {
  if (o.files.size() != n) throw InputError("expected " + what);
}

int cmd_code_analyze(const Options& o) {
  require_files(o, 1, "one code file");
  const RankMetricCode c = load(o.files[0], [](std::istream& in) { return read_code(in); });
  const Report r(o.machine);
  const CodeReport rep = analyze(c);
  r.put("q", std::to_string(c.field().order()));
  r.put("n", std::to_string(c.n()));
  r.put("m", std::to_string(c.m()));
  r.put("k", std::to_string(rep.dim));
  r.put("d", rep.d ? std::to_string(*rep.d) : "undefined");
  r.put("d_dual", rep.d_dual ? std::to_string(*rep.d_dual) : "undefined");
  if (rep.singleton_rhs) {
    r.put("singleton_bound", std::to_string(*rep.singleton_rhs));
    r.put("singleton_slack", std::to_string(*rep.singleton_rhs - rep.dim));
  }
  r.put("mrd", rep.is_mrd ? "yes" : "no");
  const QPolymatroid m = column_polymatroid(c, LatticeIndex::build(c.field(), c.n()));
  r.put("rho(E)", to_string(m.rank()));
  r.put("mu_principal", to_string(principal_denominator(m)));
  for (std::size_t k = 0; k <= c.n(); ++k) r.put("fingerprint.dim" + std::to_string(k), value_counts(m, k));
  if (!o.out.empty()) emit(o, [&](std::ostream& out) { write_qpm(out, m); });
  return kClean;
}

int cmd_axioms(const Options& o) {
  require_files(o, 1, "one q-polymatroid file");
  const QPolymatroid m = load_qpm(o.files[0]);
  const Report r(o.machine);
  r.put("D", std::to_string(m.denom()));
  r.put("rho(E)", to_string(m.rank()));
  const AxiomReport rep = verify_axioms(m, 10, false);
  if (rep.ok()) r.put("mu_principal", to_string(principal_denominator(m)));
  r.axioms(rep);
  return rep.ok() ? kClean : kFinding;
}

int cmd_dual(const Options& o) {
  require_files(o, 1, "one q-polymatroid file");
  const QPolymatroid m = load_qpm(o.files[0]);
  const auto g = gram_for(o);
  const QPolymatroid d = dual(m, g ? &*g : nullptr);
  emit(o, [&](std::ostream& out) { write_qpm(out, d); });
  return kClean;
}

int cmd_aux(const Options& o) {
  require_files(o, 1, "one q-polymatroid file");
  const QPolymatroid m = load_qpm(o.files[0]);
  const QPolymatroid z = auxiliary_matroid(m, mu_for(o, m));
  emit(o, [&](std::ostream& out) { write_qpm(out, z); });
  return kClean;
}

/// independents, circuits, loops, bases, spanning, strong.
int cmd_classify(const std::string& what, const Options& o) {
  require_files(o, 1, "one q-polymatroid file");
  const QPolymatroid m = load_qpm(o.files[0]);
  const IndependenceAtlas a = classify(m, mu_for(o, m));
  const Report r(o.machine);
  r.put("mu", to_string(a.mu()));
  if (what == "independents") {
    r.spaces("independent", m, a.independents(), o.list);
    r.spaces("dependent", m, a.dependents(), false);
  } else if (what == "circuits") {
    r.spaces("circuits", m, a.circuits(), o.list);
  } else if (what == "loops") {
    r.spaces("loops", m, a.loops(), o.list);
  } else if (what == "bases") {
    r.spaces("bases", m, a.bases(), o.list);
  } else if (what == "spanning") {
    r.spaces("spanning", m, a.spanning(), o.list);
    r.spaces("minimal_spanning", m, a.minimal_spanning(), o.list);
  } else {
    r.spaces("strongly_independent", m, a.strongly_independent(), o.list);
    r.spaces("maximal_strongly_independent", m, a.max_strongly_independent(), o.list);
  }
  return kClean;
}

int cmd_equiv(const Options& o) {
  require_files(o, 2, "two q-polymatroid files");
  const QPolymatroid a = load_qpm(o.files[0]);
  const QPolymatroid b = load_qpm(o.files[1]);
  const std::uint64_t budget = o.budget ? o.budget : kDefaultEquivalenceBudget;
  const EquivalenceResult res = o.scaling ? is_scaling_equivalent(a, b, budget) : is_equivalent(a, b, budget);
  if (o.machine) {
    const Report r(true);
    r.put("verdict", to_string(res.verdict));
    if (!res.certificate.empty()) r.put("certificate", res.certificate);
    if (o.scaling) r.put("scale", to_string(res.scale));
    r.put("nodes", std::to_string(res.nodes));
    if (res.isomorphism) {
      std::ostringstream s;
      write_matrix(s, *res.isomorphism);
      std::string rows = s.str();
      rows = rows.substr(rows.find('\n') + 1);
      std::replace(rows.begin(), rows.end(), '\n', ';');
      if (!rows.empty()) rows.pop_back();
      r.put("isomorphism", rows);
    }
  } else if (res.verdict == Verdict::yes) {
    std::cout << (o.scaling ? "SCALING EQUIVALENT (a = " + to_string(res.scale) + ")" : std::string("EQUIVALENT")) << '\n';
    write_matrix(std::cout, *res.isomorphism);
  } else if (res.verdict == Verdict::no) {
    std::cout << "NOT EQUIVALENT (" << res.certificate << ")\n";
  } else {
    std::cout << "UNKNOWN (" << res.certificate << ")\n";
  }
  return res.verdict == Verdict::yes ? kClean : kFinding;
}

int cmd_crypto_build(const Options& o) {
  require_files(o, 1, "one q-polymatroid file");
  const QPolymatroid m = load_qpm(o.files[0]);
  const CandidateCollection c = CandidateCollection::from_atlas(classify(m, mu_for(o, m)));
  emit(o, [&](std::ostream& out) { write_candidate(out, c); });
  return kClean;
}

int cmd_crypto_check(const Options& o) {
  require_files(o, 1, "one candidate file");
  const CandidateCollection c = load(o.files[0], [](std::istream& in) { return read_candidate(in); });
  const Report r(o.machine);
  r.put("members", std::to_string(c.members().size()));
  const AxiomReport rep = verify_candidate(c, 10, false);
  r.axioms(rep);
  const bool extendable = std::none_of(rep.violations.begin(), rep.violations.end(),
                                       [](const Violation& v) { return v.axiom != "C"; }) &&
                          rep.total == rep.violations.size();
  if (!extendable) return kFinding;
  const QPolymatroid ext = extend_rank(c);
  if (!o.out.empty()) emit(o, [&](std::ostream& out) { write_qpm(out, ext); });
  r.put("extension", "rho(E) = " + to_string(ext.rank()));
  if (!rep.ok()) return kFinding;
  const AxiomReport rt = roundtrip_check(c);
  r.put("roundtrip", rt.ok() ? "equal" : "differs");
  if (!rt.ok()) r.axioms(rt);
  return rt.ok() ? kClean : kFinding;
}

int cmd_paper(const std::string& id, const Options& o) {
  const Report r(o.machine);
  const auto run = [&](const std::string& which) {
    const registry::ExampleRecord rec = registry::run_example(which);
    if (o.machine) {
      std::size_t i = 0;
      for (const auto& c : rec.checks) {
        const std::string key = rec.id + "." + std::to_string(++i);
        r.put(key + ".name", c.name);
        r.put(key + ".expected", c.expected);
        r.put(key + ".actual", c.actual);
        r.put(key + ".pass", c.pass() ? "yes" : "no");
      }
      r.put(rec.id + ".ok", rec.ok() ? "yes" : "no");
    } else {
      std::cout << rec.id << ": " << rec.summary << '\n';
      for (const auto& c : rec.checks) {
        std::cout << "  " << (c.pass() ? "PASS " : "FAIL ") << c.name << ": " << c.actual;
        if (!c.pass()) std::cout << " (expected " << c.expected << ")";
        std::cout << '\n';
      }
      std::cout << rec.id << (rec.ok() ? ": all checks pass" : ": MISMATCH") << '\n';
    }
    return rec.ok();
  };
  if (id != "all") return run(id) ? kClean : kFinding;
  bool ok = true;
  for (const auto& which : registry::example_ids()) ok = run(which) && ok;
  return ok ? kClean : kFinding;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--mu", o.mu, "denominator as p/r (default: the principal denominator)");
  cmd->add_option("--gram", o.gram, "matrix file with a symmetric invertible Gram matrix");
  cmd->add_flag("--list", o.list, "list the subspaces, not just counts");
  cmd->add_option("--budget", o.budget, "enumeration budget (also caps equivalence search nodes)");
  cmd->add_option("-o,--output", o.out, "output file");
  cmd->add_flag("--machine", o.machine, "key=value output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with q-polymatroids and rank-metric codes"};
  app.require_subcommand(1);
  Options o;
  std::string paper_id;

  auto* code = app.add_subcommand("code", "rank-metric code files")->require_subcommand(1);
  auto* analyze_cmd = code->add_subcommand("analyze", "invariants and column polymatroid summary; -o exports the .qpm");
  analyze_cmd->add_option("file", o.files, "code file")->required();
  add_common(analyze_cmd, o);

  auto* qpm = app.add_subcommand("qpm", "q-polymatroid files")->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> qpm_cmds = {
      {"axioms", "check the rank axioms"},
      {"dual", "dual q-polymatroid (standard form unless --gram)"},
      {"independents", "mu-independent and dependent spaces"},
      {"circuits", "mu-circuits"},
      {"loops", "loops"},
      {"bases", "mu-bases of the ground space"},
      {"spanning", "spanning and minimal spanning spaces"},
      {"strong", "strongly independent and maximal strongly independent spaces"},
      {"aux", "auxiliary q-matroid at mu"},
      {"equiv", "equivalence of two q-polymatroids (--scaling for scaling-equivalence)"},
      {"crypto-check", "verify a candidate file, extend it and check the round trip"},
      {"crypto-build", "candidate file of the mu-independent spaces with their rank values"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : qpm_cmds) {
    auto* s = qpm->add_subcommand(name, help);
    s->add_option("files", o.files, name == "equiv" ? "two .qpm files" : "input file")->required();
    add_common(s, o);
    if (name == "equiv") s->add_flag("--scaling", o.scaling, "allow a positive rescaling of the rank function");
    subs[name] = s;
  }

  auto* paper = app.add_subcommand("paper", "recompute a worked example and compare with its expected record");
  paper->add_option("id", paper_id, "example id, or 'all'")->required();
  paper->add_flag("--machine", o.machine, "key=value output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (o.budget) setenv("QPL_BUDGET", std::to_string(o.budget).c_str(), 1);
  try {
    if (*analyze_cmd) return cmd_code_analyze(o);
    if (*paper) return cmd_paper(paper_id, o);
    for (const auto& [name, s] : subs) {
      if (!*s) continue;
      if (name == "axioms") return cmd_axioms(o);
      if (name == "dual") return cmd_dual(o);
      if (name == "aux") return cmd_aux(o);
      if (name == "equiv") return cmd_equiv(o);
      if (name == "crypto-check") return cmd_crypto_check(o);
      if (name == "crypto-build") return cmd_crypto_build(o);
      return cmd_classify(name, o);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
