#include "chiy/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chiy/enumerate.hpp"
#include "chiy/error.hpp"
#include "chiy/io.hpp"
#include "chiy/verify.hpp"

namespace chiy {

using nlohmann::json;

namespace {

FixedPointDatum load_datum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_datum(buf.str());
}

template <typename Range>
std::string csv_line(const Range& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : r) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  return os.str();
}

int cmd_verify(const std::string& file, bool strict, const std::string& format, std::ostream& out) {
  const FixedPointDatum d = load_datum(file);
  CheckOptions options;
  options.pairing = strict ? PairingMode::Strict : PairingMode::Existence;
  const auto reports = run_all_checks(d, options);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (format == "json") {
    out << json{{"datum", datum_to_json(d)}, {"checks", reports}, {"passed", ok}}.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << r.check_name << ": " << to_string(r.status);
      if (!r.witness.is_null()) out << ' ' << r.witness.dump();
      out << '\n';
    }
    out << (ok ? "all checks passed" : "some checks failed") << '\n';
  }
  return ok ? kExitOk : kExitFinding;
}

int cmd_chi(const std::string& file, const std::string& format, std::ostream& out, std::ostream& err) {
  const FixedPointDatum d = load_datum(file);
  if (d.empty()) throw Error(ErrorKind::InvalidArgument, "datum has no fixed points");
  const CheckReport rigidity = check_rigidity(d);
  if (!rigidity.passed()) {
    err << "rigidity failed: " << rigidity.witness.dump() << '\n';
    return kExitFinding;
  }
  const ChiVector chi = chi_vector(d);
  const NVector counts = n_vector(d);
  if (format == "json") {
    out << json{{"chi", chi}, {"n_vector", counts}}.dump() << '\n';
  } else {
    out << csv_line(chi) << '\n' << csv_line(counts) << '\n';
  }
  return kExitOk;
}

std::vector<Weight> parse_int_list(const std::string& text) {
  std::vector<Weight> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::InvalidArgument, "not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct ExampleArgs {
  std::string family;
  int a = 0;
  int b = 0;
  int w = 0;
  std::string exps;
  std::vector<std::string> files;
};

int cmd_example(const ExampleArgs& args, std::ostream& out) {
  FixedPointDatum d;
  if (args.family == "s6") {
    d = gen_s6(args.a, args.b);
  } else if (args.family == "s2") {
    d = gen_s2(args.w);
  } else if (args.family == "cpn") {
    d = gen_cpn(parse_int_list(args.exps));
  } else if (args.family == "product" || args.family == "union") {
    if (args.files.size() < 2) throw Error(ErrorKind::InvalidArgument, args.family + " needs at least two files");
    d = load_datum(args.files.front());
    for (std::size_t k = 1; k < args.files.size(); ++k) {
      const FixedPointDatum next = load_datum(args.files[k]);
      d = args.family == "product" ? product(d, next) : disjoint_union(d, next);
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown family '" + args.family + "'");
  }
  out << datum_to_json(d).dump() << '\n';
  return kExitOk;
}

struct EnumerateArgs {
  std::size_t n = 0;
  std::size_t points = 0;
  int max_weight = 0;
  bool effective = true;
  bool dedup_flip = false;
  int jobs = 0;
  std::string format = "json";
  bool experiments = false;
  bool brute_force = false;
  std::uint64_t max_candidates = 1'000'000'000;
};

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err) {
  EnumerationQuery q;
  q.half_dim = args.n;
  q.point_count = args.points;
  q.max_weight = args.max_weight;
  q.effective_only = args.effective;
  q.dedup_sign_flip = args.dedup_flip;
  q.worker_count = args.jobs;
  q.candidate_ceiling = args.max_candidates;
  const EnumerationReport report = args.brute_force ? brute_force_admissible(q) : enumerate_admissible(q);
  bool finding = !report.findings.empty();

  json j = report_to_json(report);
  if (args.experiments) {
    const OpenQuestionReport oq = experiment_open_questions(report);
    finding = finding || !oq.violators.empty();
    j["open_questions"] = open_questions_to_json(oq);
  }
  if (args.format == "csv") {
    out << report_to_csv(report);
  } else {
    out << j.dump(2) << '\n';
  }
  err << "enumerated " << report.counters.nodes << " nodes in " << report.wall_seconds << " s\n";
  return finding ? kExitFinding : kExitOk;
}

int cmd_bounds(long long max_dim, const std::string& format, std::ostream& out) {
  if (max_dim < 2 || max_dim % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "--max-dim must be even and at least 2");
  }
  const auto rows = bound_table(static_cast<std::size_t>(max_dim / 2));
  if (format == "json") {
    out << bound_table_to_json(rows).dump(2) << '\n';
  } else {
    for (const auto& r : rows) out << r.dim << ", " << r.bound << ", " << r.known_minimum << '\n';
  }
  return kExitOk;
}

int cmd_classify(std::size_t points, int max_weight, std::vector<std::size_t> half_dims, int jobs,
                 std::ostream& out) {
  ClassificationReport report;
  if (points == 2) {
    if (half_dims.empty()) half_dims = {1, 2, 3, 4};
    report = classify_two_points(max_weight, half_dims, jobs);
  } else if (points == 3) {
    if (half_dims.empty()) half_dims = {1, 2, 3};
    report = classify_three_points(max_weight, half_dims, jobs);
  } else {
    throw Error(ErrorKind::InvalidArgument, "--points must be 2 or 3");
  }
  out << classification_to_json(report).dump(2) << '\n';
  return report.consistent() ? kExitOk : kExitFinding;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed point data of circle actions: localization checks, examples and enumeration", "chiy"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string file;
  std::string format;
  bool strict = false;
  auto* verify = app.add_subcommand("verify", "Run every check on a datum document");
  verify->add_option("file", file, "datum JSON")->required();
  verify->add_flag("--strict-pairing", strict, "also require equal total multiplicities of w and -w");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->default_val("text");
  verify->callback([&] { action = [&] { return cmd_verify(file, strict, format, out); }; });

  auto* chi = app.add_subcommand("chi", "Print chi^0..chi^n and N^0..N^n");
  chi->add_option("file", file, "datum JSON")->required();
  chi->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->default_val("csv");
  chi->callback([&] { action = [&] { return cmd_chi(file, format, out, err); }; });

  ExampleArgs ex;
  auto* example = app.add_subcommand("example", "Emit an example datum");
  example->add_option("family", ex.family, "s6, cpn, s2, product or union")
      ->required()
      ->check(CLI::IsMember({"s6", "cpn", "s2", "product", "union"}));
  example->add_option("--a", ex.a, "S^6 parameter a");
  example->add_option("--b", ex.b, "S^6 parameter b");
  example->add_option("--w", ex.w, "S^2 speed");
  example->add_option("--exps", ex.exps, "CP^n exponents, comma separated");
  example->add_option("files", ex.files, "input documents for product/union");
  example->callback([&] { action = [&] { return cmd_example(ex, out); }; });

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Search for admissible data");
  enumerate->add_option("--n", en.n, "half dimension")->required();
  enumerate->add_option("--points", en.points, "number of fixed points")->required();
  enumerate->add_option("--max-weight", en.max_weight, "bound on |w|")->required();
  enumerate->add_flag("--effective,!--no-effective", en.effective, "require weight gcd 1 (default)");
  enumerate->add_flag("--dedup-flip", en.dedup_flip, "keep one of each datum and its global sign flip");
  enumerate->add_option("--jobs", en.jobs, "worker threads, 0 for all cores");
  enumerate->add_option("--format", en.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  enumerate->add_flag("--experiments", en.experiments, "evaluate the open-question checks");
  enumerate->add_flag("--brute-force", en.brute_force, "use the unpruned serial oracle");
  enumerate->add_option("--max-candidates", en.max_candidates, "search node ceiling");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(en, out, err); }; });

  long long max_dim = 0;
  auto* bounds = app.add_subcommand("bounds", "Lower bound and smallest known example per dimension");
  bounds->add_option("--max-dim", max_dim, "largest (even) dimension")->required();
  bounds->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->default_val("text");
  bounds->callback([&] { action = [&] { return cmd_bounds(max_dim, format, out); }; });

  std::size_t cl_points = 2;
  int cl_weight = 3;
  std::vector<std::size_t> cl_dims;
  int cl_jobs = 0;
  auto* classify = app.add_subcommand("classify", "Check the two- and three-point classifications");
  classify->add_option("--points", cl_points, "2 or 3");
  classify->add_option("--max-weight", cl_weight, "bound on |w|");
  classify->add_option("--n", cl_dims, "half dimensions")->delimiter(',');
  classify->add_option("--jobs", cl_jobs, "worker threads, 0 for all cores");
  classify->callback([&] { action = [&] { return cmd_classify(cl_points, cl_weight, cl_dims, cl_jobs, out); }; });

  std::vector<std::string> argv_store{"chiy"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ResourceLimit ? kExitResource : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace chiy
