#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <toric_symmetry/toric_symmetry.hpp>

using namespace toric;
using nlohmann::json;

namespace {

struct Options
{
  bool json_out = false;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t max_cells = default_brute_force_cells;
  std::string out;
  bool check = false;
};

class Output
{
public:
  explicit Output(Options const &opt) : path_(opt.out) {}

  std::ostream &stream() { return buf_; }

  void flush()
  {
    if (path_.empty()) {
      std::cout << buf_.str();
      std::cout.flush();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f)
      throw FormatError("cannot write '" + path_ + "'");
    f << buf_.str();
  }

private:
  std::string path_;
  std::ostringstream buf_;
};

unsigned oracle_threads()
{
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (char const *env = std::getenv("TORIC_SYMMETRY_THREADS")) {
    char *end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || cap == 0)
      throw std::invalid_argument("TORIC_SYMMETRY_THREADS must be a positive integer");
    return static_cast<unsigned>(std::min<unsigned long>(cap, hw));
  }
  return hw;
}

/// "1,3" or "{1,3}" with 1-based labels.
FactorSet parse_factor_set(std::string text, int m)
{
  for (char &c : text)
    if (c == '{' || c == '}' || c == ' ')
      c = ',';
  FactorSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    std::size_t used = 0;
    int j = 0;
    try {
      j = std::stoi(item, &used);
    } catch (std::exception const &) {
      used = 0;
    }
    if (used != item.size() || j < 1 || j > m)
      throw std::invalid_argument("bad factor '" + item + "' in factor set");
    out.insert(j - 1);
  }
  return out;
}

void write_json(Output &out, json const &doc)
{
  out.stream() << doc.dump(2) << "\n";
}

int finish(Output &out, bool passed)
{
  out.flush();
  return passed ? 0 : 1;
}

int cmd_analyze(Options const &opt, std::string const &path)
{
  auto a = analyze_model(load_model(path));
  Output out(opt);
  if (opt.json_out)
    write_json(out, a.to_json());
  else
    out.stream() << a.to_text();
  return finish(out, a.rank == a.rank_formula);
}

int cmd_sample(Options const &opt, std::string const &path, std::size_t count)
{
  if (count < 1)
    throw std::invalid_argument("--count must be at least 1");
  auto model = load_model(path);
  WreathGroup group(model);
  std::optional<KernelStabilizerCheck> stabilizes;
  IntMatrix a;
  if (opt.check) {
    a = configuration_matrix(model);
    stabilizes.emplace(a, kernel_basis(a));
  }

  Output out(opt);
  json doc{{"seed", opt.seed}, {"samples", json::array()}};
  bool passed = true;
  for (std::size_t k = 0; k < count; ++k) {
    auto w = sample_uniform(group, sample_seed(opt.seed, k));
    auto g = to_cell_permutation(group, w);
    bool member = contains(group, g);
    std::optional<bool> stab;
    if (stabilizes)
      stab = (*stabilizes)(g);
    passed = passed && member && stab.value_or(true);
    if (opt.json_out) {
      json entry{{"element", wreath_element_to_json(group, w)},
                 {"permutation", permutation_to_json(g)}};
      if (stab)
        entry["check"] = {{"in_w", member}, {"stabilizes_kernel", *stab}};
      doc["samples"].push_back(std::move(entry));
      continue;
    }
    out.stream() << "sample " << k << ":";
    for (auto v : g.image())
      out.stream() << " " << v;
    out.stream() << "\n";
    if (stab) {
      out.stream() << "  in W: " << (member ? "yes" : "NO")
                   << ", stabilizes ker A: " << (*stab ? "yes" : "NO") << "\n";
    }
  }
  if (opt.json_out)
    write_json(out, doc);
  return finish(out, passed);
}

int cmd_verify(Options const &opt, std::string const &path)
{
  if (opt.trials < 1)
    throw std::invalid_argument("--trials must be at least 1");
  auto model = load_model(path);
  std::vector<SuiteReport> reports{
      check_member_invariance(model, opt.trials, opt.seed),
      check_nonmember_rejection(model, opt.trials, opt.seed),
      check_facet_criterion_equivalence(model, opt.trials, opt.seed),
  };
  bool passed = true;
  for (auto const &r : reports)
    passed = passed && (r.skipped || r.passed);

  Output out(opt);
  if (opt.json_out) {
    json doc{{"theorem_conditions", theorem_conditions(model).to_json()},
             {"passed", passed},
             {"suites", json::array()}};
    for (auto const &r : reports)
      doc["suites"].push_back(r.to_json());
    write_json(out, doc);
  } else {
    for (auto const &r : reports)
      out.stream() << r.to_text();
    out.stream() << (passed ? "verify: PASS\n" : "verify: FAIL\n");
  }
  return finish(out, passed);
}

int cmd_oracle(Options const &opt, std::string const &path)
{
  auto model = load_model(path);
  auto r = brute_force_stabilizer(model, opt.max_cells, oracle_threads());
  if (!r.warning.empty())
    std::cerr << "warning: " << r.warning << "\n";
  bool passed = r.inclusion_violations == 0 && r.divisibility_holds();
  Output out(opt);
  if (opt.json_out) {
    auto doc = r.to_json();
    doc["theorem_conditions"] = theorem_conditions(model).to_json();
    write_json(out, doc);
  } else {
    out.stream() << r.summary() << "\n";
    out.stream() << "permutations examined: " << r.examined << "\n";
    if (r.witness) {
      out.stream() << "witness:";
      for (auto v : r.witness->image())
        out.stream() << " " << v;
      out.stream() << "\n";
    }
    if (r.inclusion_violations)
      out.stream() << "W members outside the stabilizer: " << r.inclusion_violations
                   << "\n";
  }
  return finish(out, passed);
}

int cmd_generic(Options const &opt, std::string const &path, std::uint64_t j)
{
  auto model = load_model(path);
  auto g = generic_element(model, j);
  Output out(opt);
  auto doc = table_to_json(g.table, model.name(), true);
  if (opt.check) {
    bool in_row_space = member(row_space_basis(configuration_matrix(model)), g.table);
    doc["check"] = {{"in_row_space", in_row_space}};
    write_json(out, doc);
    return finish(out, in_row_space);
  }
  write_json(out, doc);
  return finish(out, true);
}

int cmd_project(Options const &opt, std::string const &path, std::string const &set,
                std::string const &table_path, bool marginal_space)
{
  auto model = load_model(path);
  auto e = parse_factor_set(set, model.m());
  auto x = table_from_json(parse_json(read_file(table_path)), model);
  auto y = marginal_space ? project_marginal_space(x, e) : project_increment(x, e);
  Output out(opt);
  auto doc = table_to_json(y, model.name());
  doc["projection"] = marginal_space ? "L_E" : "N_E";
  doc["set"] = e.str();
  write_json(out, doc);
  return finish(out, true);
}

int cmd_act(Options const &opt, std::string const &path, std::string const &perm_path,
            std::string const &table_path)
{
  auto model = load_model(path);
  auto perm_doc = parse_json(read_file(perm_path));
  WreathGroup group(model);
  CellPermutation g = perm_doc.contains("classes")
                          ? to_cell_permutation(group, wreath_element_from_json(group, perm_doc))
                          : permutation_from_json(perm_doc);
  if (g.size() != model.p())
    throw FormatError("permutation has " + std::to_string(g.size()) +
                      " cells, model has " + std::to_string(model.p()));
  auto x = table_from_json(parse_json(read_file(table_path)), model);
  auto y = apply_permutation(g, x);
  Output out(opt);
  auto doc = table_to_json(y, model.name());
  bool passed = true;
  if (opt.check) {
    auto a = configuration_matrix(model);
    bool in_w = contains(group, g);
    bool stab = stabilizes_kernel(a, kernel_basis(a), g);
    doc["check"] = {{"in_w", in_w}, {"stabilizes_kernel", stab}};
    // members of W must stabilize; outsiders may or may not
    passed = !in_w || stab;
  }
  write_json(out, doc);
  return finish(out, passed);
}

int cmd_demo(Options const &opt, std::string const &name)
{
  SuiteReport r;
  if (name == "markov")
    r = markov_fixture();
  else if (name == "sudoku")
    r = sudoku_fixture();
  else
    throw std::invalid_argument("unknown demo '" + name + "' (markov, sudoku)");
  Output out(opt);
  if (opt.json_out)
    write_json(out, r.to_json());
  else
    out.stream() << r.to_text();
  return finish(out, r.passed);
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Symmetry groups of hierarchical log-linear models"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App *sub) {
    sub->add_flag("--json", opt.json_out, "JSON output");
    sub->add_option("--out", opt.out, "write output to a file");
    return sub;
  };

  std::string model_path, table_path, perm_path, set, demo_name;
  std::size_t count = 1;
  std::uint64_t j = 1;
  bool marginal_space = false;

  auto *analyze = common(app.add_subcommand("analyze", "poset, wreath product and dimensions"));
  analyze->add_option("model", model_path)->required();

  auto *sample = common(app.add_subcommand("sample", "uniform wreath elements"));
  sample->add_option("model", model_path)->required();
  sample->add_option("-n,--count", count, "number of samples")->capture_default_str();
  sample->add_option("--seed", opt.seed)->capture_default_str();
  sample->add_flag("--check", opt.check, "check membership and kernel invariance");

  auto *verify = common(app.add_subcommand("verify", "property suites"));
  verify->add_option("model", model_path)->required();
  verify->add_option("--trials", opt.trials)->capture_default_str();
  verify->add_option("--seed", opt.seed)->capture_default_str();

  auto *oracle = common(app.add_subcommand("oracle", "brute-force stabilizer of ker A"));
  oracle->add_option("model", model_path)->required();
  oracle->add_option("--max-cells", opt.max_cells)->capture_default_str();

  auto *generic = common(app.add_subcommand("generic", "generic element of the row space"));
  generic->add_option("model", model_path)->required();
  generic->add_option("-j", j, "perturbation index")->capture_default_str();
  generic->add_flag("--check", opt.check, "check row-space membership");

  auto *project = common(app.add_subcommand("project", "project a table onto N_E or L_E"));
  project->add_option("model", model_path)->required();
  project->add_option("set", set, "factor set E, e.g. 1,2")->required();
  project->add_option("table", table_path)->required();
  project->add_flag("--marginal", marginal_space, "project onto L_E instead of N_E");

  auto *act = common(app.add_subcommand("act", "apply a cell permutation to a table"));
  act->add_option("model", model_path)->required();
  act->add_option("permutation", perm_path, "permutation or wreath element file")->required();
  act->add_option("table", table_path)->required();
  act->add_flag("--check", opt.check, "report membership and kernel invariance");

  auto *demo = common(app.add_subcommand("demo", "built-in fixtures"));
  demo->add_option("name", demo_name, "markov or sudoku")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze)
      return cmd_analyze(opt, model_path);
    if (*sample)
      return cmd_sample(opt, model_path, count);
    if (*verify)
      return cmd_verify(opt, model_path);
    if (*oracle)
      return cmd_oracle(opt, model_path);
    if (*generic)
      return cmd_generic(opt, model_path, j);
    if (*project)
      return cmd_project(opt, model_path, set, table_path, marginal_space);
    if (*act)
      return cmd_act(opt, model_path, perm_path, table_path);
    if (*demo)
      return cmd_demo(opt, demo_name);
  } catch (std::invalid_argument const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (std::out_of_range const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (std::exception const &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
