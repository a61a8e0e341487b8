#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ojac/dsl.hpp"

using namespace ojac;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_model(const dsl::Model& m, const dsl::RunOptions& opts, dsl::Format format) {
  const dsl::Session session(m);
  const auto reports = session.run(opts);
  std::cout << dsl::emit(reports, format);
  return dsl::exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic checker for odd Jacobi structures"};
  app.require_subcommand(1);

  dsl::RunOptions opts;
  std::string format = "text";
  const auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", opts.seed, "Seed for sampled identities");
    sub->add_option("--max-degree", opts.max_degree, "Maximal degree of sampled functions");
    sub->add_flag("--parallel", opts.parallel, "Run directives concurrently");
  };

  std::string file;
  auto* verify = app.add_subcommand("verify", "Run the directives of a DSL file");
  verify->add_option("FILE", file, "DSL source")->required();
  add_run_flags(verify);

  auto* examples = app.add_subcommand("examples", "Built-in examples");
  examples->require_subcommand(1);
  examples->add_subcommand("list", "List the catalog");
  std::string name;
  unsigned dim = 1;
  auto* ex_run = examples->add_subcommand("run", "Run a catalog example");
  ex_run->add_option("NAME", name)->required();
  ex_run->add_option("-n", dim, "Dimension of parameterized examples");
  add_run_flags(ex_run);
  auto* ex_show = examples->add_subcommand("show", "Print the source of a catalog example");
  ex_show->add_option("NAME", name)->required();
  ex_show->add_option("-n", dim, "Dimension of parameterized examples");

  std::string structure, f, g;
  auto* bracket = app.add_subcommand("bracket", "Odd Jacobi bracket of two expressions");
  bracket->add_option("FILE", file)->required();
  bracket->add_option("NAME", structure)->required();
  bracket->add_option("F", f)->required();
  bracket->add_option("G", g)->required();

  CLI11_PARSE(app, argc, argv);
  const dsl::Format fmt = format == "json" ? dsl::Format::Json : dsl::Format::Text;

  try {
    if (verify->parsed()) return run_model(dsl::parse(read_file(file)), opts, fmt);
    if (examples->got_subcommand("list")) {
      for (const auto& e : dsl::catalog_entries())
        std::cout << e.name << (e.parameterized ? " [-n N]" : "") << (e.negative ? " (fails)" : "") << "  " << e.summary
                  << '\n';
      return 0;
    }
    if (ex_show->parsed()) {
      std::cout << dsl::catalog_source(name, dim);
      return 0;
    }
    if (ex_run->parsed()) return run_model(dsl::catalog(name, dim), opts, fmt);
    if (bracket->parsed()) {
      const dsl::Session session(dsl::parse(read_file(file)));
      std::cout << session.bracket(structure, dsl::parse_expr(f), dsl::parse_expr(g)).str() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
