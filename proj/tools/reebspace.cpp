// reebspace: compute the Reeb space of a bivariate field on a tetrahedral mesh.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "reeb/error.hpp"
#include "reeb/oracle.hpp"
#include "reeb/pipeline.hpp"
#include "reeb/synthetic.hpp"

using namespace reeb;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string input, output;
  std::uint64_t seed = 0;
  double perturb = 0.0;
  std::string algorithm = "singular";
  bool verify = false;
  std::size_t cap = 50000;
  bool trace = false;
  bool stats = false;
};

struct GenConfig {
  std::string kind = "grid";
  std::size_t n = 3;
  std::string field = "smooth";
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::string output;
};

void emit(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

json mesh_counts(const TetMesh& m) {
  return {{"N_v", m.num_vertices()}, {"N_T", m.num_tets()}, {"N_t", m.num_triangles()}, {"N_e", m.num_edges()}};
}

int run_generate(const GenConfig& g) {
  GridSpec spec;
  if (g.kind == "grid") spec.kind = GridKind::Grid;
  else if (g.kind == "two-component") spec.kind = GridKind::TwoComponent;
  else throw Error("unknown generator kind '" + g.kind + "'");
  spec.n = g.n;
  spec.field = g.field;
  spec.seed = g.seed;
  spec.noise = g.noise;
  const TetMesh mesh = generate_grid(spec);
  if (g.output.empty() || g.output == "-") {
    write_mesh(std::cout, mesh);
  } else {
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw IoError("cannot write " + g.output);
    write_mesh(out, mesh);
  }
  return 0;
}

int run_compute(const Config& c) {
  if (c.input.empty()) throw Error("--input is required");
  std::optional<TetMesh> mesh;
  try {
    mesh = load_mesh_file(c.input);
    ComputeOptions opts;
    opts.seed = c.seed;
    opts.perturb = c.perturb;
    if (c.trace) opts.trace = &std::cerr;
    if (c.algorithm == "singular") opts.algorithm = Algorithm::Singular;
    else if (c.algorithm == "full") opts.algorithm = Algorithm::Full;
    else throw Error("unknown algorithm '" + c.algorithm + "'");

    if (c.verify) {
      if (mesh->num_tets() > c.cap) {
        throw CapExceeded("mesh has " + std::to_string(mesh->num_tets()) + " tetrahedra, verification cap is " +
                          std::to_string(c.cap));
      }
      opts.algorithm = Algorithm::Singular;
      const ReebSpaceResult singular = compute(*mesh, opts);
      opts.algorithm = Algorithm::Full;
      opts.trace = nullptr;
      const ReebSpaceResult full = compute(*mesh, opts);
      const EquivalenceReport rep = compare(full, singular);
      json doc;
      doc["format"] = "reeb-space-verify/1";
      doc["equivalent"] = rep.equivalent;
      doc["discrepancy"] = rep.discrepancy;
      doc["singular_sheets"] = singular.sheets.size();
      doc["full_sheets"] = full.sheets.size();
      doc["singular_graph_vertices"] = singular.graph_vertices;
      doc["full_graph_vertices"] = full.graph_vertices;
      if (c.stats) {
        doc["singular_stats"] = stats_to_json(singular.stats, true);
        doc["full_stats"] = stats_to_json(full.stats, true);
      }
      emit(doc, c.output);
      return rep.equivalent ? 0 : static_cast<int>(ExitCode::NotEquivalent);
    }

    const ReebSpaceResult res = compute(*mesh, opts);
    if (c.stats) {
      json doc = stats_to_json(res.stats, true);
      doc["algorithm"] = res.algorithm;
      doc["sheet_count"] = res.sheets.size();
      if (!c.output.empty() && c.output != "-") emit(serialize(res), c.output);
      emit(doc, "-");
    } else {
      emit(serialize(res), c.output);
    }
    return 0;
  } catch (const Error& e) {
    if (c.stats) {
      json doc = mesh ? mesh_counts(*mesh) : json::object();
      doc["error"] = e.what();
      doc["exit_code"] = static_cast<int>(e.exit_code());
      doc["peak_memory_kb"] = peak_memory_kb();
      std::cout << doc.dump(2) << "\n";
    }
    throw;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reeb space of a bivariate field on a tetrahedral mesh"};
  app.set_version_flag("--version", "reebspace 1.0");
  Config cfg;
  app.add_option("-i,--input", cfg.input, "mesh file (.tbf or ASCII legacy .vtk)")->envname("REEBSPACE_INPUT");
  app.add_option("-o,--output", cfg.output, "output path, '-' for stdout")->envname("REEBSPACE_OUTPUT");
  app.add_option("--seed", cfg.seed, "perturbation seed")->envname("REEBSPACE_SEED");
  app.add_option("--perturb", cfg.perturb, "perturbation strength, 0 disables")
      ->envname("REEBSPACE_PERTURB")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--algorithm", cfg.algorithm, "singular or full")
      ->envname("REEBSPACE_ALGORITHM")
      ->check(CLI::IsMember({"singular", "full"}));
  app.add_flag("--verify", cfg.verify, "run both algorithms and compare")->envname("REEBSPACE_VERIFY");
  app.add_option("--cap", cfg.cap, "tetrahedron limit for --verify")->envname("REEBSPACE_CAP");
  app.add_flag("--trace", cfg.trace, "log every crossing to stderr")->envname("REEBSPACE_TRACE");
  app.add_flag("--stats", cfg.stats, "print run statistics with timings")->envname("REEBSPACE_STATS");

  GenConfig gen;
  CLI::App* generate = app.add_subcommand("generate", "write a synthetic grid mesh");
  generate->add_option("--kind", gen.kind, "grid or two-component")->check(CLI::IsMember({"grid", "two-component"}));
  generate->add_option("-n", gen.n, "vertices per axis")->check(CLI::Range(2, 1000));
  generate->add_option("--field", gen.field, "field pair name")->check(CLI::IsMember(field_names()));
  generate->add_option("--seed", gen.seed, "noise seed");
  generate->add_option("--noise", gen.noise, "noise amplitude")->check(CLI::NonNegativeNumber);
  generate->add_option("-o,--output", gen.output, "output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::Usage);
  }

  try {
    if (*generate) return run_generate(gen);
    return run_compute(cfg);
  } catch (const Error& e) {
    std::cerr << "reebspace: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "reebspace: internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Inconsistent);
  }
}
