// Command-line front end.
//
// Exit codes: 0 success, 1 internal failure, 2 parse or input error,
// 3 resource cap exceeded, 4 weight bound too small.

#include "kcone/kcone.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace kcone;

struct RunConfig {
  std::string type_label;
  std::string bound_text = "0";
  std::optional<int> orbit;
  std::string format = "json";
  unsigned threads = 1;
  std::string module_file;
  std::string phi_text;
};

Rational bound_of(RunConfig const& cfg) {
  Rational q = parse_rational(cfg.bound_text);
  if (q < 0) throw ParseError("--bound-sq must be non-negative");
  return q;
}

ExecutionOptions options_of(RunConfig const& cfg) {
  ExecutionOptions opts;
  opts.threads = cfg.threads;
  opts.limits = ResourceLimits::from_env();
  return opts;
}

void emit(Json const& j) { std::cout << j.dump(2) << '\n'; }

std::string marks_text(std::vector<int> const& marks) {
  std::string s;
  for (int m : marks) s += std::to_string(m);
  return s;
}

std::string kclass_text(KClass const& k) {
  if (k.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto const& [w, c] : k.coeffs) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    Integer a = boost::multiprecision::abs(c);
    if (a != 1) os << a << '*';
    os << '[' << to_string(w) << ']';
  }
  return os.str();
}

int cmd_orbits(RunConfig const& cfg) {
  RootDatum rd = build_root_datum(cfg.type_label);
  auto orbits = classify_orbits(rd);
  auto poset = closure_poset(rd, orbits);
  if (cfg.format == "json") {
    emit(orbits_json(orbits, poset));
    return 0;
  }
  std::cout << "id  label         marks       dim  covers\n";
  for (auto const& o : orbits) {
    std::string covers;
    for (int z : poset.covers[o.id]) covers += (covers.empty() ? "" : ",") + std::to_string(z);
    std::printf("%-3d %-13s %-11s %-4d %s\n", o.id, o.label.c_str(), marks_text(o.dynkin_marks).c_str(), o.dimension,
                covers.c_str());
  }
  return 0;
}

int cmd_basis(RunConfig const& cfg) {
  RootDatum rd = build_root_datum(cfg.type_label);
  Rational q = bound_of(cfg);
  if (cfg.orbit && (*cfg.orbit < 0 || *cfg.orbit >= static_cast<int>(classify_orbits(rd).size())))
    throw ParseError("--orbit " + std::to_string(*cfg.orbit) + " does not exist for " + rd.type_label);
  GeometricBasis basis = full_basis(rd, q, options_of(cfg));
  if (cfg.format == "json") {
    emit(basis_json(basis, cfg.orbit));
    return 0;
  }
  std::cout << "type " << basis.type_label << ", bound^2 " << to_string(basis.bound_sq) << ", window^2 "
            << basis.window_sq << '\n';
  for (auto const& s : basis.strata) {
    if (cfg.orbit && s.orbit_id != *cfg.orbit) continue;
    auto const& o = basis.orbits[s.orbit_id];
    std::cout << "orbit " << o.id << ' ' << o.label << " (dim " << o.dimension << "): " << s.certified_count()
              << " certified, " << s.vectors.size() - s.certified_count() << " provisional\n";
    for (auto const& v : s.vectors)
      std::cout << "  " << v.index << (v.certified ? " * " : "   ") << "rank " << v.rank << "  "
                << kclass_text(v.kclass) << '\n';
  }
  return 0;
}

int cmd_acycle(RunConfig const& cfg) {
  RootDatum rd = build_root_datum(cfg.type_label);
  Rational q = bound_of(cfg);
  std::ifstream in(cfg.module_file);
  if (!in) throw ParseError("cannot read module file '" + cfg.module_file + "'");
  std::stringstream text;
  text << in.rdbuf();
  VirtualModule m = parse_module(rd, text.str());

  GeometricBasis basis = full_basis(rd, q, options_of(cfg));
  KClass k = module_to_kclass(rd, m);
  AssociatedCycle cycle = associated_cycle(express_in_geometric_basis(rd, k, basis), basis);
  if (cfg.format == "json") {
    emit(to_json(cycle, basis));
    return 0;
  }
  if (cycle.components.empty()) std::cout << "zero class: empty associated variety\n";
  for (auto const& c : cycle.components)
    std::cout << "orbit " << c.orbit_id << ' ' << basis.orbits[c.orbit_id].label << "  multiplicity "
              << c.multiplicity << '\n';
  return 0;
}

int cmd_pushforward(RunConfig const& cfg) {
  RootDatum rd = build_root_datum(cfg.type_label);
  auto orbits = classify_orbits(rd);
  int id = cfg.orbit.value_or(0);
  if (id < 0 || id >= static_cast<int>(orbits.size()))
    throw ParseError("--orbit " + std::to_string(id) + " does not exist for " + rd.type_label);
  Weight phi(static_cast<std::size_t>(rd.rank));
  {
    std::stringstream ss(cfg.phi_text);
    std::string item;
    std::vector<std::int64_t> coords;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (std::exception const&) {
        throw ParseError("--phi expects comma-separated integers, got '" + cfg.phi_text + "'");
      }
    }
    if (static_cast<int>(coords.size()) != rd.rank)
      throw ParseError("--phi needs " + std::to_string(rd.rank) + " coordinates");
    phi.coords = coords;
  }
  KClass k = pushforward(rd, grading_data(rd, orbits[id]), phi, ResourceLimits::from_env());
  if (cfg.format == "json")
    emit(to_json(k));
  else
    std::cout << kclass_text(k) << "  (rank " << *k.rank << ")\n";
  return 0;
}

// A quick end-to-end check on A1.
int cmd_selftest() {
  RootDatum rd = build_root_datum("A1");
  GeometricBasis b = full_basis(rd, Rational(16));
  bool ok = b.strata.size() == 2 && b.strata[1].certified_count() == 2 && b.strata[0].certified_count() == 4;
  KClass trivial = skyscraper_class(rd, Weight{std::vector<std::int64_t>{0}});
  auto cycle = associated_cycle(express_in_geometric_basis(rd, trivial, b), b);
  ok = ok && cycle.variety == std::vector<int>{0} && cycle.components.at(0).multiplicity == 1;
  std::cout << (ok ? "selftest: ok\n" : "selftest: FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Geometric bases of equivariant K-theory of the nilpotent cone"};
  app.require_subcommand(1);

  auto add_type = [&](CLI::App* sub) { sub->add_option("type", cfg.type_label, "Cartan type, e.g. A2, B3, G2, A1xA1")->required(); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads for pushforwards (0 = auto)");
  };

  auto* orbits = app.add_subcommand("orbits", "List nilpotent orbits and their closure order");
  add_type(orbits);
  add_format(orbits);

  auto* basis = app.add_subcommand("basis", "Compute the truncated geometric basis");
  add_type(basis);
  basis->add_option("--bound-sq", cfg.bound_text, "Squared weight bound, integer or p/q")->required();
  basis->add_option("--orbit", cfg.orbit, "Only print this orbit's stratum");
  add_format(basis);
  add_threads(basis);

  auto* acycle = app.add_subcommand("acycle", "Associated variety and weak cycle of a virtual module");
  add_type(acycle);
  acycle->add_option("--bound-sq", cfg.bound_text, "Squared weight bound, integer or p/q")->required();
  acycle->add_option("--module", cfg.module_file, "Module file (JSON)")->required();
  add_format(acycle);
  add_threads(acycle);

  auto* push = app.add_subcommand("pushforward", "Pushforward class of a Levi representation");
  add_type(push);
  push->add_option("--orbit", cfg.orbit, "Orbit id (default 0)");
  push->add_option("--phi", cfg.phi_text, "Levi highest weight, comma separated")->required();
  add_format(push);

  auto* selftest = app.add_subcommand("selftest", "Run a quick internal consistency check");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*orbits) return cmd_orbits(cfg);
    if (*basis) return cmd_basis(cfg);
    if (*acycle) return cmd_acycle(cfg);
    if (*push) return cmd_pushforward(cfg);
    if (*selftest) return cmd_selftest();
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (TableUnavailable const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (InconsistentInput const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (ResourceError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (BoundTooSmall const& e) {
    std::cerr << "error: " << e.what() << "; rerun with a larger --bound-sq\n";
    return 4;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
