// Command-line front end: realize, delta, lengths, blockmonoid.
//
// Exit codes: 0 success, 1 negative answer (non-member, failed verification),
// 2 invalid input, 3 resource limit.

#include <iostream>

#include <CLI11.hpp>

#include "deltareal/json_io.hpp"

using namespace deltareal;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInvalid = 2, kResource = 3 };

std::vector<Int> parse_list(const std::string& text, const char* what) {
  std::vector<Int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    Int v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw PreconditionError(std::string("cannot parse ") + what + " entry \"" + item + "\"");
    out.push_back(v);
  }
  if (text.empty() || text.back() == ',') throw PreconditionError(std::string("empty ") + what + " entry");
  return out;
}

std::string report_path(const std::string& out) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".report.json";
  return out + ".report.json";
}

struct RealizeArgs {
  std::string delta;
  std::string out;
  std::string report;
  bool verify = false;
  Int bound = 8;
  std::uint64_t seed = 0;
};

int cmd_realize(const RealizeArgs& a) {
  auto r = realization::realize(parse_list(a.delta, "delta"));
  const std::string monoidText = io::save_string(io::monoid_file(r));
  if (a.out.empty())
    std::cout << monoidText;
  else
    io::write_file(a.out, monoidText);
  if (r.certification != diophantine::Certification::Certified)
    std::cerr << "min_omega: " << diophantine::certification_name(r.certification) << "\n";
  if (!a.verify) return kOk;

  verification::ReportConfig cfg;
  cfg.deltaBound = a.bound;
  cfg.structureBound = std::min<Int>(a.bound, 6);
  cfg.rootBound = std::min<Int>(a.bound, 6);
  cfg.seed = a.seed;
  auto rep = verification::full_report(r, cfg);
  const std::string reportText = io::canonical_dump(io::to_json(rep, r));
  const std::string path = !a.report.empty() ? a.report : (a.out.empty() ? "" : report_path(a.out));
  if (path.empty())
    std::cout << reportText;
  else
    io::write_file(path, reportText);
  for (const auto& c : rep.checks)
    std::cerr << verification::status_name(c.status) << "  " << c.name << ": " << c.details << "\n";
  return rep.passed() ? kOk : kNegative;
}

int cmd_delta(const std::string& file, Int bound) {
  auto f = io::load(file);
  for (Int d : bounded_delta_set(f.monoid, bound)) std::cout << d << "\n";
  return kOk;
}

int cmd_lengths(const std::string& file, const std::string& element) {
  auto f = io::load(file);
  auto v = parse_list(element, "element");
  if (v.size() != f.monoid.rank())
    throw DimensionError("element has " + std::to_string(v.size()) + " coordinates, rank is " +
                         std::to_string(f.monoid.rank()));
  const LengthSet lengths = length_set(f.monoid, v);
  if (lengths.empty()) return kNegative;
  for (std::size_t i = 0; i < lengths.size(); ++i) std::cout << (i ? " " : "") << lengths[i];
  std::cout << "\n";
  return kOk;
}

int cmd_blockmonoid(Int modulus, const std::string& support) {
  auto s = parse_list(support, "support");
  auto p = zerosum::block_monoid(zerosum::CyclicGroup(modulus), s);
  std::cout << io::save_string({p, std::nullopt});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realize finite sets of distances by finitely generated Krull monoids"};
  app.require_subcommand(1);

  RealizeArgs ra;
  auto* realize = app.add_subcommand("realize", "Construct a monoid with the given set of distances");
  realize->add_option("--delta", ra.delta, "Comma-separated distances, e.g. 1,2,4")->required();
  realize->add_option("--out", ra.out, "Monoid file to write (default: standard output)");
  realize->add_flag("--verify", ra.verify, "Run the verification report");
  realize->add_option("--bound", ra.bound, "Bound for the distance enumeration")->capture_default_str();
  realize->add_option("--seed", ra.seed, "Seed for sampled checks")->capture_default_str();
  realize->add_option("--report", ra.report, "Report file (default: <out>.report.json, or standard output)");

  std::string file, element, support;
  Int bound = 8, modulus = 0;
  auto* delta = app.add_subcommand("delta", "Print the distances of elements with a factorization of length <= bound");
  delta->add_option("FILE", file, "Monoid file")->required();
  delta->add_option("--bound", bound, "Length bound")->capture_default_str();

  auto* lengths = app.add_subcommand("lengths", "Print the set of lengths of an element");
  lengths->add_option("FILE", file, "Monoid file")->required();
  lengths->add_option("--element", element, "Ambient coordinates, comma-separated")->required();

  auto* blocks = app.add_subcommand("blockmonoid", "Print the monoid of zero-sum sequences over a subset of Z/n");
  blocks->add_option("--mod", modulus, "Modulus n")->required();
  blocks->add_option("--support", support, "Comma-separated residues")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*realize) return cmd_realize(ra);
    if (*delta) return cmd_delta(file, bound);
    if (*lengths) return cmd_lengths(file, element);
    if (*blocks) return cmd_blockmonoid(modulus, support);
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const DimensionError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const OverflowError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
  return kInvalid;
}
