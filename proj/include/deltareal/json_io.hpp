#pragma once

// Canonical JSON for monoid files and verification reports: sorted keys, two-space
// indentation, arrays of scalars on a single line, LF newlines, integers only.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "deltareal/verification.hpp"

namespace deltareal::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

class FormatError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

namespace detail {

inline bool scalar_array(const json& j) {
  return std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

inline void emit(std::ostream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string closePad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {  // nlohmann objects iterate in key order
      out << pad << json(it.key()).dump() << ": ";
      emit(out, it.value(), indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << closePad << "}";
  } else if (j.is_array()) {
    if (j.empty() || scalar_array(j)) {
      out << j.dump();
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      emit(out, j[i], indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << closePad << "]";
  } else {
    out << j.dump();
  }
}

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

inline std::string canonical_dump(const json& j) {
  std::ostringstream out;
  detail::emit(out, j, 0);
  out << "\n";
  return out.str();
}

struct Meta {
  std::vector<Int> deltaTarget;
  Int d1 = 0;
  std::string toolVersion = kToolVersion;
  bool operator==(const Meta&) const = default;
};

struct MonoidFile {
  Presentation monoid;
  std::optional<Meta> meta;
};

inline json to_json(const MonoidFile& f) {
  const Presentation& p = f.monoid;
  json j;
  j["rank"] = p.rank();
  j["atoms"] = p.atoms();
  j["labels"] = p.labels();
  if (!p.gadgets().empty()) {
    json gs = json::array();
    for (const auto& g : p.gadgets())
      gs.push_back({{"m", g.m},
                    {"ell", g.ell},
                    {"fresh_coords", {g.freshBegin, g.fresh_end()}},
                    {"p1_index", g.p1Index}});
    j["gadgets"] = std::move(gs);
  }
  if (f.meta) j["meta"] = {{"delta_target", f.meta->deltaTarget}, {"d1", f.meta->d1}, {"tool_version", f.meta->toolVersion}};
  return j;
}

inline MonoidFile monoid_file_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("monoid file must be a JSON object");
  const auto rank = detail::get_field<std::size_t>(j, "rank");
  auto atoms = detail::get_field<std::vector<ElementVec>>(j, "atoms");
  auto labels = j.contains("labels") ? detail::get_field<std::vector<std::string>>(j, "labels") : std::vector<std::string>{};
  if (!labels.empty() && labels.size() != atoms.size()) throw FormatError("labels and atoms differ in length");
  std::vector<GadgetBlock> gadgets;
  if (j.contains("gadgets")) {
    for (const auto& g : j.at("gadgets")) {
      GadgetBlock b;
      b.m = detail::get_field<ExponentVec>(g, "m");
      b.ell = detail::get_field<Int>(g, "ell");
      auto fresh = detail::get_field<std::vector<std::size_t>>(g, "fresh_coords");
      b.p1Index = detail::get_field<std::size_t>(g, "p1_index");
      if (fresh.size() != 2) throw FormatError("fresh_coords must be [start, end]");
      b.freshBegin = fresh[0];
      if (b.ell < 2 || fresh[1] != b.fresh_end()) throw FormatError("fresh_coords must span ell - 1 coordinates");
      gadgets.push_back(std::move(b));
    }
  }
  MonoidFile f{Presentation(rank, std::move(atoms), std::move(labels), std::move(gadgets)), std::nullopt};
  if (j.contains("meta")) {
    const json& m = j.at("meta");
    f.meta = Meta{detail::get_field<std::vector<Int>>(m, "delta_target"), detail::get_field<Int>(m, "d1"),
                  detail::get_field<std::string>(m, "tool_version")};
  }
  return f;
}

inline std::string save_string(const MonoidFile& f) { return canonical_dump(to_json(f)); }

inline MonoidFile load_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return monoid_file_from_json(j);
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline MonoidFile load(const std::string& path) { return load_string(read_file(path)); }
inline void save(const std::string& path, const MonoidFile& f) { write_file(path, save_string(f)); }

inline MonoidFile monoid_file(const realization::RealizationResult& r) {
  return {r.monoid, Meta{r.targetDelta, r.d1, kToolVersion}};
}

inline json to_json(const realization::RealizationResult& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    json op = json::array();
    for (const auto& e : l.omegaPrime) op.push_back({{"m", e.m}, {"ell", e.ell}});
    json mo = json::array();
    for (const auto& e : l.minOmega) mo.push_back({{"m", e.m}, {"max_length", e.maxLen}});
    levels.push_back({{"delta", l.delta},
                      {"d1", l.d1},
                      {"d2", l.d2},
                      {"min_omega", std::move(mo)},
                      {"omega_prime", std::move(op)},
                      {"certification", diophantine::certification_name(l.certification)},
                      {"certificate_note", l.note}});
  }
  json witnesses = json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"delta", w.delta}, {"element", w.element}, {"expected_lengths", w.expectedLengths}});
  return {{"delta_target", r.targetDelta},
          {"d1", r.d1},
          {"d2", r.d2},
          {"rank", r.monoid.rank()},
          {"atom_count", r.monoid.atom_count()},
          {"certification", diophantine::certification_name(r.certification)},
          {"levels", std::move(levels)},
          {"witnesses", std::move(witnesses)}};
}

/// Report JSON; wall-clock times are deliberately left out so reports are reproducible.
inline json to_json(const verification::VerificationReport& rep, const realization::RealizationResult& r) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e = {{"name", c.name}, {"status", verification::status_name(c.status)}, {"details", c.details}};
    if (c.counterexample) e["counterexample"] = *c.counterexample;
    checks.push_back(std::move(e));
  }
  const auto& cfg = rep.config;
  return {{"passed", rep.passed()},
          {"computed_delta", rep.computedDelta},
          {"bounds",
           {{"delta_bound", cfg.deltaBound},
            {"structure_bound", cfg.structureBound},
            {"root_bound", cfg.rootBound},
            {"powers", cfg.powers},
            {"samples", cfg.samples},
            {"atom_cap", cfg.atomCap},
            {"seed", cfg.seed},
            {"max_multisets", cfg.maxMultisets}}},
          {"checks", std::move(checks)},
          {"realization", to_json(r)}};
}

}  // namespace deltareal::io
