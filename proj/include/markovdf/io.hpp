#pragma once

// JSON encodings of kernels, marginal families, mixing measures and process
// specs.
//
//   kernel   {"dom": [labels], "cod": [labels], "rows": [[...], ...]}
//   family   {"alphabet": ["0","1"], "depth": N, "form": "dense"|"count",
//             "levels": {"1": [...]} or {"1": {"c0,c1": p, ...}}}
//   measure  {"alphabet": k, "atoms": [{"q": [...], "weight": w}, ...]}
//   process  {"process": "polya", "alpha": 1, "beta": 1, "depth": 40}
//
// Dense levels list p_n with coordinate 1 most significant.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "markovdf/definetti.hpp"
#include "markovdf/error.hpp"
#include "markovdf/exchange.hpp"
#include "markovdf/finstoch.hpp"
#include "markovdf/processes.hpp"

namespace markovdf {

using json = nlohmann::ordered_json;

namespace detail {

template <class T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidArgument(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

/// Integer field; rejects fractions and negatives.
inline std::size_t count_field(const json& j, const char* key, const char* what) {
  const double v = field<double>(j, key, what);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e12)
    throw InvalidArgument(std::string(what) + ": field '" + key +
                          "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

// --- kernels ----------------------------------------------------------------

inline json to_json(const Kernel& f) {
  json rows = json::array();
  for (std::size_t a = 0; a < f.rows(); ++a) {
    const auto r = f.row(a);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"dom", f.dom().labels()}, {"cod", f.cod().labels()}, {"rows", rows}};
}

inline Kernel kernel_from_json(const json& j) {
  auto dom = detail::field<std::vector<std::string>>(j, "dom", "kernel");
  auto cod = detail::field<std::vector<std::string>>(j, "cod", "kernel");
  auto rows = detail::field<std::vector<std::vector<double>>>(j, "rows", "kernel");
  auto space = [](std::vector<std::string> labels) {
    return labels == std::vector<std::string>{"*"} ? FinSpace::unit() : FinSpace(std::move(labels));
  };
  return Kernel::from_rows(space(std::move(dom)), space(std::move(cod)), rows);
}

// --- families ---------------------------------------------------------------

inline json to_json(const MarginalFamily& p) {
  json levels = json::object();
  for (std::size_t n = 1; n <= p.depth(); ++n) {
    if (p.form() == FamilyForm::Dense) {
      levels[std::to_string(n)] = p.dense_level(n);
    } else {
      json lvl = json::object();
      for (const auto& [c, v] : p.count_level(n)) lvl[counts_key(c)] = v;
      levels[std::to_string(n)] = std::move(lvl);
    }
  }
  return {{"alphabet", p.alphabet().labels()},
          {"depth", p.depth()},
          {"form", to_string(p.form())},
          {"levels", std::move(levels)}};
}

inline MarginalFamily family_from_json(const json& j) {
  const auto alphabet = detail::field<std::vector<std::string>>(j, "alphabet", "family");
  const std::size_t depth = detail::count_field(j, "depth", "family");
  const auto form = detail::field<std::string>(j, "form", "family");
  const json levels = detail::field<json>(j, "levels", "family");
  if (!levels.is_object()) throw InvalidArgument("family: 'levels' must be an object");
  if (alphabet.empty()) throw InvalidArgument("family: empty alphabet");
  if (levels.size() != depth)
    throw InvalidArgument("family: depth " + std::to_string(depth) + " but " +
                          std::to_string(levels.size()) + " levels");
  auto level = [&](std::size_t n) -> const json& {
    const std::string key = std::to_string(n);
    if (!levels.contains(key)) throw InvalidArgument("family: missing level " + key);
    return levels.at(key);
  };
  if (form == "dense") {
    std::vector<std::vector<double>> out;
    for (std::size_t n = 1; n <= depth; ++n) {
      const json& l = level(n);
      if (!l.is_array()) throw InvalidArgument("family: dense level must be an array");
      try {
        out.push_back(l.get<std::vector<double>>());
      } catch (const nlohmann::json::exception&) {
        throw InvalidArgument("family: dense level " + std::to_string(n) + " is not numeric");
      }
    }
    return MarginalFamily::dense(FinSpace(alphabet), std::move(out));
  }
  if (form == "count") {
    std::vector<MarginalFamily::CountLevel> out(depth);
    for (std::size_t n = 1; n <= depth; ++n) {
      const json& l = level(n);
      if (!l.is_object()) throw InvalidArgument("family: count level must be an object");
      for (const auto& [key, v] : l.items()) {
        if (!v.is_number())
          throw InvalidArgument("family: count level " + std::to_string(n) + " is not numeric");
        out[n - 1][parse_counts_key(key, alphabet.size())] = v.get<double>();
      }
    }
    return MarginalFamily::count(FinSpace(alphabet), std::move(out));
  }
  throw InvalidArgument("family: unknown form '" + form + "'");
}

// --- measures ---------------------------------------------------------------

inline json to_json(const MixingMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"q", a.q}, {"weight", a.weight}});
  return {{"alphabet", mu.k()}, {"atoms", std::move(atoms)}};
}

inline MixingMeasure measure_from_json(const json& j) {
  const std::size_t k = detail::count_field(j, "alphabet", "measure");
  const json atoms = detail::field<json>(j, "atoms", "measure");
  if (!atoms.is_array()) throw InvalidArgument("measure: 'atoms' must be an array");
  std::vector<Atom> out;
  for (const auto& a : atoms)
    out.push_back({detail::field<std::vector<double>>(a, "q", "measure atom"),
                   detail::field<double>(a, "weight", "measure atom")});
  return MixingMeasure(k, std::move(out));
}

// --- process specs ----------------------------------------------------------

inline ProcessSpec process_from_json(const json& j) {
  ProcessSpec s;
  s.kind = parse_process_kind(detail::field<std::string>(j, "process", "process"));
  s.depth = detail::count_field(j, "depth", "process");
  switch (s.kind) {
    case ProcessKind::Polya:
      s.alpha = detail::field<double>(j, "alpha", "process");
      s.beta = detail::field<double>(j, "beta", "process");
      break;
    case ProcessKind::Iid:
      if (j.contains("theta")) {
        const double t = detail::field<double>(j, "theta", "process");
        s.q = {1.0 - t, t};
        if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("process: theta outside [0,1]");
      } else {
        s.q = detail::field<std::vector<double>>(j, "q", "process");
      }
      break;
    case ProcessKind::WithoutReplacement:
      s.red = detail::count_field(j, "red", "process");
      s.black = detail::count_field(j, "black", "process");
      break;
    case ProcessKind::Diagonal:
      s.nu = detail::field<std::vector<double>>(j, "nu", "process");
      break;
    case ProcessKind::MarkovChain:
      s.initial = detail::field<std::vector<double>>(j, "initial", "process");
      s.transition = detail::field<std::vector<std::vector<double>>>(j, "transition", "process");
      break;
    case ProcessKind::Mixture:
      s.mixture = measure_from_json(detail::field<json>(j, "mixture", "process"));
      break;
  }
  s.validate();
  return s;
}

inline json to_json(const ProcessSpec& s) {
  json j = {{"process", to_string(s.kind)}};
  switch (s.kind) {
    case ProcessKind::Polya: j["alpha"] = s.alpha; j["beta"] = s.beta; break;
    case ProcessKind::Iid: j["q"] = s.q; break;
    case ProcessKind::WithoutReplacement: j["red"] = s.red; j["black"] = s.black; break;
    case ProcessKind::Diagonal: j["nu"] = s.nu; break;
    case ProcessKind::MarkovChain: j["initial"] = s.initial; j["transition"] = s.transition; break;
    case ProcessKind::Mixture: j["mixture"] = to_json(*s.mixture); break;
  }
  j["depth"] = s.depth;
  return j;
}

inline json to_json(const CheckReport& r) {
  json j = {{"holds", r.holds},
            {"max_deviation", r.max_deviation},
            {"tolerance", r.tolerance},
            {"level", r.level},
            {"witness", r.witness}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// --- files ------------------------------------------------------------------

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(origin + ": malformed JSON (" + e.what() + ")");
  }
}

/// FNV-1a 64-bit, as 16 hex digits.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace markovdf
