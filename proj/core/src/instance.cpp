// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smsp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "smsp/error.hpp"
#include "smsp/rng.hpp"

namespace smsp {
namespace {

using nlohmann::json;

int require_int(const json& j, const char* what) {
  require(j.is_number_integer(), Err::kParseError,
          std::string(what) + " must be an integer");
  return j.get<int>();
}

json set_to_json(const ElementSet& s) {
  json arr = json::array();
  for (Element u : s) arr.push_back(u);
  return arr;
}

ElementSet set_from_json(const json& j, const char* what) {
  require(j.is_array(), Err::kParseError,
          std::string(what) + " must be an array");
  std::vector<Element> out;
  for (const json& v : j) out.push_back(require_int(v, what));
  return ElementSet(std::move(out));
}

json matroid_to_json(const MatroidSpec& spec);

struct MatroidWriter {
  json operator()(const UniformSpec& s) const {
    return json{{"kind", "uniform"}, {"k", s.k}};
  }
  json operator()(const PartitionSpec& s) const {
    return json{{"kind", "partition"},
                {"class_of", s.class_of},
                {"capacity_of", s.capacity_of}};
  }
  json operator()(const GraphicSpec& s) const {
    json edges = json::array();
    for (const auto& [a, b] : s.edge_of) edges.push_back(json::array({a, b}));
    return json{{"kind", "graphic"}, {"edges", edges}};
  }
  json operator()(const LaminarSpec& s) const {
    json family = json::array();
    for (const auto& arc : s.family) {
      family.push_back(
          json{{"set", set_to_json(arc.set)}, {"capacity", arc.capacity}});
    }
    return json{{"kind", "laminar"}, {"family", family}};
  }
  json operator()(const TransversalSpec& s) const {
    return json{{"kind", "transversal"}, {"adjacency", s.adjacency}};
  }
  json operator()(const LinearSparseSpec& s) const {
    return json{{"kind", "linear_sparse"},
                {"columns", s.columns},
                {"sparsity", s.sparsity}};
  }
  json operator()(const RestrictionSpec& s) const {
    return json{{"kind", "restriction"},
                {"base", matroid_to_json(*s.base)},
                {"keep", set_to_json(s.keep)}};
  }
};

json matroid_to_json(const MatroidSpec& spec) {
  return std::visit(MatroidWriter{}, as_variant(spec));
}

MatroidSpec matroid_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), Err::kParseError,
          "matroid section needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    return UniformSpec{require_int(j.at("k"), "k")};
  }
  if (kind == "partition") {
    PartitionSpec s;
    for (const json& v : j.at("class_of")) {
      s.class_of.push_back(require_int(v, "class_of entry"));
    }
    if (j.contains("capacity_of")) {
      for (const json& v : j.at("capacity_of")) {
        s.capacity_of.push_back(require_int(v, "capacity_of entry"));
      }
    }
    return s;
  }
  if (kind == "graphic") {
    GraphicSpec s;
    for (const json& e : j.at("edges")) {
      require(e.is_array() && e.size() == 2, Err::kParseError,
              "each edge must be a vertex pair");
      s.edge_of.emplace_back(require_int(e[0], "edge endpoint"),
                             require_int(e[1], "edge endpoint"));
    }
    return s;
  }
  if (kind == "laminar") {
    LaminarSpec s;
    for (const json& a : j.at("family")) {
      s.family.push_back({set_from_json(a.at("set"), "laminar set"),
                          require_int(a.at("capacity"), "capacity")});
    }
    return s;
  }
  if (kind == "transversal") {
    TransversalSpec s;
    for (const json& row : j.at("adjacency")) {
      std::vector<int> adj;
      for (const json& v : row) adj.push_back(require_int(v, "adjacency"));
      s.adjacency.push_back(std::move(adj));
    }
    return s;
  }
  if (kind == "linear_sparse") {
    LinearSparseSpec s;
    for (const json& col : j.at("columns")) {
      std::vector<std::int64_t> c;
      for (const json& v : col) {
        require(v.is_number_integer(), Err::kParseError,
                "column entries must be integers");
        c.push_back(v.get<std::int64_t>());
      }
      s.columns.push_back(std::move(c));
    }
    s.sparsity = require_int(j.at("sparsity"), "sparsity");
    return s;
  }
  if (kind == "restriction") {
    RestrictionSpec s;
    s.base = std::make_shared<MatroidSpec>(matroid_from_json(j.at("base")));
    s.keep = set_from_json(j.at("keep"), "keep");
    return s;
  }
  fail(Err::kParseError, "unknown matroid kind: " + kind);
}

std::vector<double> weights_from_json(const json& j) {
  std::vector<double> w;
  for (const json& v : j) {
    require(v.is_number(), Err::kParseError, "weights must be numbers");
    w.push_back(v.get<double>());
  }
  return w;
}

json objective_to_json(const ObjectiveSpec& spec, double shift) {
  json out = std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearObjectiveSpec>) {
          return json{{"kind", "linear"}, {"weights", s.weights}};
        } else if constexpr (std::is_same_v<T, CoverageObjectiveSpec>) {
          json o{{"kind", "coverage"}, {"covers", s.covers}};
          if (!s.item_weights.empty()) o["item_weights"] = s.item_weights;
          return o;
        } else if constexpr (std::is_same_v<T, MaxWeightObjectiveSpec>) {
          return json{{"kind", "max_weight"}, {"weights", s.weights}};
        } else {
          return json{{"kind", "weighted_rank"},
                      {"inner", matroid_to_json(s.inner)},
                      {"weights", s.weights}};
        }
      },
      spec);
  if (shift != 0.0) out["shift"] = shift;
  return out;
}

std::pair<ObjectiveSpec, double> objective_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), Err::kParseError,
          "objective section needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  double shift = j.value("shift", 0.0);
  if (kind == "linear") {
    return {LinearObjectiveSpec{weights_from_json(j.at("weights"))}, shift};
  }
  if (kind == "coverage") {
    CoverageObjectiveSpec s;
    for (const json& row : j.at("covers")) {
      std::vector<int> items;
      for (const json& v : row) items.push_back(require_int(v, "covers"));
      s.covers.push_back(std::move(items));
    }
    if (j.contains("item_weights")) {
      s.item_weights = weights_from_json(j.at("item_weights"));
    }
    return {std::move(s), shift};
  }
  if (kind == "max_weight") {
    return {MaxWeightObjectiveSpec{weights_from_json(j.at("weights"))}, shift};
  }
  if (kind == "weighted_rank") {
    WeightedRankObjectiveSpec s;
    s.inner = matroid_from_json(j.at("inner"));
    s.weights = weights_from_json(j.at("weights"));
    return {std::move(s), shift};
  }
  fail(Err::kParseError, "unknown objective kind: " + kind);
}

Instance instance_from_json(const json& doc) {
  require(doc.is_object(), Err::kParseError, "document must be an object");
  require(doc.contains("ground") && doc.at("ground").contains("n"),
          Err::kParseError, "document needs ground.n");
  int n = require_int(doc.at("ground").at("n"), "ground.n");
  require(n >= 0, Err::kParseError, "ground.n must be non-negative");

  MatroidSpec mspec = matroid_from_json(doc.at("matroid"));
  auto [ospec, shift] = objective_from_json(doc.at("objective"));

  std::optional<Instance::Pairing> pairing;
  if (doc.contains("experiment")) {
    const json& e = doc.at("experiment");
    Instance::Pairing pr;
    pr.linear = e.at("linear").get<std::string>();
    pr.alpha = e.at("alpha").get<double>();
    if (e.contains("q")) pr.q = e.at("q").get<double>();
    pairing = std::move(pr);
  }

  return Instance{doc.value("name", std::string{}), n, Matroid(mspec, n),
                  Objective(ospec, n, shift), std::move(pairing)};
}

// ---- generator spec mini-language -----------------------------------------
//
// A spec is "<matroid call>+<objective call>" where a call is
// name(key=value,...). Values are plain numbers.

struct Call {
  std::string name;
  std::map<std::string, double> args;
};

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

Call parse_call(const std::string& text) {
  Call call;
  auto open = text.find('(');
  if (open == std::string::npos) {
    require(!text.empty(), Err::kParseError, "empty generator call");
    call.name = text;
    return call;
  }
  require(text.back() == ')', Err::kParseError,
          "generator call must end with ')': " + text);
  call.name = text.substr(0, open);
  require(!call.name.empty(), Err::kParseError, "generator call needs a name");
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::stringstream ss(body);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    auto eq = piece.find('=');
    require(eq != std::string::npos && eq > 0, Err::kParseError,
            "generator arguments must look like key=value: " + piece);
    std::string key = piece.substr(0, eq);
    std::string value = piece.substr(eq + 1);
    try {
      std::size_t used = 0;
      double v = std::stod(value, &used);
      require(used == value.size(), Err::kParseError,
              "bad numeric value: " + value);
      require(call.args.emplace(key, v).second, Err::kParseError,
              "duplicate argument: " + key);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Err::kParseError, "bad numeric value: " + value);
    }
  }
  return call;
}

class Args {
 public:
  Args(const Call& call, std::initializer_list<const char*> allowed)
      : call_(call) {
    for (const auto& [key, value] : call.args) {
      bool known = std::any_of(allowed.begin(), allowed.end(),
                               [&](const char* a) { return key == a; });
      require(known, Err::kParseError,
              "unknown argument '" + key + "' for " + call.name);
    }
  }

  int geti(const char* key) const {
    auto it = call_.args.find(key);
    require(it != call_.args.end(), Err::kParseError,
            call_.name + " needs argument " + key);
    return to_int(it->second, key);
  }
  int geti(const char* key, int fallback) const {
    auto it = call_.args.find(key);
    return it == call_.args.end() ? fallback : to_int(it->second, key);
  }
  double getd(const char* key, double fallback) const {
    auto it = call_.args.find(key);
    return it == call_.args.end() ? fallback : it->second;
  }

 private:
  static int to_int(double v, const char* key) {
    require(v == std::floor(v) && std::abs(v) < 1e9, Err::kParseError,
            std::string(key) + " must be an integer");
    return static_cast<int>(v);
  }
  const Call& call_;
};

std::vector<int> pick_distinct(Rng& rng, int universe, int count) {
  std::vector<int> ids(universe);
  std::iota(ids.begin(), ids.end(), 0);
  rng.shuffle(ids);
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void laminar_intervals(int lo, int hi, Rng& rng,
                       std::vector<LaminarSpec::Arc>& family) {
  int size = hi - lo;
  if (size < 2) return;
  std::vector<Element> ids(size);
  std::iota(ids.begin(), ids.end(), lo);
  int cap = 1 + static_cast<int>(rng.below(std::max(1, size / 2)));
  family.push_back({ElementSet(std::move(ids)), cap});
  int mid = lo + size / 2;
  laminar_intervals(lo, mid, rng, family);
  laminar_intervals(mid, hi, rng, family);
}

std::pair<MatroidSpec, int> generate_matroid(const Call& call, Rng& rng) {
  if (call.name == "uniform") {
    Args a(call, {"n", "k"});
    int n = a.geti("n");
    return {UniformSpec{a.geti("k")}, n};
  }
  if (call.name == "partition") {
    Args a(call, {"n", "classes", "capacity"});
    int n = a.geti("n");
    int classes = a.geti("classes");
    require(classes >= 1, Err::kParseError, "partition needs classes >= 1");
    PartitionSpec s;
    for (int i = 0; i < n; ++i) s.class_of.push_back(i % classes);
    s.capacity_of.assign(classes, a.geti("capacity", 1));
    return {std::move(s), n};
  }
  if (call.name == "graphic") {
    Args a(call, {"n", "vertices"});
    int n = a.geti("n");
    int v = a.geti("vertices");
    require(n == 0 || v >= 2, Err::kParseError,
            "graphic needs at least 2 vertices");
    GraphicSpec s;
    for (int i = 0; i < n; ++i) {
      int x = static_cast<int>(rng.below(v));
      int y = static_cast<int>(rng.below(v - 1));
      if (y >= x) ++y;  // no self-loops
      s.edge_of.emplace_back(x, y);
    }
    return {std::move(s), n};
  }
  if (call.name == "laminar") {
    Args a(call, {"n"});
    int n = a.geti("n");
    LaminarSpec s;
    laminar_intervals(0, n, rng, s.family);
    return {std::move(s), n};
  }
  if (call.name == "transversal") {
    Args a(call, {"n", "right"});
    int n = a.geti("n");
    int right = a.geti("right");
    require(n == 0 || right >= 1, Err::kParseError,
            "transversal needs a right side");
    TransversalSpec s;
    for (int i = 0; i < n; ++i) {
      int d = 1 + static_cast<int>(rng.below(std::min(right, 3)));
      s.adjacency.push_back(pick_distinct(rng, right, d));
    }
    return {std::move(s), n};
  }
  if (call.name == "sparse") {
    Args a(call, {"n", "rows", "sparsity"});
    int n = a.geti("n");
    int rows = a.geti("rows");
    int sparsity = a.geti("sparsity");
    require(n == 0 || (rows >= 1 && sparsity >= 1), Err::kParseError,
            "sparse needs rows >= 1 and sparsity >= 1");
    LinearSparseSpec s;
    s.sparsity = sparsity;
    for (int i = 0; i < n; ++i) {
      int t = 1 + static_cast<int>(rng.below(std::min(sparsity, rows)));
      std::vector<std::int64_t> col(rows, 0);
      for (int pos : pick_distinct(rng, rows, t)) {
        col[pos] = 1 + static_cast<std::int64_t>(rng.below(1000));
      }
      s.columns.push_back(std::move(col));
    }
    return {std::move(s), n};
  }
  fail(Err::kParseError, "unknown matroid generator: " + call.name);
}

std::vector<double> random_weights(Rng& rng, int n, double lo, double hi) {
  require(lo >= 0.0 && hi >= lo, Err::kParseError,
          "weight range must satisfy 0 <= lo <= hi");
  std::vector<double> w(n);
  for (double& x : w) x = lo + rng.uniform() * (hi - lo);
  return w;
}

std::pair<ObjectiveSpec, double> generate_objective(const Call& call, int n,
                                                    Rng& rng) {
  if (call.name == "coverage") {
    Args a(call, {"universe", "shift"});
    int universe = a.geti("universe");
    require(n == 0 || universe >= 1, Err::kParseError,
            "coverage needs a universe");
    CoverageObjectiveSpec s;
    for (int i = 0; i < n; ++i) {
      int d = 1 + static_cast<int>(rng.below(std::max(1, universe / 4)));
      s.covers.push_back(pick_distinct(rng, universe, std::min(d, universe)));
    }
    return {std::move(s), a.getd("shift", 0.0)};
  }
  if (call.name == "linear") {
    Args a(call, {"lo", "hi", "shift"});
    return {LinearObjectiveSpec{random_weights(rng, n, a.getd("lo", 0.0),
                                               a.getd("hi", 1.0))},
            a.getd("shift", 0.0)};
  }
  if (call.name == "maxweight") {
    Args a(call, {"lo", "hi", "shift"});
    return {MaxWeightObjectiveSpec{random_weights(rng, n, a.getd("lo", 0.0),
                                                  a.getd("hi", 1.0))},
            a.getd("shift", 0.0)};
  }
  if (call.name == "wrank") {
    Args a(call, {"k", "shift"});
    int k = a.geti("k", std::max(1, n / 3));
    WeightedRankObjectiveSpec s;
    s.inner = UniformSpec{k};
    s.weights = random_weights(rng, n, 0.0, 1.0);
    return {std::move(s), a.getd("shift", 0.0)};
  }
  fail(Err::kParseError, "unknown objective generator: " + call.name);
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(Err::kParseError, std::string("bad instance JSON: ") + e.what());
  }
  try {
    return instance_from_json(doc);
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    fail(Err::kParseError, std::string("bad instance document: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::kIoError, "cannot open instance file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  require(!in.bad(), Err::kIoError, "cannot read instance file: " + path);
  return parse_instance(buffer.str());
}

std::string instance_to_json(const Instance& instance) {
  require(instance.objective.spec().has_value(), Err::kInvalidArgs,
          "custom objectives are not serializable");
  json doc;
  doc["name"] = instance.name;
  doc["ground"] = json{{"n", instance.n}};
  doc["matroid"] = matroid_to_json(instance.matroid.spec());
  doc["objective"] =
      objective_to_json(*instance.objective.spec(), instance.objective.shift());
  if (instance.pairing.has_value()) {
    json e{{"linear", instance.pairing->linear},
           {"alpha", instance.pairing->alpha}};
    if (instance.pairing->q.has_value()) e["q"] = *instance.pairing->q;
    doc["experiment"] = std::move(e);
  }
  return doc.dump(2) + "\n";
}

Instance generate_instance(const std::string& spec, std::uint64_t seed) {
  std::string text = strip_spaces(spec);
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '+' && depth == 0) {
      require(split == std::string::npos, Err::kParseError,
              "spec must be <matroid>+<objective>");
      split = i;
    }
  }
  require(split != std::string::npos, Err::kParseError,
          "spec must be <matroid>+<objective>");
  Call mcall = parse_call(text.substr(0, split));
  Call ocall = parse_call(text.substr(split + 1));

  Rng rng = RandomTape(seed).stream(Stream::kGenerator);
  auto [mspec, n] = generate_matroid(mcall, rng);
  require(n >= 0, Err::kParseError, "n must be non-negative");
  auto [ospec, shift] = generate_objective(ocall, n, rng);

  return Instance{text + "@" + std::to_string(seed), n, Matroid(mspec, n),
                  Objective(ospec, n, shift), std::nullopt};
}

Instance resolve_instance(const std::string& ref, std::uint64_t seed) {
  if (ref.rfind("gen:", 0) == 0) {
    return generate_instance(ref.substr(4), seed);
  }
  return load_instance(ref);
}

}  // namespace smsp
