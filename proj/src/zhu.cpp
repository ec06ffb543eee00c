#include "qfa/zhu.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qfa/linalg.hpp"

namespace qfa {

using nlohmann::json;

int PoissonAlgebraData::index_of(const std::string& symbol) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == symbol) return static_cast<int>(i);
  throw InvariantViolation("unknown poisson symbol: " + symbol);
}

bool PoissonAlgebraData::mult_known(int x, int y) const {
  return complete || mult.count({x, y}) > 0;
}

bool PoissonAlgebraData::bracket_known(int x, int y) const {
  return complete || bracket.count({x, y}) > 0;
}

SparseVec PoissonAlgebraData::mult_of(int x, int y) const {
  auto it = mult.find({x, y});
  return it == mult.end() ? SparseVec{} : it->second;
}

SparseVec PoissonAlgebraData::bracket_of(int x, int y) const {
  auto it = bracket.find({x, y});
  return it == bracket.end() ? SparseVec{} : it->second;
}

std::optional<SparseVec> PoissonAlgebraData::mult_vec(
    const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [x, cx] : a.entries())
    for (const auto& [y, cy] : b.entries()) {
      if (!mult_known(x, y)) return std::nullopt;
      out.axpy(cx * cy, mult_of(x, y));
    }
  return out;
}

std::optional<SparseVec> PoissonAlgebraData::bracket_vec(
    const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [x, cx] : a.entries())
    for (const auto& [y, cy] : b.entries()) {
      if (!bracket_known(x, y)) return std::nullopt;
      out.axpy(cx * cy, bracket_of(x, y));
    }
  return out;
}

namespace {

SparseVec parse_value(const json& value, const PoissonAlgebraData& p,
                      std::vector<std::string>& errors,
                      const std::string& where) {
  SparseVec out;
  for (const auto& term : value) {
    std::string sym = term.at(0).get<std::string>();
    int idx = -1;
    for (size_t i = 0; i < p.symbols.size(); ++i)
      if (p.symbols[i] == sym) idx = static_cast<int>(i);
    if (idx < 0) {
      errors.push_back(where + ": unknown symbol " + sym);
      continue;
    }
    try {
      out.add(idx, parse_rat(term.at(1).get<std::string>()));
    } catch (const ParseError& e) {
      errors.push_back(where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

PoissonAlgebraData load_poisson_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  for (const char* field : {"name", "basis", "unit", "mult", "bracket"})
    if (!doc.contains(field))
      throw ParseError(std::string("missing field: ") + field);

  PoissonAlgebraData p;
  std::vector<std::string> errors;
  try {
    p.name = doc.at("name").get<std::string>();
    for (const auto& b : doc.at("basis")) {
      p.symbols.push_back(b.at("symbol").get<std::string>());
      p.weights.push_back(b.at("weight").get<int>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  p.complete = true;

  if (p.symbols.empty()) errors.push_back("basis: empty");
  for (size_t i = 0; i < p.symbols.size(); ++i)
    for (size_t j = i + 1; j < p.symbols.size(); ++j)
      if (p.symbols[i] == p.symbols[j])
        errors.push_back("basis: duplicate symbol " + p.symbols[i]);

  std::string unit_symbol = doc["unit"].get<std::string>();
  p.unit_index = -1;
  for (size_t i = 0; i < p.symbols.size(); ++i)
    if (p.symbols[i] == unit_symbol) p.unit_index = static_cast<int>(i);
  if (p.unit_index < 0)
    errors.push_back("unit: unknown symbol " + unit_symbol);
  else if (p.weights[p.unit_index] != 0)
    errors.push_back("unit: weight must be 0");

  auto load_table = [&](const char* key, int weight_shift,
                        std::map<std::pair<int, int>, SparseVec>& table) {
    for (const auto& entry : doc.at(key)) {
      std::string ls = entry.at("left").get<std::string>();
      std::string rs = entry.at("right").get<std::string>();
      int l = -1, r = -1;
      for (size_t i = 0; i < p.symbols.size(); ++i) {
        if (p.symbols[i] == ls) l = static_cast<int>(i);
        if (p.symbols[i] == rs) r = static_cast<int>(i);
      }
      std::string where = std::string(key) + " " + ls + "," + rs;
      if (l < 0 || r < 0) {
        errors.push_back(where + ": unknown symbol");
        continue;
      }
      if (table.count({l, r})) {
        errors.push_back(where + ": duplicate entry");
        continue;
      }
      SparseVec value = parse_value(entry.at("value"), p, errors, where);
      int target = p.weights[l] + p.weights[r] + weight_shift;
      for (const auto& [s, c] : value.entries())
        if (p.weights[s] != target)
          errors.push_back(where + ": non-homogeneous value (expected weight " +
                           std::to_string(target) + ")");
      table[{l, r}] = std::move(value);
    }
  };
  try {
    load_table("mult", 0, p.mult);
    load_table("bracket", -1, p.bracket);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed table: ") + e.what());
  }

  if (!errors.empty()) {
    std::ostringstream out;
    out << "poisson input invalid (" << errors.size() << " violations):";
    for (const auto& e : errors) out << "\n  " << e;
    throw InvariantViolation(out.str());
  }
  return p;
}

PoissonAlgebraData load_poisson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_poisson_text(buf.str());
}

PoissonAlgebraData c2_quotient(const VoaData& voa, const TruncationWindow& w) {
  int W = std::min(w.max_weight, voa.window.max_weight);
  PoissonAlgebraData p;
  p.name = voa.name + "/C2";
  p.complete = false;

  // per-weight reducers for C2 intersect V[r]
  std::vector<Echelon> c2(W + 1);
  for (int r = 0; r <= W; ++r)
    for (int u = 0; u < voa.dim(); ++u)
      for (int v = 0; v < voa.dim(); ++v) {
        int n = voa.weights[u] + voa.weights[v] - 1 - r;
        if (n > -2) continue;
        ProductStatus st = product_status(voa, n, u, v);
        if (st == ProductStatus::OutOfWindow)
          throw OutOfWindowError("C2 span needs " + voa.symbols[u] + "_(" +
                                 std::to_string(n) + ")" + voa.symbols[v]);
        if (st == ProductStatus::Present) c2[r].insert(basis_product(voa, n, u, v));
      }

  // quotient basis: V-basis elements whose column is not a pivot
  std::vector<int> class_of(voa.dim(), -1);  // voa index -> p index
  std::vector<int> rep_of;                   // p index -> voa index
  for (int r = 0; r <= W; ++r) {
    int count = 0;
    std::map<int, bool> pivot;
    for (const SparseVec& row : c2[r].rows()) pivot[row.leading_index()] = true;
    for (int u = 0; u < voa.dim(); ++u) {
      if (voa.weights[u] != r || pivot.count(u)) continue;
      class_of[u] = static_cast<int>(p.symbols.size());
      rep_of.push_back(u);
      p.symbols.push_back(voa.symbols[u]);
      p.weights.push_back(r);
      ++count;
    }
    p.profile.push_back(count);
  }
  p.trailing_zero_weights = 0;
  for (int r = W; r >= 0 && p.profile[r] == 0; --r) ++p.trailing_zero_weights;
  p.unit_index = class_of[voa.vacuum_index];
  if (p.unit_index < 0)
    throw InvariantViolation("vacuum class vanished in the C2 quotient");

  // project a weight-homogeneous V vector to quotient coordinates
  auto project = [&](const SparseVec& vec, int r) {
    SparseVec red = c2[r].reduce(vec);
    SparseVec out;
    for (const auto& [u, c] : red.entries()) out.set(class_of[u], c);
    return out;
  };

  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) {
      int u = rep_of[i], v = rep_of[j];
      int ru = voa.weights[u], rv = voa.weights[v];
      if (ru + rv <= W && product_status(voa, -1, u, v) !=
                              ProductStatus::OutOfWindow)
        p.mult[{i, j}] = project(basis_product(voa, -1, u, v), ru + rv);
      int rb = ru + rv - 1;
      if (rb < 0) {
        p.bracket[{i, j}] = SparseVec{};  // certified zero below weight 0
      } else if (rb <= W && product_status(voa, 0, u, v) !=
                                ProductStatus::OutOfWindow) {
        p.bracket[{i, j}] = project(basis_product(voa, 0, u, v), rb);
      }
    }
  return p;
}

PoissonCheckReport poisson_check(const PoissonAlgebraData& p) {
  PoissonCheckReport rep;
  int dim = p.dim();
  auto grade_ok = [&](const SparseVec& v, int r) {
    for (const auto& [s, c] : v.entries())
      if (p.weights[s] != r) return false;
    return true;
  };
  auto elem = [&](int x) {
    SparseVec e;
    e.set(x, Rat(1));
    return e;
  };
  auto witness = [&](const std::string& what, std::initializer_list<int> xs) {
    std::string s = what + " at (";
    bool first = true;
    for (int x : xs) {
      if (!first) s += ",";
      s += p.symbols[x];
      first = false;
    }
    rep.failures.push_back(s + ")");
  };

  for (int x = 0; x < dim; ++x) {
    // unit laws
    if (p.mult_known(p.unit_index, x)) {
      ++rep.checked;
      if (!(p.mult_of(p.unit_index, x) == elem(x))) witness("unit law", {x});
    } else {
      ++rep.skipped;
    }
    if (p.bracket_known(p.unit_index, x)) {
      ++rep.checked;
      if (!p.bracket_of(p.unit_index, x).is_zero())
        witness("unit bracket", {x});
    } else {
      ++rep.skipped;
    }
    for (int y = 0; y < dim; ++y) {
      // commutativity, antisymmetry, grading
      if (p.mult_known(x, y) && p.mult_known(y, x)) {
        ++rep.checked;
        SparseVec m = p.mult_of(x, y);
        if (!(m == p.mult_of(y, x))) witness("commutativity", {x, y});
        if (!grade_ok(m, p.weights[x] + p.weights[y]))
          witness("mult grading", {x, y});
      } else {
        ++rep.skipped;
      }
      if (p.bracket_known(x, y) && p.bracket_known(y, x)) {
        ++rep.checked;
        SparseVec b = p.bracket_of(x, y);
        SparseVec sum = b;
        sum += p.bracket_of(y, x);
        if (!sum.is_zero()) witness("antisymmetry", {x, y});
        if (!grade_ok(b, p.weights[x] + p.weights[y] - 1))
          witness("bracket grading", {x, y});
      } else {
        ++rep.skipped;
      }
    }
  }

  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z) {
        // associativity
        {
          auto xy = p.mult_known(x, y)
                        ? p.mult_vec(p.mult_of(x, y), elem(z))
                        : std::nullopt;
          auto yz = p.mult_known(y, z)
                        ? p.mult_vec(elem(x), p.mult_of(y, z))
                        : std::nullopt;
          if (xy && yz) {
            ++rep.checked;
            SparseVec diff = *xy;
            SparseVec neg = *yz;
            neg *= Rat(-1);
            diff += neg;
            if (!diff.is_zero()) witness("associativity", {x, y, z});
          } else {
            ++rep.skipped;
          }
        }
        // Jacobi
        {
          auto a = p.bracket_known(y, z)
                       ? p.bracket_vec(elem(x), p.bracket_of(y, z))
                       : std::nullopt;
          auto b = p.bracket_known(z, x)
                       ? p.bracket_vec(elem(y), p.bracket_of(z, x))
                       : std::nullopt;
          auto c = p.bracket_known(x, y)
                       ? p.bracket_vec(elem(z), p.bracket_of(x, y))
                       : std::nullopt;
          if (a && b && c) {
            ++rep.checked;
            SparseVec sum = *a;
            sum += *b;
            sum += *c;
            if (!sum.is_zero()) witness("jacobi", {x, y, z});
          } else {
            ++rep.skipped;
          }
        }
        // Leibniz {x*y, z} = x*{y,z} + y*{x,z}
        {
          auto lhs = p.mult_known(x, y)
                         ? p.bracket_vec(p.mult_of(x, y), elem(z))
                         : std::nullopt;
          auto r1 = p.bracket_known(y, z)
                        ? p.mult_vec(elem(x), p.bracket_of(y, z))
                        : std::nullopt;
          auto r2 = p.bracket_known(x, z)
                        ? p.mult_vec(elem(y), p.bracket_of(x, z))
                        : std::nullopt;
          if (lhs && r1 && r2) {
            ++rep.checked;
            SparseVec diff = *lhs;
            SparseVec neg = *r1;
            neg += *r2;
            neg *= Rat(-1);
            diff += neg;
            if (!diff.is_zero()) witness("leibniz", {x, y, z});
          } else {
            ++rep.skipped;
          }
        }
      }
  return rep;
}

}  // namespace qfa
