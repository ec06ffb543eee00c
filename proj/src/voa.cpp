#include "qfa/voa.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qfa {

namespace {

using nlohmann::json;

std::string prod_loc(const VoaData& voa, int n, int u, int v) {
  std::ostringstream out;
  out << voa.symbols[u] << "_(" << n << ")" << voa.symbols[v];
  return out.str();
}

}  // namespace

int VoaData::index_of(const std::string& symbol) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == symbol) return static_cast<int>(i);
  throw InvariantViolation("unknown basis symbol: " + symbol);
}

ProductStatus product_status(const VoaData& voa, int n, int u, int v) {
  int target = voa.weights[u] + voa.weights[v] - n - 1;
  if (target < -voa.lower_bound_m) return ProductStatus::CertifiedZero;
  if (target > voa.window.max_weight) return ProductStatus::OutOfWindow;
  if (n < voa.window.n_min || n > voa.window.n_max)
    return ProductStatus::OutOfWindow;
  return ProductStatus::Present;
}

SparseVec basis_product(const VoaData& voa, int n, int u, int v) {
  switch (product_status(voa, n, u, v)) {
    case ProductStatus::CertifiedZero:
      return {};
    case ProductStatus::OutOfWindow:
      throw OutOfWindowError("product not certified: " + prod_loc(voa, n, u, v));
    case ProductStatus::Present:
      break;
  }
  auto it = voa.products.find({n, u, v});
  return it == voa.products.end() ? SparseVec{} : it->second;
}

SparseVec apply_product(const VoaData& voa, int n, const SparseVec& u,
                        const SparseVec& v) {
  SparseVec result;
  for (const auto& [i, ci] : u.entries())
    for (const auto& [j, cj] : v.entries())
      result.axpy(ci * cj, basis_product(voa, n, i, j));
  return result;
}

SparseVec translate(const VoaData& voa, const SparseVec& u) {
  SparseVec vac;
  vac.set(voa.vacuum_index, Rat(1));
  return apply_product(voa, -2, u, vac);
}

namespace {

Rat json_rat(const json& j, std::vector<std::string>& errors,
             const std::string& where) {
  if (!j.is_string()) {
    errors.push_back(where + ": rational must be a \"p/q\" string");
    return Rat(0);
  }
  try {
    return parse_rat(j.get<std::string>());
  } catch (const ParseError& e) {
    errors.push_back(where + ": " + e.what());
    return Rat(0);
  }
}

}  // namespace

VoaData load_voa_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  for (const char* field : {"name", "lower_bound_m", "central_charge", "basis",
                            "vacuum", "window", "products"})
    if (!doc.contains(field))
      throw ParseError(std::string("missing field: ") + field);
  if (!doc.contains("conformal")) throw ParseError("missing field: conformal");

  std::vector<std::string> errors;
  VoaData voa;
  try {
    voa.name = doc.at("name").get<std::string>();
    voa.lower_bound_m = doc.at("lower_bound_m").get<int>();
    voa.window.max_weight = doc.at("window").at("max_weight").get<int>();
    voa.window.n_min = doc.at("window").at("n_min").get<int>();
    voa.window.n_max = doc.at("window").at("n_max").get<int>();
    for (const auto& b : doc.at("basis")) {
      voa.symbols.push_back(b.at("symbol").get<std::string>());
      voa.weights.push_back(b.at("weight").get<int>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  voa.central_charge = json_rat(doc["central_charge"], errors, "central_charge");

  if (voa.symbols.empty()) errors.push_back("basis: empty");
  for (size_t i = 0; i < voa.symbols.size(); ++i)
    for (size_t j = i + 1; j < voa.symbols.size(); ++j)
      if (voa.symbols[i] == voa.symbols[j])
        errors.push_back("basis: duplicate symbol " + voa.symbols[i]);
  for (size_t i = 0; i < voa.weights.size(); ++i)
    if (voa.weights[i] < -voa.lower_bound_m)
      errors.push_back("basis: weight of " + voa.symbols[i] +
                       " below declared lower bound");
  if (voa.window.max_weight < 0) errors.push_back("window: max_weight < 0");
  if (voa.window.n_min > voa.window.n_max)
    errors.push_back("window: n_min > n_max");

  auto find = [&](const std::string& s) -> int {
    for (size_t i = 0; i < voa.symbols.size(); ++i)
      if (voa.symbols[i] == s) return static_cast<int>(i);
    return -1;
  };

  std::string vac_symbol = doc["vacuum"].is_string()
                               ? doc["vacuum"].get<std::string>()
                               : std::string();
  voa.vacuum_index = find(vac_symbol);
  if (voa.vacuum_index < 0) {
    errors.push_back("vacuum: unknown symbol " + vac_symbol);
  } else if (voa.weights[voa.vacuum_index] != 0) {
    errors.push_back("vacuum: weight of " + vac_symbol + " must be 0");
  }

  if (doc["conformal"].is_null()) {
    voa.conformal_index = -1;
    if (voa.symbols.size() != 1)
      errors.push_back(
          "conformal: may be null only for the one-dimensional trivial case");
  } else {
    std::string cs = doc["conformal"].get<std::string>();
    voa.conformal_index = find(cs);
    if (voa.conformal_index < 0)
      errors.push_back("conformal: unknown symbol " + cs);
    else if (voa.weights[voa.conformal_index] != 2)
      errors.push_back("conformal: weight of " + cs + " must be 2");
  }

  for (const auto& p : doc["products"]) {
    int n;
    std::string ls, rs;
    try {
      n = p.at("n").get<int>();
      ls = p.at("left").get<std::string>();
      rs = p.at("right").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed product entry: ") + e.what());
    }
    int l = find(ls), r = find(rs);
    if (l < 0 || r < 0) {
      errors.push_back("products: unknown symbol in " + ls + "_(" +
                       std::to_string(n) + ")" + rs);
      continue;
    }
    std::string loc = prod_loc(voa, n, l, r);
    if (voa.products.count({n, l, r})) {
      errors.push_back("products: duplicate entry " + loc);
      continue;
    }
    int target = voa.weights[l] + voa.weights[r] - n - 1;
    if (target > voa.window.max_weight || n < voa.window.n_min ||
        n > voa.window.n_max) {
      errors.push_back("products: " + loc +
                       " is out-of-window and must be absent");
      continue;
    }
    SparseVec value;
    for (const auto& entry : p.at("value")) {
      if (!entry.is_array() || entry.size() != 2) {
        errors.push_back("products: " + loc + ": bad value entry");
        continue;
      }
      int s = find(entry[0].get<std::string>());
      if (s < 0) {
        errors.push_back("products: " + loc + ": unknown symbol in value");
        continue;
      }
      Rat c = json_rat(entry[1], errors, "products: " + loc);
      if (voa.weights[s] != target)
        errors.push_back("products: " + loc + ": component " + voa.symbols[s] +
                         " breaks weight homogeneity (expected weight " +
                         std::to_string(target) + ")");
      value.add(s, c);
    }
    voa.products[{n, l, r}] = std::move(value);
  }

  // Vacuum axioms on all certified instances.
  if (voa.vacuum_index >= 0) {
    for (int u = 0; u < voa.dim(); ++u) {
      if (product_status(voa, -1, u, voa.vacuum_index) ==
          ProductStatus::Present) {
        SparseVec expect;
        expect.set(u, Rat(1));
        if (!(basis_product(voa, -1, u, voa.vacuum_index) == expect))
          errors.push_back("vacuum axiom: " +
                           prod_loc(voa, -1, u, voa.vacuum_index) +
                           " != " + voa.symbols[u]);
      }
      for (int n = 0; n <= voa.window.n_max; ++n) {
        if (product_status(voa, n, u, voa.vacuum_index) ==
                ProductStatus::Present &&
            !basis_product(voa, n, u, voa.vacuum_index).is_zero())
          errors.push_back("vacuum axiom: " +
                           prod_loc(voa, n, u, voa.vacuum_index) + " != 0");
      }
    }
  }

  if (!errors.empty()) {
    std::ostringstream out;
    out << errors.size() << " invariant violation(s):";
    for (const auto& e : errors) out << "\n  " << e;
    throw InvariantViolation(out.str());
  }
  return voa;
}

VoaData load_voa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_voa_text(buf.str());
}

BorcherdsReport check_borcherds(const VoaData& voa, int k_min, int k_max,
                                int m_min, int m_max, int n_min, int n_max) {
  BorcherdsReport report;
  int dim = voa.dim();
  int W = voa.window.max_weight;
  int lb = voa.lower_bound_m;
  for (int k = k_min; k <= k_max; ++k)
    for (int m = m_min; m <= m_max; ++m)
      for (int n = n_min; n <= n_max; ++n)
        for (int u = 0; u < dim; ++u)
          for (int v = 0; v < dim; ++v)
            for (int w = 0; w < dim; ++w) {
              int wu = voa.weights[u], wv = voa.weights[v],
                  ww = voa.weights[w];
              int total = wu + wv + ww - k - m - n - 2;
              if (total < -lb) {
                // Every term lands in a zero graded piece.
                ++report.checked;
                continue;
              }
              if (total > W) {
                ++report.skipped;
                continue;
              }
              SparseVec ev, ew, eu;
              eu.set(u, Rat(1));
              ev.set(v, Rat(1));
              ew.set(w, Rat(1));
              try {
                SparseVec res;
                // sum_i C(k,i) (u_(n+i)v)_(k+m-i) w
                int i1 = wu + wv + lb - n - 1;
                int left_max = (k >= 0) ? std::min(i1, k) : i1;
                for (int i = 0; i <= left_max; ++i) {
                  Rat c = binom(k, i);
                  if (c == 0) continue;
                  SparseVec inner = basis_product(voa, n + i, u, v);
                  if (inner.is_zero()) continue;
                  res.axpy(c, apply_product(voa, k + m - i, inner, ew));
                }
                // - sum_i (-1)^i C(n,i) (u_(k+n-i)(v_(m+i)w)
                //                        - (-1)^n v_(m+n-i)(u_(k+i)w))
                int iA = wv + ww + lb - m - 1;
                int iB = wu + ww + lb - k - 1;
                int right_max = (n >= 0) ? n : std::max({iA, iB, -1});
                Rat sign_n = (n % 2 == 0) ? Rat(1) : Rat(-1);
                for (int i = 0; i <= right_max; ++i) {
                  Rat c = binom(n, i);
                  if (c == 0) continue;
                  if (i % 2 != 0) c = -c;
                  SparseVec t1 = basis_product(voa, m + i, v, w);
                  if (!t1.is_zero())
                    res.axpy(-c, apply_product(voa, k + n - i, eu, t1));
                  SparseVec t2 = basis_product(voa, k + i, u, w);
                  if (!t2.is_zero())
                    res.axpy(c * sign_n,
                             apply_product(voa, m + n - i, ev, t2));
                }
                ++report.checked;
                if (!res.is_zero())
                  report.residuals.push_back({k, m, n, u, v, w, res});
              } catch (const OutOfWindowError&) {
                ++report.skipped;
              }
            }
  return report;
}

AxiomReport check_axioms(const VoaData& voa) {
  AxiomReport report;
  SparseVec vac;
  vac.set(voa.vacuum_index, Rat(1));
  if (voa.conformal_index >= 0) {
    int w = voa.conformal_index;
    // Virasoro constraints on conformal self-products: w_(1)w = 2w is the
    // L0 check below; w_(0)w = Tw is unconstrained here; start at n = 2.
    for (int n = 2; n <= voa.window.n_max; ++n) {
      if (product_status(voa, n, w, w) != ProductStatus::Present) {
        if (product_status(voa, n, w, w) == ProductStatus::OutOfWindow)
          ++report.skipped;
        continue;
      }
      SparseVec got = basis_product(voa, n, w, w);
      SparseVec expect;
      if (n == 3) expect.set(voa.vacuum_index, voa.central_charge / 2);
      ++report.checked;
      if (!(got == expect))
        report.failures.push_back("virasoro: w_(" + std::to_string(n) +
                                  ")w unexpected");
    }
    // L0 eigenvalues.
    for (int u = 0; u < voa.dim(); ++u) {
      if (product_status(voa, 1, w, u) != ProductStatus::Present) {
        ++report.skipped;
        continue;
      }
      SparseVec expect;
      expect.set(u, Rat(voa.weights[u]));
      ++report.checked;
      if (!(basis_product(voa, 1, w, u) == expect))
        report.failures.push_back("L0: w_(1)" + voa.symbols[u] +
                                  " != weight * " + voa.symbols[u]);
    }
  }
  // T-derivation spot check on all certified triples.
  for (int u = 0; u < voa.dim(); ++u)
    for (int v = 0; v < voa.dim(); ++v)
      for (int n = voa.window.n_min; n <= voa.window.n_max; ++n) {
        SparseVec eu, ev;
        eu.set(u, Rat(1));
        ev.set(v, Rat(1));
        try {
          SparseVec lhs = translate(voa, basis_product(voa, n, u, v));
          SparseVec rhs = apply_product(voa, n, translate(voa, eu), ev);
          rhs += apply_product(voa, n, eu, translate(voa, ev));
          ++report.checked;
          rhs *= Rat(-1);
          lhs += rhs;
          if (!lhs.is_zero())
            report.failures.push_back("T-derivation fails on " +
                                      prod_loc(voa, n, u, v));
        } catch (const OutOfWindowError&) {
          ++report.skipped;
        }
      }
  return report;
}

}  // namespace qfa
