#include "sparsedom/sparse_family.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace sparsedom {

namespace {

bool strictly_inside(const CellBox& a, const CellBox& b) {
  return b.contains(a) && !(a == b);
}

void for_each_cell(const CellBox& q, int dim, const std::function<void(long, long)>& fn) {
  if (dim == 1) {
    for (long i = q.lo[0]; i < q.lo[0] + q.side; ++i) fn(i, 0);
  } else {
    for (long i = q.lo[0]; i < q.lo[0] + q.side; ++i)
      for (long j = q.lo[1]; j < q.lo[1] + q.side; ++j) fn(i, j);
  }
}

}  // namespace

const std::vector<std::vector<std::array<long, 2>>>& SparseFamily::witnesses() const {
  if (!witnesses_) throw StructuralError("family has no witnesses; run verify_sparse first");
  return *witnesses_;
}

void SparseFamily::set_witnesses(std::vector<std::vector<std::array<long, 2>>> w, double eta) {
  if (w.size() != cubes_.size()) throw ContractError("witness count mismatch");
  witnesses_ = std::move(w);
  eta_ = eta;
}

double carleson_constant(const SparseFamily& s) {
  const auto& cubes = s.cubes();
  if (cubes.empty()) return 0.0;
  const int dim = s.geometry().dim;
  double best = 0.0;
  for (const CellBox& q : cubes) {
    long total = 0;
    for (const CellBox& p : cubes)
      if (q.contains(p)) total += p.cell_count(dim);
    best = std::max(best, static_cast<double>(total) / static_cast<double>(q.cell_count(dim)));
  }
  return best;
}

SparseVerification verify_sparse(SparseFamily& s, double eta) {
  if (!(eta > 0.0) || eta > 1.0) throw ParameterError("eta must be in (0, 1]");
  const int dim = s.geometry().dim;
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const CellBox &qa = s.cubes()[a], &qb = s.cubes()[b];
    if (qa.side != qb.side) return qa.side < qb.side;
    return qa.lo < qb.lo;
  });

  std::unordered_set<std::int64_t> claimed;
  std::vector<std::vector<std::array<long, 2>>> wit(s.size());
  SparseVerification out;
  out.eta = eta;
  for (std::size_t idx : order) {
    const CellBox& q = s.cubes()[idx];
    auto& cells = wit[idx];
    for_each_cell(q, dim, [&](long i, long j) {
      if (claimed.insert(cell_key(i, j)).second) cells.push_back({i, j});
    });
    double total = static_cast<double>(q.cell_count(dim));
    double frac = static_cast<double>(cells.size()) / total;
    if (static_cast<double>(cells.size()) + 1e-9 * total < eta * total) {
      out.success = false;
      out.failing_cube = idx;
      out.failing_fraction = frac;
      out.carleson = carleson_constant(s);
      return out;
    }
  }
  out.success = true;
  out.carleson = carleson_constant(s);
  s.set_witnesses(std::move(wit), eta);
  return out;
}

std::vector<SparseFamily> split_family(const SparseFamily& s, double eta, int m) {
  if (m < 2) throw ParameterError("split requires m >= 2");
  if (!(eta > 0.0) || eta > 1.0) throw ParameterError("eta must be in (0, 1]");
  const auto& cubes = s.cubes();
  std::vector<int> depth(cubes.size(), 0);
  for (std::size_t i = 0; i < cubes.size(); ++i)
    for (std::size_t j = 0; j < cubes.size(); ++j)
      if (i != j && strictly_inside(cubes[i], cubes[j])) ++depth[i];

  std::vector<SparseFamily> parts;
  for (int j = 0; j < m; ++j) parts.emplace_back(s.geometry(), std::vector<CellBox>{});
  for (std::size_t i = 0; i < cubes.size(); ++i)
    parts[static_cast<std::size_t>(depth[i] % m)].add(cubes[i]);

  double eta_target = static_cast<double>(m) / (static_cast<double>(m) + 1.0 / eta - 1.0);
  for (int j = 0; j < m; ++j) {
    auto v = verify_sparse(parts[static_cast<std::size_t>(j)], eta_target);
    if (!v.success) {
      std::ostringstream os;
      os << "split part " << j << " failed verification at eta=" << eta_target
         << " (cube " << v.failing_cube << ", fraction " << v.failing_fraction << ")";
      throw StructuralError(os.str());
    }
  }
  return parts;
}

SparseFamily augment(const SparseFamily& s, const std::vector<SparseFamily>& f,
                     double eta0, double eta) {
  if (f.size() != s.size()) throw ContractError("one augmentation family per cube required");
  const auto& cubes = s.cubes();
  std::vector<CellBox> out;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const CellBox& q = cubes[i];
    bool has_root = false;
    for (const CellBox& p : f[i].cubes()) {
      if (p == q) has_root = true;
      if (!q.contains(p))
        throw ContractError("augmentation family member escapes its root cube");
    }
    if (!has_root) throw ContractError("augmentation family must contain its root cube");
    for (const CellBox& p : f[i].cubes()) {
      bool dropped = false;
      for (const CellBox& r : cubes)
        if (strictly_inside(r, q) && r.contains(p)) { dropped = true; break; }
      if (!dropped) out.push_back(p);
    }
  }
  // dedupe (a cube can enter via several roots)
  std::sort(out.begin(), out.end(), [](const CellBox& a, const CellBox& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.lo < b.lo;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());

  SparseFamily result(s.geometry(), std::move(out));
  double eta_target = eta * eta0 / (1.0 + eta);
  auto v = verify_sparse(result, eta_target);
  if (!v.success)
    throw StructuralError("augmented family failed verification at its guaranteed density");
  return result;
}

LayerDecomposition layer_decomposition(const SparseFamily& fk, int k) {
  if (k < 0) throw ParameterError("layer offset exponent must be >= 0");
  const auto& cubes = fk.cubes();
  const int dim = fk.geometry().dim;
  LayerDecomposition out;
  out.layer_of.assign(cubes.size(), -1);

  std::vector<bool> assigned(cubes.size(), false);
  std::size_t remaining = cubes.size();
  while (remaining > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      if (assigned[i]) continue;
      bool maximal = true;
      for (std::size_t j = 0; j < cubes.size(); ++j)
        if (j != i && !assigned[j] && strictly_inside(cubes[i], cubes[j])) { maximal = false; break; }
      if (maximal) layer.push_back(i);
    }
    for (std::size_t i : layer) {
      assigned[i] = true;
      out.layer_of[i] = static_cast<int>(out.layers.size());
    }
    remaining -= layer.size();
    out.layers.push_back(std::move(layer));
  }

  out.witness_cells.resize(cubes.size());
  out.deep_cubes.resize(cubes.size());
  const long offset = 1L << k;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    int nu = out.layer_of[i];
    // E_Q: cells of Q not covered by next-layer cubes inside Q
    std::vector<const CellBox*> next;
    if (nu + 1 < static_cast<int>(out.layers.size()))
      for (std::size_t j : out.layers[static_cast<std::size_t>(nu + 1)])
        if (cubes[i].contains(cubes[j])) next.push_back(&cubes[j]);
    for_each_cell(cubes[i], dim, [&](long x, long y) {
      for (const CellBox* p : next)
        if (p->contains_cell(x, y)) return;
      out.witness_cells[i].push_back({x, y});
    });
    // A_k(Q): cubes 2^k layers deeper inside Q
    long deep = nu + offset;
    if (deep < static_cast<long>(out.layers.size()))
      for (std::size_t j : out.layers[static_cast<std::size_t>(deep)])
        if (cubes[i].contains(cubes[j])) out.deep_cubes[i].push_back(j);
  }
  return out;
}

// ---- serialization ----------------------------------------------------

std::string SparseFamily::to_text() const {
  std::ostringstream os;
  os << "dim " << geom_.dim << "\n";
  os << "origin";
  for (int a = 0; a < geom_.dim; ++a) os << ' ' << format_double(geom_.origin[a]);
  os << "\nh " << format_double(geom_.h) << "\n";
  os << "cubes " << cubes_.size() << "\n";
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    Cube q = to_cube(geom_, cubes_[i]);
    for (int a = 0; a < geom_.dim; ++a) os << format_double(q.anchor[a]) << ' ';
    os << format_double(q.side);
    if (witnesses_) {
      os << " W";
      for (const auto& c : (*witnesses_)[i]) {
        os << ' ' << c[0];
        if (geom_.dim == 2) os << ',' << c[1];
      }
    }
    os << "\n";
  }
  return os.str();
}

SparseFamily SparseFamily::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  SparseFamily s;
  auto expect = [&](const char* kw) {
    if (!(is >> tok) || tok != kw) throw ParseError(std::string("expected '") + kw + "' in family text");
  };
  expect("dim");
  if (!(is >> s.geom_.dim) || (s.geom_.dim != 1 && s.geom_.dim != 2)) throw ParseError("bad dim");
  expect("origin");
  for (int a = 0; a < s.geom_.dim; ++a)
    if (!(is >> s.geom_.origin[a])) throw ParseError("bad origin");
  expect("h");
  if (!(is >> s.geom_.h)) throw ParseError("bad h");
  expect("cubes");
  std::size_t n = 0;
  if (!(is >> n)) throw ParseError("bad cube count");
  is >> std::ws;
  std::vector<std::vector<std::array<long, 2>>> wit;
  bool any_wit = false;
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("missing cube line");
    std::istringstream ls(line);
    Cube q;
    for (int a = 0; a < s.geom_.dim; ++a)
      if (!(ls >> q.anchor[a])) throw ParseError("bad cube anchor");
    if (!(ls >> q.side)) throw ParseError("bad cube side");
    s.cubes_.push_back(to_cellbox(s.geom_, q));
    wit.emplace_back();
    if (ls >> tok) {
      if (tok != "W") throw ParseError("unexpected token on cube line");
      any_wit = true;
      while (ls >> tok) {
        std::array<long, 2> c{0, 0};
        auto comma = tok.find(',');
        c[0] = std::stol(tok.substr(0, comma));
        if (comma != std::string::npos) c[1] = std::stol(tok.substr(comma + 1));
        wit.back().push_back(c);
      }
    }
  }
  if (any_wit) s.witnesses_ = std::move(wit);
  return s;
}

std::string SparseFamily::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = geom_.dim;
  j["origin"] = std::vector<double>(geom_.origin.begin(), geom_.origin.begin() + geom_.dim);
  j["h"] = geom_.h;
  auto cubes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    nlohmann::ordered_json c;
    Cube q = to_cube(geom_, cubes_[i]);
    c["anchor"] = std::vector<double>(q.anchor.begin(), q.anchor.begin() + geom_.dim);
    c["side"] = q.side;
    if (witnesses_) {
      auto cells = nlohmann::ordered_json::array();
      for (const auto& w : (*witnesses_)[i])
        cells.push_back(geom_.dim == 1 ? nlohmann::ordered_json::array({w[0]})
                                       : nlohmann::ordered_json::array({w[0], w[1]}));
      c["witness"] = cells;
    }
    cubes.push_back(c);
  }
  j["cubes"] = cubes;
  return j.dump();
}

SparseFamily SparseFamily::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad family json: ") + e.what());
  }
  SparseFamily s;
  s.geom_.dim = j.at("dim").get<int>();
  auto o = j.at("origin").get<std::vector<double>>();
  for (int a = 0; a < s.geom_.dim; ++a) s.geom_.origin[a] = o[static_cast<size_t>(a)];
  s.geom_.h = j.at("h").get<double>();
  std::vector<std::vector<std::array<long, 2>>> wit;
  bool any_wit = false;
  for (const auto& c : j.at("cubes")) {
    Cube q;
    auto anchor = c.at("anchor").get<std::vector<double>>();
    for (int a = 0; a < s.geom_.dim; ++a) q.anchor[a] = anchor[static_cast<size_t>(a)];
    q.side = c.at("side").get<double>();
    s.cubes_.push_back(to_cellbox(s.geom_, q));
    wit.emplace_back();
    if (c.contains("witness")) {
      any_wit = true;
      for (const auto& w : c.at("witness")) {
        std::array<long, 2> cc{0, 0};
        cc[0] = w.at(0).get<long>();
        if (w.size() > 1) cc[1] = w.at(1).get<long>();
        wit.back().push_back(cc);
      }
    }
  }
  if (any_wit) s.witnesses_ = std::move(wit);
  return s;
}

}  // namespace sparsedom
