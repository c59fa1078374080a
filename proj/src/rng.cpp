#include "sparsedom/rng.hpp"

#include <cmath>
#include <vector>

namespace sparsedom {

namespace {

struct Spec {
  std::string head;
  std::vector<std::string> args;
};

Spec parse_spec(const std::string& s) {
  Spec out;
  auto open = s.find('(');
  if (open == std::string::npos) {
    out.head = s;
    return out;
  }
  if (s.back() != ')') throw ParseError("unbalanced parens in generator spec: " + s);
  out.head = s.substr(0, open);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  // split on top-level ';' first (product), then ','
  char sep = inner.find(';') != std::string::npos ? ';' : ',';
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.args.push_back(cur);
  return out;
}

double num_arg(const Spec& s, size_t i) {
  if (i >= s.args.size()) throw ParseError("generator " + s.head + " is missing an argument");
  try {
    return std::stod(s.args[i]);
  } catch (const std::exception&) {
    throw ParseError("bad numeric argument in generator spec: " + s.args[i]);
  }
}

// 1d profile along one axis, used directly for dim 1 and by product forms
std::vector<double> profile_1d(const Grid& g, int axis, const std::string& spec, Lcg& rng) {
  Spec s = parse_spec(spec);
  long n = g.cells[axis];
  double lo = g.coord(axis, 0), hi = g.coord(axis, n);
  double mid = 0.5 * (lo + hi);
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  if (s.head == "constant") {
    double c = num_arg(s, 0);
    for (double& x : v) x = c;
  } else if (s.head == "power") {
    double a = num_arg(s, 0);
    for (long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = std::pow(std::abs(g.center(axis, i) - mid), a);
  } else if (s.head == "step") {
    double u = num_arg(s, 0), w = num_arg(s, 1);
    for (long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = g.center(axis, i) < mid ? u : w;
  } else if (s.head == "sign") {
    for (long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = g.center(axis, i) < mid ? -1.0 : 1.0;
  } else if (s.head == "random") {
    double a = num_arg(s, 0), b2 = num_arg(s, 1);
    for (double& x : v) x = rng.uniform(a, b2);
  } else if (s.head == "bumps") {
    long k = static_cast<long>(num_arg(s, 0));
    for (long j = 0; j < k; ++j) {
      long start = rng.uniform_int(0, n - 1);
      long len = rng.uniform_int(1, std::max(1L, n / 4));
      double h = rng.uniform(0.1, 2.0);
      for (long i = start; i < std::min(n, start + len); ++i) v[static_cast<size_t>(i)] += h;
    }
  } else {
    throw ParseError("unknown generator: " + spec);
  }
  return v;
}

}  // namespace

GridFunction generate_function(const Grid& g, const std::string& spec, Lcg& rng) {
  g.validate();
  Spec s = parse_spec(spec);
  GridFunction out(g, 0.0);
  if (g.dim == 1) {
    auto v = profile_1d(g, 0, spec, rng);
    for (long i = 0; i < g.cells[0]; ++i) out.at(i) = v[static_cast<size_t>(i)];
    return out;
  }
  if (s.head == "product") {
    if (s.args.size() != 2) throw ParseError("product generator needs two specs");
    auto vx = profile_1d(g, 0, s.args[0], rng);
    auto vy = profile_1d(g, 1, s.args[1], rng);
    for (long ix = 0; ix < g.cells[0]; ++ix)
      for (long iy = 0; iy < g.cells[1]; ++iy)
        out.at(ix, iy) = vx[static_cast<size_t>(ix)] * vy[static_cast<size_t>(iy)];
    return out;
  }
  if (s.head == "power") {
    // radial from the box midpoint
    double a = num_arg(s, 0);
    double mx = 0.5 * (g.coord(0, 0) + g.coord(0, g.cells[0]));
    double my = 0.5 * (g.coord(1, 0) + g.coord(1, g.cells[1]));
    for (long ix = 0; ix < g.cells[0]; ++ix)
      for (long iy = 0; iy < g.cells[1]; ++iy)
        out.at(ix, iy) = std::pow(std::hypot(g.center(0, ix) - mx, g.center(1, iy) - my), a);
    return out;
  }
  if (s.head == "random") {
    double a = num_arg(s, 0), b2 = num_arg(s, 1);
    for (double& x : out.values) x = rng.uniform(a, b2);
    return out;
  }
  if (s.head == "constant" || s.head == "step" || s.head == "sign") {
    auto vx = profile_1d(g, 0, spec, rng);
    for (long ix = 0; ix < g.cells[0]; ++ix)
      for (long iy = 0; iy < g.cells[1]; ++iy) out.at(ix, iy) = vx[static_cast<size_t>(ix)];
    return out;
  }
  if (s.head == "bumps") {
    long k = static_cast<long>(num_arg(s, 0));
    for (long j = 0; j < k; ++j) {
      long sx = rng.uniform_int(0, g.cells[0] - 1);
      long sy = rng.uniform_int(0, g.cells[1] - 1);
      long lx = rng.uniform_int(1, std::max(1L, g.cells[0] / 4));
      long ly = rng.uniform_int(1, std::max(1L, g.cells[1] / 4));
      double h = rng.uniform(0.1, 2.0);
      for (long ix = sx; ix < std::min(g.cells[0], sx + lx); ++ix)
        for (long iy = sy; iy < std::min(g.cells[1], sy + ly); ++iy) out.at(ix, iy) += h;
    }
    return out;
  }
  throw ParseError("unknown generator: " + spec);
}

}  // namespace sparsedom
