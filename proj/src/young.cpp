#include "sparsedom/young.hpp"

#include <cmath>
#include <sstream>

namespace sparsedom {

double solve_increasing(const std::function<double(double)>& fn, double target,
                        double hint, double rel_tol) {
  if (!(target >= 0.0) || !std::isfinite(target)) throw ParameterError("solve target must be finite and >= 0");
  if (target == 0.0) return 0.0;
  double hi = hint > 0 ? hint : 1.0;
  int guard = 0;
  while (fn(hi) < target) {
    hi *= 2.0;
    if (++guard > 4000 || !std::isfinite(hi))
      throw ContractError("monotone solve failed to bracket the target");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > rel_tol * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (fn(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

double YoungFunction::inverse(double s) const {
  return solve_increasing([this](double t) { return value(t); }, s);
}

namespace {

constexpr double kE = 2.718281828459045235;

class LLogLPower final : public YoungFunction {
 public:
  explicit LLogLPower(double eps) : eps_(eps) {
    if (!(eps > 0.0)) throw ParameterError("phi_eps exponent must be positive");
  }
  double value(double t) const override { return t * std::pow(std::log(kE + t), eps_); }
  // Fixed point x = s / log^eps(e + x); contractive near the root for any
  // s >= 0, reaches machine precision in a handful of steps.
  double inverse(double s) const override {
    if (s <= 0.0) return 0.0;
    double x = s;
    for (int it = 0; it < 200; ++it) {
      double nx = s / std::pow(std::log(kE + x), eps_);
      if (std::abs(nx - x) <= 1e-15 * nx) return nx;
      x = nx;
    }
    return x;
  }
  std::string name() const override {
    if (eps_ == 1.0) return "phi_llogl";
    std::ostringstream os;
    os << "phi_eps(" << eps_ << ")";
    return os.str();
  }

 private:
  double eps_;
};

class LogLogType final : public YoungFunction {
 public:
  explicit LogLogType(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0)) throw ParameterError("phi_loglog exponent must be positive");
  }
  double value(double t) const override {
    return t * std::pow(std::log(std::log(std::exp(kE) + t)), alpha_);
  }
  double inverse(double s) const override {
    if (s <= 0.0) return 0.0;
    double x = s;
    for (int it = 0; it < 200; ++it) {
      double nx = s / std::pow(std::log(std::log(std::exp(kE) + x)), alpha_);
      if (std::abs(nx - x) <= 1e-15 * nx) return nx;
      x = nx;
    }
    return x;
  }
  std::string name() const override {
    std::ostringstream os;
    os << "phi_loglog(" << alpha_ << ")";
    return os.str();
  }

 private:
  double alpha_;
};

class ExpMinusOne final : public YoungFunction {
 public:
  double value(double t) const override { return std::expm1(t); }
  double inverse(double s) const override { return std::log1p(s); }
  std::string name() const override { return "exp_minus_one"; }
};

class PowerFn final : public YoungFunction {
 public:
  explicit PowerFn(double r) : r_(r) {
    if (!(r >= 1.0)) throw ParameterError("power exponent must be >= 1");
  }
  double value(double t) const override { return std::pow(t, r_); }
  double inverse(double s) const override { return std::pow(s, 1.0 / r_); }
  double power_form() const override { return r_; }
  std::string name() const override {
    std::ostringstream os;
    os << "power(" << r_ << ")";
    return os.str();
  }

 private:
  double r_;
};

class IdentityFn final : public YoungFunction {
 public:
  double value(double t) const override { return t; }
  double inverse(double s) const override { return s; }
  double power_form() const override { return 1.0; }
  std::string name() const override { return "identity"; }
};

class ComposeLLogL final : public YoungFunction {
 public:
  explicit ComposeLLogL(YoungPtr inner) : inner_(std::move(inner)), outer_(young_llogl()) {}
  double value(double t) const override { return outer_->value(inner_->value(t)); }
  double inverse(double s) const override { return inner_->inverse(outer_->inverse(s)); }
  std::string name() const override { return "compose_llogl(" + inner_->name() + ")"; }

 private:
  YoungPtr inner_, outer_;
};

class CallableFn final : public YoungFunction {
 public:
  CallableFn(std::string name, std::function<double(double)> value)
      : name_(std::move(name)), value_(std::move(value)) {}
  double value(double t) const override { return value_(t); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  std::function<double(double)> value_;
};

class FromInverseFn final : public YoungFunction {
 public:
  FromInverseFn(std::string name, std::function<double(double)> inv)
      : name_(std::move(name)), inv_(std::move(inv)) {}
  double value(double t) const override {
    return solve_increasing(inv_, t);
  }
  double inverse(double s) const override { return inv_(s); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  std::function<double(double)> inv_;
};

class Complementary final : public YoungFunction {
 public:
  explicit Complementary(YoungPtr base) : base_(std::move(base)) {}
  double value(double t) const override {
    if (t <= 0.0) return 0.0;
    auto g = [&](double x) { return x * t - base_->value(x); };
    double hi = 1.0;
    while (g(2.0 * hi) > g(hi)) {
      hi *= 2.0;
      if (hi > 1e100)
        throw ContractError("complementary sup diverges (input not a Young function)");
    }
    hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * (1.0 + hi); ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (g(m1) < g(m2)) lo = m1; else hi = m2;
    }
    return std::max(0.0, g(0.5 * (lo + hi)));
  }
  std::string name() const override { return "complementary(" + base_->name() + ")"; }

 private:
  YoungPtr base_;
};

}  // namespace

YoungPtr young_llogl() { return std::make_shared<LLogLPower>(1.0); }
YoungPtr young_llogl_power(double eps) { return std::make_shared<LLogLPower>(eps); }
YoungPtr young_loglog(double alpha) { return std::make_shared<LogLogType>(alpha); }
YoungPtr young_exp_minus_one() { return std::make_shared<ExpMinusOne>(); }
YoungPtr young_power(double r) {
  if (r == 1.0) return young_identity();
  return std::make_shared<PowerFn>(r);
}
YoungPtr young_identity() { return std::make_shared<IdentityFn>(); }
YoungPtr young_compose_llogl(YoungPtr inner) { return std::make_shared<ComposeLLogL>(std::move(inner)); }

YoungPtr young_from_callable(std::string name, std::function<double(double)> value) {
  return std::make_shared<CallableFn>(std::move(name), std::move(value));
}

YoungPtr young_from_inverse(std::string name, std::function<double(double)> inv) {
  return std::make_shared<FromInverseFn>(std::move(name), std::move(inv));
}

YoungPtr complementary(YoungPtr phi) { return std::make_shared<Complementary>(std::move(phi)); }

double complementary_inverse(const YoungFunction& phi, double s) {
  Complementary bar(YoungPtr(&phi, [](const YoungFunction*) {}));
  return solve_increasing([&](double t) { return bar.value(t); }, s);
}

YoungPtr make_young(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos) {
    if (spec == "phi_llogl") return young_llogl();
    if (spec == "exp_minus_one") return young_exp_minus_one();
    if (spec == "identity") return young_identity();
    throw ParseError("unknown Young function: " + spec);
  }
  if (spec.back() != ')') throw ParseError("unbalanced parens in Young function spec: " + spec);
  std::string head = spec.substr(0, open);
  std::string arg = spec.substr(open + 1, spec.size() - open - 2);
  if (head == "compose_llogl") return young_compose_llogl(make_young(arg));
  double x = 0.0;
  try {
    x = std::stod(arg);
  } catch (const std::exception&) {
    throw ParseError("bad numeric argument in Young function spec: " + spec);
  }
  if (head == "phi_eps") return young_llogl_power(x);
  if (head == "phi_loglog") return young_loglog(x);
  if (head == "power") return young_power(x);
  throw ParseError("unknown Young function: " + spec);
}

}  // namespace sparsedom
