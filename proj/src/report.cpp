#include "sparsedom/report.hpp"

#include <cstring>
#include <sstream>

#include "json.hpp"
#include "sparsedom/grid.hpp"

namespace sparsedom {

namespace {

void fnv_bytes(std::uint64_t& h, const void* data, size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
}

}  // namespace

Digest& Digest::mix(double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  fnv_bytes(h_, &bits, sizeof bits);
  return *this;
}

Digest& Digest::mix(const std::string& s) {
  fnv_bytes(h_, s.data(), s.size());
  return *this;
}

Digest& Digest::mix(const std::vector<double>& xs) {
  for (double x : xs) mix(x);
  return *this;
}

std::string Digest::hex() const {
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h_ >> shift) & 0xf);
  return os.str();
}

double Sample::ratio() const {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

void CheckReport::add(const std::string& label, double l, double r) {
  samples.push_back(Sample{label, l, r});
  empirical_constant = std::max(empirical_constant, samples.back().ratio());
}

void CheckReport::fail(const std::string& why) {
  pass = false;
  if (!note.empty()) note += "; ";
  note += why;
}

void CheckReport::close() {
  if (!(empirical_constant <= ceiling)) pass = false;
}

namespace {

nlohmann::ordered_json report_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "check-report/1";
  j["id"] = r.id;
  j["inputs_digest"] = r.inputs_digest;
  j["empirical_constant"] = format_double(r.empirical_constant);
  j["ceiling"] = std::isfinite(r.ceiling) ? format_double(r.ceiling) : "inf";
  j["pass"] = r.pass;
  j["note"] = r.note;
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.extras) extras[k] = format_double(v);
  j["extras"] = extras;
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    nlohmann::ordered_json sj;
    sj["label"] = s.label;
    sj["lhs"] = format_double(s.lhs);
    sj["rhs"] = format_double(s.rhs);
    samples.push_back(sj);
  }
  j["samples"] = samples;
  return j;
}

}  // namespace

std::string to_json(const CheckReport& r) { return report_json(r).dump(2); }

std::string to_json(const std::vector<CheckReport>& rs) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rs) j.push_back(report_json(r));
  return j.dump(2);
}

std::string to_csv(const std::vector<CheckReport>& rs) {
  std::string out = "check_id,label,lhs,rhs,ratio\n";
  for (const auto& r : rs)
    for (const auto& s : r.samples) {
      out += r.id;
      out += ',';
      out += s.label;
      out += ',';
      out += format_double(s.lhs);
      out += ',';
      out += format_double(s.rhs);
      out += ',';
      out += format_double(s.ratio());
      out += '\n';
    }
  return out;
}

}  // namespace sparsedom
