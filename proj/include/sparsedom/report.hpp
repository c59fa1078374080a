#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace sparsedom {

// FNV-1a over the raw bytes of whatever gets mixed in; used to tie a report
// to its inputs so a reported constant can be reproduced.
class Digest {
 public:
  Digest& mix(double x);
  Digest& mix(const std::string& s);
  Digest& mix(const std::vector<double>& xs);
  std::string hex() const;

 private:
  std::uint64_t h_ = 1469598103934665603ull;
};

struct Sample {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;

  // ratio convention: lhs==0 contributes 0, rhs==0 with lhs>0 is infinite
  double ratio() const;
};

// One verified inequality: samples of both sides, the sup ratio, and the
// ceiling it is held against.  Ceilings default to infinity (smoke mode).
struct CheckReport {
  std::string id;
  std::string inputs_digest;
  std::vector<Sample> samples;
  double empirical_constant = 0.0;
  double ceiling = std::numeric_limits<double>::infinity();
  bool pass = true;
  std::map<std::string, double> extras;
  std::string note;
  double runtime_seconds = 0.0;

  // record a sample and fold its ratio into the running constant
  void add(const std::string& label, double lhs, double rhs);
  // hard-fail regardless of ceiling (certificate violations)
  void fail(const std::string& why);
  // pass = (no hard failure) and empirical_constant <= ceiling
  void close();
};

std::string to_json(const CheckReport& r);
std::string to_json(const std::vector<CheckReport>& rs);
// one row per sample: check_id,label,lhs,rhs,ratio
std::string to_csv(const std::vector<CheckReport>& rs);

}  // namespace sparsedom
