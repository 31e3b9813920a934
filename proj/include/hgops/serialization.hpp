#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hgops/moments.hpp"
#include "hgops/probes.hpp"

namespace hgops {

using json = nlohmann::ordered_json;

/// Shared wire schema for series: {"degree": K, "re": [...], "im": [...]}.
inline json series_to_json(const PowerSeries& f) {
  json j;
  j["degree"] = f.degree();
  json re = json::array(), im = json::array();
  for (const cplx& c : f.coeffs()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

inline PowerSeries series_from_json(const json& j) {
  if (!j.contains("degree") || !j.contains("re") || !j.contains("im")) {
    throw domain_error("series JSON must carry degree, re, im");
  }
  const auto degree = j.at("degree").get<std::size_t>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != degree + 1 || im.size() != degree + 1) {
    throw domain_error("series JSON: coefficient arrays must have length degree + 1");
  }
  std::vector<cplx> c(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) {
    c[k] = cplx(re.at(k).get<double>(), im.at(k).get<double>());
  }
  return PowerSeries(std::move(c));
}

inline json space_to_json(const SpaceParams& S) {
  json j;
  j["kind"] = S.kind_name();
  j["p"] = S.p;
  if (S.kind == SpaceKind::Hardy) {
    j["alpha"] = nullptr;
  } else {
    j["alpha"] = S.alpha;
  }
  return j;
}

inline json profile_to_json(const LipschitzProfile& prof) {
  json j;
  j["n_min"] = prof.n_min;
  j["n_max"] = prof.n_max;
  j["p"] = prof.p;
  j["block_norms"] = prof.block_norms;
  j["normalized"] = prof.normalized;
  j["sigma"] = prof.sigma;
  j["tau"] = prof.tau;
  json verdict;
  verdict["lambda_candidate"] = prof.lambda_candidate;
  verdict["little_oh_candidate"] = prof.little_oh_candidate;
  verdict["within_growth"] = prof.within_growth;
  verdict["all_blocks_zero"] = prof.all_blocks_zero;
  j["verdict"] = std::move(verdict);
  return j;
}

/// Deterministic payload (seed-reproducible); wall clock lives in "meta".
inline json report_to_json(const ProbeReport& report) {
  json payload;
  payload["operator"] = report.operator_desc;
  payload["space"] = space_to_json(report.space);
  payload["seed"] = report.config.seed;
  payload["budget"] = report.config.budget;
  if (report.profile_ran) payload["lipschitz"] = profile_to_json(report.profile);
  payload["truncations"] = report.truncations;
  payload["lower_bounds"] = report.lower_bounds;
  payload["lower_bound_growth"] = report.lower_bound_growth;
  if (report.compactness_ran) {
    json c;
    c["N"] = report.compactness.N_list;
    c["values"] = report.compactness.values;
    c["slope"] = report.compactness.slope;
    c["decay_factor"] = report.compactness.decay_factor;
    c["compact_candidate"] = report.compactness.compact_candidate;
    payload["compactness"] = std::move(c);
  }
  payload["verdict"] = to_string(report.verdict);
  payload["prediction"] = report.prediction;
  payload["prediction_open"] = report.prediction_open;
  payload["agreement"] = report.agreement;

  json j;
  j["payload"] = std::move(payload);
  j["meta"] = json{{"wall_clock_seconds", report.wall_clock_seconds},
                   {"threads", report.config.threads}};
  return j;
}

/// CSV with fixed, locale-independent formatting ('.' decimal separator).
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out_ << ',';
      out_ << header_[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    char buf[40];
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      // to_chars: shortest round-trip representation, locale-independent
      const auto res = std::to_chars(buf, buf + sizeof(buf), values[i]);
      out_.write(buf, res.ptr - buf);
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::vector<std::string> header_;
  std::ostringstream out_;
};

inline std::string profile_to_csv(const LipschitzProfile& prof) {
  CsvWriter csv({"n", "block_norm", "normalized"});
  for (std::size_t i = 0; i < prof.block_norms.size(); ++i) {
    csv.row({static_cast<double>(prof.n_min + static_cast<int>(i)), prof.block_norms[i],
             prof.normalized[i]});
  }
  return csv.str();
}

inline std::string ladder_to_csv(const CompactnessResult& res) {
  CsvWriter csv({"N", "estimate"});
  for (std::size_t i = 0; i < res.N_list.size(); ++i) {
    csv.row({static_cast<double>(res.N_list[i]), res.values[i]});
  }
  return csv.str();
}

inline std::string hs_to_csv(const std::vector<double>& partial_sums) {
  CsvWriter csv({"K", "partial_sum"});
  for (std::size_t i = 0; i < partial_sums.size(); ++i) {
    csv.row({static_cast<double>(i + 1), partial_sums[i]});
  }
  return csv.str();
}

}  // namespace hgops
