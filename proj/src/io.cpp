#include "fisherflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace fisherflow {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    throw Error(errc::io_error, std::string(what) + ": malformed JSON");
  }
  return value;
}

double number_field(const json& obj, const char* key, const char* what) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw Error(errc::io_error, std::string(what) + ": missing numeric \"" +
                                    key + "\"");
  }
  return obj[key].get<double>();
}

std::vector<double> vector_field(const json& obj, const char* key,
                                 const char* what) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw Error(errc::io_error,
                std::string(what) + ": missing array \"" + key + "\"");
  }
  std::vector<double> out;
  out.reserve(obj[key].size());
  for (const auto& entry : obj[key]) {
    if (!entry.is_number()) {
      throw Error(errc::io_error, std::string(what) + ": \"" + key +
                                      "\" holds a non-numeric entry");
    }
    out.push_back(entry.get<double>());
  }
  return out;
}

double parse_double(const std::string& token, const char* what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw Error(errc::io_error,
                std::string(what) + ": cannot parse number \"" + token + "\"");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  for (const std::string& token : split(text, ',')) {
    values.push_back(parse_double(token, what));
  }
  return values;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// ── JSON ─────────────────────────────────────────────────────────────────────

std::string cost_to_json(const CostSpec& spec) {
  json obj;
  switch (spec.kind) {
    case CostKind::geometric:
      obj["kind"] = "geometric";
      obj["ratio"] = spec.ratio;
      obj["n"] = spec.n;
      break;
    case CostKind::power:
      obj["kind"] = "power";
      obj["exponent"] = spec.exponent;
      obj["n"] = spec.n;
      break;
    case CostKind::explicit_values:
      obj["kind"] = "explicit";
      obj["values"] = spec.values;
      break;
  }
  if (spec.shift != 0.0) obj["shift"] = spec.shift;
  return obj.dump();
}

CostSpec cost_from_json(const std::string& text) {
  const json obj = parse_json(text, "cost");
  if (!obj.is_object() || !obj.contains("kind") || !obj["kind"].is_string()) {
    throw Error(errc::io_error, "cost: missing string \"kind\"");
  }
  const std::string kind = obj["kind"].get<std::string>();
  const double shift =
      obj.contains("shift") ? number_field(obj, "shift", "cost") : 0.0;
  if (kind == "geometric") {
    return geometric_cost(number_field(obj, "ratio", "cost"),
                          static_cast<std::size_t>(
                              number_field(obj, "n", "cost")),
                          shift);
  }
  if (kind == "power") {
    return power_cost(number_field(obj, "exponent", "cost"),
                      static_cast<std::size_t>(number_field(obj, "n", "cost")),
                      shift);
  }
  if (kind == "explicit") {
    CostSpec spec = explicit_cost(vector_field(obj, "values", "cost"));
    spec.shift = shift;
    return spec;
  }
  throw Error(errc::io_error, "cost: unknown kind \"" + kind + "\"");
}

std::string simplex_to_json(const SimplexPoint& p) {
  json obj;
  obj["weights"] = p.weights();
  return obj.dump();
}

SimplexPoint simplex_from_json(const std::string& text,
                               const Tolerances& tol) {
  const json obj = parse_json(text, "simplex");
  if (!obj.is_object()) {
    throw Error(errc::io_error, "simplex: expected an object");
  }
  std::vector<double> weights = vector_field(obj, "weights", "simplex");
  // Already-normalized weights are taken verbatim so that emit/parse
  // round-trips bit-exactly; anything else goes through normalization.
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) <= tol.tol_sum) {
    return SimplexPoint::from_normalized(std::move(weights), tol);
  }
  return make_simplex(weights, tol);
}

std::string lp_solution_to_json(const LpSolution& sol) {
  json obj;
  obj["maximizer"] = {{"weights", sol.maximizer.weights()}};
  obj["value"] = sol.value;
  obj["certificate_gap"] = sol.certificate_gap;
  obj["horizon"] = sol.horizon;
  obj["converged"] = sol.converged;
  obj["unique_argmax"] = sol.unique_argmax;
  return obj.dump();
}

std::string report_to_json(const IntegrabilityReport& report) {
  json obj;
  obj["max_pairwise_bracket"] = report.max_pairwise_bracket;
  obj["max_bracket_with_Hc"] = report.max_bracket_with_hc;
  obj["max_conservation_drift"] = report.max_conservation_drift;
  obj["negative_control_bracket"] = report.negative_control_bracket;
  obj["samples"] = report.samples;
  obj["seed"] = report.seed;
  return obj.dump();
}

IntegrabilityReport report_from_json(const std::string& text) {
  const json obj = parse_json(text, "report");
  IntegrabilityReport report;
  report.max_pairwise_bracket =
      number_field(obj, "max_pairwise_bracket", "report");
  report.max_bracket_with_hc =
      number_field(obj, "max_bracket_with_Hc", "report");
  report.max_conservation_drift =
      number_field(obj, "max_conservation_drift", "report");
  if (obj.contains("negative_control_bracket")) {
    report.negative_control_bracket =
        number_field(obj, "negative_control_bracket", "report");
  }
  report.samples =
      static_cast<std::size_t>(number_field(obj, "samples", "report"));
  report.seed =
      static_cast<std::uint64_t>(number_field(obj, "seed", "report"));
  return report;
}

std::string trajectory_to_json(const FlowTrajectory& traj) {
  json obj;
  obj["t"] = traj.times;
  json states = json::array();
  for (const SimplexPoint& p : traj.states) states.push_back(p.weights());
  obj["p"] = std::move(states);
  obj["objective"] = traj.objective;
  obj["gap"] = traj.gap;
  return obj.dump();
}

std::string momentum_to_json(const MomentumValue& value) {
  json obj;
  obj["unit"] = MomentumValue::unit();
  obj["coefficients"] = value.coefficients;
  return obj.dump();
}

// ── CSV ──────────────────────────────────────────────────────────────────────

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj) {
  const std::size_t n = traj.dim();
  if (traj.states.size() != traj.times.size() ||
      traj.objective.size() != traj.times.size() ||
      traj.gap.size() != traj.times.size()) {
    throw Error(errc::invalid_spec, "trajectory columns have unequal length");
  }
  out << "t";
  for (std::size_t i = 0; i < n; ++i) out << ",p_" << i;
  out << ",objective,gap\n";
  for (std::size_t row = 0; row < traj.times.size(); ++row) {
    out << format_double(traj.times[row]);
    for (std::size_t i = 0; i < n; ++i) {
      out << ',' << format_double(traj.states[row][i]);
    }
    out << ',' << format_double(traj.objective[row]) << ','
        << format_double(traj.gap[row]) << '\n';
  }
  if (!out) {
    throw Error(errc::io_error, "trajectory write failed");
  }
}

std::string trajectory_to_csv(const FlowTrajectory& traj) {
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  return out.str();
}

FlowTrajectory trajectory_from_csv(std::istream& in, const Tolerances& tol) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(errc::io_error, "trajectory CSV is empty");
  }
  const std::vector<std::string> header = split(line, ',');
  if (header.size() < 4 || header.front() != "t" ||
      header[header.size() - 2] != "objective" || header.back() != "gap") {
    throw Error(errc::io_error, "trajectory CSV header is malformed");
  }
  const std::size_t n = header.size() - 3;
  for (std::size_t i = 0; i < n; ++i) {
    if (header[1 + i] != "p_" + std::to_string(i)) {
      throw Error(errc::io_error, "trajectory CSV header is malformed");
    }
  }
  FlowTrajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw Error(errc::io_error, "trajectory CSV row width mismatch");
    }
    traj.times.push_back(parse_double(cells[0], "trajectory"));
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = parse_double(cells[1 + i], "trajectory");
    }
    traj.states.push_back(
        SimplexPoint::from_normalized(std::move(weights), tol));
    traj.objective.push_back(parse_double(cells[n + 1], "trajectory"));
    traj.gap.push_back(parse_double(cells[n + 2], "trajectory"));
  }
  if (traj.times.empty()) {
    throw Error(errc::io_error, "trajectory CSV has no data rows");
  }
  return traj;
}

FlowTrajectory trajectory_from_csv(const std::string& text,
                                   const Tolerances& tol) {
  std::istringstream in(text);
  return trajectory_from_csv(in, tol);
}

void write_geodesic_csv(std::ostream& out, const GeodesicSegment& seg,
                        std::size_t n_points) {
  if (n_points < 2) {
    throw Error(errc::too_few_points, "need at least 2 sample points");
  }
  const std::size_t n = seg.start().dim();
  out << "t";
  for (std::size_t i = 0; i < n; ++i) out << ",p_" << i;
  out << '\n';
  for (std::size_t row = 0; row < n_points; ++row) {
    const double t =
        static_cast<double>(row) / static_cast<double>(n_points - 1);
    const SimplexPoint p = seg.sample(t);
    out << format_double(t);
    for (std::size_t i = 0; i < n; ++i) out << ',' << format_double(p[i]);
    out << '\n';
  }
  if (!out) {
    throw Error(errc::io_error, "geodesic write failed");
  }
}

// ── CLI argument forms ───────────────────────────────────────────────────────

CostSpec parse_cost_arg(const std::string& text, std::size_t n) {
  if (text.empty()) {
    throw Error(errc::invalid_spec, "cost argument is empty");
  }
  if (text.front() == '{') {
    return cost_from_json(text);
  }
  const std::vector<std::string> parts = split(text, ':');
  const std::string& kind = parts.front();
  const double shift =
      parts.size() > 2 ? parse_double(parts[2], "cost shift") : 0.0;
  if (kind == "geometric" && (parts.size() == 2 || parts.size() == 3)) {
    return geometric_cost(parse_double(parts[1], "geometric ratio"), n, shift);
  }
  if (kind == "power" && (parts.size() == 2 || parts.size() == 3)) {
    return power_cost(parse_double(parts[1], "power exponent"), n, shift);
  }
  if (kind == "explicit" && parts.size() == 2) {
    return explicit_cost(parse_double_list(parts[1], "explicit cost"));
  }
  throw Error(errc::invalid_spec,
              "cost argument must be geometric:R, power:S, explicit:V1,V2,..."
              " (optionally :shift), or JSON");
}

SimplexPoint parse_init_arg(const std::string& text, std::size_t n,
                            std::uint64_t seed, const Tolerances& tol) {
  if (text.empty()) {
    throw Error(errc::invalid_spec, "init argument is empty");
  }
  if (text == "uniform") {
    return uniform_simplex(n);
  }
  if (text == "random") {
    return random_simplex(n, seed);
  }
  if (text.front() == '{') {
    return simplex_from_json(text, tol);
  }
  return make_simplex(parse_double_list(text, "init weights"), tol);
}

}  // namespace fisherflow
