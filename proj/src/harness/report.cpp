#include "qclocksync/report.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qcs::harness {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "qclocksync-report";

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Json config_json(const ExperimentSpec& s) {
  Json j;
  j["mode"] = std::string(to_string(s.mode));
  j["delta"] = s.delta_true;
  j["delta_max"] = s.delta_max;
  j["n_bits"] = s.n_bits;
  j["epsilon"] = s.epsilon;
  j["trials"] = s.trials;
  j["delay"] = s.delay.to_string();
  j["holding"] = s.holding ? Json(s.holding->to_string()) : Json(nullptr);
  j["seed"] = s.seed;
  j["omega"] = optional_json(s.omega);
  j["parallel_t"] = s.parallel_t;
  return j;
}

ExperimentSpec config_from(const Json& j) {
  ExperimentSpec s;
  s.mode = parse_mode(j.at("mode").get<std::string>());
  s.delta_true = j.at("delta").get<double>();
  s.delta_max = j.at("delta_max").get<double>();
  s.n_bits = j.at("n_bits").get<int>();
  s.epsilon = j.at("epsilon").get<double>();
  s.trials = j.at("trials").get<std::uint64_t>();
  s.delay = clocks::DelayModel::parse(j.at("delay").get<std::string>());
  if (auto h = optional_from<std::string>(j, "holding")) s.holding = clocks::DelayModel::parse(*h);
  s.seed = j.at("seed").get<std::uint64_t>();
  s.omega = optional_from<double>(j, "omega");
  s.parallel_t = j.at("parallel_t").get<bool>();
  return s;
}

Json trial_json(const TrialRecord& r) {
  Json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["delta_true"] = r.delta_true;
  j["omega"] = r.omega;
  j["j"] = optional_json(r.j);
  j["omega_delta_hat"] = optional_json(r.omega_delta_hat);
  j["delta_hat"] = optional_json(r.delta_hat);
  j["success"] = optional_json(r.success);
  j["qubit_messages"] = r.qubit_messages;
  j["check_error"] = optional_json(r.check_error);
  j["traces"] = {{"handshakes", r.traces.handshakes},
                 {"transit_total", r.traces.transit_total},
                 {"holding_total", r.traces.holding_total},
                 {"max_residual", r.traces.max_residual}};
  return j;
}

TrialRecord trial_from(const Json& j) {
  TrialRecord r;
  r.trial = j.at("trial").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.delta_true = j.at("delta_true").get<double>();
  r.omega = j.at("omega").get<double>();
  r.j = optional_from<std::uint64_t>(j, "j");
  r.omega_delta_hat = optional_from<double>(j, "omega_delta_hat");
  r.delta_hat = optional_from<double>(j, "delta_hat");
  r.success = optional_from<bool>(j, "success");
  r.qubit_messages = j.at("qubit_messages").get<std::uint64_t>();
  r.check_error = optional_from<double>(j, "check_error");
  const Json& t = j.at("traces");
  r.traces.handshakes = t.at("handshakes").get<std::uint64_t>();
  r.traces.transit_total = t.at("transit_total").get<double>();
  r.traces.holding_total = t.at("holding_total").get<double>();
  r.traces.max_residual = t.at("max_residual").get<double>();
  return r;
}

Json aggregates_json(const Aggregates& a) {
  Json j;
  j["trials"] = a.trials;
  j["scored_trials"] = a.scored_trials;
  j["successes"] = a.successes;
  j["success_rate"] = a.success_rate;
  j["mean_abs_error"] = optional_json(a.mean_abs_error);
  j["total_qubit_messages"] = a.total_qubit_messages;
  j["total_handshakes"] = a.total_handshakes;
  j["max_check_error"] = optional_json(a.max_check_error);
  return j;
}

Aggregates aggregates_from(const Json& j) {
  Aggregates a;
  a.trials = j.at("trials").get<std::uint64_t>();
  a.scored_trials = j.at("scored_trials").get<std::uint64_t>();
  a.successes = j.at("successes").get<std::uint64_t>();
  a.success_rate = j.at("success_rate").get<double>();
  a.mean_abs_error = optional_from<double>(j, "mean_abs_error");
  a.total_qubit_messages = j.at("total_qubit_messages").get<std::uint64_t>();
  a.total_handshakes = j.at("total_handshakes").get<std::uint64_t>();
  a.max_check_error = optional_from<double>(j, "max_check_error");
  return a;
}

Json ramsey_json(const RamseySummary& s) {
  Json j;
  j["omega"] = s.omega;
  j["repetitions"] = s.repetitions;
  j["zeros"] = s.zeros;
  j["p0_hat"] = s.p0_hat;
  j["p0_expected"] = s.p0_expected;
  j["candidates_omega_delta"] = s.candidates_omega_delta;
  j["candidates_delta"] = s.candidates_delta;
  j["success"] = s.success;
  return j;
}

RamseySummary ramsey_from(const Json& j) {
  RamseySummary s;
  s.omega = j.at("omega").get<double>();
  s.repetitions = j.at("repetitions").get<std::uint64_t>();
  s.zeros = j.at("zeros").get<std::uint64_t>();
  s.p0_hat = j.at("p0_hat").get<double>();
  s.p0_expected = j.at("p0_expected").get<double>();
  s.candidates_omega_delta = j.at("candidates_omega_delta").get<std::vector<double>>();
  s.candidates_delta = j.at("candidates_delta").get<std::vector<double>>();
  s.success = j.at("success").get<bool>();
  return s;
}

}  // namespace

Json to_json(const Report& report) {
  Json j;
  j["format"] = kFormat;
  j["version"] = kReportVersion;
  j["units"] = {{"time", "s"}, {"frequency", "rad/s"}};
  j["config"] = config_json(report.config);
  j["derived"] = {{"m", report.m}, {"omega_base", report.omega_base}};
  j["aggregates"] = aggregates_json(report.aggregates);
  j["ramsey"] = report.ramsey ? ramsey_json(*report.ramsey) : Json(nullptr);
  Json trials = Json::array();
  for (const TrialRecord& r : report.trials) trials.push_back(trial_json(r));
  j["trials"] = std::move(trials);
  return j;
}

Report report_from_json(const Json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ConfigError("format", "not a report");
    if (j.at("version").get<int>() != kReportVersion) {
      throw ConfigError("version", "unsupported report version");
    }
    Report report;
    report.config = config_from(j.at("config"));
    report.m = j.at("derived").at("m").get<int>();
    report.omega_base = j.at("derived").at("omega_base").get<double>();
    report.aggregates = aggregates_from(j.at("aggregates"));
    if (!j.at("ramsey").is_null()) report.ramsey = ramsey_from(j.at("ramsey"));
    for (const Json& t : j.at("trials")) report.trials.push_back(trial_from(t));
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("report", e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("report", e.what());
  }
}

std::string serialize_report(const Report& report) { return to_json(report).dump(2) + "\n"; }

Report parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("report", e.what());
  }
  return report_from_json(j);
}

std::string csv_rows(const Report& report) {
  std::string out = "trial,j,omega_delta_hat,delta_hat,success,qubit_messages\n";
  for (const TrialRecord& r : report.trials) {
    out += std::to_string(r.trial) + ',';
    if (r.j) out += std::to_string(*r.j);
    out += ',';
    if (r.omega_delta_hat) out += number(*r.omega_delta_hat);
    out += ',';
    if (r.delta_hat) out += number(*r.delta_hat);
    out += ',';
    if (r.success) out += *r.success ? "1" : "0";
    out += ',' + std::to_string(r.qubit_messages) + '\n';
  }
  return out;
}

std::string summary_line(const Report& report) {
  const Aggregates& a = report.aggregates;
  std::ostringstream os;
  os << to_string(report.config.mode) << ": trials=" << a.trials << " m=" << report.m
     << " omega_base=" << number(report.omega_base) << " rad/s";
  if (a.scored_trials) os << " success_rate=" << number(a.success_rate);
  if (a.mean_abs_error) os << " mean_abs_error=" << number(*a.mean_abs_error) << " s";
  if (a.max_check_error) os << " max_check_error=" << number(*a.max_check_error);
  if (report.ramsey) {
    os << " p0_hat=" << number(report.ramsey->p0_hat)
       << " p0_expected=" << number(report.ramsey->p0_expected);
  }
  os << " qubit_messages=" << a.total_qubit_messages;
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace

void emit_report(const Report& report, const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& csv_path, std::ostream& summary) {
  write_file(path, serialize_report(report));
  if (csv_path) write_file(*csv_path, csv_rows(report));
  summary << summary_line(report) << '\n';
}

Report load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path.string(), "read failed");
  return parse_report(buf.str());
}

}  // namespace qcs::harness
