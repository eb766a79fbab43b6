#include "qclocksync/clocks.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qcs::clocks {
namespace {

double parse_number(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in delay model '" +
                                std::string(whole) + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

WorldState advance(WorldState w, double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("advance: dt must be finite and >= 0, got " + format_number(dt));
  }
  w.true_time += dt;
  return w;
}

DelayModel DelayModel::fixed(double d) {
  DelayModel m{DelayKind::fixed, d, d};
  m.validate();
  return m;
}

DelayModel DelayModel::uniform(double lo, double hi) {
  DelayModel m{DelayKind::uniform, lo, hi};
  m.validate();
  return m;
}

DelayModel DelayModel::exponential(double mean) {
  DelayModel m{DelayKind::exponential, mean, mean};
  m.validate();
  return m;
}

void DelayModel::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
    throw std::invalid_argument("delay parameters must be finite and >= 0");
  }
  if (kind == DelayKind::uniform && a > b) {
    throw std::invalid_argument("uniform delay needs min <= max");
  }
}

DelayModel DelayModel::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("delay model '" + std::string(text) +
                                "' must look like fixed:d, uniform:a,b or exp:m");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  if (kind == "fixed") return fixed(parse_number(args, text));
  if (kind == "exp") return exponential(parse_number(args, text));
  if (kind == "uniform") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("uniform delay needs two values: '" + std::string(text) + "'");
    }
    return uniform(parse_number(args.substr(0, comma), text),
                   parse_number(args.substr(comma + 1), text));
  }
  throw std::invalid_argument("unknown delay kind '" + std::string(kind) + "'");
}

std::string DelayModel::to_string() const {
  switch (kind) {
    case DelayKind::fixed:
      return "fixed:" + format_number(a);
    case DelayKind::uniform:
      return "uniform:" + format_number(a) + "," + format_number(b);
    case DelayKind::exponential:
      return "exp:" + format_number(a);
  }
  return {};
}

double sample_delay(const DelayModel& model, Rng& rng) {
  model.validate();
  switch (model.kind) {
    case DelayKind::fixed:
      return model.a;
    case DelayKind::uniform:
      return model.a + (model.b - model.a) * rng.uniform();
    case DelayKind::exponential:
      return model.a * -std::log1p(-rng.uniform());
  }
  return 0.0;
}

}  // namespace qcs::clocks
