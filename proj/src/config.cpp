#include "abrasim/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace abrasim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s:%d: %s", origin.c_str(), line, msg.c_str());
  throw ConfigError(buf);
}

double parse_double(const std::string& origin, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    fail(origin, line, "expected a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& origin, int line, const std::string& v) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(origin, line, "expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_uint(const std::string& origin, int line, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(origin, line, "expected a nonnegative integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& origin, int line, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(origin, line, "expected true/false, got '" + v + "'");
}

// "1..20" or an explicit list "1 2 5".
std::vector<std::uint64_t> parse_seeds(const std::string& origin, int line,
                                       const std::string& v) {
  std::vector<std::uint64_t> out;
  auto dots = v.find("..");
  if (dots != std::string::npos && v.find(' ') == std::string::npos) {
    std::uint64_t lo = parse_uint(origin, line, trim(v.substr(0, dots)));
    std::uint64_t hi = parse_uint(origin, line, trim(v.substr(dots + 2)));
    if (hi < lo) fail(origin, line, "seed range end below start");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  for (const auto& tok : split_ws(v)) out.push_back(parse_uint(origin, line, tok));
  return out;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
  ParsedConfig out;
  Scenario& sc = out.scenario;
  SimConfig& c = sc.config;

  bool have_sweep = false;
  SweepSpec sweep;

  std::string section;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(raw);
    if (auto hash = s.find('#'); hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "scenario" && section != "route" && section != "sweep")
        fail(origin, line, "unknown section [" + section + "]");
      if (section == "sweep") have_sweep = true;
      continue;
    }

    auto eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(origin, line, "empty key");
    if (val.empty()) fail(origin, line, "empty value for '" + key + "'");
    if (section.empty()) fail(origin, line, "key '" + key + "' outside any section");

    if (section == "scenario") {
      if (key == "label") sc.label = val;
      else if (key == "variant") {
        if (!cc::variant_from_name(val, &c.cc.variant))
          fail(origin, line, "unknown variant '" + val + "' (reno|newreno|abra-newreno)");
      }
      else if (key == "mss") c.cc.mss = parse_int(origin, line, val);
      else if (key == "initial_cwnd") c.cc.initial_cwnd = parse_int(origin, line, val);
      else if (key == "restart_cwnd") c.cc.restart_cwnd = parse_int(origin, line, val);
      else if (key == "initial_ssthresh") c.cc.initial_ssthresh = parse_int(origin, line, val);
      else if (key == "receiver_window") c.receiver_window = parse_int(origin, line, val);
      else if (key == "transfer_bytes") c.transfer_bytes = parse_int(origin, line, val);
      else if (key == "t_end") c.t_end = parse_double(origin, line, val);
      else if (key == "seed") c.seed = parse_uint(origin, line, val);
      else if (key == "rto_floor") c.est.rto_floor = parse_double(origin, line, val);
      else if (key == "rto_ceiling") c.est.rto_ceiling = parse_double(origin, line, val);
      else if (key == "rto_initial") c.est.rto_initial = parse_double(origin, line, val);
      else if (key == "min_srtt_init") c.est.min_srtt_init = parse_double(origin, line, val);
      else if (key == "max_srtt_init") c.est.max_srtt_init = parse_double(origin, line, val);
      else if (key == "restore_ssthresh_on_ack")
        c.restore_ssthresh_on_ack = parse_bool(origin, line, val);
      else fail(origin, line, "unknown key '" + key + "' in [scenario]");
    } else if (section == "route") {
      RouteParams& r = c.route;
      if (key == "base_delay") r.base_delay = parse_double(origin, line, val);
      else if (key == "delay_jitter") r.delay_jitter = parse_double(origin, line, val);
      else if (key == "random_loss_prob") r.random_loss_prob = parse_double(origin, line, val);
      else if (key == "outage_rate") r.outage_rate = parse_double(origin, line, val);
      else if (key == "outage_duration_min") r.outage_duration_min = parse_double(origin, line, val);
      else if (key == "outage_duration_max") r.outage_duration_max = parse_double(origin, line, val);
      else if (key == "scripted_outages") {
        for (const auto& tok : split_ws(val)) {
          auto colon = tok.find(':');
          if (colon == std::string::npos)
            fail(origin, line, "scripted outage must be start:duration");
          double start = parse_double(origin, line, tok.substr(0, colon));
          double dur = parse_double(origin, line, tok.substr(colon + 1));
          r.scripted_outages.emplace_back(start, dur);
        }
      } else if (key == "scripted_drops") {
        for (const auto& tok : split_ws(val))
          r.scripted_drops.push_back(parse_int(origin, line, tok));
      } else fail(origin, line, "unknown key '" + key + "' in [route]");
    } else {  // sweep
      if (key == "axis") {
        if (!sweep_axis_from_name(val, &sweep.axis))
          fail(origin, line, "unknown axis '" + val + "' (speed|nodes|pause)");
      } else if (key == "levels") {
        for (const auto& tok : split_ws(val))
          sweep.levels.push_back(parse_double(origin, line, tok));
      } else if (key == "variants") {
        for (const auto& tok : split_ws(val)) {
          cc::Variant v;
          if (!cc::variant_from_name(tok, &v))
            fail(origin, line, "unknown variant '" + tok + "'");
          sweep.variants.push_back(v);
        }
      } else if (key == "seeds") {
        sweep.seeds = parse_seeds(origin, line, val);
      } else fail(origin, line, "unknown key '" + key + "' in [sweep]");
    }
  }

  try {
    validate(c);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  if (have_sweep) {
    if (sweep.levels.empty()) throw ConfigError(origin + ": [sweep] has no levels");
    if (sweep.variants.empty()) throw ConfigError(origin + ": [sweep] has no variants");
    if (sweep.seeds.empty()) throw ConfigError(origin + ": [sweep] has no seeds");
    sweep.base = sc;
    out.sweep = std::move(sweep);
  }
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string default_config_text() {
  SimConfig c;
  c.transfer_bytes = 100000000;
  c.t_end = 120.0;
  char buf[2048];
  std::snprintf(buf, sizeof buf,
                "# Every tunable with its default value.\n"
                "[scenario]\n"
                "label = run\n"
                "variant = %s\n"
                "mss = %lld\n"
                "initial_cwnd = %lld          # 0 selects min(4*mss, max(2*mss, 4380))\n"
                "restart_cwnd = %lld          # window after a timeout; 0 selects one mss\n"
                "initial_ssthresh = %lld\n"
                "receiver_window = %lld\n"
                "transfer_bytes = %lld\n"
                "t_end = %.1f\n"
                "seed = %llu\n"
                "rto_floor = %.1f\n"
                "rto_ceiling = %.1f\n"
                "rto_initial = %.1f\n"
                "min_srtt_init = %.1f\n"
                "max_srtt_init = %.1f\n"
                "restore_ssthresh_on_ack = %s\n"
                "\n"
                "[route]\n"
                "base_delay = %.3f\n"
                "delay_jitter = %.3f\n"
                "random_loss_prob = %.3f\n"
                "outage_rate = %.3f\n"
                "outage_duration_min = %.1f\n"
                "outage_duration_max = %.1f\n"
                "\n"
                "# Optional [sweep] section, e.g.:\n"
                "# [sweep]\n"
                "# axis = speed            # speed | nodes | pause\n"
                "# levels = 5 10 15 20 25 30\n"
                "# variants = reno newreno abra-newreno\n"
                "# seeds = 1..20\n",
                cc::variant_name(c.cc.variant),
                static_cast<long long>(c.cc.mss),
                static_cast<long long>(c.cc.initial_cwnd),
                static_cast<long long>(c.cc.restart_cwnd),
                static_cast<long long>(c.cc.initial_ssthresh),
                static_cast<long long>(c.receiver_window),
                static_cast<long long>(c.transfer_bytes), c.t_end,
                static_cast<unsigned long long>(c.seed), c.est.rto_floor,
                c.est.rto_ceiling, c.est.rto_initial, c.est.min_srtt_init,
                c.est.max_srtt_init, c.restore_ssthresh_on_ack ? "true" : "false",
                c.route.base_delay, c.route.delay_jitter, c.route.random_loss_prob,
                c.route.outage_rate, c.route.outage_duration_min,
                c.route.outage_duration_max);
  return buf;
}

}  // namespace abrasim
