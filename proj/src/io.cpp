// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace winseq {

namespace {

using nlohmann::json;

constexpr const char* kColumns[] = {
    "subject_id",      "arm",        "enroll_month",    "followup_months",
    "amputation_month", "tlr_months", "occlusion_visits"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::string location(std::string_view source, std::size_t line,
                     std::size_t column) {
  std::ostringstream os;
  os << source << ':' << line << ':' << column << ": ";
  return os.str();
}

class RowParser {
 public:
  RowParser(std::string_view source, std::size_t line)
      : source_(source), line_(line) {}

  [[noreturn]] void parse_error(std::size_t column, const std::string& why) const {
    throw CsvError(ErrorCode::ParseError, line_, column, kColumns[column - 1],
                   location(source_, line_, column) + kColumns[column - 1] +
                       ": " + why);
  }

  [[noreturn]] void violation(std::size_t column, const std::string& why) const {
    throw CsvError(ErrorCode::InvariantViolation, line_, column,
                   kColumns[column - 1],
                   location(source_, line_, column) + kColumns[column - 1] +
                       ": " + why);
  }

  double number(std::string_view text, std::size_t column) const {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
      parse_error(column, "'" + std::string(text) + "' is not a number");
    }
    return v;
  }

  SubjectRecord row(std::string_view text, double horizon) const {
    const auto fields = split(text, ',');
    if (fields.size() != kColumnCount) {
      parse_error(std::min(fields.size(), kColumnCount),
                  "expected " + std::to_string(kColumnCount) + " fields, found " +
                      std::to_string(fields.size()));
    }
    SubjectRecord r;
    r.id = std::string(trim(fields[0]));
    if (r.id.empty()) parse_error(1, "subject_id is empty");

    const auto arm = trim(fields[1]);
    if (arm == "T") {
      r.arm = Arm::Treatment;
    } else if (arm == "C") {
      r.arm = Arm::Control;
    } else {
      parse_error(2, "arm must be T or C, got '" + std::string(arm) + "'");
    }

    r.enroll_month = number(fields[2], 3);
    if (r.enroll_month < 0.0) violation(3, "enrollment month is negative");
    r.followup_months = number(fields[3], 4);
    if (!(r.followup_months > 0.0)) violation(4, "follow-up must be positive");
    if (r.followup_months > horizon) {
      violation(4, "follow-up exceeds the horizon of " + std::to_string(horizon) +
                       " months");
    }

    if (!trim(fields[4]).empty()) {
      const double a = number(fields[4], 5);
      if (a < 0.0 || a > r.followup_months) {
        violation(5, "amputation month is outside [0, follow-up]");
      }
      r.amputation_month = a;
    }

    if (!trim(fields[5]).empty()) {
      for (auto item : split(fields[5], ';')) {
        const double t = number(item, 6);
        if (t < 0.0 || t > r.followup_months) {
          violation(6, "TLR month is outside [0, follow-up]");
        }
        if (!r.tlr_months.empty() && !(t > r.tlr_months.back())) {
          violation(6, "TLR months must be strictly increasing");
        }
        r.tlr_months.push_back(t);
      }
    }

    if (!trim(fields[6]).empty()) {
      for (auto item : split(fields[6], ';')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) parse_error(7, "visit must be month:status");
        const double month = number(parts[0], 7);
        const auto status = trim(parts[1]);
        if (status != "0" && status != "1") {
          parse_error(7, "visit status must be 0 or 1");
        }
        if (month < 0.0 || month > r.followup_months) {
          violation(7, "visit month is outside [0, follow-up]");
        }
        if (!r.occlusion_visits.empty() &&
            !(month > r.occlusion_visits.back().month)) {
          violation(7, "visit months must be strictly increasing");
        }
        r.occlusion_visits.push_back({month, status == "1"});
      }
    }
    validate_record(r, horizon);
    return r;
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void append_row(std::string& out, const SubjectRecord& r) {
  out += r.id;
  out += ',';
  out += to_string(r.arm);
  out += ',';
  out += format_number(r.enroll_month);
  out += ',';
  out += format_number(r.followup_months);
  out += ',';
  if (r.amputation_month) out += format_number(*r.amputation_month);
  out += ',';
  for (std::size_t k = 0; k < r.tlr_months.size(); ++k) {
    if (k) out += ';';
    out += format_number(r.tlr_months[k]);
  }
  out += ',';
  for (std::size_t k = 0; k < r.occlusion_visits.size(); ++k) {
    if (k) out += ';';
    out += format_number(r.occlusion_visits[k].month);
    out += r.occlusion_visits[k].occluded ? ":1" : ":0";
  }
  out += '\n';
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

[[noreturn]] void config_error(const std::string& why) {
  throw Error(ErrorCode::ConfigError, why);
}

double get_number(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) config_error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> get_numbers(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_array()) config_error(std::string("'") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) {
      config_error(std::string("'") + key + "' must hold numbers only");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const char* what) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) config_error(std::string(what) + ": unknown field '" + key + "'");
  }
}

}  // namespace

TwoSampleDataset parse_subject_csv_text(std::string_view text, double horizon,
                                        std::string_view source) {
  std::vector<SubjectRecord> subjects;
  std::map<std::string, std::size_t> seen;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;
    if (!header_seen) {
      const auto cols = split(trim(line), ',');
      bool ok = cols.size() == kColumnCount;
      for (std::size_t c = 0; ok && c < kColumnCount; ++c) {
        ok = trim(cols[c]) == kColumns[c];
      }
      if (!ok) {
        throw CsvError(ErrorCode::ParseError, line_no, 1, "header",
                       location(source, line_no, 1) + "header must be '" +
                           std::string(kSubjectCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    SubjectRecord r = RowParser(source, line_no).row(line, horizon);
    const auto [it, inserted] = seen.emplace(r.id, line_no);
    if (!inserted) {
      throw CsvError(ErrorCode::DuplicateId, line_no, 1, "subject_id",
                     location(source, line_no, 1) + "subject_id '" + r.id +
                         "' already used on line " + std::to_string(it->second));
    }
    subjects.push_back(std::move(r));
  }
  if (!header_seen) {
    throw CsvError(ErrorCode::ParseError, 1, 1, "header",
                   std::string(source) + ": missing header row");
  }
  return make_dataset(std::move(subjects));
}

TwoSampleDataset parse_subject_csv(const std::filesystem::path& path,
                                   double horizon) {
  return parse_subject_csv_text(read_text_file(path), horizon, path.string());
}

std::string format_subject_csv(const TwoSampleDataset& data) {
  std::string out(kSubjectCsvHeader);
  out += '\n';
  for (const auto& r : data.treatment) append_row(out, r);
  for (const auto& r : data.control) append_row(out, r);
  return out;
}

void write_subject_csv(const TwoSampleDataset& data,
                       const std::filesystem::path& path) {
  write_text_file(path, format_subject_csv(data));
}

DesignConfig parse_design_config(std::string_view json_text) {
  const json j = parse_json(json_text, "design config");
  if (!j.is_object()) config_error("design config must be a JSON object");
  reject_unknown(j, {"alpha", "sides", "family", "gamma", "rho", "fractions", "grid"},
                 "design config");
  DesignConfig c;
  try {
    c.spending.alpha = get_number(j, "alpha");
    c.fractions = get_numbers(j, "fractions");
    const std::string sides = j.value("sides", "two");
    if (sides == "two" || sides == "two-sided" || sides == "2") {
      c.spending.sides = Sides::TwoSided;
    } else if (sides == "one" || sides == "one-sided" || sides == "1") {
      c.spending.sides = Sides::OneSided;
    } else {
      config_error("sides must be 'one' or 'two'");
    }
    const std::string family = j.value("family", "hsd");
    if (family == "hsd") {
      c.spending.family = SpendingFamily::HwangShihDeCani;
      c.spending.parameter = get_number(j, "gamma");
    } else if (family == "power") {
      c.spending.family = SpendingFamily::Power;
      c.spending.parameter = get_number(j, "rho");
    } else {
      config_error("family must be 'hsd' or 'power'");
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      reject_unknown(g, {"half_width", "nodes", "root_tolerance"}, "grid");
      if (g.contains("half_width")) c.grid.half_width = get_number(g, "half_width");
      if (g.contains("nodes")) c.grid.nodes = static_cast<int>(get_number(g, "nodes"));
      if (g.contains("root_tolerance")) {
        c.grid.root_tolerance = get_number(g, "root_tolerance");
      }
    }
  } catch (const json::exception& e) {
    config_error(std::string("design config: ") + e.what());
  }
  try {
    c.spending.validate();
  } catch (const Error& e) {
    config_error(std::string("design config: ") + e.what());
  }
  return c;
}

DesignConfig load_design_config(const std::filesystem::path& path) {
  return parse_design_config(read_text_file(path));
}

TrialSimConfig parse_sim_config(std::string_view json_text) {
  const json j = parse_json(json_text, "simulation config");
  if (!j.is_object()) config_error("simulation config must be a JSON object");
  reject_unknown(j,
                 {"n_total", "allocation", "horizon", "rate_amputation", "rate_tlr",
                  "rate_occlusion", "preclusion_fraction", "accrual_months",
                  "visit_schedule", "dropout_rate", "treatment_effect"},
                 "simulation config");
  TrialSimConfig c;
  try {
    if (j.contains("n_total")) {
      const auto& v = j.at("n_total");
      if (!v.is_number_unsigned()) config_error("n_total must be a positive integer");
      c.n_total = v.get<std::size_t>();
    }
    if (j.contains("allocation")) {
      const auto a = get_numbers(j, "allocation");
      if (a.size() != 2) config_error("allocation must be [treatment, control]");
      c.allocation_treatment = a[0];
      c.allocation_control = a[1];
    }
    auto opt = [&](const char* key, double& field) {
      if (j.contains(key)) field = get_number(j, key);
    };
    opt("horizon", c.horizon);
    opt("rate_amputation", c.rate_amputation);
    opt("rate_tlr", c.rate_tlr);
    opt("rate_occlusion", c.rate_occlusion);
    opt("preclusion_fraction", c.preclusion_fraction);
    opt("accrual_months", c.accrual_months);
    opt("dropout_rate", c.dropout_rate);
    if (j.contains("visit_schedule")) c.visit_schedule = get_numbers(j, "visit_schedule");
    if (j.contains("treatment_effect")) {
      const auto& fx = j.at("treatment_effect");
      reject_unknown(fx, {"amputation", "tlr", "occlusion"}, "treatment_effect");
      if (fx.contains("amputation")) c.treatment_effect.amputation = get_number(fx, "amputation");
      if (fx.contains("tlr")) c.treatment_effect.tlr = get_number(fx, "tlr");
      if (fx.contains("occlusion")) c.treatment_effect.occlusion = get_number(fx, "occlusion");
    }
  } catch (const json::exception& e) {
    config_error(std::string("simulation config: ") + e.what());
  }
  c.validate();
  return c;
}

TrialSimConfig load_sim_config(const std::filesystem::path& path) {
  return parse_sim_config(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace winseq
