#include "ddverify/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include "ddverify/cech.hpp"
#include "ddverify/chernsimons.hpp"
#include "ddverify/errors.hpp"
#include "ddverify/models.hpp"

namespace ddv {

namespace {

const std::vector<std::string> kSmooth = {"heisenberg", "u2_so3"};

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// check -> models it is defined for
const std::map<std::string, std::vector<std::string>>& table() {
  static const std::map<std::string, std::vector<std::string>> t = {
      {"prop21", kSmooth},
      {"prop22", kSmooth},
      {"cocycle", {"heisenberg", "u2_so3", "z4_over_z2", "q8_over_v4", "split_v4"}},
      {"prop23", {"heisenberg", "u2_so3", "connection_pair"}},
      {"thm31", {"so3_coboundary"}},
      {"thm41", kSmooth},
      {"thm42", kSmooth},
      {"tables", {"z4_over_z2", "q8_over_v4", "split_v4"}},
      {"torsion", {"z4_over_z2", "q8_over_v4", "split_v4"}},
      {"invariants", {"heisenberg", "u2_so3", "connection_pair"}},
  };
  return t;
}

const CentralExtensionModel& smooth_model(const std::string& name) {
  static const CentralExtensionModel heis = build_heisenberg();
  static const CentralExtensionModel u2 = build_u2_so3();
  return name == "heisenberg" ? heis : u2;
}

const ConnectionPair& connection_pair_of(const std::string& name) {
  static const ConnectionPair heis = build_connection_pair(smooth_model("heisenberg"));
  static const ConnectionPair u2 = build_connection_pair(smooth_model("u2_so3"));
  return name == "heisenberg" ? heis : u2;
}

// Concatenates sub-reports, prefixing each identity with its sub-model name.
VerificationReport merged(const std::string& check, const std::string& model, const VerifyOptions& opts,
                          const std::vector<std::pair<std::string, VerificationReport>>& parts) {
  std::vector<IdentityResult> items;
  for (const auto& [prefix, rep] : parts) {
    for (IdentityResult item : rep.breakdown) {
      item.name = prefix + ": " + item.name;
      items.push_back(std::move(item));
    }
  }
  return assemble_report(check, model, opts, std::move(items));
}

VerificationReport dispatch(const std::string& check, const std::string& model, const VerifyOptions& opts,
                            const std::string& fixture_dir) {
  if (is_finite_model(model)) {
    const FiniteCentralExtension ext = build_finite_extension(model, fixture_dir);
    VerificationReport rep = check == "tables"    ? verify_tables(ext)
                             : check == "torsion" ? torsion_report(ext)
                                                  : real_vanishing(ext);
    rep.model = model;
    return rep;
  }
  if (model == "connection_pair") {
    std::vector<std::pair<std::string, VerificationReport>> parts;
    for (const auto& name : kSmooth) {
      const ConnectionPair& cp = connection_pair_of(name);
      const CentralExtensionModel& m = smooth_model(name);
      if (check == "prop23") {
        parts.emplace_back(name, connection_independence(m, cp.theta0, cp.theta1, opts));
      } else {
        parts.emplace_back(name + "/theta1", check_model(m, cp.theta1, opts));
      }
    }
    return merged(check, model, opts, parts);
  }
  if (model == "so3_coboundary") {
    const CoboundaryBundle u2 = build_so3_coboundary_bundle(CobasedGroup::SO3);
    const CoboundaryBundle heis = build_so3_coboundary_bundle(CobasedGroup::Heisenberg);
    return merged(check, model, opts,
                  {{"u2_so3", verify_thm31(u2, u2.model.theta, opts)},
                   {"heisenberg", verify_thm31(heis, heis.model.theta, opts)}});
  }
  const CentralExtensionModel& m = smooth_model(model);
  if (check == "prop21") return verify_prop21(m, m.theta, opts);
  if (check == "prop22") return verify_prop22(m, m.theta, opts);
  if (check == "cocycle") return verify_dd_cocycle(m, m.theta, opts);
  if (check == "thm41") return verify_thm41(m, m.theta, opts);
  if (check == "thm42") return verify_thm42(m, m.theta, opts);
  if (check == "invariants") return check_model(m, m.theta, opts);
  const ConnectionPair& cp = connection_pair_of(model);
  return connection_independence(m, cp.theta0, cp.theta1, opts);
}

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit_json(const std::vector<VerificationReport>& reports, std::ostream& out, bool timing) {
  out << "[\n";
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const auto& rep = reports[r];
    out << "  {\n";
    out << "    \"check\": " << quoted(rep.check) << ",\n";
    out << "    \"model\": " << quoted(rep.model) << ",\n";
    out << "    \"samples\": " << (rep.exact ? quoted("exact") : std::to_string(rep.samples)) << ",\n";
    out << "    \"seed\": " << rep.seed << ",\n";
    out << "    \"tol\": " << (rep.exact ? quoted("exact") : num(rep.tol)) << ",\n";
    out << "    \"max_residual\": " << num(rep.max_residual) << ",\n";
    out << "    \"mean_residual\": " << num(rep.mean_residual) << ",\n";
    out << "    \"pass\": " << (rep.pass ? "true" : "false") << ",\n";
    if (timing) out << "    \"wall_time_ms\": " << num(rep.wall_time_ms) << ",\n";
    out << "    \"breakdown\": [";
    for (std::size_t i = 0; i < rep.breakdown.size(); ++i) {
      const auto& it = rep.breakdown[i];
      out << (i ? ",\n" : "\n") << "      {\"name\": " << quoted(it.name) << ", \"samples\": " << it.samples
          << ", \"max_residual\": " << num(it.max_residual) << ", \"mean_residual\": " << num(it.mean_residual)
          << ", \"tol\": " << num(it.tol) << ", \"pass\": " << (it.pass ? "true" : "false")
          << ", \"detail\": " << quoted(it.detail) << "}";
    }
    out << (rep.breakdown.empty() ? "]\n" : "\n    ]\n");
    out << "  }" << (r + 1 < reports.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

void emit_csv(const std::vector<VerificationReport>& reports, std::ostream& out, bool timing) {
  out << "check,model,samples,seed,tol,max_residual,mean_residual,pass" << (timing ? ",wall_time_ms" : "") << "\n";
  for (const auto& rep : reports) {
    out << csv_field(rep.check) << ',' << csv_field(rep.model) << ','
        << (rep.exact ? std::string("exact") : std::to_string(rep.samples)) << ',' << rep.seed << ','
        << (rep.exact ? std::string("exact") : num(rep.tol)) << ',' << num(rep.max_residual) << ','
        << num(rep.mean_residual) << ',' << (rep.pass ? "true" : "false");
    if (timing) out << ',' << num(rep.wall_time_ms);
    out << "\n";
  }
}

void emit_text(const std::vector<VerificationReport>& reports, std::ostream& out, bool timing) {
  char buf[96];
  for (const auto& rep : reports) {
    out << (rep.pass ? "PASS " : "FAIL ") << rep.check << " " << rep.model;
    if (rep.exact) {
      out << " [exact]";
    } else {
      std::snprintf(buf, sizeof buf, " [n=%d tol=%.3g seed=%llu]", rep.samples, rep.tol,
                    static_cast<unsigned long long>(rep.seed));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " max=%.3e", rep.max_residual);
    out << buf;
    if (timing) {
      std::snprintf(buf, sizeof buf, " (%.1f ms)", rep.wall_time_ms);
      out << buf;
    }
    out << "\n";
    for (const auto& it : rep.breakdown) {
      std::snprintf(buf, sizeof buf, "max=%.3e mean=%.3e", it.max_residual, it.mean_residual);
      out << "  " << (it.pass ? "ok   " : "FAIL ") << it.name << ": " << buf;
      if (!it.detail.empty()) out << " (" << it.detail << ")";
      out << "\n";
    }
  }
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"prop21", "prop22", "cocycle", "prop23", "thm31",
                                                 "thm41",  "thm42",  "tables",  "torsion", "invariants"};
  return names;
}

bool applicable(const std::string& check, const std::string& model) {
  const auto it = table().find(check);
  if (it == table().end()) throw UsageError("unknown check '" + check + "'");
  if (!has(model_names(), model)) throw UsageError("unknown model '" + model + "'");
  return has(it->second, model);
}

VerificationReport run(const std::string& check, const std::string& model, const VerifyOptions& opts,
                       const std::string& fixture_dir) {
  if (!applicable(check, model)) throw UsageError("check '" + check + "' is not defined for model '" + model + "'");
  if (opts.samples < 1) throw UsageError("--samples must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep = dispatch(check, model, opts, fixture_dir);
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<VerificationReport> run_many(const std::string& check, const std::string& model,
                                         const VerifyOptions& opts, const std::string& fixture_dir, int jobs) {
  if (check != "all" && !table().contains(check)) throw UsageError("unknown check '" + check + "'");
  if (model != "all" && !has(model_names(), model)) throw UsageError("unknown model '" + model + "'");
  if (check != "all" && model != "all") return {run(check, model, opts, fixture_dir)};

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& c : check_names()) {
    if (check != "all" && c != check) continue;
    for (const auto& m : model_names()) {
      if ((model == "all" || m == model) && applicable(c, m)) pairs.emplace_back(c, m);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<VerificationReport> out(pairs.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = run(pairs[i].first, pairs[i].second, opts, fixture_dir);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(pairs.size());
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < pairs.size(); i = next++) {
        try {
          out[i] = run(pairs[i].first, pairs[i].second, opts, fixture_dir);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw UsageError("unknown format '" + name + "'");
}

void emit_reports(const std::vector<VerificationReport>& reports, ReportFormat format, std::ostream& out,
                  bool timing) {
  switch (format) {
    case ReportFormat::Json: emit_json(reports, out, timing); break;
    case ReportFormat::Csv: emit_csv(reports, out, timing); break;
    case ReportFormat::Text: emit_text(reports, out, timing); break;
  }
}

void emit_reports(const std::vector<VerificationReport>& reports, ReportFormat format, const std::string& path,
                  bool timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  emit_reports(reports, format, out, timing);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace ddv
