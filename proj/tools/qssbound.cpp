// qssbound: generate, inspect, transform and bound quantum access structures.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qss/qss.hpp"

namespace fs = std::filesystem;
using qss::Json;

namespace {

enum Exit : int { kOk = 0, kFail = 1, kUsage = 2, kLimit = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A value starting with '{' is inline JSON, anything else a path.
Json load_json(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  const std::string text = (first != std::string::npos && source[first] == '{') ? source : read_file(source);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError("malformed JSON in '" + source + "': " + e.what());
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::vector<unsigned> parse_player_list(const std::string& list) {
  std::vector<unsigned> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || p < 1) throw UsageError("bad player '" + item + "' in --players");
    out.push_back(static_cast<unsigned>(p));
  }
  return out;
}

struct BoundFlags {
  std::string in;
  std::string out;
  std::string format = "json";
  std::string mode = "pure";
  std::string ineq = "full";
  std::string objective = "minmax";
  std::string players;
  std::string certificate;
  std::string batch;
  std::string dump_system;
  bool auto_purify = false;
  bool force = false;
  unsigned limit = 9;
  unsigned jobs = 0;
};

qss::BoundOptions to_options(const BoundFlags& f) {
  qss::BoundOptions o;
  o.auto_purify = f.auto_purify;
  try {
    o.system.purity = qss::parse_purity(f.mode);
    o.system.ineq = qss::parse_ineq(f.ineq);
    o.objective = qss::parse_objective(f.objective);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!f.players.empty() && o.objective.kind != qss::ObjectiveKind::kSingle) {
    o.objective.players = parse_player_list(f.players);
  }
  o.max_elements = f.limit;
  o.force = f.force;
  return o;
}

std::string bound_text(const qss::BoundReport& r) {
  std::ostringstream os;
  std::optional<unsigned> purifier;
  if (r.purified) purifier = r.solved.num_players();
  os << "structure    " << qss::structure_text(r.structure) << "\n";
  if (r.purified) os << "purified     " << qss::structure_text(r.solved, purifier) << "\n";
  os << "mode         " << qss::to_string(r.system.purity) << ", " << qss::to_string(r.system.ineq) << "\n";
  os << "objective    " << r.objective << "\n";
  os << "lp_value     " << qss::to_string(r.lp_value) << "\n";
  os << "rate bound   " << qss::to_string(r.rate_upper_bound) << "\n";
  if (r.k) os << "csirmaz k    " << *r.k << " (reference bound " << qss::to_string(*r.reference_bound) << ")\n";
  os << "certificate  " << r.certificate.entries.size() << " entries\n";
  os << "stats        rows=" << r.stats.rows << " cols=" << r.stats.cols << " pivots=" << r.stats.pivots
     << " millis=" << r.stats.millis << "\n";
  return os.str();
}

int run_bound_one(const BoundFlags& f) {
  const qss::AccessStructure gamma = qss::structure_from_json(load_json(f.in));
  if (!qss::is_quantum(gamma)) {
    std::cerr << "qssbound: access structure is not quantum\n";
    return kFail;
  }
  const qss::BoundOptions opts = to_options(f);
  if (!f.dump_system.empty()) {
    auto [solved, purified] = qss::resolve_structure(gamma, opts);
    emit(f.dump_system, qss::dump(qss::build_system(solved, opts.system)));
  }
  const qss::BoundReport report = qss::share_bound(gamma, opts);
  if (!f.certificate.empty()) emit(f.certificate, dump_json(qss::certificate_to_json(report.certificate)));
  emit(f.out, f.format == "text" ? bound_text(report) : dump_json(qss::report_to_json(report)));
  return kOk;
}

int run_bound_batch(const BoundFlags& f) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(f.batch)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        name.find(".report.") == std::string::npos && name.find(".cert.") == std::string::npos &&
        name != "summary.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  const fs::path out_dir = f.out.empty() ? fs::path(f.batch) : fs::path(f.out);
  fs::create_directories(out_dir);
  const qss::BoundOptions opts = to_options(f);

  std::vector<Json> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      Json res;
      res["file"] = files[i].filename().string();
      try {
        const auto gamma = qss::structure_from_json(load_json(files[i].string()));
        const auto report = qss::share_bound(gamma, opts);
        const fs::path out = out_dir / (files[i].stem().string() + ".report.json");
        emit(out.string(), dump_json(qss::report_to_json(report)));
        res["status"] = "ok";
        res["lp_value"] = qss::to_string(report.lp_value);
        res["rate_upper_bound"] = qss::to_string(report.rate_upper_bound);
      } catch (const std::exception& e) {
        res["status"] = "error";
        res["error"] = e.what();
      }
      results[i] = std::move(res);
    }
  };
  unsigned jobs = f.jobs ? f.jobs : std::max(1U, std::min(4U, std::thread::hardware_concurrency()));
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(1, files.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Json summary;
  summary["files"] = results;
  emit((out_dir / "summary.json").string(), dump_json(summary));
  const bool all_ok = std::all_of(results.begin(), results.end(),
                                  [](const Json& r) { return r["status"] == "ok"; });
  return all_ok ? kOk : kFail;
}

void add_limit_flags(CLI::App* cmd, unsigned& limit, bool& force) {
  cmd->add_option("--limit-elements", limit, "Maximum ground elements (players + R) without --force")
      ->capture_default_str();
  cmd->add_flag("--force", force, "Allow long-running instances beyond --limit-elements");
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
}

std::string suite_text(const qss::SuiteReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) os << (c.implied ? "implied  " : "FAILED   ") << c.family << "  " << c.label << "\n";
  os << r.implied_count() << "/" << r.checks.size() << " implied\n";
  return os.str();
}

Json suite_json(const qss::SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"family", c.family}, {"label", c.label}, {"implied", c.implied}});
  Json j;
  j["checks"] = std::move(checks);
  j["implied"] = r.implied_count();
  j["total"] = r.checks.size();
  j["all_implied"] = r.all_implied();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Share-size bounds for quantum secret sharing access structures"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an access structure family member");
  std::string gen_family = "csirmaz", gen_out, gen_format = "json";
  unsigned gen_n = 0;
  gen->add_option("family", gen_family, "Structure family")->check(CLI::IsMember({"csirmaz"}))->required();
  gen->add_option("--n", gen_n, "Number of players")->required();
  gen->add_option("--out", gen_out, "Output path (default stdout)");
  add_format(gen, gen_format);

  // check / dual / purify
  std::string st_in, st_out, st_format = "json";
  auto* check = app.add_subcommand("check", "Report antichain, quantum and self-dual properties");
  auto* dual = app.add_subcommand("dual", "Write the dual access structure");
  auto* purify = app.add_subcommand("purify", "Write the self-dual purification");
  for (auto* cmd : {check, dual, purify}) {
    cmd->add_option("--in", st_in, "Structure JSON path or inline JSON")->required();
    cmd->add_option("--out", st_out, "Output path (default stdout)");
    add_format(cmd, st_format);
  }

  // bound
  BoundFlags bf;
  auto* bound = app.add_subcommand("bound", "Lower-bound share entropies by exact LP");
  auto* in_opt = bound->add_option("--in", bf.in, "Structure JSON path or inline JSON");
  auto* batch_opt = bound->add_option("--batch", bf.batch, "Directory of structure JSON files");
  in_opt->excludes(batch_opt);
  bound->add_option("--out", bf.out, "Report path, or output directory with --batch");
  bound->add_option("--mode", bf.mode, "Global purity")->check(CLI::IsMember({"pure", "mixed"}))->capture_default_str();
  bound->add_option("--ineq", bf.ineq, "Inequality family")->check(CLI::IsMember({"full", "elemental"}))->capture_default_str();
  bound->add_option("--objective", bf.objective, "minmax | minsum | single:<i>")->capture_default_str();
  bound->add_option("--players", bf.players, "Comma-separated objective players (default: all)");
  bound->add_flag("--auto-purify", bf.auto_purify, "Purify non-self-dual structures first");
  bound->add_option("--certificate", bf.certificate, "Also write the certificate JSON here");
  bound->add_option("--dump-system", bf.dump_system, "Write the constraint system as text");
  bound->add_option("--jobs", bf.jobs, "Batch worker cap");
  add_format(bound, bf.format);
  add_limit_flags(bound, bf.limit, bf.force);

  // verify-cert
  auto* verify = app.add_subcommand("verify-cert", "Replay a certificate against a regenerated system");
  std::string vc_system, vc_cert, vc_mode, vc_ineq, vc_format = "json";
  bool vc_auto = false;
  verify->add_option("--system-from", vc_system, "Structure JSON the certificate refers to")->required();
  verify->add_option("--cert", vc_cert, "Certificate JSON")->required();
  verify->add_option("--mode", vc_mode, "Override the certificate's mode")->check(CLI::IsMember({"pure", "mixed"}));
  verify->add_option("--ineq", vc_ineq, "Override the certificate's inequality family")
      ->check(CLI::IsMember({"full", "elemental"}));
  verify->add_flag("--auto-purify", vc_auto, "Force purification of the structure");
  add_format(verify, vc_format);

  // lemmas
  auto* lemmas = app.add_subcommand("lemmas", "Check the scheme lemmas are implied by the system");
  std::string lm_in, lm_out, lm_ineq = "full", lm_format = "json";
  bool lm_auto = false, lm_force = false;
  unsigned lm_limit = 9;
  lemmas->add_option("--in", lm_in, "Structure JSON path or inline JSON")->required();
  lemmas->add_option("--out", lm_out, "Output path (default stdout)");
  lemmas->add_option("--ineq", lm_ineq, "Inequality family")->check(CLI::IsMember({"full", "elemental"}));
  lemmas->add_flag("--auto-purify", lm_auto, "Purify non-self-dual structures first");
  add_format(lemmas, lm_format);
  add_limit_flags(lemmas, lm_limit, lm_force);

  // chain
  auto* chain = app.add_subcommand("chain", "Replay the Csirmaz share-size inequality chain");
  std::string ch_out, ch_ineq = "full", ch_format = "json";
  unsigned ch_n = 0, ch_limit = 9;
  bool ch_force = false;
  chain->add_option("--n", ch_n, "Players of the unpurified Csirmaz structure")->required();
  chain->add_option("--out", ch_out, "Output path (default stdout)");
  chain->add_option("--ineq", ch_ineq, "Inequality family")->check(CLI::IsMember({"full", "elemental"}));
  add_format(chain, ch_format);
  add_limit_flags(chain, ch_limit, ch_force);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      auto inst = qss::csirmaz(gen_n);
      if (gen_format == "text") {
        emit(gen_out, "csirmaz n=" + std::to_string(gen_n) + " k=" + std::to_string(inst.params.k) + "\n" +
                          qss::structure_text(inst.structure) + "\n");
      } else {
        Json j = qss::structure_to_json(inst.structure);
        j["k"] = inst.params.k;
        emit(gen_out, dump_json(j));
      }
      return kOk;
    }

    if (*check) {
      const Json j = load_json(st_in);
      Json res;
      bool antichain = true;
      std::optional<qss::AccessStructure> gamma;
      try {
        gamma = qss::structure_from_json(j);
      } catch (const qss::StructureError& e) {
        if (std::string(e.what()).find("antichain") == std::string::npos) throw;
        antichain = false;
      }
      res["antichain"] = antichain;
      res["quantum"] = gamma ? Json(qss::is_quantum(*gamma)) : Json(nullptr);
      res["self_dual"] = gamma ? Json(qss::is_self_dual(*gamma)) : Json(nullptr);
      if (st_format == "text") {
        auto yn = [](const Json& v) { return v.is_null() ? "n/a" : (v.get<bool>() ? "yes" : "no"); };
        emit(st_out, std::string("antichain  ") + (antichain ? "yes" : "no") + "\nquantum    " + yn(res["quantum"]) +
                         "\nself-dual  " + yn(res["self_dual"]) + "\n");
      } else {
        emit(st_out, dump_json(res));
      }
      return (antichain && res["quantum"] == true) ? kOk : kFail;
    }

    if (*dual || *purify) {
      const auto gamma = qss::structure_from_json(load_json(st_in));
      if (*purify && !qss::is_quantum(gamma)) {
        std::cerr << "qssbound: purification requires a quantum access structure\n";
        return kFail;
      }
      const auto result = *dual ? qss::dual(gamma) : qss::purify(gamma);
      std::optional<unsigned> purifier;
      if (*purify && result.num_players() > gamma.num_players()) purifier = result.num_players();
      emit(st_out, st_format == "text" ? qss::structure_text(result, purifier) + "\n"
                                       : dump_json(qss::structure_to_json(result)));
      return kOk;
    }

    if (*bound) {
      if (bf.in.empty() == bf.batch.empty()) throw UsageError("bound needs exactly one of --in or --batch");
      return bf.batch.empty() ? run_bound_one(bf) : run_bound_batch(bf);
    }

    if (*verify) {
      const auto gamma = qss::structure_from_json(load_json(vc_system));
      qss::Certificate cert;
      try {
        cert = qss::certificate_from_json(load_json(vc_cert));
      } catch (const std::invalid_argument& e) {
        std::cerr << "qssbound: certificate rejected: " << e.what() << "\n";
        return kFail;
      } catch (const Json::exception& e) {
        std::cerr << "qssbound: certificate rejected: " << e.what() << "\n";
        return kFail;
      }
      if (!vc_mode.empty()) cert.system.purity = qss::parse_purity(vc_mode);
      if (!vc_ineq.empty()) cert.system.ineq = qss::parse_ineq(vc_ineq);
      if (vc_auto && !qss::is_self_dual(gamma)) cert.purified = true;
      qss::CertificateCheck result{false, {}};
      try {
        result = qss::verify_certificate(qss::certificate_problem(gamma, cert), cert);
      } catch (const std::invalid_argument& e) {
        result = {false, e.what()};
      }
      if (vc_format == "text") {
        std::cout << (result.accepted ? "accepted" : "rejected: " + result.reason) << "\n";
      } else {
        Json j;
        j["accepted"] = result.accepted;
        j["claimed_bound"] = qss::to_string(cert.claimed_bound);
        if (!result.accepted) j["reason"] = result.reason;
        std::cout << dump_json(j);
      }
      return result.accepted ? kOk : kFail;
    }

    if (*lemmas) {
      auto gamma = qss::structure_from_json(load_json(lm_in));
      if (!qss::is_quantum(gamma)) {
        std::cerr << "qssbound: access structure is not quantum\n";
        return kFail;
      }
      if (!qss::is_self_dual(gamma)) {
        if (!lm_auto) throw UsageError("lemmas needs a self-dual structure; pass --auto-purify");
        gamma = qss::purify(gamma);
      }
      qss::detail::check_elements(gamma.num_players() + 1, lm_limit, lm_force);
      const auto report = qss::lemma_suite(gamma, qss::parse_ineq(lm_ineq));
      emit(lm_out, lm_format == "text" ? suite_text(report) : dump_json(suite_json(report)));
      return report.all_implied() ? kOk : kFail;
    }

    if (*chain) {
      qss::ChainOptions opts;
      opts.ineq = qss::parse_ineq(ch_ineq);
      opts.max_elements = ch_limit;
      opts.force = ch_force;
      const auto report = qss::csirmaz_chain(ch_n, opts);
      if (ch_format == "text") {
        std::ostringstream os;
        os << "csirmaz n=" << ch_n << " k=" << report.params.k << "\n";
        os << "purified " << qss::structure_text(report.purified, ch_n + 1) << "\n";
        os << suite_text(report.steps);
        os << "lp_value " << qss::to_string(report.bound.lp_value) << " (reference bound "
           << qss::to_string(report.reference_bound) << ")\n";
        emit(ch_out, os.str());
      } else {
        Json j;
        j["n"] = ch_n;
        j["k"] = report.params.k;
        j["purified"] = qss::structure_to_json(report.purified);
        j["steps"] = suite_json(report.steps);
        j["theorem3_bound"] = qss::to_string(report.reference_bound);
        j["lp_value"] = qss::to_string(report.bound.lp_value);
        j["rate_upper_bound"] = qss::to_string(report.bound.rate_upper_bound);
        emit(ch_out, dump_json(j));
      }
      return report.steps.all_implied() ? kOk : kFail;
    }
  } catch (const qss::CapacityError& e) {
    std::cerr << "qssbound: " << e.what() << "\n";
    return kLimit;
  } catch (const UsageError& e) {
    std::cerr << "qssbound: " << e.what() << "\n";
    return kUsage;
  } catch (const qss::StructureError& e) {
    std::cerr << "qssbound: invalid structure: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qssbound: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "qssbound: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qssbound: error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
