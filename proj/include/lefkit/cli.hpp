#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lefkit/lefkit.hpp"
#include "lefkit/serialize.hpp"

namespace lefkit::cli {

// Exit codes: 0 success (a completed search is a success, even when it found
// nothing), 2 invalid input, 3 budget or resource limit.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitResourceLimit = 3;

/// One batch job: a single command plus its parsed inputs.
struct JobSpec {
  std::string command;
  std::optional<Json> group;
  std::optional<Json> subset;
  std::optional<Json> table;
  std::optional<Json> presentation;
  std::optional<Json> input;
  std::string family;
  int rank = 1;
  int radius = 0;
  bool count_only = false;
  SearchBudget budget;
  std::string output_path;
};

namespace detail {

/// An argument is inline JSON when it looks like one; otherwise it names a file.
inline Json read_json_arg(const std::string& arg, const std::string& what) {
  std::string text;
  std::size_t first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (arg[first] == '{' || arg[first] == '[' || arg[first] == '"')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw InvalidInput(what + ": cannot open file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(what + ": " + e.what());
  }
}

inline int ball_cap_from_env() {
  const char* env = std::getenv("LEFKIT_BALL_CAP");
  if (!env) return kDefaultBallCap;
  try {
    int cap = std::stoi(env);
    if (cap < 0) throw std::out_of_range("negative");
    return cap;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("LEFKIT_BALL_CAP must be a nonnegative integer, got '") +
                       env + "'");
  }
}

inline void emit(const Json& j, const JobSpec& job, std::ostream& out) {
  if (job.output_path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream file(job.output_path);
  if (!file) throw InvalidInput("cannot open output file '" + job.output_path + "'");
  file << j.dump(2) << "\n";
}

inline std::vector<Element> parse_subset(const GroupBackend& g, const Json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("subset must be a nonempty JSON array of elements");
  std::vector<Element> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(element_from_json(g, e));
  return out;
}

// --- command bodies ----------------------------------------------------------

inline int run_extract(const JobSpec& job, std::ostream& out) {
  if (!job.group || !job.subset) throw InvalidInput("extract needs --group and --subset");
  GroupBackend g = backend_from_json(*job.group);
  auto subset = parse_subset(g, *job.subset);
  emit(table_to_json(extract_table(g, subset)), job, out);
  return kExitOk;
}

inline int run_witness_abelian(const JobSpec& job, std::ostream& out) {
  if (!job.subset) throw InvalidInput("witness-abelian needs --subset");
  const Json& s = *job.subset;
  if (!s.is_array() || s.empty())
    throw InvalidInput("subset must be a nonempty JSON array");
  AbelianWitness w = [&] {
    if (job.group) {
      GroupBackend ambient = backend_from_json(*job.group);
      return fg_abelian_witness(ambient, parse_subset(ambient, s));
    }
    if (s.front().is_number_integer()) {
      std::vector<std::int64_t> a;
      for (const Json& v : s) {
        if (!v.is_number_integer()) throw InvalidInput("subset members must all be integers");
        a.push_back(v.get<std::int64_t>());
      }
      return cyclic_witness(a);
    }
    std::vector<std::vector<std::int64_t>> a;
    for (const Json& v : s) {
      if (!v.is_array()) throw InvalidInput("subset members must all be coordinate arrays");
      std::vector<std::int64_t> p;
      for (const Json& c : v) {
        if (!c.is_number_integer()) throw InvalidInput("coordinates must be integers");
        p.push_back(c.get<std::int64_t>());
      }
      a.push_back(std::move(p));
    }
    return lattice_witness(a);
  }();
  emit(witness_to_json(w.witness), job, out);
  return kExitOk;
}

inline int run_ball(const JobSpec& job, std::ostream& out) {
  Ball b = ball(make_alphabet(job.rank), job.radius, ball_cap_from_env());
  emit(ball_to_json(b, job.count_only), job, out);
  return kExitOk;
}

inline int run_search(const JobSpec& job, std::ostream& out, std::ostream& err) {
  if (!job.table) throw InvalidInput("search needs --table");
  PartialGroupTable table = table_from_json(*job.table);
  auto emit_sweep = [&](const SweepResult& r) -> int {
    if (const auto* w = std::get_if<EmbeddingWitness>(&r)) {
      emit(witness_to_json(*w), job, out);
      return kExitOk;
    }
    const auto& cert = std::get<ExhaustionCertificate>(r);
    emit(certificate_to_json(cert), job, out);
    if (cert.outcome == "budget-exceeded") {
      err << "search budget exceeded before the space was exhausted\n";
      return kExitResourceLimit;
    }
    return kExitOk;
  };
  if (job.family == "cyclic") return emit_sweep(sweep_cyclic(table, job.budget));
  if (job.family == "symmetric") return emit_sweep(sweep_symmetric(table, job.budget));
  if (!job.family.empty() && job.family != "cayley")
    throw InvalidInput("unknown family '" + job.family + "' (expected cyclic, symmetric or cayley)");
  if (!job.group)
    throw InvalidInput("search needs --family cyclic|symmetric, or a single target via --group");
  GroupBackend target = backend_from_json(*job.group);
  SearchResult r = search_embedding(table, target, job.budget);
  if (r.status == SearchStatus::Witness) {
    emit(witness_to_json(*r.witness), job, out);
    return kExitOk;
  }
  ExhaustionCertificate cert;
  cert.table_digest = table_digest(table);
  cert.family = "single";
  cert.targets = {target};
  cert.nodes_per_target = {r.nodes};
  cert.outcome = r.status == SearchStatus::Exhausted ? "exhausted" : "budget-exceeded";
  cert.budget = job.budget;
  emit(certificate_to_json(cert), job, out);
  if (r.status == SearchStatus::BudgetExceeded) {
    err << "search budget exceeded before the space was exhausted\n";
    return kExitResourceLimit;
  }
  return kExitOk;
}

inline int run_quotient(const JobSpec& job, std::ostream& out, std::ostream& err) {
  if (!job.presentation) throw InvalidInput("quotient needs --presentation");
  Presentation p = presentation_from_json(*job.presentation);
  for (int idx : redundant_relators(p))
    err << "note: relator " << idx << " is the identity word and is redundant\n";
  if (job.radius < min_radius(p))
    err << "warning: radius " << job.radius << " is below the presentation's minimal radius "
        << min_radius(p) << "\n";
  std::vector<TargetFamily> families;
  if (job.family.empty())
    families = {TargetFamily::Cyclic, TargetFamily::Symmetric};
  else if (job.family == "cyclic")
    families = {TargetFamily::Cyclic};
  else if (job.family == "symmetric")
    families = {TargetFamily::Symmetric};
  else
    throw InvalidInput("quotient family must be cyclic or symmetric");
  QuotientSearchResult q =
      lef_quotient_search(p, job.radius, job.budget, families, ball_cap_from_env());
  emit(quotient_to_json(p, q), job, out);
  if (!q.complete) {
    err << "quotient enumeration stopped at the node limit\n";
    return kExitResourceLimit;
  }
  return kExitOk;
}

inline Json sweep_to_json(const SweepResult& r) {
  if (const auto* w = std::get_if<EmbeddingWitness>(&r)) return witness_to_json(*w);
  return certificate_to_json(std::get<ExhaustionCertificate>(r));
}

inline int run_verify(const JobSpec& job, std::ostream& out) {
  if (!job.input) throw InvalidInput("verify needs --input");
  const Json& artifact = *job.input;
  if (!artifact.is_object() || !artifact.contains("kind") || !artifact["kind"].is_string())
    throw InvalidInput("verify --input must be a JSON object with a 'kind' field");
  const std::string kind = artifact["kind"].get<std::string>();
  Json result;
  result["schema"] = kSchemaTag;
  result["kind"] = "verify";
  result["artifact"] = kind;

  if (kind == "table") {
    table_from_json(artifact);  // validation happens on parse
    result["ok"] = true;
  } else if (kind == "witness") {
    if (!job.table) throw InvalidInput("verifying a witness needs --table");
    PartialGroupTable table = table_from_json(*job.table);
    EmbeddingWitness w = witness_from_json(artifact);
    VerificationReport r = verify_local_embedding(table, w.target, w.assignment);
    result["ok"] = r.is_local_embedding();
    result["report"] = report_to_json(r);
  } else if (kind == "certificate") {
    if (!job.table) throw InvalidInput("verifying a certificate needs --table");
    PartialGroupTable table = table_from_json(*job.table);
    ExhaustionCertificate cert = certificate_from_json(artifact);
    bool ok = cert.table_digest == table_digest(table);
    Json recomputed;
    if (ok) {
      if (cert.family == "cyclic")
        recomputed = sweep_to_json(sweep_cyclic(table, cert.budget));
      else if (cert.family == "symmetric")
        recomputed = sweep_to_json(sweep_symmetric(table, cert.budget));
      else if (cert.family == "single" && cert.targets.size() == 1) {
        SearchResult r = search_embedding(table, cert.targets.front(), cert.budget);
        if (r.status == SearchStatus::Witness)
          recomputed = witness_to_json(*r.witness);
        else {
          ExhaustionCertificate c2 = cert;
          c2.nodes_per_target = {r.nodes};
          c2.outcome = r.status == SearchStatus::Exhausted ? "exhausted" : "budget-exceeded";
          recomputed = certificate_to_json(c2);
        }
      } else {
        throw InvalidInput("certificate family '" + cert.family + "' is not recognized");
      }
      ok = recomputed == certificate_to_json(cert);
    }
    result["ok"] = ok;
    if (!ok && !recomputed.is_null()) result["recomputed"] = recomputed;
  } else if (kind == "ball") {
    int rank = static_cast<int>(lefkit::detail::require_int(artifact, "rank", "ball artifact"));
    int radius =
        static_cast<int>(lefkit::detail::require_int(artifact, "radius", "ball artifact"));
    Ball b = ball(make_alphabet(rank), radius, std::max(ball_cap_from_env(), radius));
    bool ok = artifact.contains("count") &&
              artifact["count"].get<std::uint64_t>() == b.members.size();
    if (ok && artifact.contains("words"))
      ok = ball_to_json(b, false)["words"] == artifact["words"];
    result["ok"] = ok;
  } else if (kind == "quotient") {
    Presentation p = presentation_from_json(
        lefkit::detail::require_field(artifact, "presentation", "quotient artifact"));
    if (lefkit::detail::require_field(artifact, "outcome", "quotient artifact") ==
        "no-quotient-found") {
      result["ok"] = true;
    } else {
      GroupBackend target =
          backend_from_json(lefkit::detail::require_field(artifact, "target", "quotient artifact"));
      std::vector<Element> images;
      for (const Json& e : lefkit::detail::require_field(artifact, "images", "quotient artifact"))
        images.push_back(element_from_json(target, e));
      GeneratorImages gi = make_generator_images(target, images, p.alphabet);
      const Json& stored = lefkit::detail::require_field(artifact, "report", "quotient artifact");
      int radius = static_cast<int>(lefkit::detail::require_int(stored, "radius", "quotient report"));
      BallImageReport r = ball_image(p, gi, radius, std::max(ball_cap_from_env(), radius));
      bool ok = r.relators_vanish && ball_image_to_json(target, r) == stored;
      result["ok"] = ok;
    }
  } else if (kind == "cyclic" || kind == "symmetric" || kind == "cayley" || kind == "product" ||
             kind == "fg-abelian" || kind == "lattice" || kind == "free") {
    GroupBackend g = backend_from_json(artifact);  // cayley parse runs full validation
    result["ok"] = true;
    result["backend"] = g.describe();
  } else {
    throw InvalidInput("verify does not handle artifact kind '" + kind + "'");
  }
  emit(result, job, out);
  return kExitOk;  // a completed check is a success; the verdict lives in the JSON
}

} // namespace detail

/// Parses argv, runs one job, writes the JSON result to `out` and
/// diagnostics to `err`. Returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"local embeddings of finite group fragments into finite groups", "lef"};
  app.require_subcommand(1);

  JobSpec job;
  std::string group_arg, subset_arg, table_arg, presentation_arg, input_arg;
  std::int64_t time_limit_ms = job.budget.time_limit.count();

  auto add_budget_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-m", job.budget.max_cyclic_m, "largest cyclic modulus to try");
    cmd->add_option("--max-n", job.budget.max_symmetric_n, "largest symmetric degree to try");
    cmd->add_option("--node-limit", job.budget.node_limit, "search node budget per target");
    cmd->add_option("--time-limit", time_limit_ms, "search time budget in milliseconds");
  };
  auto add_output_flag = [&](CLI::App* cmd) {
    cmd->add_option("--output", job.output_path, "write the JSON result to a file");
  };

  CLI::App* extract = app.add_subcommand("extract", "record a subset's partial table");
  extract->add_option("--group", group_arg, "ambient backend spec (inline JSON or path)")
      ->required();
  extract->add_option("--subset", subset_arg, "subset elements (inline JSON or path)")->required();
  add_output_flag(extract);

  CLI::App* verify = app.add_subcommand("verify", "re-check an emitted artifact");
  verify->add_option("--input", input_arg, "artifact to verify (inline JSON or path)")->required();
  verify->add_option("--table", table_arg, "table context for witnesses and certificates");
  add_output_flag(verify);

  CLI::App* witness = app.add_subcommand("witness-abelian", "constructive mod-m embedding");
  witness->add_option("--subset", subset_arg, "subset of Z, Z^k, or an fg-abelian backend")
      ->required();
  witness->add_option("--group", group_arg, "fg-abelian ambient spec (defaults to Z or Z^k)");
  add_output_flag(witness);

  CLI::App* search = app.add_subcommand("search", "exhaustive local-embedding search");
  search->add_option("--table", table_arg, "partial table (inline JSON or path)")->required();
  search->add_option("--family", job.family, "target family: cyclic, symmetric or cayley");
  search->add_option("--group", group_arg, "single target backend spec");
  add_budget_flags(search);
  add_output_flag(search);

  CLI::App* ballcmd = app.add_subcommand("ball", "enumerate a free-group ball");
  ballcmd->add_option("--rank", job.rank, "alphabet rank")->required();
  ballcmd->add_option("--radius", job.radius, "ball radius")->required();
  ballcmd->add_flag("--count-only", job.count_only, "emit the cardinality only");
  add_output_flag(ballcmd);

  CLI::App* quotient = app.add_subcommand("quotient", "search finite quotients of a presentation");
  quotient->add_option("--presentation", presentation_arg, "presentation (inline JSON or path)")
      ->required();
  quotient->add_option("--radius", job.radius, "free-ball radius to score collisions on")
      ->required();
  quotient->add_option("--family", job.family, "restrict to one family: cyclic or symmetric");
  add_budget_flags(quotient);
  add_output_flag(quotient);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("lef");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    job.budget.time_limit = std::chrono::milliseconds(time_limit_ms);
    if (!group_arg.empty()) job.group = detail::read_json_arg(group_arg, "--group");
    if (!subset_arg.empty()) job.subset = detail::read_json_arg(subset_arg, "--subset");
    if (!table_arg.empty()) job.table = detail::read_json_arg(table_arg, "--table");
    if (!presentation_arg.empty())
      job.presentation = detail::read_json_arg(presentation_arg, "--presentation");
    if (!input_arg.empty()) job.input = detail::read_json_arg(input_arg, "--input");

    if (extract->parsed()) {
      job.command = "extract";
      return detail::run_extract(job, out);
    }
    if (verify->parsed()) {
      job.command = "verify";
      return detail::run_verify(job, out);
    }
    if (witness->parsed()) {
      job.command = "witness-abelian";
      return detail::run_witness_abelian(job, out);
    }
    if (search->parsed()) {
      job.command = "search";
      return detail::run_search(job, out, err);
    }
    if (ballcmd->parsed()) {
      job.command = "ball";
      return detail::run_ball(job, out);
    }
    job.command = "quotient";
    return detail::run_quotient(job, out, err);
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

} // namespace lefkit::cli
