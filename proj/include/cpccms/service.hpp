#pragma once

// Elicitation sessions behind a JSON-over-HTTP API.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cpccms/cpc.hpp"
#include "cpccms/decision.hpp"
#include "cpccms/io.hpp"
#include "cpccms/metrics.hpp"

namespace httplib {
class Server;
}

namespace cpccms::service {

struct Session {
  std::string id;
  cpc::PairwiseOppositeMatrix pom;
  std::optional<decision::DecisionMatrix> scores;
  std::optional<metrics::TimingSet> timings;
  std::uint64_t revision = 0;
  std::string created;
  std::string updated;
};

struct JudgmentOverride {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

struct ScoreOverride {
  std::string model;
  std::string criterion;
  double value = 0.0;
};

struct WhatIf {
  std::vector<JudgmentOverride> judgments;
  std::vector<ScoreOverride> scores;
  bool include_efficiency = false;
};

io::Json session_to_json(const Session& s);
Session session_from_json(const io::Json& doc);

/// {"revision", "ai", "verdict", "weights", "ranks", "warnings"} at full precision.
io::Json weights_snapshot(const Session& s);

/// Ranking report for a session state; ConflictError when scores (or, with
/// efficiency, timings or an efficiency criterion) are missing.
io::Json ranking_for(const Session& s, bool include_efficiency);

/// Thread-safe session registry. Mutations on one session are serialized and
/// each accepted one bumps the revision by exactly 1 and, when a state
/// directory is configured, rewrites that session's snapshot file.
class SessionStore {
 public:
  /// Loads every snapshot under `state_dir` when given.
  explicit SessionStore(std::optional<std::filesystem::path> state_dir = std::nullopt);
  ~SessionStore();

  std::string create(std::vector<std::string> criteria, double kappa);

  Session get(const std::string& id) const;
  std::vector<std::string> ids() const;

  io::Json set_judgment(const std::string& id, std::size_t i, std::size_t j, double value);
  io::Json set_scores(const std::string& id, decision::DecisionMatrix scores);
  io::Json set_timings(const std::string& id, metrics::TimingSet timings);

  io::Json weights(const std::string& id) const;
  io::Json ranking(const std::string& id, bool include_efficiency) const;
  /// Evaluates the overrides on a copy; the session itself is untouched.
  io::Json whatif(const std::string& id, const WhatIf& request) const;

  /// FNV-1a over the canonical session JSON.
  std::uint64_t state_hash(const std::string& id) const;

 private:
  struct Entry;
  std::shared_ptr<Entry> find(const std::string& id) const;
  void persist(const Session& s) const;

  std::optional<std::filesystem::path> state_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

/// Registers the API routes on `server`. Static files are served from
/// `static_dir` when it names an existing directory.
void install_routes(httplib::Server& server, SessionStore& store,
                    const std::optional<std::filesystem::path>& static_dir);

/// Blocking server loop.
void serve(SessionStore& store, const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir);

}  // namespace cpccms::service
