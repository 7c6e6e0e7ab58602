#include "cpccms/service.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <mutex>
#include <random>

#include "cpccms/error.hpp"
#include "httplib.h"

namespace cpccms::service {

namespace fs = std::filesystem;
using io::Json;

namespace {

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string new_id() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int part = 0; part < 2; ++part) {
    std::uint64_t x = rng();
    for (int k = 0; k < 16; ++k, x >>= 4) id += kHex[x & 0xF];
  }
  return id;
}

// Scores must use the session's criteria; efficiency may come from timings.
void check_scores_fit(const cpc::PairwiseOppositeMatrix& pom, const decision::DecisionMatrix& m) {
  std::vector<std::string> details;
  for (const auto& c : pom.criteria()) {
    if (c != decision::kEfficiency && !m.criterion_index(c)) {
      details.push_back("missing from scores: " + c);
    }
  }
  for (const auto& c : m.criteria()) {
    if (!pom.index_of(c)) details.push_back("not a session criterion: " + c);
  }
  if (!details.empty()) {
    throw InputError("score criteria do not match the session criteria", details);
  }
}

}  // namespace

Json session_to_json(const Session& s) {
  Json doc;
  doc["id"] = s.id;
  doc["criteria"] = s.pom.criteria();
  doc["kappa"] = s.pom.kappa();
  doc["entries"] = s.pom.rows();
  doc["scores"] = s.scores ? io::decision_matrix_to_json(*s.scores) : Json();
  doc["timings"] = s.timings ? io::timings_to_json(*s.timings) : Json();
  doc["revision"] = s.revision;
  doc["created"] = s.created;
  doc["updated"] = s.updated;
  return doc;
}

Session session_from_json(const Json& doc) {
  try {
    Session s{doc.at("id").get<std::string>(),
              io::pom_from_json({{"kappa", doc.at("kappa")},
                                 {"criteria", doc.at("criteria")},
                                 {"entries", doc.at("entries")}}),
              std::nullopt,
              std::nullopt,
              doc.at("revision").get<std::uint64_t>(),
              doc.value("created", ""),
              doc.value("updated", "")};
    if (doc.contains("scores") && !doc["scores"].is_null()) {
      s.scores = io::decision_matrix_from_json(doc["scores"]);
    }
    if (doc.contains("timings") && !doc["timings"].is_null()) {
      s.timings = io::timings_from_json(doc["timings"]);
    }
    return s;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed session snapshot: ") + e.what());
  }
}

Json weights_snapshot(const Session& s) {
  const auto report = cpc::derive_weights(s.pom);
  Json weights = Json::object();
  Json ranks = Json::object();
  for (std::size_t i = 0; i < report.weights.criteria.size(); ++i) {
    weights[report.weights.criteria[i]] = report.weights.weights[i];
    ranks[report.weights.criteria[i]] = report.ranks[i];
  }
  Json doc;
  doc["revision"] = s.revision;
  doc["ai"] = report.accordance.ai;
  doc["verdict"] = std::string(cpc::to_string(report.accordance.verdict));
  doc["weights"] = weights;
  doc["ranks"] = ranks;
  doc["warnings"] = report.warnings;
  return doc;
}

Json ranking_for(const Session& s, bool include_efficiency) {
  if (!s.scores) throw ConflictError("no scores attached to this session");
  if (include_efficiency) {
    if (!s.pom.index_of(decision::kEfficiency)) {
      throw ConflictError("session criteria have no 'efficiency' to include");
    }
    if (!s.timings && !s.scores->criterion_index(decision::kEfficiency)) {
      throw ConflictError("efficiency requested but no timings attached");
    }
  }
  const auto eval = decision::evaluate(s.pom, *s.scores, s.timings, include_efficiency);
  Json doc = io::ranking_report(eval, decision::kReportDecimals);
  doc["revision"] = s.revision;
  doc["include_efficiency"] = include_efficiency;
  return doc;
}

struct SessionStore::Entry {
  explicit Entry(Session s) : session(std::move(s)) {}
  mutable std::shared_mutex mutex;
  Session session;
};

SessionStore::SessionStore(std::optional<fs::path> state_dir) : state_dir_(std::move(state_dir)) {
  if (!state_dir_) return;
  fs::create_directories(*state_dir_);
  for (const auto& file : fs::directory_iterator(*state_dir_)) {
    if (file.path().extension() != ".json") continue;
    auto entry =
        std::make_shared<Entry>(session_from_json(Json::parse(io::read_text(file.path()))));
    sessions_.emplace(entry->session.id, std::move(entry));
  }
}

SessionStore::~SessionStore() = default;

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
  return it->second;
}

void SessionStore::persist(const Session& s) const {
  if (state_dir_) io::write_text(*state_dir_ / (s.id + ".json"), session_to_json(s).dump(2));
}

std::string SessionStore::create(std::vector<std::string> criteria, double kappa) {
  const std::string stamp = now_utc();
  auto entry = std::make_shared<Entry>(Session{
      new_id(), cpc::PairwiseOppositeMatrix::zeros(std::move(criteria), kappa), std::nullopt,
      std::nullopt, 0, stamp, stamp});
  const std::string id = entry->session.id;
  persist(entry->session);
  std::unique_lock lock(mutex_);
  sessions_.emplace(id, std::move(entry));
  return id;
}

Session SessionStore::get(const std::string& id) const {
  const auto entry = find(id);
  std::shared_lock lock(entry->mutex);
  return entry->session;
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

Json SessionStore::set_judgment(const std::string& id, std::size_t i, std::size_t j, double value) {
  const auto entry = find(id);
  std::unique_lock lock(entry->mutex);
  Session next = entry->session;
  next.pom.set_judgment(i, j, value);
  ++next.revision;
  next.updated = now_utc();
  persist(next);
  entry->session = std::move(next);
  return weights_snapshot(entry->session);
}

Json SessionStore::set_scores(const std::string& id, decision::DecisionMatrix scores) {
  const auto entry = find(id);
  std::unique_lock lock(entry->mutex);
  check_scores_fit(entry->session.pom, scores);
  Session next = entry->session;
  next.scores = std::move(scores);
  ++next.revision;
  next.updated = now_utc();
  persist(next);
  entry->session = std::move(next);
  return {{"revision", entry->session.revision}};
}

Json SessionStore::set_timings(const std::string& id, metrics::TimingSet timings) {
  metrics::validate_timings(timings);
  const auto entry = find(id);
  std::unique_lock lock(entry->mutex);
  Session next = entry->session;
  next.timings = std::move(timings);
  ++next.revision;
  next.updated = now_utc();
  persist(next);
  entry->session = std::move(next);
  return {{"revision", entry->session.revision}};
}

Json SessionStore::weights(const std::string& id) const { return weights_snapshot(get(id)); }

Json SessionStore::ranking(const std::string& id, bool include_efficiency) const {
  return ranking_for(get(id), include_efficiency);
}

Json SessionStore::whatif(const std::string& id, const WhatIf& request) const {
  Session copy = get(id);
  for (const auto& o : request.judgments) copy.pom.set_judgment(o.i, o.j, o.value);
  if (!request.scores.empty()) {
    if (!copy.scores) throw ConflictError("score overrides need attached scores");
    std::vector<std::string> details;
    for (const auto& o : request.scores) {
      const auto m = copy.scores->model_index(o.model);
      const auto c = copy.scores->criterion_index(o.criterion);
      if (!m) details.push_back("unknown model: " + o.model);
      if (!c) details.push_back("unknown criterion: " + o.criterion);
      if (m && c) copy.scores->set(*m, *c, o.value);
    }
    if (!details.empty()) throw InputError("invalid score override", details);
  }
  Json doc = ranking_for(copy, request.include_efficiency);
  doc["whatif"] = true;
  return doc;
}

std::uint64_t SessionStore::state_hash(const std::string& id) const {
  const std::string text = session_to_json(get(id)).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// --- HTTP -------------------------------------------------------------------

namespace {

void send_json(httplib::Response& res, const Json& doc, int status = 200) {
  res.status = status;
  res.set_content(doc.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, const std::vector<std::string>& details = {}) {
  send_json(res, {{"code", code}, {"message", message}, {"details", details}}, status);
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Json::exception& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const InputError& e) {
    send_error(res, 400, "invalid_input", e.what(), e.details());
  } catch (const NotFoundError& e) {
    send_error(res, 404, "not_found", e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, "conflict", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

Json body_json(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json doc = Json::parse(req.body);
  if (!doc.is_object()) throw InputError("request body must be a JSON object");
  return doc;
}

std::size_t parse_index(const std::string& text) {
  try {
    return static_cast<std::size_t>(std::stoull(text));
  } catch (const std::exception&) {
    throw InputError("bad matrix index '" + text + "'");
  }
}

bool parse_flag(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return false;
  const std::string v = req.get_param_value(name);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw InputError(std::string("query parameter '") + name + "' must be true or false");
}

double require_number(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) {
    throw InputError(std::string("field '") + key + "' must be a number");
  }
  return doc[key].get<double>();
}

std::size_t require_index(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0) {
    throw InputError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return doc[key].get<std::size_t>();
}

WhatIf parse_whatif(const Json& doc) {
  WhatIf w;
  if (doc.contains("judgment_overrides")) {
    for (const auto& o : doc["judgment_overrides"]) {
      w.judgments.push_back({require_index(o, "i"), require_index(o, "j"), require_number(o, "value")});
    }
  }
  if (doc.contains("score_overrides")) {
    for (const auto& o : doc["score_overrides"]) {
      w.scores.push_back({o.at("model").get<std::string>(), o.at("criterion").get<std::string>(),
                          require_number(o, "value")});
    }
  }
  if (doc.contains("efficiency")) w.include_efficiency = doc["efficiency"].get<bool>();
  return w;
}

}  // namespace

void install_routes(httplib::Server& server, SessionStore& store,
                    const std::optional<fs::path>& static_dir) {
  static const std::string kId = "/sessions/([A-Za-z0-9]+)";

  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json doc = body_json(req);
      if (!doc.contains("criteria") || !doc["criteria"].is_array()) {
        throw InputError("field 'criteria' must be an array of names");
      }
      const double kappa = doc.contains("kappa") ? require_number(doc, "kappa") : cpc::kDefaultKappa;
      const std::string id = store.create(doc["criteria"].get<std::vector<std::string>>(), kappa);
      Json out = session_to_json(store.get(id));
      out.update(weights_snapshot(store.get(id)));
      send_json(res, out, 201);
    });
  });

  server.Get("/sessions", [&store](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, {{"ids", store.ids()}}); });
  });

  server.Get(kId, [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Session s = store.get(req.matches[1]);
      Json out = session_to_json(s);
      out.update(weights_snapshot(s));
      send_json(res, out);
    });
  });

  server.Put(kId + R"(/judgments/(\d+)/(\d+))",
             [&store](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const Json doc = body_json(req);
                 send_json(res, store.set_judgment(req.matches[1], parse_index(req.matches[2]),
                                                   parse_index(req.matches[3]),
                                                   require_number(doc, "value")));
               });
             });

  server.Put(kId + "/scores", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      send_json(res, store.set_scores(req.matches[1], io::decision_matrix_from_json(body_json(req))));
    });
  });

  server.Put(kId + "/timings", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json doc = body_json(req);
      if (!doc.contains("timings")) throw InputError("field 'timings' is required");
      send_json(res, store.set_timings(req.matches[1], io::timings_from_json(doc["timings"])));
    });
  });

  server.Get(kId + "/weights", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, store.weights(req.matches[1])); });
  });

  server.Get(kId + "/ranking", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, store.ranking(req.matches[1], parse_flag(req, "efficiency"))); });
  });

  server.Post(kId + "/whatif", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, store.whatif(req.matches[1], parse_whatif(body_json(req)))); });
  });

  if (static_dir && fs::is_directory(*static_dir)) {
    server.set_mount_point("/", static_dir->string());
  }
}

void serve(SessionStore& store, const std::string& host, int port,
           const std::optional<fs::path>& static_dir) {
  httplib::Server server;
  install_routes(server, store, static_dir);
  if (!server.listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace cpccms::service
