#pragma once

#include <mutex>
#include <shared_mutex>
#include <string>

#include <httplib.h>

#include <ecl/ecl.hpp>

namespace ecl::cli {

inline json graph_json(const FunctionSet& F) {
  const auto& sig = F.signature();
  json g{{"nodes", json::array()}, {"edges", json::array()}};
  for (const auto& v : sig.vars()) g["nodes"].push_back({{"name", v.name}, {"exogenous", v.exogenous}});
  auto adj = F.graph();
  for (std::size_t x = 0; x < sig.size(); ++x)
    for (std::size_t v = 0; v < sig.size(); ++v)
      if (adj[x][v])
        g["edges"].push_back({{"from", sig.var(static_cast<int>(x)).name}, {"to", sig.var(static_cast<int>(v)).name}});
  return g;
}

// JSON API over one shared session. Mutations take the lock exclusively.
class ApiServer {
 public:
  explicit ApiServer(Session session) : session_(std::move(session)) { routes(); }

  httplib::Server& http() { return srv_; }

  bool listen(const std::string& host, int port) { return srv_.listen(host, port); }
  void stop() { srv_.stop(); }

 private:
  static void reply(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(2), "application/json");
  }

  static json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("bad JSON body: ") + e.what());
    }
  }

  template <class F>
  void guarded(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const SyntaxError& e) {
      reply(res, {{"ok", false}, {"error", e.what()}, {"position", e.position()}}, 400);
    } catch (const ValidationError& e) {
      reply(res, {{"ok", false}, {"error", e.what()}}, 400);
    } catch (const BudgetExceeded& e) {
      reply(res, {{"ok", false}, {"error", e.what()}}, 422);
    }
  }

  static int status_of(const json& r) { return r.value("ok", false) ? 200 : 400; }

  json step(const json& body) {
    std::string action = body.value("action", "");
    if (action == "intervene") {
      const json& a = body.contains("assignment") ? body["assignment"] : json("");
      if (a.is_object()) {
        std::string text;
        for (auto it = a.begin(); it != a.end(); ++it) {
          if (!text.empty()) text += ", ";
          text += it.key() + "=" + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
        }
        return session_.intervene(text);
      }
      return session_.intervene(a.is_string() ? a.get<std::string>() : a.dump());
    }
    if (action == "announce") return session_.announce(body.value("formula", ""));
    if (action == "evaluate") return session_.evaluate_formula(body.value("formula", ""));
    if (action == "undo") return session_.undo();
    if (action == "reset") return session_.reset();
    throw ValidationError("unknown action '" + action + "'");
  }

  void routes() {
    srv_.Get("/state", [this](const httplib::Request&, httplib::Response& res) {
      std::shared_lock lk(mu_);
      reply(res, session_.observation());
    });
    srv_.Get("/graph", [this](const httplib::Request&, httplib::Response& res) {
      std::shared_lock lk(mu_);
      json g = graph_json(session_.current().model.functions);
      reply(res, g);
    });
    srv_.Post("/load", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        json body = parse_body(req);
        const json& doc = body.contains("model") ? body["model"] : body;
        Mode mode = mode_from_name(body.value("mode", std::string(mode_name(session_.mode()))));
        PointedModel p = load_model(doc);
        std::unique_lock lk(mu_);
        session_.load(std::move(p), mode);
        reply(res, {{"ok", true}, {"state", session_.observation()}});
      });
    });
    srv_.Post("/step", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        json body = parse_body(req);
        std::unique_lock lk(mu_);
        json r = step(body);
        reply(res, r, status_of(r));
      });
    });
    srv_.Post("/eval", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        json body = parse_body(req);
        std::optional<Mode> mode;
        if (body.contains("mode")) mode = mode_from_name(body["mode"].get<std::string>());
        std::unique_lock lk(mu_);
        json r = session_.evaluate_formula(body.value("formula", ""), mode);
        reply(res, r, status_of(r));
      });
    });
    srv_.Post("/undo", [this](const httplib::Request&, httplib::Response& res) {
      std::unique_lock lk(mu_);
      json r = session_.undo();
      reply(res, r, status_of(r));
    });
    srv_.Post("/reset", [this](const httplib::Request&, httplib::Response& res) {
      std::unique_lock lk(mu_);
      reply(res, session_.reset());
    });
  }

  Session session_;
  std::shared_mutex mu_;
  httplib::Server srv_;
};

}  // namespace ecl::cli
