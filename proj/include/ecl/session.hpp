#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epistemic.hpp"
#include "model_io.hpp"
#include "syntax.hpp"

namespace ecl {

// Interactive state: a pointed model that changes under interventions and
// announcements, with undo back to any earlier state.
class Session {
 public:
  Session(PointedModel initial, Mode mode) : initial_(std::move(initial)), current_(initial_), mode_(mode) {
    check_mode();
  }

  const PointedModel& current() const { return current_; }
  const PointedModel& initial() const { return initial_; }
  Mode mode() const { return mode_; }
  const std::vector<std::string>& log() const { return log_; }
  std::size_t depth() const { return history_.size(); }

  json observation() const {
    const auto& sig = current_.model.signature();
    json o;
    o["mode"] = mode_name(mode_);
    o["team"] = json::array();
    for (const auto& b : current_.model.team) o["team"].push_back(valuation_json(sig, b));
    o["actual"] = valuation_json(sig, current_.actual);
    json known = json::object();
    for (auto [v, x] : known_values(current_.model)) known[sig.var(v).name] = sig.var(v).range[x];
    o["known"] = known;
    o["observables"] = json::array();
    for (int v : sig.observables()) o["observables"].push_back(sig.var(v).name);
    o["depth"] = history_.size();
    o["log"] = log_;
    return o;
  }

  json intervene(const Assignment& asg) {
    history_.push_back(current_);
    if (mode_ == Mode::Observable) {
      current_ = intervene_observable(current_, asg);
    } else {
      PointedModel next;
      next.model = intervene_team(current_.model, asg);
      next.actual = next.model.functions.solve(apply_assignment(current_.actual, asg));
      current_ = std::move(next);
    }
    log_.push_back("intervene " + to_string(asg));
    return result(true);
  }

  json intervene(const std::string& text) {
    try {
      return intervene(parse_assignment(text, current_.model.signature()));
    } catch (const ValidationError& e) {
      return failure("intervene", e);
    }
  }

  // Refused, with the state unchanged, when the formula is false at the actual valuation.
  json announce(const std::string& text) {
    Formula f;
    try {
      f = parse(text, current_.model.signature());
      if (!evaluate(current_, f, mode_)) {
        json r = result(false);
        r["error"] = "announcement is false at the actual valuation";
        return r;
      }
    } catch (const ValidationError& e) {
      return failure("announce", e);
    }
    history_.push_back(current_);
    current_.model = ecl::announce(current_, f, mode_);
    log_.push_back("announce " + to_string(f));
    return result(true);
  }

  json evaluate_formula(const std::string& text, std::optional<Mode> mode = std::nullopt) {
    try {
      Formula f = parse(text, current_.model.signature());
      bool v = evaluate(current_, f, mode.value_or(mode_));
      log_.push_back("evaluate " + to_string(f));
      json r = result(true);
      r["formula"] = to_string(f);
      r["value"] = v;
      return r;
    } catch (const ValidationError& e) {
      return failure("evaluate", e);
    }
  }

  json undo() {
    if (history_.empty()) {
      json r = result(false);
      r["error"] = "nothing to undo";
      return r;
    }
    current_ = std::move(history_.back());
    history_.pop_back();
    log_.push_back("undo");
    return result(true);
  }

  json reset() {
    current_ = initial_;
    history_.clear();
    log_.push_back("reset");
    return result(true);
  }

  // Replace the model and start over.
  void load(PointedModel p, Mode mode) {
    initial_ = std::move(p);
    current_ = initial_;
    mode_ = mode;
    history_.clear();
    log_.clear();
    check_mode();
  }

 private:
  void check_mode() {
    if (mode_ == Mode::Observable && !observable_constant(current_.model.signature(), current_.model.team))
      throw ValidationError("team is not constant on the observables");
  }

  json result(bool ok) const {
    json r;
    r["ok"] = ok;
    r["state"] = observation();
    return r;
  }

  json failure(const std::string& action, const ValidationError& e) const {
    json r = result(false);
    r["error"] = std::string(e.what());
    r["action"] = action;
    if (auto* s = dynamic_cast<const SyntaxError*>(&e)) r["position"] = s->position();
    return r;
  }

  PointedModel initial_;
  PointedModel current_;
  Mode mode_;
  std::vector<PointedModel> history_;
  std::vector<std::string> log_;
};

}  // namespace ecl
