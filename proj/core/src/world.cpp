#include "ajam/harness/world.hpp"

namespace ajam {

std::vector<FrequencyPattern> episode_patterns(const Scenario& scenario, std::uint64_t seed) {
  if (!scenario.patterns.empty()) return scenario.patterns;
  Rng rng = make_rng(seed, 21);
  return generate_patterns(scenario.env, scenario.pattern_dwell, rng);
}

namespace {

std::vector<Jammer> make_jammers(const Scenario& s, std::uint64_t seed) {
  const double threshold = s.env.max_power / (2.0 * s.env.power_levels);
  std::vector<Jammer> out;
  for (std::size_t j = 0; j < s.jammers.size(); ++j) {
    out.emplace_back(s.jammers[j], static_cast<int>(j), s.env.n_channels, threshold,
                     derive_seed(seed, 100 + j));
  }
  return out;
}

Environment make_environment(const Scenario& s, std::uint64_t seed) {
  Environment env(s.env, s.topology, episode_patterns(s, seed), s.pattern_select, seed);
  // Start location: walk the round-robin without charging anything.
  for (int i = 0; i < s.start_location; ++i) env.move();
  return env;
}

}  // namespace

World::World(const Scenario& scenario, std::uint64_t seed)
    : shape_(scenario.shape()),
      loss_mode_(scenario.feedback_loss),
      loss_prob_(scenario.feedback_loss_prob),
      env_(make_environment(scenario, seed)),
      jammers_(make_jammers(scenario, seed)),
      loss_rng_(make_rng(seed, 22)),
      last_activity_(scenario.env.n_channels, 0.0),
      last_node_(env_.serving_node()) {
  obs_ = {0, env_.pattern_index()};
}

StepFeedback World::step(const Strategy& strategy) {
  const EnvConfig& cfg = env_.config();
  const std::int64_t k = env_.slot();

  if (strategy.move) env_.move();
  const int node = env_.serving_node();

  for (auto& j : jammers_) {
    if (j.maybe_move(k, env_.topology(), node)) env_.resample_jammer_gains(j.index());
  }

  // Every jammer evolves each slot; only those reaching the serving node land.
  static const std::vector<double> kQuiet;
  std::vector<Jam> jams;
  for (auto& j : jammers_) {
    const bool sensed = j.reaches(last_node_);
    std::vector<Jam> emitted = j.act(sensed ? std::span<const double>(last_activity_)
                                            : std::span<const double>(kQuiet));
    if (j.reaches(node)) jams.insert(jams.end(), emitted.begin(), emitted.end());
  }

  const int channel = env_.current_channel();
  const bool pu_absent = env_.sample_pu();
  const bool interfered = env_.sample_interference();
  const SlotOutcome out = step_utility(strategy, channel, env_.prev_channel(), env_.gains(), jams,
                                       pu_absent, interfered, cfg);

  std::fill(last_activity_.begin(), last_activity_.end(), 0.0);
  const double power = pu_absent ? cfg.power_of(strategy.power_level) : 0.0;
  last_activity_[channel - 1] = power;
  last_node_ = node;

  bool delivered = true;
  if (loss_mode_ == FeedbackLoss::zero_sinr && loss_prob_ > 0) {
    delivered = !bernoulli(loss_rng_, loss_prob_);
  }
  env_.end_slot(channel, delivered);

  const double observed_sinr = delivered ? out.sinr : 0.0;
  StepFeedback fb;
  fb.outcome = out;
  fb.reward = delivered ? out.utility : out.utility - out.sinr;
  fb.next = {quantize_sinr(observed_sinr, cfg), env_.pattern_index()};
  obs_ = fb.next;

  if (k >= record_from_) {
    rows_.push_back({k - record_from_, out.sinr, out.utility,
                     strategy_index(strategy, cfg.power_levels), strategy.move, !pu_absent});
  }
  return fb;
}

}  // namespace ajam
