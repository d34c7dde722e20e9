#include "ajam/policies.hpp"

#include <cmath>
#include <stdexcept>

namespace ajam {

int argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of an empty vector");
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

int epsilon_greedy(std::span<const double> q_values, double epsilon, Rng& rng) {
  const int best = argmax(q_values);
  const int n = static_cast<int>(q_values.size());
  if (n == 1 || !bernoulli(rng, epsilon)) return best;
  int other = uniform_int(rng, 0, n - 2);
  return other >= best ? other + 1 : other;
}

double discounted_return(std::span<const double> rewards, double gamma) {
  double total = 0.0;
  double weight = 1.0;
  for (double u : rewards) {
    total += weight * u;
    weight *= gamma;
  }
  return total;
}

double bellman_target(double reward, double gamma, int span, double max_next) {
  return reward + std::pow(gamma, span) * max_next;
}

}  // namespace ajam
