#pragma once

#include <span>

#include "ajam/rng.hpp"

namespace ajam {

// Lowest index among the maxima.
int argmax(std::span<const double> values);

// Picks the argmax with probability 1 - epsilon, otherwise one of the other
// |A| - 1 actions uniformly.
int epsilon_greedy(std::span<const double> q_values, double epsilon, Rng& rng);

// U = sum_i gamma^i * rewards[i].
double discounted_return(std::span<const double> rewards, double gamma);

// R = reward + gamma^span * max_next.
double bellman_target(double reward, double gamma, int span, double max_next);

}  // namespace ajam
