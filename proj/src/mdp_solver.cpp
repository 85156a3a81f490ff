#include "phimdp/mdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "phimdp/text_io.hpp"

namespace phimdp {

MdpModel estimate_model(const SufficientStats& stats,
                        const std::vector<double>& reward_values, double r_max) {
  MdpModel m;
  m.num_states = stats.num_states();
  m.num_actions = stats.num_actions();
  m.trans.assign(static_cast<size_t>(m.num_states) * m.num_actions * m.num_states, 0.0);
  m.reward.assign(m.trans.size(), r_max);
  for (int s = 0; s < m.num_states; ++s) {
    for (int a = 0; a < m.num_actions; ++a) {
      int64_t row = stats.row_total(s, a);
      if (row == 0) {
        for (int s2 = 0; s2 < m.num_states; ++s2)
          m.t(s, a, s2) = 1.0 / m.num_states;
        continue;
      }
      for (int s2 = 0; s2 < m.num_states; ++s2) {
        int64_t c = stats.trans(s, a, s2);
        m.t(s, a, s2) = static_cast<double>(c) / static_cast<double>(row);
        if (c > 0) {
          double sum = 0.0;
          for (int r = 0; r < stats.num_rewards(); ++r)
            sum += static_cast<double>(stats.reward_count(s, a, s2, r)) * reward_values[r];
          m.r(s, a, s2) = (r_max + sum) / static_cast<double>(c + 1);
        }
      }
    }
  }
  return m;
}

MdpModel estimate_model(const Aoct& tree, const History& h, double r_max) {
  return estimate_model(collect_stats(tree, h).stats, h.alphabets().reward_values,
                        r_max);
}

QTable::QTable(int num_states, int num_actions, double gamma, double eta,
               double init)
    : num_actions(num_actions),
      gamma(gamma),
      eta(eta),
      q(static_cast<size_t>(num_states) * num_actions, init) {}

double QTable::row_max(int s) const {
  double best = at(s, 0);
  for (int a = 1; a < num_actions; ++a) best = std::max(best, at(s, a));
  return best;
}

void QTable::ensure_state(int s, double init) {
  if (s < num_states()) return;
  q.resize(static_cast<size_t>(s + 1) * num_actions, init);
}

AviResult avi(const MdpModel& model, double gamma, double tolerance,
              int max_sweeps) {
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("avi: gamma must be in [0, 1)");
  AviResult result;
  result.q = QTable(model.num_states, model.num_actions, gamma, 0.0);
  QTable next = result.q;
  for (result.sweeps = 0; result.sweeps < max_sweeps; ++result.sweeps) {
    double residual = 0.0;
    for (int s = 0; s < model.num_states; ++s) {
      for (int a = 0; a < model.num_actions; ++a) {
        double v = 0.0;
        for (int s2 = 0; s2 < model.num_states; ++s2) {
          double p = model.t(s, a, s2);
          if (p > 0.0) v += p * (model.r(s, a, s2) + gamma * result.q.row_max(s2));
        }
        next.at(s, a) = v;
        residual = std::max(residual, std::abs(v - result.q.at(s, a)));
      }
    }
    std::swap(result.q.q, next.q);
    result.residual = residual;
    if (residual < tolerance) {
      ++result.sweeps;
      result.converged = true;
      break;
    }
  }
  return result;
}

void q_learning_step(QTable& q, int s, int a, double reward, int s_next) {
  double err = reward + q.gamma * q.row_max(s_next) - q.at(s, a);
  q.at(s, a) += q.eta * err;
}

int greedy_action(const QTable& q, int s) {
  int best = 0;
  for (int a = 1; a < q.num_actions; ++a)
    if (q.at(s, a) > q.at(s, best)) best = a;
  return best;
}

void dump_qtable_csv(const QTable& q, std::ostream& out) {
  out << "state,action,q\n";
  for (int s = 0; s < q.num_states(); ++s)
    for (int a = 0; a < q.num_actions; ++a)
      out << s << ',' << a << ',' << fmt_double(q.at(s, a)) << '\n';
}

}  // namespace phimdp
