#include "dol/metrics.hpp"

#include <sstream>

namespace dol {

ReplayReport replay_check(const Metrics& m) {
  std::ostringstream out;
  bool ok = true;
  auto fail = [&](auto&&... parts) {
    ok = false;
    (out << ... << parts) << '\n';
  };

  const std::size_t cells =
      static_cast<std::size_t>(m.rounds) * static_cast<std::size_t>(m.n_agents);
  if (m.prediction.size() != cells || m.mistake.size() != cells ||
      m.loss.size() != cells || m.cum_mistakes.size() != cells ||
      m.cum_loss.size() != cells) {
    fail("series sizes disagree with rounds * n_agents = ", cells);
  } else {
    for (int i = 0; i < m.n_agents && ok; ++i) {
      long long mistakes = 0;
      double loss = 0.0;
      for (long long t = 0; t < m.rounds; ++t) {
        const std::size_t s = m.slot(t, i);
        mistakes += m.mistake[s];
        loss += m.loss[s];
        if (m.cum_mistakes[s] != mistakes) {
          fail("agent ", i, " round ", t + 1,
               ": cumulative mistakes ", m.cum_mistakes[s],
               " != prefix sum ", mistakes);
          break;
        }
        if (m.cum_loss[s] != loss) {
          fail("agent ", i, " round ", t + 1, ": cumulative loss ",
               m.cum_loss[s], " != prefix sum ", loss);
          break;
        }
      }
    }
  }

  if (!m.best_expert_round_mistakes.empty()) {
    if (static_cast<long long>(m.best_expert_round_mistakes.size()) !=
            m.rounds ||
        m.round_min_expert_mistakes.size() !=
            m.best_expert_round_mistakes.size()) {
      fail("expert series have ", m.best_expert_round_mistakes.size(),
           " and ", m.round_min_expert_mistakes.size(),
           " rounds, expected ", m.rounds);
    } else {
      long long best_sum = 0, min_sum = 0;
      for (std::size_t t = 0; t < m.best_expert_round_mistakes.size(); ++t) {
        const int best = m.best_expert_round_mistakes[t];
        const int least = m.round_min_expert_mistakes[t];
        if (best < 0 || best > m.n_agents || least < 0 ||
            least > m.n_agents) {
          fail("round ", t + 1, ": expert mistake counts (", best, ", ",
               least, ") outside [0, ", m.n_agents, "]");
        }
        if (least > best) {
          fail("round ", t + 1, ": round minimum ", least,
               " exceeds the best expert's count ", best);
        }
        best_sum += best;
        min_sum += least;
      }
      if (best_sum != m.best_expert_total) {
        fail("best-expert series sums to ", best_sum,
             ", expected exactly the best expert total ",
             m.best_expert_total);
      }
      if (min_sum > m.best_expert_total) {
        fail("round-min series sums to ", min_sum,
             ", exceeding the best expert total ", m.best_expert_total);
      }
    }
  }

  return {ok, out.str()};
}

}  // namespace dol
