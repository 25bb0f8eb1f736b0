#pragma once

#include "hara_eq/economy.hpp"

namespace hara_eq::testing_economies {

// a = 1, b = 5, gamma = 3, beta = (1/8, 1), e = f = (1, 1)
inline Economy e_star() { return Economy{HARAParams{3.0, 1.0, 5.0}, AgentType{0.125, 1.0, 1.0}, AgentType{1.0, 1.0, 1.0}}; }

inline Economy symmetric_crra() {
  return Economy{HARAParams{3.0, 1.0, 0.0}, AgentType{1.0, 1.0, 1.0}, AgentType{1.0, 1.0, 1.0}};
}

// b = 0, beta = 1, f = 2e: clears where p^(1/3) = 2.
inline Economy crra_closed_form() {
  return Economy{HARAParams{3.0, 1.0, 0.0}, AgentType{1.0, 1.0, 2.0}, AgentType{1.0, 1.0, 2.0}};
}

}  // namespace hara_eq::testing_economies
