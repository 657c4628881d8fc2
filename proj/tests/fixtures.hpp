#pragma once

// Reference models used across the test suite. The first is a 4-state word
// automaton whose accepting state is reachable only after saving up
// resources; the second is a 3-state game with two adversarial options.
inline const char* kLoopAutomaton = R"(
semiring tropical-bounded 64
sig step/1
state x  parity 2 offset 0
state y  parity 1 offset 0
state y1 parity 1 offset 2
state y2 parity 1 offset 4
trans x  step(y)  0
trans y  step(x)  5
trans y  step(y1) 1
trans y  step(y2) 2
trans y1 step(y)  0
trans y2 step(y)  0
)";

inline const char* kTwoOptionGame = R"(
semiring tropical-bounded 64
sig step/1
dist f { 4 step(x); 1 step(y1); 2 step(y2) }
dist g { 0 step(x); 2 step(y1) }
state x  parity 2 offset 0 options f g
state y1 parity 1 offset 1 options f g
state y2 parity 1 offset 4 options f
)";
