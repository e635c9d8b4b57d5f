#pragma once

namespace gfd {

/// Spin labels carry twice the quantum number so half-integers stay exact.
struct SpinLabel {
  int twice_j = 0;
  int twice_m = 0;
};

bool valid(const SpinLabel& l);

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention, evaluated through the Racah closed form with exact
/// big-integer factorial arithmetic and one final square root. Selection
/// rule violations return exactly 0.
double cg(int twice_j1, int twice_m1, int twice_j2, int twice_m2, int twice_J, int twice_M);

/// |<s s; s -s | alpha 0>| via the factorial identity
/// (2s)! sqrt((2a+1) / ((2s-a)! (2s+a+1)!)), evaluated in log space.
double cg_highest_weight_identity(int twice_s, int alpha);

} // namespace gfd
