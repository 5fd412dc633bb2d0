#pragma once

namespace robin {

struct AiryValue {
    double ai = 0.0;
    double ai_prime = 0.0;
};

/// Ai and Ai' from the Maclaurin series on [-8, 5] and the large-argument asymptotic
/// expansions outside. Absolute accuracy about 1e-12 on the negative axis; relative
/// accuracy only about 1e-8 just above x = 5, where the decaying expansion takes over.
AiryValue airy_ai(double x);

}  // namespace robin
