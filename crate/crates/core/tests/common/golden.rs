//! Hand-checked reductions of the worked examples.

pub const EXAMPLE1_INPUT: &str = "a * P[alpha](f) * P[beta1](g1 * P[beta2](g2))";
pub const EXAMPLE1_OUTPUT: &str = "\
tau[beta1]*a * P[alpha](tauinv[beta1]*f * P[beta1](g1 * P[beta2](g2))) \
+ tau[alpha]*a * P[beta1](tau[beta2]*tauinv[alpha]*g1 * P[alpha](tauinv[beta2]*f * P[beta2](g2))) \
+ tau[alpha]*a * P[beta1](g1 * P[beta2](tauinv[alpha]*g2 * P[alpha](f)))";

pub const EXAMPLE2_INPUT: &str = "a * P[alpha](f) * P[beta1](g1 * P[beta2](g2 * P[beta3](g3)))";
pub const EXAMPLE2_OUTPUT: &str = "\
tau[beta1]*a * P[alpha](tauinv[beta1]*f * P[beta1](g1 * P[beta2](g2 * P[beta3](g3)))) \
+ tau[alpha]*a * P[beta1](tauinv[alpha]*tau[beta2]*g1 * P[alpha](tauinv[beta2]*f * P[beta2](g2 * P[beta3](g3)))) \
+ tau[alpha]*a * P[beta1](g1 * P[beta2](tauinv[alpha]*tau[beta3]*g2 * P[alpha](tauinv[beta3]*f * P[beta3](g3)))) \
+ tau[alpha]*a * P[beta1](g1 * P[beta2](g2 * P[beta3](tauinv[alpha]*g3 * P[alpha](f))))";

pub const EXAMPLE3_INPUT: &str = "a * P[alpha](f) * P[beta](g) * P[gamma](h)";
pub const EXAMPLE3_OUTPUT: &str = "\
tau[alpha]*tau[beta]*a * P[gamma](tauinv[alpha]*h * P[alpha](tauinv[beta]*f * P[beta](g))) \
+ tau[gamma]*tau[beta]*a * P[alpha](tauinv[gamma]*f * P[gamma](tauinv[beta]*h * P[beta](g))) \
+ tau[gamma]*tau[beta]*a * P[alpha](tauinv[beta]*f * P[beta](tauinv[gamma]*g * P[gamma](h))) \
+ tau[beta]*tau[alpha]*a * P[gamma](tauinv[beta]*h * P[beta](tauinv[alpha]*g * P[alpha](f))) \
+ tau[gamma]*tau[alpha]*a * P[beta](tauinv[gamma]*g * P[gamma](tauinv[alpha]*h * P[alpha](f))) \
+ tau[gamma]*tau[alpha]*a * P[beta](tauinv[alpha]*g * P[alpha](tauinv[gamma]*f * P[gamma](h)))";

pub const EXAMPLE4_INPUT: &str = "f1 * P[alpha](f2 * P[gamma](f4) * P[delta](f5)) * P[beta](f3)";
pub const EXAMPLE4_OUTPUT: &str = "\
tau[alpha]*f1 * P[beta](tauinv[alpha]*f3 * P[alpha](tau[delta]*f2 * P[gamma](tauinv[delta]*f4 * P[delta](f5)))) \
+ tau[beta]*f1 * P[alpha](tauinv[beta]*tau[delta]*tau[gamma]*f2 * P[beta](tauinv[gamma]*f3 * P[gamma](tauinv[delta]*f4 * P[delta](f5)))) \
+ tau[beta]*f1 * P[alpha](tau[delta]*f2 * P[gamma](tauinv[beta]*f4 * P[beta](tauinv[delta]*f3 * P[delta](f5)))) \
+ tau[beta]*f1 * P[alpha](tau[delta]*f2 * P[gamma](tauinv[delta]*f4 * P[delta](tauinv[beta]*f5 * P[beta](f3)))) \
+ tau[alpha]*f1 * P[beta](tauinv[alpha]*f3 * P[alpha](tau[gamma]*f2 * P[delta](tauinv[gamma]*f5 * P[gamma](f4)))) \
+ tau[beta]*f1 * P[alpha](tauinv[beta]*tau[gamma]*tau[delta]*f2 * P[beta](tauinv[delta]*f3 * P[delta](tauinv[gamma]*f5 * P[gamma](f4)))) \
+ tau[beta]*f1 * P[alpha](tau[gamma]*f2 * P[delta](tauinv[beta]*f5 * P[beta](tauinv[gamma]*f3 * P[gamma](f4)))) \
+ tau[beta]*f1 * P[alpha](tau[gamma]*f2 * P[delta](tauinv[gamma]*f5 * P[gamma](tauinv[beta]*f4 * P[beta](f3))))";

/// The two-chain identity for one integral against one integral.
pub const PAIR_INPUT: &str = "a * P[alpha](f) * P[beta1](g1)";
pub const PAIR_OUTPUT: &str = "\
tau[beta1]*a * P[alpha](tauinv[beta1]*f * P[beta1](g1)) \
+ tau[alpha]*a * P[beta1](tauinv[alpha]*g1 * P[alpha](f))";

pub const EXAMPLES: [(&str, &str, &str, usize); 4] = [
    ("example 1", EXAMPLE1_INPUT, EXAMPLE1_OUTPUT, 3),
    ("example 2", EXAMPLE2_INPUT, EXAMPLE2_OUTPUT, 4),
    ("example 3", EXAMPLE3_INPUT, EXAMPLE3_OUTPUT, 6),
    ("example 4", EXAMPLE4_INPUT, EXAMPLE4_OUTPUT, 8),
];
