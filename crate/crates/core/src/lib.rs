//! Numerical toolkit for homogeneous metrics on spheres fibered by Hopf
//! fibrations: closed-form sectional curvature of the reduced plane families,
//! a structure-constant oracle for the full tangent space, the positivity
//! classifier for the three-parameter family, pinching constants of the
//! one-parameter family, and derivative-free optimizers tying them together.

pub mod algebra;
pub mod curvature;
pub mod optimizer;
pub mod oracle;
pub mod pinching;
pub mod positivity;
pub mod quat;
