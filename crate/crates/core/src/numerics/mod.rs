//! Numeric kernels shared by the channel models.

mod quadrature;
mod special;
mod stream;

pub use quadrature::{integrate, integrate_from_singular, Integral, QuadratureSpec};
pub use special::{erf, erfc, erfcx, exp_times_erfc_scaled, gaussian_tail_q};
pub use stream::RandomStream;
